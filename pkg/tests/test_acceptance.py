"""Acceptance criteria 1-10. Run with pytest, or directly: python3 tests/test_acceptance.py"""

import os
import random
import subprocess
import sys
import time
from fractions import Fraction as F
from itertools import product
from pathlib import Path

import numpy as np
import pytest

from ineqlab.classical import (Membership, amgm_witness, cs_member, cs_witness, markov_member,
                               markov_witness, sqrt)
from ineqlab.cone import basic_inequalities, elemental, zy97_problem, zy98_form
from ineqlab.core import (LinForm, evaluate, lf_combine, lf_cond_entropy, lf_entropy,
                          lf_mutual, varset)
from ineqlab.models import (GroupSpec, SearchOptions, entropy_vector, random_pmf,
                            search_counterexample, small_groups, verify_group_multiplicative)
from ineqlab.parser import CI
from ineqlab.prover import (Implied, NotImplied, NotImpliedByCone, Proved, ProvedAugmented,
                            Unknown, check_certificate, check_ray, disprove, implies, verify)
from ineqlab.translate import Unbalanced, to_group_inequality, to_minor_inequality

GOLDEN = Path(__file__).parent / "goldens"

# tolerances and bounds pinned from the acceptance criteria
PROVE_SECONDS = 1.0
ZY_SECONDS = 5.0
ZY98_FLOOR = -1e-9
XOR_BITS = 0.99
ROUNDTRIP_TOL = 1e-12
N_PMFS = 1000
N_GROUP_TUPLES = 1000
N_POLYMATROID = 10_000
N_FUZZ = 10_000


def _timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


def _partitions(n, parts):
    """Every assignment of variables 1..n to ``parts`` disjoint sets (or to none)."""
    for assign in product(range(parts + 1), repeat=n):
        yield tuple(varset(i + 1 for i in range(n) if assign[i] == k + 1) for k in range(parts))


def c1_shannon_proofs():
    queries = [lf_mutual(2, 1, 2), lf_mutual(3, 1, 2, 4), lf_cond_entropy(2, 1, 2)]
    for n in range(1, 5):
        for (a,) in _partitions(n, 1):
            if a:
                queries.append(lf_entropy(n, a))
        for a, b in _partitions(n, 2):
            if a and b:
                queries.append(lf_cond_entropy(n, a, b))
                queries.append(lf_mutual(n, a, b))
        for a, b, c in _partitions(n, 3):
            if a and b and c:
                queries.append(lf_mutual(n, a, b, c))
    worst = 0.0
    for b in queries:
        v, dt = _timed(verify, b)
        worst = max(worst, dt)
        if not (isinstance(v, Proved) and check_certificate(b, v.certificate)):
            return False, f"not proved: {b!r}"
    return worst < PROVE_SECONDS, f"{len(queries)} queries proved, certificates exact, slowest {worst:.3f}s"


def c2_zy98():
    b = zy98_form()
    (v, dt1) = _timed(verify, b)
    if not isinstance(v, NotImpliedByCone):
        return False, f"expected NotImpliedByCone, got {type(v).__name__}"
    rows = elemental(4)
    basic_ok = all(sum(c * v.ray[m - 1] for m, c in f.items()) >= 0 for f in basic_inequalities(4))
    ray_ok = check_ray(b, v.ray, rows, []) and basic_ok
    (w, dt2) = _timed(verify, b, augment="zy98")
    ok = ray_ok and isinstance(w, ProvedAugmented) and check_certificate(b, w.certificate)
    ok = ok and dt1 + dt2 < ZY_SECONDS
    return ok, (f"ray exact on all {len(rows)} elemental rows and every basic inequality, "
                f"b.r = {v.value}; augmented: {type(w).__name__}; {dt1 + dt2:.2f}s")


def c3_zy97():
    Q, b = zy97_problem()
    v, dt = _timed(verify, b, Q)
    ok = isinstance(v, NotImpliedByCone) and check_ray(b, v.ray, elemental(4), Q) and dt < ZY_SECONDS
    return ok, f"{type(v).__name__}, ray exact, {dt:.2f}s"


def c4_zy98_validity():
    b = zy98_form()
    worst = min(evaluate(b, entropy_vector(random_pmf(4, 2 + s % 2, seed=s))) for s in range(N_PMFS))
    rng = random.Random(2024)
    groups = [g for g in small_groups(24).values()]
    subgroup_lists = {id(g): g.subgroups() for g in groups}
    group_ok = True
    for _ in range(N_GROUP_TUPLES):
        g = rng.choice(groups)
        spec = GroupSpec(g, [rng.choice(subgroup_lists[id(g)]) for _ in range(4)])
        group_ok &= verify_group_multiplicative(b, spec)
    search = disprove(b)
    ok = worst >= ZY98_FLOOR and group_ok and isinstance(search, Unknown)
    return ok, (f"min over {N_PMFS} pmfs {worst:.3g} bits; {N_GROUP_TUPLES} group tuples exact: "
                f"{group_ok}; search: {type(search).__name__}")


def _polymatroid(h) -> bool:
    H = [F(0)] + list(h)
    for a in range(len(H)):
        for b in range(len(H)):
            if a & b == a and H[a] > H[b]:
                return False
            if H[a] + H[b] < H[a | b] + H[a & b]:
                return False
    return True


def _rank_vector(cols):
    out = []
    for mask in range(1, 8):
        basis = []
        for i in range(3):
            if mask >> i & 1:
                v = cols[i]
                for bv in basis:
                    v = min(v, v ^ bv)
                if v:
                    basis.append(v)
        out.append(F(len(basis)))
    return out


def c5_polymatroid():
    rng = random.Random(7)
    basics = basic_inequalities(3)
    disagree = pos = 0
    for k in range(N_POLYMATROID):
        if k % 3 == 0:
            h = [F(rng.randint(-1, 4)) for _ in range(7)]
        elif k % 3 == 1:
            h = _rank_vector([rng.randrange(8) for _ in range(3)])
            h[rng.randrange(7)] += rng.choice((-1, 0, 1))
        else:
            h = [F(float(v)) for v in entropy_vector(random_pmf(3, 2, seed=k))]
        basic = all(sum(c * h[m - 1] for m, c in f.items()) >= 0 for f in basics)
        poly = _polymatroid(h)
        disagree += basic != poly
        pos += poly
    return disagree == 0, f"{N_POLYMATROID} vectors ({pos} polymatroids), {disagree} disagreements"


def c6_ci_implication():
    a = implies([CI(1, 4, 2), CI(1, 2)], CI(1, 4))
    b = implies([CI(1, 2)], CI(1, 2, 4))
    ok = isinstance(a, Implied) and isinstance(b, NotImplied) and b.value >= XOR_BITS
    if ok:
        h = entropy_vector(b.witness)
        ok = abs(evaluate(lf_mutual(3, 1, 2), h)) < 1e-9
    return ok, f"{type(a).__name__}; {type(b).__name__} with I(X1;X2|X3) = {getattr(b, 'value', None)}"


def c7_translations():
    def gold(name):
        return (GOLDEN / name).read_text().rstrip("\n")
    indep = lf_combine([(1, lf_entropy(3, 1)), (1, lf_entropy(3, 2)), (1, lf_entropy(3, 4)),
                        (-1, lf_entropy(3, 7))])
    ok = to_minor_inequality(indep).text == gold("hadamard3.txt")
    ok &= to_minor_inequality(zy98_form()).text == gold("zy98_minor.txt")
    ok &= to_group_inequality(zy98_form()).text == gold("zy98_group.txt")
    try:
        to_minor_inequality(LinForm(2, {3: 1, 2: -1}))
        ok = False
    except Unbalanced:
        pass
    return ok, "Hadamard, ZY98 minor and group forms byte-identical; h(X|Y) rejected as unbalanced"


def c8_classical():
    w = amgm_witness(5, 4)
    ok = (w.x, w.y) == (8, 2) and w.point() == (5, 4)
    ok &= markov_witness(1, F(1, 2), 1).atoms == ((0, F(1, 2)), (2, F(1, 2)))
    ok &= markov_member(1, 0, F(3, 2)) is Membership.EXCLUDED_BOUNDARY
    x, y, z = cs_witness(1, 1, F(1, 2), 2).point()
    ok &= max(abs(float(x) - 1), abs(float(y) - 1), abs(float(z) - 0.5)) <= ROUNDTRIP_TOL
    ok &= not cs_member(1, 1, F(1, 2), 1) and cs_member(1, 1, F(1, 2), 2)
    return ok, "AM-GM (8,2), Markov atoms and exclusion, Cauchy-Schwarz witness and dimension split"


def _rat(rng, hi=10, den=50):
    return F(rng.randint(0, hi * den), rng.randint(1, den))


def c9_fuzz():
    rng = random.Random(11)
    worst = {"amgm": 0.0, "markov": 0.0, "cs": 0.0}
    exact_fail = 0
    for _ in range(N_FUZZ):
        a, g = _rat(rng), _rat(rng)
        a, g = max(a, g), min(a, g)
        ra, rg = amgm_witness(a, g).point()
        worst["amgm"] = max(worst["amgm"], abs(float(ra - a)), abs(float(rg) - float(g)))
        if isinstance(rg, F) and (ra, rg) != (a, g):
            exact_fail += 1

        c = _rat(rng, 5) + F(1, 100)
        p = F(rng.randint(0, 100), 100)
        m = c * p + _rat(rng)
        if markov_member(c, p, m) is Membership.ACHIEVABLE:
            exact_fail += markov_witness(c, p, m).point(c) != (p, m)

        dim = rng.randint(1, 4)
        x, y = _rat(rng), _rat(rng)
        if dim == 1:
            x, y = x * x, y * y
            z = rng.choice((-1, 1)) * sqrt(x) * sqrt(y)
        else:
            z = F(rng.randint(-100, 100), 100) * min(x, y)
        rx, ry, rz = cs_witness(x, y, z, dim).point()
        worst["cs"] = max(worst["cs"], abs(float(rx - x)), abs(float(ry - y)), abs(float(rz - z)))
    ok = exact_fail == 0 and max(worst.values()) <= ROUNDTRIP_TOL
    return ok, f"{N_FUZZ} points per family; exact mismatches {exact_fail}; max float error {worst}"


COMMANDS = [
    ["prove", "I(X1;X2) >= 0"],
    ["prove", "2 I(X3;X4) <= I(X1;X2) + I(X1;X3,X4) + 3 I(X3;X4|X1) + I(X3;X4|X2)"],
    ["prove", "2 I(X3;X4) <= I(X1;X2) + I(X1;X3,X4) + 3 I(X3;X4|X1) + I(X3;X4|X2)",
     "--augment", "zy98", "--json"],
    ["implies", "--premise", "X1 _|_ X3 | X2", "--premise", "X1 _|_ X2", "--conclusion", "X1 _|_ X3"],
    ["implies", "--premise", "X1 _|_ X2", "--conclusion", "X1 _|_ X2 | X3", "--json"],
    ["witness", "amgm", "5", "4", "--json"],
    ["witness", "cs", "1", "1", "1/2", "2"],
    ["disprove", "H(X1) >= H(X1,X2)", "--seed", "5"],
]


def _cli(argv, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run([sys.executable, "-m", "ineqlab", *argv], capture_output=True, env=env)


def c10_determinism():
    same = 0
    for argv in COMMANDS:
        a, b = _cli(argv, 1), _cli(argv, 2)
        same += a.stdout == b.stdout and a.returncode == b.returncode and a.stdout != b""
    opts = SearchOptions(structured=False, restarts=3)
    b = LinForm(2, {1: 1, 3: -1})
    r1 = search_counterexample(b, seed=9, options=opts)
    r2 = search_counterexample(b, seed=9, options=opts)
    seeded = r1 is not None and np.array_equal(r1[0].table, r2[0].table) and r1[1] == r2[1]
    return same == len(COMMANDS) and seeded, (f"{same}/{len(COMMANDS)} commands byte-identical "
                                              f"across runs; seeded search reproducible: {seeded}")


CRITERIA = [
    (1, "Shannon-type proofs", c1_shannon_proofs),
    (2, "ZY98 not Shannon, proved when augmented", c2_zy98),
    (3, "ZY97 constrained not Shannon", c3_zy97),
    (4, "ZY98 validity on pmfs and groups", c4_zy98_validity),
    (5, "polymatroid / basic equivalence", c5_polymatroid),
    (6, "CI implication", c6_ci_implication),
    (7, "translation goldens", c7_translations),
    (8, "classical witnesses", c8_classical),
    (9, "fuzzed witness round-trips", c9_fuzz),
    (10, "determinism", c10_determinism),
]


def _line(num, name, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {num} ({name}): {detail}"


@pytest.mark.parametrize("num,name,check", CRITERIA, ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(num, name, check):
    from conftest import ACCEPTANCE_LINES
    ok, detail = check()
    line = _line(num, name, ok, detail)
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for num, name, check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(_line(num, name, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
