"""Shannon-type inequality prover.

``verify(b, Q)`` decides whether ``b.h >= 0`` holds on the cone
``{h : G h >= 0, Q h = 0}`` where G is the elemental rows (optionally with
non-Shannon rows appended). It solves the dual feasibility problem

    b = sum_i lam_i G_i + sum_j mu_j Q_j,   lam >= 0

with the exact simplex in :mod:`ineqlab.lp`. A feasible solution is a proof
certificate; infeasibility yields a Farkas ray r with G r >= 0, Q r = 0 and
b.r < 0, i.e. a point of the cone where the inequality fails.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence, Union

from .cone import AUGMENTATIONS, ConstraintRow, IneqRow, constraint_ci, elemental
from .core import ContextMismatch, LinForm, full_set, lf_mutual
from .lp import solve_feasibility
from .parser import CI, format_rational

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Certificate:
    """``b = sum lam_i rows_i + sum mu_j constraints_j`` with ``lam >= 0``."""
    lam: tuple[Fraction, ...]
    mu: tuple[Fraction, ...]
    rows: tuple[IneqRow, ...] = field(repr=False, default=())
    constraints: tuple[ConstraintRow, ...] = field(repr=False, default=())

    def terms(self) -> list[tuple[str, Fraction]]:
        """Nonzero multipliers as ``(row label, value)`` pairs, cone rows first."""
        out = [(r.label, v) for r, v in zip(self.rows, self.lam) if v]
        out += [(q.label, v) for q, v in zip(self.constraints, self.mu) if v]
        return out

    def to_json(self) -> list[list[str]]:
        return [[label, format_rational(v)] for label, v in self.terms()]


@dataclass(frozen=True)
class Proved:
    certificate: Certificate


@dataclass(frozen=True)
class ProvedAugmented:
    certificate: Certificate


@dataclass(frozen=True)
class NotImpliedByCone:
    ray: tuple[Fraction, ...]
    value: Fraction  # b . ray, always < 0


@dataclass(frozen=True)
class Disproved:
    witness: object  # models.JointPMF
    value: float


@dataclass(frozen=True)
class Unknown:
    pass


Verdict = Union[Proved, ProvedAugmented, NotImpliedByCone, Disproved, Unknown]


def verdict_name(v) -> str:
    return {
        Proved: "proved", ProvedAugmented: "proved-augmented",
        NotImpliedByCone: "not-implied-by-cone", Disproved: "disproved",
        Unknown: "unknown", Implied: "implied", NotImplied: "not-implied",
    }[type(v)]


# -- certificate checking ---------------------------------------------------

def check_certificate(b: LinForm, cert: Certificate,
                      G: Sequence[IneqRow] | None = None,
                      Q: Sequence[ConstraintRow] | None = None) -> bool:
    """Exact check of the certificate identity and of lam >= 0."""
    G = cert.rows if G is None else G
    Q = cert.constraints if Q is None else Q
    if len(cert.lam) != len(G) or len(cert.mu) != len(Q):
        return False
    if any(v < 0 for v in cert.lam):
        return False
    acc: dict[int, Fraction] = {}
    for coeff, row in list(zip(cert.lam, G)) + list(zip(cert.mu, Q)):
        if coeff:
            if row.form.n != b.n:
                return False
            for mask, c in row.form.items():
                acc[mask] = acc.get(mask, 0) + coeff * c
    return LinForm(b.n, acc) == b


def check_ray(b: LinForm, ray: Sequence[Fraction], G: Sequence[IneqRow],
              Q: Sequence[ConstraintRow]) -> bool:
    """G r >= 0, Q r = 0 and b.r < 0, exactly."""
    if len(ray) != full_set(b.n):
        return False

    def dot(f: LinForm) -> Fraction:
        return sum((c * ray[mask - 1] for mask, c in f.items()), Fraction(0))

    return (all(dot(r.form) >= 0 for r in G) and all(dot(q.form) == 0 for q in Q)
            and dot(b) < 0)


# -- the LP ---------------------------------------------------------------------

def _primitive(vec: list[Fraction]) -> tuple[Fraction, ...]:
    """Positive rescaling to coprime integers."""
    den = 1
    for v in vec:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    g = g or 1
    return tuple(Fraction(v // g) for v in ints)


def _solve(b: LinForm, G: Sequence[IneqRow], Q: Sequence[ConstraintRow]):
    k = full_set(b.n)
    m, q = len(G), len(Q)
    # columns: lam (m), mu+ (q), mu- (q); one equation per coordinate
    A = [[Fraction(0)] * (m + 2 * q) for _ in range(k)]
    for j, row in enumerate(G):
        for mask, c in row.form.items():
            A[mask - 1][j] = c
    for j, row in enumerate(Q):
        for mask, c in row.form.items():
            A[mask - 1][m + j] = c
            A[mask - 1][m + q + j] = -c
    res = solve_feasibility(A, b.dense())
    log.debug("phase-one: %d pivots, feasible=%s", res.pivots, res.feasible)
    if res.feasible:
        x = res.x
        mu = tuple(x[m + j] - x[m + q + j] for j in range(q))
        return Certificate(tuple(x[:m]), mu, tuple(G), tuple(Q))
    return _primitive(res.farkas)


def verify(b: LinForm, Q: Sequence[ConstraintRow] = (), augment: str = "none",
           extra_rows: Sequence[IneqRow] = ()) -> Verdict:
    """Decide b >= 0 over the Shannon cone intersected with ``Q h = 0``.

    With ``augment="zy98"`` the non-Shannon rows are tried only after the
    Shannon cone alone fails, so ``ProvedAugmented`` means they were needed.
    """
    for row in Q:
        if row.form.n != b.n:
            raise ContextMismatch(f"constraint over n={row.form.n}, objective over n={b.n}")
    if augment not in AUGMENTATIONS:
        raise ValueError(f"unknown augmentation {augment!r}")
    G = elemental(b.n) + list(extra_rows)
    out = _solve(b, G, Q)
    if isinstance(out, Certificate):
        return Proved(out)
    extra = AUGMENTATIONS[augment](b.n)
    if extra:
        G = G + extra
        out = _solve(b, G, Q)
        if isinstance(out, Certificate):
            return ProvedAugmented(out)
    value = sum((c * out[mask - 1] for mask, c in b.items()), Fraction(0))
    return NotImpliedByCone(out, value)


def cone_rows(n: int, augment: str = "none") -> list[IneqRow]:
    return elemental(n) + AUGMENTATIONS[augment](n)


# -- disproof -----------------------------------------------------------------------

def disprove(b: LinForm, Q: Sequence[ConstraintRow] = (), alphabets=None,
             budget: int | None = None, seed: int = 0, jobs: int = 1) -> Verdict:
    """Search for a distribution with b.h < -1e-6 bits satisfying Q within 1e-9."""
    from .models.search import DEFAULT_BUDGET, search_counterexample

    found = search_counterexample(b, Q, alphabets=alphabets,
                                  budget=DEFAULT_BUDGET if budget is None else budget,
                                  seed=seed, jobs=jobs)
    if found is None:
        return Unknown()
    pmf, value = found
    return Disproved(pmf, value)


# -- conditional independence implication --------------------------------------------

@dataclass(frozen=True)
class Implied:
    certificate: Certificate


@dataclass(frozen=True)
class NotImplied:
    witness: object  # models.JointPMF
    value: float  # I_K of the witness, bits


ImplicationVerdict = Union[Implied, NotImplied, Unknown]


def _ci_n(cis: Sequence[CI]) -> int:
    support = 0
    for ci in cis:
        if not ci.left or not ci.right:
            raise ValueError(f"malformed CI {ci}: both sides must be nonempty")
        if ci.left & ci.right or ci.left & ci.cond or ci.right & ci.cond:
            raise ValueError(f"malformed CI {ci}: sets must be pairwise disjoint")
        support |= ci.left | ci.right | ci.cond
    return max(support.bit_length(), 1)


def implies(premises: Sequence[CI], conclusion: CI, n: int | None = None,
            search: bool = True, budget: int | None = None, seed: int = 0,
            alphabets=None) -> ImplicationVerdict:
    """Does the premise set of CIs force the conclusion?

    Implied is sound (proved over the Shannon cone). NotImplied carries a
    distribution satisfying every premise with the conclusion's conditional
    mutual information bounded away from zero. Anything else is Unknown.
    """
    n = max(n or 0, _ci_n(list(premises) + [conclusion]))
    Q = [constraint_ci(n, p.left, p.right, p.cond) for p in premises]
    target = lf_mutual(n, conclusion.left, conclusion.right, conclusion.cond)
    verdict = verify(-target, Q)
    if isinstance(verdict, Proved):
        return Implied(verdict.certificate)
    if search:
        found = disprove(-target, Q, alphabets=alphabets, budget=budget, seed=seed)
        if isinstance(found, Disproved):
            return NotImplied(found.witness, -found.value)
    return Unknown()
