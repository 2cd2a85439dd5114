"""Finite groups given by multiplication tables, with n designated subgroups.

Subsets of group elements are stored as int bitsets, so intersections and
orders are a single ``&`` and a popcount.
"""

from __future__ import annotations

from itertools import product
from math import lcm, log2
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from ..core import LinForm, full_set, members

MAX_ORDER = 512


class InvalidGroup(ValueError):
    pass


def _bits(elems: Iterable[int]) -> int:
    out = 0
    for e in elems:
        out |= 1 << e
    return out


def _elements(bits: int) -> list[int]:
    return [i for i in range(bits.bit_length()) if bits >> i & 1]


class FiniteGroup:
    """Group on elements 0..m-1 with ``table[a, b] = a*b``."""

    def __init__(self, table):
        t = np.asarray(table, dtype=np.int64)
        m = t.shape[0] if t.ndim == 2 else 0
        if t.ndim != 2 or t.shape != (m, m) or m == 0:
            raise InvalidGroup("multiplication table must be a nonempty square")
        if m > MAX_ORDER:
            raise InvalidGroup(f"order {m} exceeds {MAX_ORDER}")
        if t.min() < 0 or t.max() >= m:
            raise InvalidGroup("table entries must be element indices (closure)")
        ids = [e for e in range(m) if np.array_equal(t[e], np.arange(m))
               and np.array_equal(t[:, e], np.arange(m))]
        if not ids:
            raise InvalidGroup("no identity element")
        self.identity = ids[0]
        self.inverse = []
        for a in range(m):
            inv = np.flatnonzero(t[a] == self.identity)
            if len(inv) != 1 or t[inv[0], a] != self.identity:
                raise InvalidGroup(f"element {a} has no two-sided inverse")
            self.inverse.append(int(inv[0]))
        for row in t:
            if len(set(row.tolist())) != m:
                raise InvalidGroup("table rows must be permutations")
        self.table = t
        self.order = m

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def is_associative(self) -> bool:
        t = self.table
        r = np.arange(self.order)
        return bool(np.array_equal(t[t], t[r[:, None, None], t[None, :, :]]))

    def closure(self, gens: Iterable[int]) -> int:
        """Bitset of the subgroup generated by ``gens``."""
        elems = {self.identity}
        frontier = list(set(gens))
        gens = list(frontier)
        elems.update(frontier)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = int(self.table[a, g])
                    if c not in elems:
                        elems.add(c)
                        nxt.append(c)
            frontier = nxt
        return _bits(elems)

    def check_subgroup(self, bits: int) -> None:
        elems = _elements(bits)
        if not elems or max(elems) >= self.order:
            raise InvalidGroup("subgroup elements out of range")
        if not bits >> self.identity & 1:
            raise InvalidGroup("subgroup lacks the identity")
        for a in elems:
            if not bits >> self.inverse[a] & 1:
                raise InvalidGroup(f"subgroup not closed under inverse of {a}")
            for b in elems:
                if not bits >> int(self.table[a, b]) & 1:
                    raise InvalidGroup(f"subgroup not closed under {a}*{b}")
        if self.order % len(elems):
            raise InvalidGroup(f"subgroup order {len(elems)} does not divide {self.order}")

    def subgroups(self) -> list[int]:
        """Every subgroup as a bitset: joins of cyclic subgroups, to a fixed point."""
        cyclic = {self.closure([a]) for a in range(self.order)}
        found = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            nxt = set()
            for h in frontier:
                for c in cyclic:
                    if h | c != h:
                        j = self.closure(_elements(h | c))
                        if j not in found:
                            found.add(j)
                            nxt.add(j)
            frontier = nxt
        return sorted(found, key=lambda s: (bin(s).count("1"), s))


class GroupSpec:
    """A finite group together with subgroups G_1..G_n."""

    def __init__(self, table, subgroups: Sequence[Iterable[int] | int]):
        self.group = table if isinstance(table, FiniteGroup) else FiniteGroup(table)
        subs = []
        for s in subgroups:
            bits = s if isinstance(s, int) else _bits(s)
            self.group.check_subgroup(bits)
            subs.append(bits)
        if not subs:
            raise InvalidGroup("need at least one subgroup")
        self.subgroups = tuple(subs)

    @property
    def n(self) -> int:
        return len(self.subgroups)

    @property
    def order(self) -> int:
        return self.group.order

    def intersection_order(self, alpha: int) -> int:
        bits = (1 << self.order) - 1
        for i in members(alpha):
            bits &= self.subgroups[i - 1]
        return bin(bits).count("1")

    def to_text(self) -> str:
        lines = [str(self.order)]
        lines += [" ".join(map(str, row)) for row in self.group.table.tolist()]
        lines += [" ".join(map(str, _elements(s))) for s in self.subgroups]
        return "\n".join(lines) + "\n"


def group_vector(g: GroupSpec) -> np.ndarray:
    """h_alpha = log2(|G| / |intersection of G_i, i in alpha|), canonical order."""
    return np.array([log2(g.order / g.intersection_order(a)) for a in range(1, full_set(g.n) + 1)])


def multiplicative_sides(b: LinForm, g: GroupSpec) -> tuple[int, int]:
    """Integer products (large, small) with ``b(h) >= 0`` iff ``large >= small``.

    Coefficients are cleared to integers e_a; each term contributes
    (|G| / |G_a|)^e_a, positive exponents to one product, negative to the other.
    """
    den = 1
    for _, c in b.items():
        den = lcm(den, c.denominator)
    large = small = 1
    for mask, c in b.items():
        e = int(c * den)
        num, dnm = g.order, g.intersection_order(mask)
        if e > 0:
            large *= num ** e
            small *= dnm ** e
        else:
            large *= dnm ** -e
            small *= num ** -e
    return large, small


def verify_group_multiplicative(b: LinForm, g: GroupSpec) -> bool:
    """Exact truth of sum_a c_a log(|G|/|G_a|) >= 0 via big-integer products."""
    if b.n > g.n:
        raise InvalidGroup(f"form over {b.n} variables, only {g.n} subgroups")
    large, small = multiplicative_sides(b, g)
    return large >= small


# -- builders ---------------------------------------------------------------------

def group_from_permutations(gens: Sequence[Sequence[int]]) -> FiniteGroup:
    """Permutation group generated by ``gens`` (tuples of images of 0..d-1)."""
    gens = [tuple(x) for x in gens]
    d = len(gens[0])
    ident = tuple(range(d))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                c = tuple(a[s[i]] for i in range(d))
                if c not in index:
                    index[c] = len(elems)
                    elems.append(c)
                    nxt.append(c)
        frontier = nxt
    m = len(elems)
    if m > MAX_ORDER:
        raise InvalidGroup(f"generated group has order {m} > {MAX_ORDER}")
    table = np.empty((m, m), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            table[i, j] = index[tuple(a[b[k]] for k in range(d))]
    return FiniteGroup(table)


def cyclic(m: int) -> FiniteGroup:
    r = np.arange(m)
    return FiniteGroup((r[:, None] + r[None, :]) % m)


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    ma, mb = a.order, b.order
    table = np.empty((ma * mb, ma * mb), dtype=np.int64)
    for (x1, y1), (x2, y2) in product(product(range(ma), range(mb)), repeat=2):
        table[x1 * mb + y1, x2 * mb + y2] = a.table[x1, x2] * mb + b.table[y1, y2]
    return FiniteGroup(table)


def symmetric(d: int) -> FiniteGroup:
    if d == 1:
        return cyclic(1)
    cycle = tuple(list(range(1, d)) + [0])
    swap = tuple([1, 0] + list(range(2, d)))
    return group_from_permutations([cycle, swap])


def alternating(d: int) -> FiniteGroup:
    """Even permutations of d points, generated by the 3-cycles (0 1 i)."""
    gens = []
    for i in range(2, d):
        g = list(range(d))
        g[0], g[1], g[i] = 1, i, 0
        gens.append(tuple(g))
    return group_from_permutations(gens) if gens else cyclic(1)


def dihedral(k: int) -> FiniteGroup:
    """Symmetries of a k-gon, order 2k."""
    rot = tuple((i + 1) % k for i in range(k))
    ref = tuple((-i) % k for i in range(k))
    return group_from_permutations([rot, ref])


def quaternion() -> FiniteGroup:
    # regular representation of Q8 on {±1, ±i, ±j, ±k}, encoded 0..7
    names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    base = {("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
            ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
            ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"}

    def mul(a: str, b: str) -> str:
        sa, ua = (a[0] == "-"), a.lstrip("-")
        sb, ub = (b[0] == "-"), b.lstrip("-")
        if ua == "1":
            r = ub
        elif ub == "1":
            r = ua
        else:
            r = base[(ua, ub)]
        neg = (sa ^ sb) ^ r.startswith("-")
        r = r.lstrip("-")
        return ("-" + r) if neg else r

    table = [[names.index(mul(a, b)) for b in names] for a in names]
    return FiniteGroup(table)


def small_groups(max_order: int = 24) -> dict[str, FiniteGroup]:
    """A fixed catalogue of small groups, abelian and not."""
    cat = {
        "C2": cyclic(2), "C3": cyclic(3), "C4": cyclic(4), "C6": cyclic(6),
        "C2xC2": direct_product(cyclic(2), cyclic(2)),
        "C2xC2xC2": direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)),
        "C4xC2": direct_product(cyclic(4), cyclic(2)),
        "C2xC6": direct_product(cyclic(2), cyclic(6)),
        "S3": symmetric(3), "D4": dihedral(4), "Q8": quaternion(), "D5": dihedral(5),
        "A4": alternating(4), "D6": dihedral(6), "C3xS3": direct_product(cyclic(3), symmetric(3)),
        "S4": symmetric(4), "C2xA4": direct_product(cyclic(2), alternating(4)),
        "C2xC2xC6": direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(6)),
        "C2xD6": direct_product(cyclic(2), dihedral(6)),
    }
    return {k: v for k, v in cat.items() if v.order <= max_order}


# -- file format -----------------------------------------------------------------

def read_group(path) -> GroupSpec:
    """Order m, then the m x m table, then one line per subgroup."""
    lines = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    m = int(lines[0][0])
    table = [[int(x) for x in row] for row in lines[1:1 + m]]
    subs = [[int(x) for x in row] for row in lines[1 + m:]]
    return GroupSpec(table, subs)


def write_group(g: GroupSpec, path) -> None:
    Path(path).write_text(g.to_text())
