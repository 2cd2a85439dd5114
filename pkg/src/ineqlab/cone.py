"""Rows of the Shannon cone, linear constraints on entropies, and the
non-Shannon database (ZY97 constrained, ZY98 unconstrained)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Sequence, Union

from .core import (
    MAX_VARS,
    EntropyError,
    LinForm,
    full_set,
    lf_combine,
    lf_cond_entropy,
    lf_mutual,
    mask_label,
    members,
    subsets,
    varset,
)
from .parser import format_form


# -- provenance tags ------------------------------------------------------------

@dataclass(frozen=True)
class CondEntropy:
    i: int

    def label(self, n: int) -> str:
        rest = [str(j) for j in range(1, n + 1) if j != self.i]
        return f"H({self.i}|{{{','.join(rest)}}})" if rest else f"H({self.i})"


@dataclass(frozen=True)
class CondMutual:
    i: int
    j: int
    K: int

    def label(self, n: int) -> str:
        if not self.K:
            return f"I({self.i};{self.j})"
        return f"I({self.i};{self.j}|{{{','.join(map(str, members(self.K)))}}})"


@dataclass(frozen=True)
class NonShannon:
    name: str
    assignment: tuple[int, ...]

    def label(self, n: int) -> str:
        return f"{self.name}[{','.join(map(str, self.assignment))}]"


Provenance = Union[CondEntropy, CondMutual, NonShannon]


@dataclass(frozen=True)
class IneqRow:
    """``form >= 0``."""
    form: LinForm
    provenance: Provenance

    @property
    def label(self) -> str:
        kind = "elemental" if not isinstance(self.provenance, NonShannon) else "non-shannon"
        return f"{kind} {self.provenance.label(self.form.n)}"

    def render(self) -> str:
        return f"{format_form(self.form)} >= 0  # {self.label}"


@dataclass(frozen=True)
class ConstraintRow:
    """``form = 0``."""
    form: LinForm
    provenance: str

    @property
    def label(self) -> str:
        return self.provenance

    def render(self) -> str:
        return f"{format_form(self.form)} = 0  # {self.label}"


def _check_n(n: int, lo: int = 1) -> None:
    if not lo <= n <= MAX_VARS:
        raise EntropyError(f"n={n} outside {lo}..{MAX_VARS}")


# -- elemental inequalities ------------------------------------------------------

def num_elemental(n: int) -> int:
    return n + comb(n, 2) * 2 ** (n - 2) if n >= 2 else n


def elemental(n: int) -> list[IneqRow]:
    """H(X_i | X_rest) >= 0 for each i, then I(X_i; X_j | X_K) >= 0 for i < j."""
    _check_n(n)
    everything = full_set(n)
    rows = []
    for i in range(1, n + 1):
        bit = 1 << (i - 1)
        rows.append(IneqRow(lf_cond_entropy(n, bit, everything ^ bit), CondEntropy(i)))
    for i, j in combinations(range(1, n + 1), 2):
        a, b = 1 << (i - 1), 1 << (j - 1)
        for K in subsets(everything ^ a ^ b):
            rows.append(IneqRow(lf_mutual(n, a, b, K), CondMutual(i, j, K)))
    return rows


def basic_inequalities(n: int) -> list[LinForm]:
    """Every distinct form H(a), I(a;b), H(a|c), I(a;b|c) >= 0 over disjoint sets.

    Exponentially redundant; meant for tests and exhaustive checks at small n.
    """
    _check_n(n)
    seen: dict[LinForm, None] = {}
    everything = full_set(n)
    for a in range(1, everything + 1):
        rest = everything ^ a
        for c in subsets(rest):
            seen.setdefault(lf_cond_entropy(n, a, c))
            for b in subsets(rest ^ c):
                if b:
                    seen.setdefault(lf_mutual(n, a, b, c))
    return list(seen)


# -- constraints ------------------------------------------------------------------

def _ci_label(a: int, b: int, c: int) -> str:
    s = f"I({mask_label(a)};{mask_label(b)}"
    return s + (f"|{mask_label(c)})" if c else ")")


def constraint_functional(n: int, i: int, alpha: int) -> ConstraintRow:
    """X_i is a function of X_alpha: H(X_i | X_alpha) = 0."""
    bit = 1 << (i - 1)
    if bit & alpha:
        raise EntropyError(f"variable {i} lies in the conditioning set")
    return ConstraintRow(lf_cond_entropy(n, bit, alpha), f"H({i}|{mask_label(alpha)})=0")


def constraint_ci(n: int, alpha: int, beta: int, gamma: int = 0) -> ConstraintRow:
    """X_alpha and X_beta conditionally independent given X_gamma."""
    return ConstraintRow(lf_mutual(n, alpha, beta, gamma), _ci_label(alpha, beta, gamma) + "=0")


def constraint_markov(n: int, chain: Sequence[int]) -> list[ConstraintRow]:
    """Markov chain over variable groups (bitmasks) in the given order."""
    if len(chain) < 3:
        raise EntropyError("a Markov chain needs at least three groups")
    seen = 0
    for g in chain:
        if not g or g & seen:
            raise EntropyError("Markov chain groups must be nonempty and disjoint")
        seen |= g
    rows = []
    for k in range(2, len(chain)):
        past = 0
        for g in chain[:k - 1]:
            past |= g
        rows.append(constraint_ci(n, past, chain[k], chain[k - 1]))
    return rows


def constraint_mutual_independence(n: int, variables: Sequence[int]) -> ConstraintRow:
    """H(X_all) = sum_i H(X_i), emitted as the single row h_all - sum h_i = 0."""
    if len(variables) < 2 or len(set(variables)) != len(variables):
        raise EntropyError("mutual independence needs at least two distinct variables")
    coeffs = {varset(variables): 1}
    for v in variables:
        coeffs[varset([v])] = -1
    return ConstraintRow(LinForm(n, coeffs), "indep(" + ",".join(map(str, variables)) + ")")


# -- non-Shannon database --------------------------------------------------------------

def zy98_form(n: int = 4, roles: Sequence[int] = (1, 2, 3, 4)) -> LinForm:
    """rhs - lhs of
    2 I(3;4) <= I(1;2) + I(1;3,4) + 3 I(3;4|1) + I(3;4|2)
    with the four roles played by the variables ``roles``."""
    a, b, c, d = (1 << (r - 1) for r in roles)
    return lf_combine([
        (1, lf_mutual(n, a, b)),
        (1, lf_mutual(n, a, c | d)),
        (3, lf_mutual(n, c, d, a)),
        (1, lf_mutual(n, c, d, b)),
        (-2, lf_mutual(n, c, d)),
    ])


def zy98_rows(n: int) -> list[IneqRow]:
    """One row per distinct instance over injective role assignments."""
    _check_n(n, lo=4)
    rows: dict[LinForm, IneqRow] = {}
    for roles in permutations(range(1, n + 1), 4):
        f = zy98_form(n, roles)
        if f not in rows:
            rows[f] = IneqRow(f, NonShannon("ZY98", roles))
    return list(rows.values())


def zy97_problem() -> tuple[list[ConstraintRow], LinForm]:
    """If I(1;2) = I(1;2|3) = 0 then I(3;4) <= I(3;4|1) + I(3;4|2)."""
    n = 4
    constraints = [constraint_ci(n, 0b0001, 0b0010), constraint_ci(n, 0b0001, 0b0010, 0b0100)]
    objective = lf_combine([
        (1, lf_mutual(n, 0b0100, 0b1000, 0b0001)),
        (1, lf_mutual(n, 0b0100, 0b1000, 0b0010)),
        (-1, lf_mutual(n, 0b0100, 0b1000)),
    ])
    return constraints, objective


AUGMENTATIONS = {"none": lambda n: [], "zy98": lambda n: zy98_rows(n) if n >= 4 else []}
