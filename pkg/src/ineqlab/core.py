"""Entropy-space arithmetic.

Variables are numbered 1..n. A set of variables is an ``int`` bitmask where
bit ``i-1`` stands for variable ``i``, so the joint entropy coordinates
h_1, h_2, h_12, h_3, h_13, ... are simply the masks 1, 2, 3, 4, 5, ... and a
dense vector over the entropy space stores coordinate ``mask`` at position
``mask - 1``.

H of the empty set is identically zero (X_empty is a constant). The empty set
is therefore never a coordinate: ``lf_entropy`` rejects it and the other
expansions drop the corresponding term.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence, Union

MAX_VARS = 16

Number = Union[int, Fraction]


class EntropyError(ValueError):
    """Base class for malformed entropy-space requests."""


class EmptySet(EntropyError):
    pass


class DisjointnessViolated(EntropyError):
    pass


class ContextMismatch(EntropyError):
    pass


class DimensionMismatch(EntropyError):
    pass


# -- variable sets -----------------------------------------------------------

def varset(indices: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based variable indices."""
    mask = 0
    for i in indices:
        if not 1 <= i <= MAX_VARS:
            raise EntropyError(f"variable index {i} outside 1..{MAX_VARS}")
        mask |= 1 << (i - 1)
    return mask


def members(mask: int) -> list[int]:
    """1-based indices contained in ``mask``, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def full_set(n: int) -> int:
    return (1 << n) - 1


def subsets(mask: int) -> Iterator[int]:
    """All subsets of ``mask`` (including 0 and mask itself), ascending."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def mask_label(mask: int) -> str:
    """Compact index string: ``12`` for {1,2}; braces once an index exceeds 9."""
    idx = members(mask)
    if all(i < 10 for i in idx):
        return "".join(str(i) for i in idx)
    return "{" + ",".join(str(i) for i in idx) + "}"


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_VARS:
        raise EntropyError(f"variable count {n} outside 1..{MAX_VARS}")


def _check_within(n: int, mask: int) -> None:
    if mask >> n:
        raise EntropyError(f"set {members(mask)} not contained in 1..{n}")


# -- linear forms -------------------------------------------------------------

class LinForm:
    """Exact linear form sum_a c_a h_a over the nonempty subsets of [n].

    Instances are immutable and hashable. Zero coefficients are never stored.
    """

    __slots__ = ("n", "_coeffs", "_hash")

    def __init__(self, n: int, coeffs: Mapping[int, Number] | None = None):
        _check_n(n)
        clean: dict[int, Fraction] = {}
        for mask, c in (coeffs or {}).items():
            if mask <= 0:
                raise EmptySet("the empty set is not an entropy coordinate")
            _check_within(n, mask)
            c = Fraction(c)
            if c:
                clean[mask] = c
        self.n = n
        self._coeffs = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> "LinForm":
        return cls(n)

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def __getitem__(self, mask: int) -> Fraction:
        return self._coeffs.get(mask, Fraction(0))

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinForm):
            return NotImplemented
        return self.n == other.n and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, tuple(self._coeffs.items())))
        return self._hash

    def _same_n(self, other: "LinForm") -> None:
        if self.n != other.n:
            raise ContextMismatch(f"forms over n={self.n} and n={other.n}")

    def __add__(self, other: "LinForm") -> "LinForm":
        self._same_n(other)
        out = dict(self._coeffs)
        for mask, c in other._coeffs.items():
            out[mask] = out.get(mask, 0) + c
        return LinForm(self.n, out)

    def __sub__(self, other: "LinForm") -> "LinForm":
        return self + (-other)

    def __neg__(self) -> "LinForm":
        return LinForm(self.n, {m: -c for m, c in self._coeffs.items()})

    def __mul__(self, scalar) -> "LinForm":
        if not isinstance(scalar, (int, Rational)):
            return NotImplemented
        s = Fraction(scalar)
        return LinForm(self.n, {m: s * c for m, c in self._coeffs.items()})

    __rmul__ = __mul__

    def lift(self, n: int) -> "LinForm":
        """The same form regarded over a larger variable count."""
        if n < self.n:
            raise ContextMismatch(f"cannot shrink n={self.n} form to n={n}")
        return LinForm(n, self._coeffs)

    def support(self) -> int:
        """Union of all variables mentioned."""
        out = 0
        for mask in self._coeffs:
            out |= mask
        return out

    def dense(self) -> list[Fraction]:
        """Coefficient vector in canonical coordinate order."""
        vec = [Fraction(0)] * full_set(self.n)
        for mask, c in self._coeffs.items():
            vec[mask - 1] = c
        return vec

    @classmethod
    def from_dense(cls, n: int, vec: Sequence[Number]) -> "LinForm":
        if len(vec) != full_set(n):
            raise DimensionMismatch(f"expected {full_set(n)} coordinates, got {len(vec)}")
        return cls(n, {i + 1: c for i, c in enumerate(vec) if c})

    def __repr__(self) -> str:
        from .parser import format_form
        return f"LinForm(n={self.n}, {format_form(self)!r})"


# -- Shannon measure expansions ---------------------------------------------

def _need_nonempty(mask: int, what: str) -> None:
    if mask == 0:
        raise EmptySet(f"{what} must be a nonempty variable set")


def lf_entropy(n: int, alpha: int) -> LinForm:
    """H(X_alpha) as the basis form h_alpha."""
    _need_nonempty(alpha, "H argument")
    return LinForm(n, {alpha: 1})


def lf_cond_entropy(n: int, alpha: int, gamma: int = 0) -> LinForm:
    """H(X_alpha | X_gamma) = h_{alpha u gamma} - h_gamma."""
    _need_nonempty(alpha, "H argument")
    if alpha & gamma:
        raise DisjointnessViolated("H(a|c) needs disjoint a and c")
    coeffs: dict[int, int] = {alpha | gamma: 1}
    if gamma:
        coeffs[gamma] = -1
    return LinForm(n, coeffs)


def lf_mutual(n: int, alpha: int, beta: int, gamma: int = 0) -> LinForm:
    """I(X_alpha; X_beta | X_gamma) expanded into joint entropies."""
    _need_nonempty(alpha, "I left argument")
    _need_nonempty(beta, "I right argument")
    if alpha & beta or alpha & gamma or beta & gamma:
        raise DisjointnessViolated("I(a;b|c) needs pairwise disjoint a, b, c")
    coeffs: dict[int, int] = {}
    for mask, c in ((alpha | gamma, 1), (beta | gamma, 1),
                    (alpha | beta | gamma, -1), (gamma, -1)):
        if mask:
            coeffs[mask] = coeffs.get(mask, 0) + c
    return LinForm(n, coeffs)


def lf_combine(terms: Iterable[tuple[Number, LinForm]]) -> LinForm:
    """Exact linear combination of forms sharing one variable count."""
    terms = list(terms)
    if not terms:
        raise ValueError("lf_combine needs at least one term to fix n")
    n = terms[0][1].n
    acc: dict[int, Fraction] = {}
    for scale, form in terms:
        if form.n != n:
            raise ContextMismatch(f"forms over n={n} and n={form.n}")
        s = Fraction(scale)
        for mask, c in form.items():
            acc[mask] = acc.get(mask, 0) + s * c
    return LinForm(n, acc)


def evaluate(f: LinForm, h: Sequence[float]) -> float:
    """f(h) for a dense vector h in canonical order (length 2**n - 1)."""
    if len(h) != full_set(f.n):
        raise DimensionMismatch(f"expected {full_set(f.n)} coordinates, got {len(h)}")
    total = 0.0
    for mask, c in f.items():
        total += float(c) * float(h[mask - 1])
    return total


def evaluate_exact(f: LinForm, h: Sequence[Number]) -> Fraction:
    if len(h) != full_set(f.n):
        raise DimensionMismatch(f"expected {full_set(f.n)} coordinates, got {len(h)}")
    return sum((c * Fraction(h[mask - 1]) for mask, c in f.items()), Fraction(0))


def is_balanced(f: LinForm) -> bool:
    """True iff, for every variable i, the coefficients of sets containing i sum to 0."""
    for i in range(f.n):
        bit = 1 << i
        if sum((c for mask, c in f.items() if mask & bit), Fraction(0)) != 0:
            return False
    return True
