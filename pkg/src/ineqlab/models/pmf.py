"""Joint distributions of n discrete variables and their entropy vectors (bits)."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Sequence

import mpmath
import numpy as np

from ..core import MAX_VARS, full_set, members

SUM_TOL = 1e-12


class InvalidPMF(ValueError):
    pass


class JointPMF:
    """Probability table over the product alphabet; axis ``i-1`` is variable ``i``."""

    def __init__(self, table, alphabets: Sequence[int] | None = None):
        table = np.asarray(table, dtype=float)
        if alphabets is not None:
            table = table.reshape(tuple(alphabets))
        if not 1 <= table.ndim <= MAX_VARS:
            raise InvalidPMF(f"need 1..{MAX_VARS} variables, got {table.ndim}")
        if np.any(table < 0) or not np.all(np.isfinite(table)):
            raise InvalidPMF("probabilities must be finite and nonnegative")
        if abs(table.sum() - 1.0) > SUM_TOL:
            raise InvalidPMF(f"probabilities sum to {table.sum()!r}, not 1")
        self.table = table
        self.table.setflags(write=False)

    @property
    def n(self) -> int:
        return self.table.ndim

    @property
    def alphabets(self) -> tuple[int, ...]:
        return self.table.shape

    def marginal(self, alpha: int) -> np.ndarray:
        keep = {i - 1 for i in members(alpha)}
        drop = tuple(ax for ax in range(self.n) if ax not in keep)
        return self.table.sum(axis=drop)

    def __eq__(self, other) -> bool:
        return isinstance(other, JointPMF) and np.array_equal(self.table, other.table)

    def __repr__(self) -> str:
        return f"JointPMF(alphabets={self.alphabets})"

    def to_text(self) -> str:
        lines = [" ".join(map(str, (self.n,) + self.alphabets))]
        lines += [repr(float(v)) for v in self.table.ravel()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"alphabets": list(self.alphabets), "p": [float(v) for v in self.table.ravel()]}


def entropy(probs: np.ndarray) -> float:
    q = probs[probs > 0]
    return float(-(q * np.log2(q)).sum())


def entropy_vector(p: JointPMF) -> np.ndarray:
    """Joint entropies in canonical order h_1, h_2, h_12, h_3, ..."""
    return np.array([entropy(p.marginal(mask)) for mask in range(1, full_set(p.n) + 1)])


def entropy_vector_mp(p: JointPMF, dps: int = 40) -> list:
    """Extended-precision entropy vector (mpmath), used to re-check search hits."""
    with mpmath.workdps(dps):
        out = []
        for mask in range(1, full_set(p.n) + 1):
            keep = [i - 1 for i in members(mask)]
            cells: dict[tuple, mpmath.mpf] = {}
            for idx, v in np.ndenumerate(p.table):
                if v > 0:
                    key = tuple(idx[a] for a in keep)
                    cells[key] = cells.get(key, mpmath.mpf(0)) + mpmath.mpf(float(v))
            total = mpmath.fsum(cells.values())
            out.append(-mpmath.fsum(q / total * mpmath.log(q / total, 2) for q in cells.values()))
        return out


def random_pmf(n: int, alphabets: Sequence[int] | int = 2, seed=None) -> JointPMF:
    """Dirichlet(1) table, reproducible from ``seed``."""
    if isinstance(alphabets, int):
        alphabets = (alphabets,) * n
    if len(alphabets) != n:
        raise ValueError("one alphabet size per variable")
    rng = np.random.default_rng(seed)
    w = rng.dirichlet(np.ones(int(np.prod(alphabets))))
    w = w / w.sum()
    return JointPMF(w.reshape(tuple(alphabets)))


def uniform_over(n: int, atoms: Sequence[Sequence[int]], alphabets: Sequence[int] | None = None) -> JointPMF:
    """Uniform distribution over the listed outcomes (repeats add mass)."""
    atoms = [tuple(a) for a in atoms]
    if alphabets is None:
        alphabets = [max(a[i] for a in atoms) + 1 for i in range(n)]
    table = np.zeros(tuple(alphabets))
    for a in atoms:
        table[a] += 1.0
    return JointPMF(table / table.sum())


def read_pmf(path) -> JointPMF:
    """Header ``n k1 .. kn`` then one probability per line, row-major.

    Probabilities may be written as decimals or as fractions like ``1/3``.
    """
    words = Path(path).read_text().split()
    if not words:
        raise InvalidPMF("empty pmf file")
    n = int(words[0])
    alphabets = [int(w) for w in words[1:1 + n]]
    probs = [Fraction(w) for w in words[1 + n:]]
    if len(alphabets) != n or len(probs) != int(np.prod(alphabets)):
        raise InvalidPMF("pmf file: table size does not match header")
    if sum(probs) != 1 and abs(float(sum(probs)) - 1) > SUM_TOL:
        raise InvalidPMF("pmf file: probabilities do not sum to 1")
    return JointPMF(np.array([float(v) for v in probs]).reshape(alphabets))


def write_pmf(p: JointPMF, path) -> None:
    Path(path).write_text(p.to_text())
