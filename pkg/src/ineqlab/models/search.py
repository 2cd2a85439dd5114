"""Counterexample search over joint distributions.

Two phases. First an exhaustive sweep over GF(2)-linear configurations: each
X_i is a linear functional of k uniform bits (k <= 3), whose entropies are
matrix ranks, so the objective and constraints are evaluated exactly. Then
random restarts of adaptive coordinate descent on the probability simplex,
minimizing ``b.h(p) + w * sum_j |q_j.h(p)|`` with the penalty weight doubled
while the constraints stay violated.

Every candidate is re-evaluated at extended precision before acceptance.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from ..core import LinForm, full_set, members
from .pmf import JointPMF, entropy_vector_mp

log = logging.getLogger(__name__)

VIOLATION = 1e-6   # b.h must fall below -VIOLATION bits
CONSTRAINT_TOL = 1e-9
DEFAULT_BUDGET = 8
SNAP_GRIDS = (2, 3, 4, 6, 8, 12, 16)


@dataclass(frozen=True)
class SearchOptions:
    restarts: int = DEFAULT_BUDGET
    iterations: int = 4000
    penalty_rounds: int = 12
    structured: bool = True


def _dense(f: LinForm) -> np.ndarray:
    return np.array([float(c) for c in f.dense()])


def accept(b: LinForm, Q: Sequence, p: JointPMF) -> float | None:
    """Value of b at p when p qualifies as a counterexample (extended precision)."""
    h = entropy_vector_mp(p)
    value = float(sum(float(c) * h[m - 1] for m, c in b.items()))
    if value >= -VIOLATION:
        return None
    for q in Q:
        if abs(float(sum(float(c) * h[m - 1] for m, c in q.form.items()))) >= CONSTRAINT_TOL:
            return None
    return value


# -- phase one: linear configurations over GF(2) ---------------------------------

def _rank_gf2(vectors: list[int]) -> int:
    basis: list[int] = []
    for v in vectors:
        for bvec in basis:
            v = min(v, v ^ bvec)
        if v:
            basis.append(v)
    return len(basis)


def _linear_pmf(config: tuple[int, ...], k: int, alphabets: Sequence[int]) -> JointPMF:
    table = np.zeros(tuple(alphabets))
    for u in range(1 << k):
        idx = tuple(bin(u & v).count("1") & 1 for v in config)
        table[idx] += 1.0
    return JointPMF(table / table.sum())


def structured_search(b: LinForm, Q: Sequence, alphabets: Sequence[int]):
    """Best exact-rank counterexample among small linear configurations, or None."""
    n = b.n
    if min(alphabets) < 2 or n > 6:
        return None
    bs = list(b.items())
    qs = [list(q.form.items()) for q in Q]
    masks = range(1, full_set(n) + 1)
    best = None
    for k in (1, 2, 3):
        if k == 3 and n > 4:
            break
        for config in product(range(1 << k), repeat=n):
            rank = {m: _rank_gf2([config[i - 1] for i in members(m)]) for m in masks}
            val = sum(c * rank[m] for m, c in bs)
            if val >= 0 or any(sum(c * rank[m] for m, c in q) for q in qs):
                continue
            # lowest value; ties go to the least degenerate configuration
            key = (val, -sum(rank.values()))
            if best is None or key < best[0]:
                best = (key, config, k)
    if best is None:
        return None
    pmf = _linear_pmf(best[1], best[2], alphabets)
    value = accept(b, Q, pmf)
    return None if value is None else (pmf, value)


# -- phase two: local search --------------------------------------------------------

class _Evaluator:
    """All marginal entropies of a flat table with one bincount."""

    def __init__(self, alphabets: Sequence[int]):
        n = len(alphabets)
        grid = np.indices(alphabets).reshape(n, -1)
        self.size = grid.shape[1]
        idx, offsets, off = [], [], 0
        for mask in range(1, full_set(n) + 1):
            cell = np.zeros(self.size, dtype=np.int64)
            for i in members(mask):
                cell = cell * alphabets[i - 1] + grid[i - 1]
            idx.append(cell + off)
            offsets.append(off)
            off += int(np.prod([alphabets[i - 1] for i in members(mask)]))
        self.index = np.concatenate(idx)
        self.offsets = np.array(offsets)
        self.cells = off
        self.reps = full_set(n)

    def __call__(self, p: np.ndarray) -> np.ndarray:
        q = np.bincount(self.index, weights=np.tile(p, self.reps), minlength=self.cells)
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(q > 0, -q * np.log2(np.where(q > 0, q, 1.0)), 0.0)
        return np.add.reduceat(terms, self.offsets)


def _descend(p, score, rng, iterations):
    N = len(p)
    steps = np.full(N, 0.5)
    cur = score(p)
    for _ in range(iterations):
        if steps.max() < 1e-10:
            break
        i = int(rng.integers(N))
        improved = False
        for trial in _moves(p, i, steps[i], N):
            s = score(trial)
            if s < cur:
                p, cur, improved = trial, s, True
                break
        steps[i] = min(steps[i] * 1.5, 4.0) if improved else steps[i] * 0.5
    return p, cur


def _moves(p, i, step, N):
    for factor in (np.exp(step), np.exp(-step)):
        q = p.copy()
        q[i] = q[i] * factor if q[i] > 0 else step / N
        yield q / q.sum()
    if 0 < p[i] < 1e-3:
        q = p.copy()
        q[i] = 0.0
        if q.sum() > 0:
            yield q / q.sum()


def _snaps(p: np.ndarray):
    yield p
    q = np.where(p < 1e-6, 0.0, p)
    yield q / q.sum()
    for d in SNAP_GRIDS:
        r = np.round(q * d)
        if r.sum() > 0:
            yield r / r.sum()


def _restart(args):
    b_vec, q_mat, alphabets, seed_seq, opts, b, Q = args
    rng = np.random.default_rng(seed_seq)
    ev = _Evaluator(alphabets)
    p = rng.dirichlet(np.ones(ev.size))
    w = 1.0
    for _ in range(opts.penalty_rounds):
        def score(x, w=w):
            h = ev(x)
            return float(b_vec @ h + w * np.abs(q_mat @ h).sum()) if len(q_mat) else float(b_vec @ h)
        p, _ = _descend(p, score, rng, opts.iterations)
        h = ev(p)
        if not len(q_mat) or np.abs(q_mat @ h).max() < CONSTRAINT_TOL:
            break
        w *= 2.0
    for cand in _snaps(p):
        pmf = JointPMF(cand.reshape(alphabets))
        value = accept(b, Q, pmf)
        if value is not None:
            return pmf, value
    return None


def search_counterexample(b: LinForm, Q: Sequence = (), alphabets=None,
                          budget: int = DEFAULT_BUDGET, seed: int = 0, jobs: int = 1,
                          options: SearchOptions | None = None):
    """Return ``(pmf, value)`` with value = b.h(pmf) < -1e-6 and Q satisfied, or None.

    ``budget`` is the number of local-search restarts. Restart r uses the r-th
    child of ``SeedSequence(seed)``, and the lowest qualifying restart wins, so
    the result does not depend on ``jobs``.
    """
    n = b.n
    if alphabets is None:
        alphabets = (2,) * n
    elif isinstance(alphabets, int):
        alphabets = (alphabets,) * n
    alphabets = tuple(alphabets)
    if len(alphabets) != n:
        raise ValueError(f"need {n} alphabet sizes, got {len(alphabets)}")
    opts = options or SearchOptions(restarts=budget)

    if opts.structured:
        hit = structured_search(b, Q, alphabets)
        if hit is not None:
            return hit

    b_vec = _dense(b)
    q_mat = np.array([_dense(q.form) for q in Q]) if Q else np.zeros((0, full_set(n)))
    seeds = np.random.SeedSequence(seed).spawn(opts.restarts)
    tasks = [(b_vec, q_mat, alphabets, s, opts, b, list(Q)) for s in seeds]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for res in pool.map(_restart, tasks):
                if res is not None:
                    return res
        return None
    for r, task in enumerate(tasks):
        res = _restart(task)
        if res is not None:
            log.debug("restart %d qualified with value %.6g", r, res[1])
            return res
    return None
