"""Achievable regions for AM-GM, Markov and Cauchy-Schwarz, with witnesses.

Regions, with exact rational membership tests:

* AM-GM: (a, g) = ((x+y)/2, sqrt(xy)) for some x, y >= 0; the region is
  g >= 0 and a >= g.
* Markov, for fixed c > 0: (p, m) = (Pr{T >= c}, E[T]) for some T >= 0;
  the region is 0 <= p <= 1 and m >= c p, minus the segment p = 0, m >= c.
* Cauchy-Schwarz in a real inner-product space of dimension d:
  (x, y, z) = (<u,u>, <v,v>, <u,v>); for d >= 2 the region is x, y >= 0 and
  z^2 <= xy, for d = 1 the boundary z^2 = xy only, for d = 0 the origin.

Square roots stay exact (``Fraction``) when the radicand is a rational square
and fall back to float otherwise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

import numpy as np

Number = Union[Fraction, float]


class NotInRegion(ValueError):
    pass


class NotAchievable(NotInRegion):
    pass


class Membership(enum.Enum):
    ACHIEVABLE = "achievable"
    EXCLUDED_BOUNDARY = "excluded-boundary"
    OUTSIDE = "outside"


def as_rational(v) -> Fraction:
    if isinstance(v, float):
        return Fraction(v)
    return Fraction(v)


def sqrt(v: Fraction) -> Number:
    """Exact root for squares of rationals, float otherwise."""
    if v < 0:
        raise ValueError("square root of a negative number")
    rn, rd = math.isqrt(v.numerator), math.isqrt(v.denominator)
    if rn * rn == v.numerator and rd * rd == v.denominator:
        return Fraction(rn, rd)
    return math.sqrt(v)


def _json_number(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return v
    return float(v)


# -- AM-GM -------------------------------------------------------------------------

@dataclass(frozen=True)
class AMGMWitness:
    x: Number
    y: Number

    def point(self) -> tuple[Number, Number]:
        prod = self.x * self.y
        g = sqrt(prod) if isinstance(prod, Fraction) else math.sqrt(prod)
        return (self.x + self.y) / 2, g

    def to_json(self) -> dict:
        return {"x": _json_number(self.x), "y": _json_number(self.y)}


def amgm_member(a, g) -> bool:
    a, g = as_rational(a), as_rational(g)
    return g >= 0 and a >= g


def amgm_witness(a, g) -> AMGMWitness:
    """x = a + sqrt(a^2 - g^2), y = a - sqrt(a^2 - g^2), with x >= y."""
    a, g = as_rational(a), as_rational(g)
    if not amgm_member(a, g):
        raise NotInRegion(f"({a}, {g}) is not in the AM-GM region")
    r = sqrt(a * a - g * g)
    if isinstance(r, Fraction):
        return AMGMWitness(a + r, a - r)
    af = float(a)
    x = af + r
    # y = g^2 / x avoids cancellation when r is close to a
    y = float(g * g) / x if x > 0 else 0.0
    return AMGMWitness(x, y)


def amgm_linear_valid(ca, cg, c0) -> bool:
    """Is ca*AM + cg*GM + c0 >= 0 on the whole region? (apex (0,0), rays (1,1), (1,0))"""
    ca, cg, c0 = map(as_rational, (ca, cg, c0))
    return c0 >= 0 and ca + cg >= 0 and ca >= 0


# -- Markov ------------------------------------------------------------------------

@dataclass(frozen=True)
class MarkovWitness:
    atoms: tuple[tuple[Number, Number], ...]  # (value, probability)

    def point(self, c) -> tuple[Number, Number]:
        c = as_rational(c)
        p = sum((q for v, q in self.atoms if v >= c), Fraction(0))
        m = sum((v * q for v, q in self.atoms), Fraction(0))
        return p, m

    def to_json(self) -> dict:
        return {"atoms": [[_json_number(v), _json_number(q)] for v, q in self.atoms]}


def _check_c(c) -> Fraction:
    c = as_rational(c)
    if c <= 0:
        raise ValueError(f"Markov threshold c must be positive, got {c}")
    return c


def markov_member(c, p, m) -> Membership:
    c = _check_c(c)
    p, m = as_rational(p), as_rational(m)
    if p < 0 or p > 1 or m < c * p:
        return Membership.OUTSIDE
    if p == 0 and m >= c:
        return Membership.EXCLUDED_BOUNDARY
    return Membership.ACHIEVABLE


def markov_witness(c, p, m) -> MarkovWitness:
    """Two atoms {0: 1-p, m/p: p}, or the point mass at m when p = 0."""
    status = markov_member(c, p, m)
    if status is not Membership.ACHIEVABLE:
        raise NotAchievable(f"(p={p}, m={m}) is {status.value} for c={c}")
    p, m = as_rational(p), as_rational(m)
    if p == 0:
        return MarkovWitness(((m, Fraction(1)),))
    if p == 1:
        return MarkovWitness(((m, Fraction(1)),))
    return MarkovWitness(((Fraction(0), 1 - p), (m / p, p)))


@dataclass(frozen=True)
class MarkovValidity:
    valid: bool
    fails_only_on_excluded: bool


def markov_linear_valid(ap, am, a0, c) -> MarkovValidity:
    """Is ap*p + am*m + a0 >= 0 on the region? (vertices (0,0), (1,c), ray (0,1))

    The achievable set is dense in its closure, so an affine function that
    fails somewhere on the closure also fails at an achievable point; the
    second flag is therefore always False.
    """
    c = _check_c(c)
    ap, am, a0 = map(as_rational, (ap, am, a0))
    ok = a0 >= 0 and ap + am * c + a0 >= 0 and am >= 0
    return MarkovValidity(ok, False)


# -- Cauchy-Schwarz ----------------------------------------------------------------

@dataclass(frozen=True)
class CSWitness:
    u: tuple[Number, ...]
    v: tuple[Number, ...]

    def point(self) -> tuple[Number, Number, Number]:
        def dot(a, b):
            return sum((s * t for s, t in zip(a, b)), Fraction(0))
        return dot(self.u, self.u), dot(self.v, self.v), dot(self.u, self.v)

    def to_json(self) -> dict:
        return {"u": [_json_number(s) for s in self.u], "v": [_json_number(s) for s in self.v]}


def cs_member(x, y, z, dim: int) -> bool:
    x, y, z = map(as_rational, (x, y, z))
    if dim < 0:
        raise ValueError("dimension must be nonnegative")
    if dim == 0:
        return x == y == z == 0
    if x < 0 or y < 0:
        return False
    return z * z == x * y if dim == 1 else z * z <= x * y


def _pad(vals, dim) -> tuple:
    return tuple(vals) + (Fraction(0),) * (dim - len(vals))


def cs_witness(x, y, z, dim: int) -> CSWitness:
    """u = sqrt(x) e1 and v = (z/x) u + sqrt(y - z^2/x) e2; u = 0 when x = 0."""
    if not cs_member(x, y, z, dim):
        raise NotAchievable(f"({x}, {y}, {z}) is not achievable in dimension {dim}")
    x, y, z = map(as_rational, (x, y, z))
    if dim == 0:
        return CSWitness((), ())
    if x == 0:
        return CSWitness(_pad([], dim), _pad([sqrt(y)], dim))
    sx = sqrt(x)
    if dim == 1:
        sy = sqrt(y)
        return CSWitness((sx,), (sy if z >= 0 else -sy,))
    if isinstance(sx, Fraction):
        first = z / sx
    else:
        first = float(z) / sx
    return CSWitness(_pad([sx], dim), _pad([first, sqrt(y - z * z / x)], dim))


# -- nonlinear falsifier ---------------------------------------------------------

def _sample_amgm(rng, k):
    xy = rng.exponential(size=(k, 2)) * rng.choice([1e-3, 1.0, 1e3], size=(k, 1))
    return np.column_stack([xy.mean(axis=1), np.sqrt(xy.prod(axis=1))])


def _sample_markov(rng, k, c):
    p = rng.uniform(0, 1, size=k)
    p[rng.uniform(size=k) < 0.05] = 1.0
    m = c * p + rng.exponential(size=k) * rng.choice([0.0, 1e-3, 1.0, 10.0], size=k)
    zero = rng.uniform(size=k) < 0.05
    p[zero], m[zero] = 0.0, rng.uniform(0, c, size=zero.sum())
    return np.column_stack([p, m])


def _sample_cs(rng, k, dim):
    if dim == 0:
        return np.zeros((k, 3))
    u, v = rng.normal(size=(k, dim)), rng.normal(size=(k, dim))
    return np.column_stack([(u * u).sum(1), (v * v).sum(1), (u * v).sum(1)])


def falsify(region: str, f: Callable, samples: int = 100_000, seed: int = 0,
            c: float = 1.0, dim: int = 2):
    """Sample achievable points and return the first one with f(point) < 0, or None.

    Only a falsifier: None is evidence, not proof, that f >= 0 on the region.
    """
    rng = np.random.default_rng(seed)
    if region == "amgm":
        pts = _sample_amgm(rng, samples)
    elif region == "markov":
        pts = _sample_markov(rng, samples, c)
    elif region == "cs":
        pts = _sample_cs(rng, samples, dim)
    else:
        raise ValueError(f"unknown region {region!r}")
    for pt in pts:
        if f(*pt) < 0:
            return tuple(float(v) for v in pt)
    return None


# -- uniform front end -------------------------------------------------------------

@dataclass(frozen=True)
class RegionPoint:
    region: str
    coords: tuple[Fraction, ...]
    membership: Membership
    witness: object | None

    def to_json(self) -> dict:
        out = {"region": self.region, "point": [_json_number(v) for v in self.coords],
               "membership": self.membership.value}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def region_point(region: str, *args) -> RegionPoint:
    """Membership and (when achievable) a witness.

    Arguments: ``amgm a g``, ``markov c p m``, ``cs x y z dim``.
    """
    if region == "amgm":
        a, g = map(as_rational, args)
        if amgm_member(a, g):
            return RegionPoint(region, (a, g), Membership.ACHIEVABLE, amgm_witness(a, g))
        return RegionPoint(region, (a, g), Membership.OUTSIDE, None)
    if region == "markov":
        c, p, m = map(as_rational, args)
        status = markov_member(c, p, m)
        wit = markov_witness(c, p, m) if status is Membership.ACHIEVABLE else None
        return RegionPoint(region, (c, p, m), status, wit)
    if region == "cs":
        x, y, z = map(as_rational, args[:3])
        dim = int(args[3])
        if cs_member(x, y, z, dim):
            return RegionPoint(region, (x, y, z, Fraction(dim)), Membership.ACHIEVABLE,
                               cs_witness(x, y, z, dim))
        return RegionPoint(region, (x, y, z, Fraction(dim)), Membership.OUTSIDE, None)
    raise ValueError(f"unknown region {region!r}")
