import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ineqlab.classical import (Membership, NotAchievable, NotInRegion, amgm_linear_valid,
                               amgm_member, amgm_witness, cs_member, cs_witness, falsify,
                               markov_linear_valid, markov_member, markov_witness, region_point,
                               sqrt)

small = st.fractions(min_value=0, max_value=10, max_denominator=12)


def test_sqrt_fast_path():
    assert sqrt(F(9, 4)) == F(3, 2)
    assert isinstance(sqrt(F(2)), float)


def test_amgm_examples():
    assert amgm_member(5, 4) and not amgm_member(1, 2) and amgm_member(0, 0)
    w = amgm_witness(5, 4)
    assert (w.x, w.y) == (8, 2) and w.point() == (5, 4)
    assert (amgm_witness(2, 2).x, amgm_witness(2, 2).y) == (2, 2)
    with pytest.raises(NotInRegion):
        amgm_witness(1, 2)


def test_amgm_linear_validity():
    assert amgm_linear_valid(2, -1, 0)
    assert amgm_linear_valid(1, -1, 0)
    assert not amgm_linear_valid(-1, 1, 0)


@given(small, small)
def test_amgm_witness_roundtrip(x, y):
    a, g = (x + y) / 2, sqrt(x * y)
    if isinstance(g, float):
        g = F(g)
    w = amgm_witness(a, g)
    assert w.x >= 0 and w.y >= 0 and w.x >= w.y
    ra, rg = w.point()
    assert abs(float(ra) - float(a)) <= 1e-12 and abs(float(rg) - float(g)) <= 1e-12


def test_markov_examples():
    assert markov_member(1, F(1, 2), 1) is Membership.ACHIEVABLE
    assert markov_member(1, 0, F(3, 2)) is Membership.EXCLUDED_BOUNDARY
    assert markov_member(1, 2, 1) is Membership.OUTSIDE
    assert markov_witness(1, F(1, 2), 1).atoms == ((0, F(1, 2)), (2, F(1, 2)))
    assert markov_witness(1, 0, F(1, 2)).atoms == ((F(1, 2), 1),)
    with pytest.raises(NotAchievable):
        markov_witness(1, 0, F(3, 2))
    with pytest.raises(ValueError):
        markov_member(0, 0, 0)


def test_markov_linear_validity():
    assert markov_linear_valid(-2, 1, 0, 2).valid  # m - c p
    assert markov_linear_valid(1, 0, 0, 1).valid and markov_linear_valid(-1, 0, 1, 1).valid
    r = markov_linear_valid(1, 0, -1, 1)
    assert not r.valid and not r.fails_only_on_excluded


@given(st.fractions(min_value=F(1, 8), max_value=5, max_denominator=8),
       st.fractions(min_value=0, max_value=1, max_denominator=16), small)
def test_markov_witness_roundtrip(c, p, extra):
    m = c * p + extra
    if markov_member(c, p, m) is not Membership.ACHIEVABLE:
        assert p == 0 and m >= c
        return
    w = markov_witness(c, p, m)
    assert w.point(c) == (p, m)
    assert sum(q for _, q in w.atoms) == 1 and all(v >= 0 and q >= 0 for v, q in w.atoms)
    if extra == 0 and p > 0:
        assert max(v for v, _ in w.atoms) == c


def test_cs_examples():
    assert cs_member(1, 1, F(1, 2), 2) and not cs_member(1, 1, F(1, 2), 1)
    assert cs_member(0, 0, 0, 0) and not cs_member(1, 0, 0, 0)
    w = cs_witness(1, 1, F(1, 2), 2)
    assert w.u == (1, 0) and w.v[0] == F(1, 2) and w.v[1] == pytest.approx(math.sqrt(3) / 2, abs=1e-15)
    w = cs_witness(1, 1, 1, 1)
    assert (w.u, w.v) == ((1,), (1,))
    w = cs_witness(0, 4, 0, 2)
    assert (w.u, w.v) == ((0, 0), (2, 0))
    with pytest.raises(NotAchievable):
        cs_witness(1, 1, 2, 3)


@given(small, small, st.fractions(min_value=-1, max_value=1, max_denominator=10), st.integers(1, 4))
def test_cs_witness_roundtrip(x, y, t, dim):
    if dim == 1:
        x, y = x * x, y * y  # rational square roots, so the boundary point is rational
        z = (1 if t >= 0 else -1) * sqrt(x) * sqrt(y)
    else:
        z = t * min(x, y)  # z^2 <= min(x,y)^2 <= xy
    assert cs_member(x, y, z, dim)
    w = cs_witness(x, y, z, dim)
    assert len(w.u) == len(w.v) == dim
    rx, ry, rz = w.point()
    assert max(abs(float(rx - x)), abs(float(ry - y)), abs(float(rz - z))) <= 1e-12 * max(1, x, y)
    assert cs_member(x, y, z, dim + 1)


def test_cs_equality_dependent():
    w = cs_witness(4, 9, 6, 2)
    u, v = [float(c) for c in w.u], [float(c) for c in w.v]
    assert abs(u[0] * v[1] - u[1] * v[0]) <= 1e-12


def test_dim1_subset_of_dim2():
    for x, y, z in [(1, 1, 1), (4, 9, -6), (0, 3, 0), (2, 8, 4)]:
        if cs_member(x, y, z, 1):
            assert cs_member(x, y, z, 2)


def test_falsifier():
    assert falsify("amgm", lambda a, g: a - g, samples=20000) is None
    assert falsify("amgm", lambda a, g: g - a, samples=1000) is not None
    assert falsify("markov", lambda p, m: m - 2 * p, samples=20000, c=2.0) is None
    assert falsify("cs", lambda x, y, z: x * y - z * z + 1e-9 * (1 + x * y), samples=20000) is None


def test_region_point_json():
    rp = region_point("amgm", 5, 4)
    assert rp.to_json() == {"region": "amgm", "point": [5, 4], "membership": "achievable",
                            "witness": {"x": 8, "y": 2}}
    assert region_point("markov", 1, 0, F(3, 2)).membership is Membership.EXCLUDED_BOUNDARY
