from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from ineqlab.cone import basic_inequalities, constraint_ci, elemental, zy97_problem, zy98_form
from ineqlab.core import ContextMismatch, LinForm, evaluate, lf_mutual
from ineqlab.lp import solve_feasibility
from ineqlab.models import entropy_vector, random_pmf
from ineqlab.parser import CI
from ineqlab.prover import (Certificate, Disproved, Implied, NotImplied, NotImpliedByCone, Proved,
                            ProvedAugmented, Unknown, check_certificate, check_ray, disprove,
                            implies, verify)

from conftest import linforms


def test_lp_small():
    F = Fraction
    res = solve_feasibility([[F(1), F(1)], [F(1), F(-1)]], [F(3), F(1)])
    assert res.feasible and res.x == [F(2), F(1)]
    res = solve_feasibility([[F(1)], [F(1)]], [F(1), F(-1)])
    assert not res.feasible
    # Farkas: y.A >= 0 and y.b < 0
    y = res.farkas
    assert y[0] + y[1] >= 0 and y[0] - y[1] < 0


def test_verify_mutual_information():
    v = verify(lf_mutual(2, 1, 2))
    assert isinstance(v, Proved)
    assert check_certificate(lf_mutual(2, 1, 2), v.certificate)
    assert v.certificate.terms() == [("elemental I(1;2)", 1)]


def test_certificate_perturbed_fails():
    b = lf_mutual(2, 1, 2)
    cert = verify(b).certificate
    lam = list(cert.lam)
    i = next(k for k, v in enumerate(lam) if v)
    lam[i] += Fraction(1, 1000)
    bad = Certificate(tuple(lam), cert.mu, cert.rows, cert.constraints)
    assert not check_certificate(b, bad)


def test_zero_form():
    v = verify(LinForm.zero(3))
    assert isinstance(v, Proved) and v.certificate.terms() == []
    assert check_certificate(LinForm.zero(2), Certificate((), ()), [], [])


def test_zy98_not_shannon_then_augmented():
    b = zy98_form()
    v = verify(b)
    assert isinstance(v, NotImpliedByCone) and v.value < 0
    assert check_ray(b, v.ray, elemental(4), [])
    assert isinstance(verify(b, augment="zy98"), ProvedAugmented)


def test_zy97_not_shannon():
    Q, b = zy97_problem()
    v = verify(b, Q)
    assert isinstance(v, NotImpliedByCone)
    assert check_ray(b, v.ray, elemental(4), Q)


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        verify(lf_mutual(2, 1, 2), [constraint_ci(3, 1, 2)])


def test_redundant_constraints():
    q = constraint_ci(3, 1, 2)
    v = verify(-lf_mutual(3, 1, 2), [q, q])
    assert isinstance(v, Proved) and check_certificate(-lf_mutual(3, 1, 2), v.certificate)


@pytest.mark.parametrize("n", [2, 3])
def test_every_basic_inequality_proved(n):
    for b in basic_inequalities(n):
        v = verify(b)
        assert isinstance(v, Proved) and check_certificate(b, v.certificate)


@settings(max_examples=60, deadline=None)
@given(linforms(n=3))
def test_verdict_evidence_checks(b):
    v = verify(b)
    if isinstance(v, Proved):
        assert check_certificate(b, v.certificate)
        # soundness spot check against entropic points
        for seed in range(5):
            h = entropy_vector(random_pmf(3, 2, seed))
            assert evaluate(b, h) >= -1e-9
    else:
        assert isinstance(v, NotImpliedByCone)
        assert check_ray(b, v.ray, elemental(3), [])
    assert verify(b) == v  # determinism
    if isinstance(v, Proved):
        assert isinstance(verify(b.lift(4), augment="zy98"), Proved)


def test_soundness_against_random_pmfs():
    forms = [b for b in basic_inequalities(3)] + [lf_mutual(3, 1, 6)]
    proved = [b for b in forms if isinstance(verify(b), Proved)]
    for seed in range(1000):
        h = entropy_vector(random_pmf(3, (2, 3, 2), seed))
        assert all(evaluate(b, h) >= -1e-9 for b in proved)


def test_implies_examples():
    v = implies([CI(1, 4, 2), CI(1, 2)], CI(1, 4))
    assert isinstance(v, Implied)
    v = implies([CI(1, 2)], CI(1, 2, 4))
    assert isinstance(v, NotImplied) and v.value >= 0.99
    assert isinstance(implies([CI(1, 2, 4)], CI(1, 2, 4)), Implied)
    with pytest.raises(ValueError):
        implies([CI(1, 1)], CI(1, 2))


def test_implies_without_search_is_unknown():
    assert isinstance(implies([CI(1, 2)], CI(1, 2, 4), search=False), Unknown)


def test_disprove_examples():
    v = disprove(LinForm(2, {1: 1, 3: -1}))
    assert isinstance(v, Disproved) and v.value == pytest.approx(-1.0)
    np.testing.assert_allclose(entropy_vector(v.witness), [1, 1, 2], atol=1e-12)
    assert isinstance(disprove(lf_mutual(2, 1, 2), budget=4), Unknown)
