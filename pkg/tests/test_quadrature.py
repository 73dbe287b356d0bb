import math

import numpy as np
import pytest

from modkernel.polycore import Chebyshev1, Jacobi, LaguerreNeg, orthonormal_values, recurrence_coefficients
from modkernel.quadrature import QuadratureRule, gauss_rule, integrate, weight_moments

from oracles import jacobi_moments_lowdeg, laguerre_neg_moments

FAMILIES = [Jacobi(0.5, -0.3), Jacobi(1.7, 1.7), LaguerreNeg(0.0), LaguerreNeg(2.5), Chebyshev1()]


def test_chebyshev_closed_form_rule():
    fam = Chebyshev1()
    rc = recurrence_coefficients(fam, 12)
    rule = gauss_rule(fam, rc, 12)
    ref_nodes = np.sort(np.cos((2 * np.arange(1, 13) - 1) * math.pi / 24))
    np.testing.assert_allclose(rule.nodes, ref_nodes, atol=5e-15)
    np.testing.assert_allclose(rule.weights, math.pi / 12, rtol=1e-12)


def test_legendre_two_point_rule():
    fam = Jacobi(0.0, 0.0)
    rc = recurrence_coefficients(fam, 4)
    rule = gauss_rule(fam, rc, 2)
    np.testing.assert_allclose(rule.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
    np.testing.assert_allclose(rule.weights, [1.0, 1.0], rtol=1e-14)


@pytest.mark.parametrize("family", FAMILIES)
def test_total_weight_is_mass(family):
    rc = recurrence_coefficients(family, 25)
    for n in (1, 2, 7, 25):
        rule = gauss_rule(family, rc, n)
        assert rule.weights.sum() == pytest.approx(rc.mu0, rel=1e-12)


@pytest.mark.parametrize("family", FAMILIES)
def test_node_bracketing(family):
    rc = recurrence_coefficients(family, 30)
    rule = gauss_rule(family, rc, 30)
    lo, hi = family.support
    assert rule.nodes.min() > lo and rule.nodes.max() < hi
    if isinstance(family, LaguerreNeg):
        assert rule.nodes.max() < 0.0
    assert np.all(np.diff(rule.nodes) > 0)
    assert np.all(rule.weights > 0)


def test_symmetric_weight_rule_is_symmetric():
    fam = Jacobi(1.7, 1.7)
    rc = recurrence_coefficients(fam, 15)
    rule = gauss_rule(fam, rc, 15)
    np.testing.assert_allclose(rule.nodes, -rule.nodes[::-1], atol=1e-12)
    np.testing.assert_allclose(rule.weights, rule.weights[::-1], rtol=1e-12)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("n", [1, 2, 5, 13, 37, 60])
def test_moment_exactness(family, n):
    rc = recurrence_coefficients(family, 60)
    rule = gauss_rule(family, rc, n)
    moments = weight_moments(family, 2 * n - 1)
    powers = rule.nodes[None, :] ** np.arange(2 * n)[:, None]
    got = powers @ rule.weights
    scale = np.maximum(np.maximum(np.abs(moments), np.abs(powers) @ rule.weights), 1e-300)
    assert float((np.abs(got - moments) / scale).max()) < 1e-10


def test_moments_match_independent_formulas():
    # the binomial-sum oracle cancels catastrophically with degree; stop at 12
    np.testing.assert_allclose(
        weight_moments(Jacobi(0.5, -0.3), 12), jacobi_moments_lowdeg(0.5, -0.3, 12), rtol=2e-8, atol=1e-12
    )
    np.testing.assert_allclose(
        weight_moments(LaguerreNeg(1.5), 12), laguerre_neg_moments(1.5, 12), rtol=1e-12
    )
    # Chebyshev even moments: pi * (k-1)!! / k!!
    m = weight_moments(Chebyshev1(), 6)
    np.testing.assert_allclose(m[[0, 2, 4, 6]], [math.pi, math.pi / 2, 3 * math.pi / 8, 5 * math.pi / 16], rtol=1e-14)
    np.testing.assert_allclose(m[[1, 3, 5]], 0.0, atol=1e-300)


def test_integrate_constant_and_orthonormal_pairs():
    fam = Jacobi(0.5, -0.3)
    rc = recurrence_coefficients(fam, 10)
    rule = gauss_rule(fam, rc, 8)
    assert integrate(rule, lambda x: np.ones_like(x)) == pytest.approx(rc.mu0, rel=1e-13)

    def pair(x):
        vals = orthonormal_values(rc, 5, x)
        return vals[3] * vals[5]

    def square(x):
        vals = orthonormal_values(rc, 4, x)
        return vals[4] ** 2

    assert abs(integrate(rule, pair)) < 1e-10
    assert integrate(rule, square) == pytest.approx(1.0, abs=1e-10)


def test_integrate_scalar_callable():
    fam = Chebyshev1()
    rc = recurrence_coefficients(fam, 6)
    rule = gauss_rule(fam, rc, 6)
    assert integrate(rule, lambda x: float(x) ** 2) == pytest.approx(math.pi / 2, rel=1e-12)


def test_integrate_rejects_nonfinite():
    fam = Chebyshev1()
    rc = recurrence_coefficients(fam, 4)
    rule = gauss_rule(fam, rc, 4)
    with pytest.raises(ValueError, match="not finite"):
        integrate(rule, lambda x: np.full_like(x, np.nan))


def test_gauss_rule_preconditions():
    fam = Chebyshev1()
    rc = recurrence_coefficients(fam, 4)
    with pytest.raises(ValueError):
        gauss_rule(fam, rc, 0)
    with pytest.raises(ValueError):
        gauss_rule(fam, rc, 9)  # rc too short


def test_rule_validation():
    with pytest.raises(ValueError, match="positive"):
        QuadratureRule(nodes=np.array([0.0, 0.5]), weights=np.array([1.0, -1.0]),
                       exact_degree=3, weight_id=Chebyshev1())
    with pytest.raises(ValueError, match="increasing"):
        QuadratureRule(nodes=np.array([0.5, 0.0]), weights=np.array([1.0, 1.0]),
                       exact_degree=3, weight_id=Chebyshev1())
