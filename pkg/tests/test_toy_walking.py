# tests/test_toy_walking.py

import math

import pytest

from core.errors import DomainError
from core.quadrature import quadrature_interval
from strategy.toy_walking import toy_beta, toy_traversal_time, toy_walking


def test_real_pair_above_threshold():
    result = toy_walking(alpha=1.25, alpha_star=1.0, g_star=0.5)
    assert result.regime == "real_pair"
    assert [z.re for z in result.fixed_points] == pytest.approx([0.0, 1.0])
    assert result.scale_ratio is None
    for z in result.fixed_points:
        assert toy_beta(z.re, 1.25, 1.0, 0.5) == pytest.approx(0.0, abs=1e-15)


def test_collision_at_threshold():
    result = toy_walking(alpha=1.0, alpha_star=1.0, g_star=0.5)
    assert result.regime == "collision"
    assert result.fixed_points[0] == result.fixed_points[1]


def test_complex_pair_and_scale_ratio():
    result = toy_walking(alpha=0.75, alpha_star=1.0, g_star=0.5)
    assert result.regime == "walking"
    assert result.fixed_points[1].im == pytest.approx(0.5)
    assert result.fixed_points[0].im == pytest.approx(-0.5)
    assert result.scale_ratio == pytest.approx(math.exp(-2.0 * math.pi))
    data = result.to_dict()
    assert data["regime"] == "walking"


def test_traversal_time_matches_flow_integral():
    alpha, alpha_star, g_star = 0.96, 1.0, 0.0
    expected = quadrature_interval(lambda g: -1.0 / toy_beta(g, alpha, alpha_star, g_star),
                                   -3.0, 3.0, breakpoints=[0.0])
    assert toy_traversal_time(alpha, alpha_star, 3.0) == pytest.approx(expected, rel=1e-10)


def test_traversal_time_tends_to_pi_over_a():
    assert toy_traversal_time(0.99, 1.0, 1e8) == pytest.approx(math.pi / 0.1, rel=1e-6)


@pytest.mark.parametrize("alpha,g_span", [(1.0, 1.0), (1.5, 1.0), (0.5, 0.0)])
def test_traversal_domain(alpha, g_span):
    with pytest.raises(DomainError):
        toy_traversal_time(alpha, 1.0, g_span)


def test_examples():
    assert [z.re for z in toy_walking(2.0, 1.0, 0.0).fixed_points] == pytest.approx([-1.0, 1.0])
    assert toy_walking(0.0, 1.0, 0.0).scale_ratio == pytest.approx(0.0432139, rel=1e-6)
