# tests/test_walking.py

import math

import numpy as np
import pytest

from core.errors import DomainError
from core.ode_solver import integrate_ode
from strategy.rg_flow import RGState, beta_functions
from strategy.walking import (
    WalkingState,
    c_squared,
    check_invariant_along_flow,
    correlation_length,
    crossing_time_quadrature,
    from_walking,
    frozen_rhs,
    hyperboloid_point,
    integrate_walking,
    invariant_config,
    invariant_value,
    l_star_analytic,
    linearized_solutions,
    oscillation_defect,
    oscillatory_X,
    product_invariant,
    to_walking,
    walking_beta,
    walking_start,
)


def _ball_point(rng, radius):
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    return direction * radius * rng.uniform() ** (1.0 / 3.0)


def test_variable_change_round_trip():
    s = RGState(0.6, 0.05, 0.07, pt_phase="broken", d=2.0)
    w = to_walking(s)
    assert w.X == pytest.approx(2.0 - 0.6 * math.pi)
    back = from_walking(w)
    assert (back.kappa, back.y, back.y_tilde) == pytest.approx((0.6, 0.05, 0.07), rel=1e-14)


def test_walking_needs_two_dimensions():
    with pytest.raises(DomainError):
        to_walking(RGState(0.6, 0.05, 0.07, pt_phase="broken", d=3.0))


def test_full_system_is_the_mapped_rg_flow():
    s = RGState(0.6, 0.05, 0.07, pt_phase="broken", d=2.0)
    dk, dy, dyt = beta_functions(s)
    dX, dY, dYt = walking_beta(to_walking(s), approximate=False)
    assert dX == pytest.approx(-math.pi * dk, rel=1e-10)
    assert dY == pytest.approx(2.0 / math.sqrt(math.pi) * dy, rel=1e-10)
    assert dYt == pytest.approx(2.0 / math.sqrt(math.pi) * dyt, rel=1e-10)


def test_full_system_singular_at_x_two():
    with pytest.raises(DomainError):
        walking_beta(WalkingState(2.0, 0.1, 0.1), approximate=False)


def test_approximate_beta():
    assert walking_beta(WalkingState(0.2, 0.1, 0.3)) == pytest.approx((0.1, 0.02, -0.06))


def test_invariants_conserved_from_random_starts(rng):
    for _ in range(100):
        start = WalkingState.from_array(_ball_point(rng, 0.5))
        assert check_invariant_along_flow(start, 10.0) < 1e-8


def test_product_invariant_conserved():
    start = WalkingState(-0.2, 0.15, 0.1)
    trace = integrate_walking(start, 5.0, cfg=invariant_config())
    end = WalkingState.from_array(trace.final_state)
    assert product_invariant(end) == pytest.approx(product_invariant(start), rel=1e-9)


@pytest.mark.parametrize("c2,sheet", [(-0.3, "two_sheet"), (0.3, "one_sheet"), (0.0, "cone")])
def test_hyperboloid_points(c2, sheet):
    for u, v in [(0.2, 0.0), (0.7, 1.3), (1.1, -2.5)]:
        w = hyperboloid_point(c2, u, v)
        assert c_squared(w.as_array()) == pytest.approx(c2, abs=1e-12)
        assert invariant_value(w).sheet == sheet


def test_linearized_solutions_match_frozen_flow():
    X0, Y0, Yt0 = 0.2, 0.1, 0.3
    trace = integrate_ode(frozen_rhs(X0), [X0, Y0, Yt0], (0.0, 3.0), cfg=invariant_config())
    closed = linearized_solutions(X0, Y0, Yt0, 3.0)
    np.testing.assert_allclose(trace.final_state, closed.as_array(), rtol=1e-8)


def test_linearized_solutions_zero_x_limit():
    limit = linearized_solutions(0.0, 0.1, 0.3, 2.0)
    near = linearized_solutions(1e-9, 0.1, 0.3, 2.0)
    assert limit.X == pytest.approx(0.2)
    assert near.X == pytest.approx(limit.X, rel=1e-6)
    assert (limit.Y, limit.Y_tilde) == (0.1, 0.3)


def test_oscillation_defect_is_quadratic_in_amplitude():
    assert oscillation_defect(0.05, 0.3) == pytest.approx((0.05 / 0.3) ** 2, rel=1e-6)
    assert oscillatory_X(0.05, 0.3, 0.0) == 0.05
    with pytest.raises(DomainError):
        oscillation_defect(0.3, 0.3)


def test_l_star_closed_form():
    assert l_star_analytic(0.01) == pytest.approx((math.pi / 3.0) / math.sqrt(0.02))
    assert correlation_length(0.01) == pytest.approx(math.exp(-l_star_analytic(0.01)))
    assert l_star_analytic(0.01, X0=1.0) == 0.0


@pytest.mark.parametrize("kwargs", [
    {"K_minus_Kc": 0.01, "X0": 0.5},
    {"K_minus_Kc": 0.0},
    {"K_minus_Kc": 0.01, "b": 0.0},
])
def test_l_star_domain(kwargs):
    with pytest.raises(DomainError):
        l_star_analytic(**kwargs)


@pytest.mark.parametrize("c2,x_init", [(0.01, 0.1), (0.001, 0.1), (0.04, 0.1), (0.5, 0.3)])
def test_walking_start_lies_on_invariants(c2, x_init):
    w = walking_start(c2, x_init)
    assert w.X == -x_init
    assert c_squared(w.as_array()) == pytest.approx(c2, rel=1e-12)
    assert product_invariant(w) == pytest.approx(0.5 * c2, rel=1e-12)


def test_walking_start_needs_positive_c2():
    with pytest.raises(DomainError):
        walking_start(0.0, 0.1)


def test_crossing_quadrature_matches_flow():
    start = walking_start(0.01, 0.1)
    trace = integrate_walking(start, 1e3, cfg=invariant_config(), stop=lambda _l, v: v[0] >= 0.5)
    X_end = float(trace.final_state[0])
    expected = crossing_time_quadrature(0.01, product_invariant(start), -0.1, X_end)
    assert trace.final_l == pytest.approx(expected, rel=1e-7)


def test_crossing_quadrature_stalls_without_p():
    with pytest.raises(DomainError):
        crossing_time_quadrature(0.01, 0.0, -0.5, 0.5)


@pytest.mark.parametrize("point,c2,sheet", [
    ((0.0, 0.0, 0.0), 0.0, "cone"),
    ((0.0, 1.0, 0.0), -1.0, "two_sheet"),
    ((1.0, 0.5, 0.5), 1.0, "one_sheet"),
])
def test_invariant_value_examples(point, c2, sheet):
    surface = invariant_value(WalkingState(*point))
    assert surface.c2 == c2
    assert surface.sheet == sheet


def test_full_system_drifts_off_the_invariant():
    start = WalkingState(0.1, 0.2, 0.05)
    assert check_invariant_along_flow(start, 10.0) < 1e-8
    assert check_invariant_along_flow(start, 10.0, approximate=False) > 1e-8


def test_frozen_x_decay():
    w = linearized_solutions(0.5, 0.0, 0.1, 4.0)
    assert w.Y_tilde == pytest.approx(0.1 * math.exp(-2.0))
    assert w.Y == 0.0


def test_oscillatory_half_period():
    c = 0.1
    assert oscillatory_X(0.05, c, math.pi / (math.sqrt(2.0) * c)) == pytest.approx(-0.05)


def test_correlation_length_example():
    assert l_star_analytic(0.02) == pytest.approx(5.2359878, rel=1e-7)
    assert correlation_length(0.02) == pytest.approx(0.0053215, rel=1e-4)
    assert correlation_length(0.02, X0=1.0) == 1.0


def test_two_sheet_start_grows_y_monotonically():
    start = WalkingState(0.1, 0.3, 0.1)
    assert invariant_value(start).sheet == "two_sheet"
    trace = integrate_walking(start, 200.0, cfg=invariant_config(),
                              stop=lambda _l, v: np.max(np.abs(v)) > 1.0)
    Y = trace.column("Y")
    assert np.max(np.abs(trace.final_state)) > 1.0
    assert np.all(np.diff(Y) > 0.0)
    assert np.all(np.diff(trace.column("X")) > 0.0)


def test_one_sheet_start_turns_before_escaping_along_y():
    start = WalkingState(-0.05, 1e-3, 0.3)
    assert invariant_value(start).sheet == "one_sheet"
    trace = integrate_walking(start, 200.0, cfg=invariant_config(),
                              stop=lambda _l, v: np.max(np.abs(v)) > 1.0)
    X, Y, Y_tilde = trace.column("X"), trace.column("Y"), trace.column("Y_tilde")
    assert np.max(np.abs(trace.final_state)) > 1.0
    # Y shrinks while X < 0, then grows once X has turned positive
    assert Y[np.argmax(X > 0)] < Y[0]
    assert X[-1] > 0
    assert Y[-1] > 10.0 * Y_tilde[-1]
