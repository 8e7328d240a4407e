# tests/test_ode_solver.py

import math

import numpy as np
import pytest

from core.errors import DomainError, NumericError
from core.ode_solver import hermite_crossing, integrate_ode
from core.types import DIVERGED, EVENT, SPAN_COMPLETE, IntegratorConfig


def test_exponential_decay():
    trace = integrate_ode(lambda l, y: -y, [1.0], (0.0, 5.0))
    assert trace.reason == SPAN_COMPLETE
    assert trace.final_l == 5.0
    assert trace.final_state[0] == pytest.approx(math.exp(-5.0), rel=1e-7)


def test_harmonic_oscillator_keeps_energy():
    trace = integrate_ode(lambda l, y: np.array([y[1], -y[0]]), [1.0, 0.0], (0.0, 20.0),
                          columns=("q", "p"))
    energy = trace.column("q") ** 2 + trace.column("p") ** 2
    assert np.max(np.abs(energy - 1.0)) < 1e-6
    assert trace.final_state[0] == pytest.approx(math.cos(20.0), abs=1e-6)


def test_backward_integration():
    trace = integrate_ode(lambda l, y: y, [math.e], (1.0, 0.0))
    assert trace.final_l == 0.0
    assert trace.final_state[0] == pytest.approx(1.0, rel=1e-7)


def test_finite_time_blowup_is_diverged():
    trace = integrate_ode(lambda l, y: y * y, [1.0], (0.0, 2.0))
    assert trace.reason == DIVERGED
    assert trace.final_l < 1.0


def test_stop_event_and_crossing():
    rhs = lambda l, y: np.array([1.0])
    trace = integrate_ode(rhs, [0.0], (0.0, 10.0), stop=lambda l, y: y[0] >= 0.55)
    assert trace.reason == EVENT
    crossing = hermite_crossing(trace, rhs, len(trace) - 1, 0, 0.55)
    assert crossing == pytest.approx(0.55, abs=1e-12)


def test_trace_arrays_are_read_only():
    trace = integrate_ode(lambda l, y: -y, [1.0], (0.0, 1.0))
    with pytest.raises(ValueError):
        trace.states[0, 0] = 2.0


def test_zero_span_returns_initial_state():
    trace = integrate_ode(lambda l, y: -y, [3.0], (1.0, 1.0))
    assert len(trace) == 1
    assert trace.reason == SPAN_COMPLETE


def test_non_finite_start_raises():
    with pytest.raises(NumericError):
        integrate_ode(lambda l, y: y, [math.nan], (0.0, 1.0))


@pytest.mark.parametrize("field", ["rel_tol", "abs_tol", "max_step"])
def test_config_rejects_non_positive(field):
    with pytest.raises(DomainError):
        IntegratorConfig(**{field: 0.0})


@pytest.mark.parametrize("lam", np.linspace(-5.0, 5.0, 11))
def test_linear_growth_within_tolerance(lam):
    cfg = IntegratorConfig()
    trace = integrate_ode(lambda l, y: lam * y, [1.0], (0.0, 1.0), cfg=cfg)
    assert trace.reason == SPAN_COMPLETE
    expected = np.exp(lam * trace.l)
    assert np.max(np.abs(trace.states[:, 0] - expected) / expected) < 10.0 * cfg.rel_tol
