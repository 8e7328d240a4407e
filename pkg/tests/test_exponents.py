# tests/test_exponents.py

import math

import pytest

from core.errors import DomainError
from strategy.exponents import epsilon_expansion_nu, exponent_report


def test_pt_broken_three_dimensions():
    report = exponent_report(3.0, "pt_broken")
    assert report.nu == pytest.approx(0.375, abs=1e-10)
    assert report.source_eigenvalue.re == pytest.approx(8.0 / 3.0, abs=1e-10)
    assert not report.near_collision


def test_hermitian_channel_three_dimensions():
    report = exponent_report(3.0, "hermitian_xy")
    assert report.nu == pytest.approx(0.5, abs=1e-10)
    assert report.nu_epsilon == pytest.approx(0.625, abs=1e-10)
    assert sorted(z.re for z in report.eigenvalues) == pytest.approx([-3.0, 2.0], abs=1e-10)


def test_pt_symmetric_clock_follows_hermitian_channel():
    assert exponent_report(3.0, "pt_symmetric_clock").nu == pytest.approx(0.5, abs=1e-10)


def test_epsilon_expansion():
    assert epsilon_expansion_nu(3.0) == pytest.approx(0.625)
    assert epsilon_expansion_nu(2.25) == pytest.approx(1.125)


def test_walking_regime_at_two_dimensions():
    report = exponent_report(2.0, "pt_broken")
    assert math.isinf(report.nu)
    assert report.eta == 0.25
    assert report.order_parameter == "vanishes"
    data = report.to_dict()
    assert data["nu"] is None
    assert data["nu_divergent"] is True


def test_mixed_line_exponents():
    report = exponent_report(2.0, "pt_symmetric_clock", y_star=0.1)
    lam = 0.5 * (-(4.0 / math.pi) * 0.01 + math.sqrt((16.0 / math.pi ** 2) * 1e-4 + (64.0 / math.pi) * 0.01))
    assert report.nu == pytest.approx(1.0 / lam, rel=1e-10)
    assert report.eta == 0.25
    assert report.beta_op == pytest.approx(0.5 * report.nu * 0.25)


def test_near_collision_flag(caplog):
    report = exponent_report(2.005, "pt_broken")
    assert report.near_collision
    assert "collision" in caplog.text


@pytest.mark.parametrize("d,regime,y_star", [
    (2.0, "hermitian_xy", None),
    (2.0, "pt_symmetric_clock", None),
    (2.0, "pt_symmetric_clock", 0.0),
    (4.5, "pt_broken", None),
    (3.0, "ising", None),
])
def test_invalid_requests(d, regime, y_star):
    with pytest.raises(DomainError):
        exponent_report(d, regime, y_star)
