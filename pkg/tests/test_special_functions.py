# tests/test_special_functions.py

import math

import pytest
from scipy import special

from core.errors import DomainError, NumericError, RangeError
from core.special_functions import bessel_I0, bessel_J0, gamma_fn


@pytest.mark.parametrize("x", [0.0, 0.5, 1.0, 5.0, 12.0, 29.9, 30.1, 50.0, 300.0, 650.0])
def test_bessel_i0_matches_scipy(x):
    assert bessel_I0(x) == pytest.approx(float(special.i0(x)), rel=1e-12)


def test_bessel_i0_is_even():
    assert bessel_I0(-7.5) == bessel_I0(7.5)


def test_bessel_i0_overflow_guard():
    with pytest.raises(RangeError):
        bessel_I0(700.0)


def test_bessel_i0_rejects_nan():
    with pytest.raises(NumericError):
        bessel_I0(float("nan"))


@pytest.mark.parametrize("x", [0.0, 0.5, 1.0, 2.404825557695773, 5.0, 10.0, 13.9, 14.1, 20.0, 50.0, 120.0])
def test_bessel_j0_matches_scipy(x):
    assert abs(bessel_J0(x) - float(special.j0(x))) < 1e-10


def test_bessel_j0_small_argument_is_one():
    assert bessel_J0(0.0) == 1.0


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 1.5, 2.5, 5.0, 10.3, 30.0, 50.5, -0.5, -1.5, -2.25])
def test_gamma_matches_math(x):
    assert gamma_fn(x) == pytest.approx(math.gamma(x), rel=1e-12)


def test_gamma_half():
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)


@pytest.mark.parametrize("x", [0.0, -1.0, -4.0])
def test_gamma_poles(x):
    with pytest.raises(DomainError):
        gamma_fn(x)


def test_gamma_overflow():
    with pytest.raises(RangeError):
        gamma_fn(172.0)
