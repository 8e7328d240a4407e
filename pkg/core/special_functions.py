# core/special_functions.py
"""
Special functions used by the toy model and the d-dimensional RG system.

- bessel_I0: modified Bessel function of the first kind, order 0
- bessel_J0: Bessel function of the first kind, order 0
- gamma_fn: Euler gamma function (Lanczos approximation + reflection)

Series are summed until the next term drops below machine precision
relative to the running sum; asymptotic expansions stop at their
smallest term.
"""

import math

from config.settings import (
    BESSEL_I0_SERIES_LIMIT,
    BESSEL_J0_SERIES_LIMIT,
    BESSEL_OVERFLOW_LIMIT,
)
from core.errors import DomainError, NumericError, RangeError

_EPS = 1e-17
_MAX_TERMS = 500


def _require_finite(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x):
        raise NumericError(f"{name} must be finite", **{name: x})
    return x


# =========================
# Modified Bessel I0
# =========================

def _i0_series(x: float) -> float:
    t = 0.25 * x * x
    term = 1.0
    total = 1.0
    for k in range(1, _MAX_TERMS):
        term *= t / (k * k)
        total += term
        if term < _EPS * total:
            break
    return total


def _i0_asymptotic(x: float) -> float:
    ax = abs(x)
    term = 1.0
    total = 1.0
    for k in range(1, _MAX_TERMS):
        nxt = term * (2 * k - 1) ** 2 / (8.0 * k * ax)
        if nxt >= term:
            break
        term = nxt
        total += term
        if term < _EPS * total:
            break
    return math.exp(ax) / math.sqrt(2.0 * math.pi * ax) * total


def bessel_I0(x: float) -> float:
    """
    I0(x) with relative error < 1e-12.
    Power series for |x| <= BESSEL_I0_SERIES_LIMIT, asymptotic expansion beyond.
    """
    x = _require_finite(x)
    ax = abs(x)
    if ax >= BESSEL_OVERFLOW_LIMIT:
        raise RangeError("bessel_I0 argument outside overflow guard", x=x)
    if ax <= BESSEL_I0_SERIES_LIMIT:
        return _i0_series(ax)
    return _i0_asymptotic(ax)


# =========================
# Bessel J0
# =========================

def _j0_series(x: float) -> float:
    t = -0.25 * x * x
    term = 1.0
    total = 1.0
    for k in range(1, _MAX_TERMS):
        term *= t / (k * k)
        total += term
        if k > x and abs(term) < _EPS:
            break
    return total


def _j0_hankel(x: float) -> float:
    # a_k(0) = prod_{j<=k} (-(2j-1)^2) / (k! 8^k); t_k = a_k / x^k
    p = 1.0
    q = 0.0
    term = 1.0
    for k in range(1, _MAX_TERMS):
        nxt = term * (-(2 * k - 1) ** 2) / (8.0 * k * x)
        if abs(nxt) >= abs(term):
            break
        term = nxt
        sign = 1.0 if (k // 2) % 2 == 0 else -1.0
        if k % 2 == 0:
            p += sign * term
        else:
            q += sign * term
        if abs(term) < _EPS:
            break
    chi = x - 0.25 * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(chi) - q * math.sin(chi))


def bessel_J0(x: float) -> float:
    """
    J0(x), relative error < 1e-10 away from its zeros.
    I0(ix) = J0(x) covers the K > J branch of the toy partition function.
    """
    x = _require_finite(x)
    ax = abs(x)
    if ax <= BESSEL_J0_SERIES_LIMIT:
        return _j0_series(ax)
    return _j0_hankel(ax)


# =========================
# Gamma (Lanczos, g = 7)
# =========================

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_GAMMA_OVERFLOW = 171.6


def gamma_fn(x: float) -> float:
    """
    Gamma(x) with relative error < 1e-12; reflection formula below 1/2.
    """
    x = _require_finite(x)
    if x <= 0 and x == math.floor(x):
        raise DomainError("gamma_fn pole at non-positive integer", x=x)
    if x > _GAMMA_OVERFLOW:
        raise RangeError("gamma_fn overflow", x=x)

    if x < 0.5:
        # Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))

    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * math.exp((z + 0.5) * math.log(t) - t) * acc
