# strategy/rg_flow.py
"""
d-dimensional RG flow of the clock-anisotropic XY model.

    dkappa/dl   = +-(4/pi^2) yt^2 - kappa^2 y^2 + (d - 2) kappa
    dy/dl       = [d - f(d) kappa] y
    dyt/dl      = [d - 4 f(d) / (pi^2 kappa)] yt

with + in the PT-symmetric phase (yt^2 = y_r^2 - y_i^2 > 0) and - in the
PT-broken phase (yt^2 = y_i^2 - y_r^2). The phase tag never changes along
a flow because ln(y_r / y_i) is RG invariant.
"""

import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from config.settings import DEFAULT_D, DEFAULT_PHASE, F_SERIES_WINDOW, FIXED_POINT_RADIUS
from core.errors import DomainError
from core.ode_solver import integrate_ode
from core.special_functions import gamma_fn
from core.types import DIVERGED, EVENT, FIXED_POINT, FlowTrace, IntegratorConfig

logger = logging.getLogger(__name__)

PHASES = ("symmetric", "broken")
STATE_COLUMNS = ("kappa", "y", "y_tilde")

_EULER_GAMMA = 0.5772156649015329
_FOUR_OVER_PI2 = 4.0 / math.pi ** 2


# =========================
# f(d)
# =========================

def f_of_d(d: float) -> float:
    """
    f(d) = (d - 2) Gamma(d/2 - 1) / (2 pi^(d/2 - 2)), continuous at d = 2 with
    f(2) = pi. Within F_SERIES_WINDOW of 2 the two-term series is used.
    """
    d = float(d)
    if not (2.0 <= d <= 4.0):
        raise DomainError("f(d) is defined for d in [2, 4]", d=d)
    eps = d - 2.0
    if eps <= F_SERIES_WINDOW:
        return math.pi * (1.0 - 0.5 * eps * (_EULER_GAMMA + math.log(math.pi)))
    return eps * gamma_fn(0.5 * d - 1.0) / (2.0 * math.pi ** (0.5 * d - 2.0))


def validate_dimension(d: float) -> float:
    d = float(d)
    if not (d == 2.0 or 2.0 < d <= 4.0):
        raise DomainError("d must be 2 or lie in (2, 4]", d=d)
    return d


def validate_phase(phase: str) -> str:
    if phase not in PHASES:
        raise DomainError("pt_phase must be symmetric or broken", pt_phase=phase)
    return phase


def phase_sign(phase: str) -> float:
    return 1.0 if validate_phase(phase) == "symmetric" else -1.0


# =========================
# State
# =========================

@dataclass(frozen=True)
class RGState:
    kappa: float
    y: float
    y_tilde: float
    pt_phase: str = DEFAULT_PHASE    # symmetric | broken
    d: float = DEFAULT_D

    def __post_init__(self):
        validate_phase(self.pt_phase)
        validate_dimension(self.d)
        if not (math.isfinite(self.kappa) and self.kappa > 0):
            raise DomainError("kappa must be positive", kappa=self.kappa)
        if not (self.y >= 0 and self.y_tilde >= 0):
            raise DomainError("fugacities must be non-negative", y=self.y, y_tilde=self.y_tilde)

    def as_array(self) -> np.ndarray:
        return np.array([self.kappa, self.y, self.y_tilde], dtype=float)

    def with_values(self, values) -> "RGState":
        kappa, y, y_tilde = (float(v) for v in values)
        return dataclasses.replace(self, kappa=kappa, y=y, y_tilde=y_tilde)


# =========================
# Beta functions
# =========================

def beta_vector(x: np.ndarray, d: float, phase: str, f: Optional[float] = None) -> np.ndarray:
    """Beta functions on a raw (kappa, y, y_tilde) vector."""
    kappa, y, yt = x
    f = f_of_d(d) if f is None else f
    return np.array([
        phase_sign(phase) * _FOUR_OVER_PI2 * yt * yt - kappa * kappa * y * y + (d - 2.0) * kappa,
        (d - f * kappa) * y,
        (d - _FOUR_OVER_PI2 * f / kappa) * yt,
    ])


def jacobian_vector(x: np.ndarray, d: float, phase: str, f: Optional[float] = None) -> np.ndarray:
    """Analytic Jacobian d(beta)/d(kappa, y, y_tilde)."""
    kappa, y, yt = x
    f = f_of_d(d) if f is None else f
    sign = phase_sign(phase)
    return np.array([
        [-2.0 * kappa * y * y + (d - 2.0), -2.0 * kappa * kappa * y, 2.0 * sign * _FOUR_OVER_PI2 * yt],
        [-f * y, d - f * kappa, 0.0],
        [_FOUR_OVER_PI2 * f * yt / (kappa * kappa), 0.0, d - _FOUR_OVER_PI2 * f / kappa],
    ])


def beta_functions(s: RGState) -> Tuple[float, float, float]:
    if not s.kappa > 0:
        raise DomainError("kappa must be positive", kappa=s.kappa)
    dk, dy, dyt = beta_vector(s.as_array(), s.d, s.pt_phase)
    return float(dk), float(dy), float(dyt)


def jacobian(s: RGState) -> np.ndarray:
    return jacobian_vector(s.as_array(), s.d, s.pt_phase)


# ---- Hermitian (kappa, y) channel ----

def hermitian_beta(kappa: float, y: float, d: float) -> Tuple[float, float]:
    """
    Flow without the clock term, equivalent to d(1/kappa)/dl = y^2 - (d - 2)/kappa.
    """
    if not kappa > 0:
        raise DomainError("kappa must be positive", kappa=kappa)
    f = f_of_d(d)
    return -kappa * kappa * y * y + (d - 2.0) * kappa, (d - f * kappa) * y


def hermitian_jacobian(kappa: float, y: float, d: float) -> np.ndarray:
    f = f_of_d(d)
    return np.array([
        [-2.0 * kappa * y * y + (d - 2.0), -2.0 * kappa * kappa * y],
        [-f * y, d - f * kappa],
    ])


# ---- (y_r, y_i) pair ----

def pair_beta_functions(kappa: float, y: float, y_r: float, y_i: float, d: float) -> Tuple[float, float, float, float]:
    """
    Flow of (kappa, y, y_r, y_i). y_r and y_i share the same multiplicative
    factor, so ln(y_r / y_i) is conserved.
    """
    if not kappa > 0:
        raise DomainError("kappa must be positive", kappa=kappa)
    f = f_of_d(d)
    common = d - _FOUR_OVER_PI2 * f / kappa
    dk = _FOUR_OVER_PI2 * (y_r * y_r - y_i * y_i) - kappa * kappa * y * y + (d - 2.0) * kappa
    return dk, (d - f * kappa) * y, common * y_r, common * y_i


def rg_invariant(y_r: float, y_i: float) -> float:
    """ln(y_r / y_i)"""
    if y_r <= 0 or y_i <= 0:
        raise DomainError("ln(y_r/y_i) needs positive couplings", y_r=y_r, y_i=y_i)
    return math.log(y_r / y_i)


def split_pair(y_tilde: float, phase: str, ratio: float) -> Tuple[float, float]:
    """
    (y_r, y_i) with y_i = ratio * y_r reproducing y_tilde = sqrt(|y_r^2 - y_i^2|).
    ratio < 1 in the symmetric phase, > 1 in the broken phase.
    """
    validate_phase(phase)
    if ratio < 0 or ratio == 1.0 or (ratio < 1.0) != (phase == "symmetric"):
        raise DomainError("ratio y_i/y_r inconsistent with the PT phase", ratio=ratio, pt_phase=phase)
    y_r = y_tilde / math.sqrt(abs(1.0 - ratio * ratio))
    return y_r, ratio * y_r


# =========================
# Flow integration
# =========================

def integrate_rg_flow(
    s0: RGState,
    l_max: float,
    cfg: Optional[IntegratorConfig] = None,
    stop: Optional[Callable[[float, np.ndarray], bool]] = None,
) -> FlowTrace:
    """
    Integrate from s0 over [0, l_max].

    Reasons: span_complete at l_max, diverged on the divergence bound or once
    kappa leaves (0, inf), fixed_point once ||beta||_inf < FIXED_POINT_RADIUS,
    event when the optional `stop(l, x)` predicate fires.
    """
    if not l_max > 0:
        raise DomainError("l_max must be positive", l_max=l_max)

    d, phase = s0.d, s0.pt_phase
    f = f_of_d(d)
    fired = {"reason": EVENT}

    def rhs(_l, x):
        return beta_vector(x, d, phase, f)

    def watch(l, x) -> bool:
        if x[0] <= 0:
            fired["reason"] = DIVERGED
            return True
        if np.max(np.abs(rhs(l, x))) < FIXED_POINT_RADIUS:
            fired["reason"] = FIXED_POINT
            return True
        if stop is not None and stop(l, x):
            fired["reason"] = EVENT
            return True
        return False

    trace = integrate_ode(rhs, s0.as_array(), (0.0, float(l_max)), cfg=cfg,
                          stop=watch, columns=STATE_COLUMNS)
    if trace.reason == EVENT:
        trace = dataclasses.replace(trace, reason=fired["reason"])

    logger.info("integrate_rg_flow: d=%s phase=%s samples=%d reason=%s final_l=%.6g",
                d, phase, len(trace), trace.reason, trace.final_l)
    return trace
