# strategy/walking.py
"""
d = 2, PT-broken flow in the variables

    X = 2 - pi kappa,   Y = 2 y / sqrt(pi),   Yt = 2 y_tilde / sqrt(pi)

Full system:         dX = Yt^2 + (1 - X/2)^2 Y^2,  dY = X Y,  dYt = 2 (1 - 1/(1 - X/2)) Yt
Approximate system:  dX = Yt^2 + Y^2,              dY = X Y,  dYt = -X Yt

The approximate system conserves c^2 = X^2 - Y^2 + Yt^2 and p = Y Yt,
which reduces it to (dX/dl)^2 = (X^2 - c^2)^2 + 4 p^2.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from config.settings import (
    INVARIANT_ABS_TOL,
    INVARIANT_REL_TOL,
    WALKING_B,
    WALKING_ESCAPE_RADIUS,
)
from core.errors import DomainError
from core.ode_solver import integrate_ode
from core.quadrature import quadrature_interval
from core.types import FlowTrace, IntegratorConfig
from strategy.rg_flow import RGState

logger = logging.getLogger(__name__)

WALKING_COLUMNS = ("X", "Y", "Y_tilde")
CONE_TOL = 1e-12
KAPPA_C = 2.0 / math.pi

_SQRT_PI = math.sqrt(math.pi)


# ------------------------
# State + change of variables
# ------------------------
@dataclass(frozen=True)
class WalkingState:
    X: float
    Y: float
    Y_tilde: float
    l: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.X, self.Y, self.Y_tilde], dtype=float)

    @classmethod
    def from_array(cls, values, l: float = 0.0) -> "WalkingState":
        X, Y, Yt = (float(v) for v in values)
        return cls(X, Y, Yt, float(l))


def to_walking(s: RGState, l: float = 0.0) -> WalkingState:
    if s.d != 2.0:
        raise DomainError("walking variables are defined at d = 2", d=s.d)
    return WalkingState(
        X=2.0 - math.pi * s.kappa,
        Y=2.0 * s.y / _SQRT_PI,
        Y_tilde=2.0 * s.y_tilde / _SQRT_PI,
        l=l,
    )


def from_walking(w: WalkingState, pt_phase: str = "broken") -> RGState:
    return RGState(
        kappa=(2.0 - w.X) / math.pi,
        y=0.5 * _SQRT_PI * w.Y,
        y_tilde=0.5 * _SQRT_PI * w.Y_tilde,
        pt_phase=pt_phase,
        d=2.0,
    )


# ------------------------
# Beta functions
# ------------------------
def _beta_array(v: np.ndarray, approximate: bool) -> np.ndarray:
    X, Y, Yt = v
    if approximate:
        return np.array([Yt * Yt + Y * Y, X * Y, -X * Yt])
    shrink = 1.0 - 0.5 * X
    if shrink == 0.0:
        raise DomainError("full walking system is singular at X = 2", X=X)
    return np.array([Yt * Yt + shrink * shrink * Y * Y, X * Y, 2.0 * (1.0 - 1.0 / shrink) * Yt])


def walking_beta(s: WalkingState, approximate: bool = True) -> Tuple[float, float, float]:
    dX, dY, dYt = _beta_array(s.as_array(), approximate)
    return float(dX), float(dY), float(dYt)


def walking_rhs(approximate: bool = True) -> Callable[[float, np.ndarray], np.ndarray]:
    return lambda _l, v: _beta_array(v, approximate)


def frozen_rhs(X0: float) -> Callable[[float, np.ndarray], np.ndarray]:
    """Frozen-X system: dX = Y^2 + Yt^2, dY = X0 Y, dYt = -X0 Yt."""
    return lambda _l, v: np.array([v[1] ** 2 + v[2] ** 2, X0 * v[1], -X0 * v[2]])


def integrate_walking(
    s0: WalkingState,
    l_max: float,
    approximate: bool = True,
    cfg: Optional[IntegratorConfig] = None,
    stop: Optional[Callable[[float, np.ndarray], bool]] = None,
) -> FlowTrace:
    return integrate_ode(walking_rhs(approximate), s0.as_array(), (s0.l, s0.l + float(l_max)),
                         cfg=cfg, stop=stop, columns=WALKING_COLUMNS)


# ------------------------
# Invariants
# ------------------------
@dataclass(frozen=True)
class InvariantSurface:
    c2: float
    sheet: str     # two_sheet | one_sheet | cone


def c_squared(v) -> float:
    X, Y, Yt = v
    return X * X - Y * Y + Yt * Yt


def invariant_value(s: WalkingState) -> InvariantSurface:
    c2 = c_squared(s.as_array())
    if abs(c2) < CONE_TOL:
        sheet = "cone"
    elif c2 < 0:
        # X^2 + Yt^2 < Y^2
        sheet = "two_sheet"
    else:
        sheet = "one_sheet"
    return InvariantSurface(c2=c2, sheet=sheet)


def product_invariant(s: WalkingState) -> float:
    """Y * Yt, conserved by the approximate system."""
    return s.Y * s.Y_tilde


def hyperboloid_point(c2: float, u: float, v: float) -> WalkingState:
    """
    Point on X^2 - Y^2 + Yt^2 = c2.

    two-sheet (c2 < 0): X = c sinh u cos v, Y = c cosh u, Yt = c sinh u sin v
    one-sheet (c2 > 0): X = c cosh u cos v, Y = c sinh u, Yt = c cosh u sin v
    cone (c2 = 0):      X = u cos v, Y = u, Yt = u sin v
    """
    if abs(c2) < CONE_TOL:
        return WalkingState(u * math.cos(v), u, u * math.sin(v))
    c = math.sqrt(abs(c2))
    if c2 < 0:
        return WalkingState(c * math.sinh(u) * math.cos(v), c * math.cosh(u), c * math.sinh(u) * math.sin(v))
    return WalkingState(c * math.cosh(u) * math.cos(v), c * math.sinh(u), c * math.cosh(u) * math.sin(v))


def invariant_config() -> IntegratorConfig:
    return IntegratorConfig(rel_tol=INVARIANT_REL_TOL, abs_tol=INVARIANT_ABS_TOL)


def check_invariant_along_flow(
    s0: WalkingState,
    l_max: float,
    approximate: bool = True,
    cfg: Optional[IntegratorConfig] = None,
    escape_radius: float = WALKING_ESCAPE_RADIUS,
) -> float:
    """
    max |c^2(l) - c^2(0)| along the flow, up to l_max or until the state
    leaves the perturbative box max(|X|, |Y|, |Yt|) > escape_radius.
    """
    def escaped(_l, v) -> bool:
        return bool(np.max(np.abs(v)) > escape_radius)

    trace = integrate_walking(s0, l_max, approximate, cfg or invariant_config(), stop=escaped)
    states = trace.states
    c2 = states[:, 0] ** 2 - states[:, 1] ** 2 + states[:, 2] ** 2
    drift = float(np.max(np.abs(c2 - c2[0])))
    logger.debug("check_invariant_along_flow: reason=%s final_l=%.4g drift=%.3e",
                 trace.reason, trace.final_l, drift)
    return drift


# ------------------------
# Closed forms
# ------------------------
def linearized_solutions(X0: float, Y0: float, Y_tilde0: float, l: float) -> WalkingState:
    """
    Solution of the frozen-X system started at (X0, Y0, Yt0):
    Y = Y0 e^{X0 l}, Yt = Yt0 e^{-X0 l},
    X = X0 + (Y0^2 (e^{2 X0 l} - 1) + Yt0^2 (1 - e^{-2 X0 l})) / (2 X0).
    X0 = 0 returns the limit X = (Y0^2 + Yt0^2) l.
    """
    if X0 == 0.0:
        return WalkingState(X=(Y0 * Y0 + Y_tilde0 * Y_tilde0) * l, Y=Y0, Y_tilde=Y_tilde0, l=l)
    growth = (Y0 * Y0 * math.expm1(2.0 * X0 * l) - Y_tilde0 * Y_tilde0 * math.expm1(-2.0 * X0 * l)) / (2.0 * X0)
    return WalkingState(
        X=X0 + growth,
        Y=Y0 * math.exp(X0 * l),
        Y_tilde=Y_tilde0 * math.exp(-X0 * l),
        l=l,
    )


def oscillatory_X(X0: float, c: float, l: float) -> float:
    """Small-|X| ansatz X(l) = X0 cos(sqrt(2) c l)."""
    if not c > 0:
        raise DomainError("oscillatory_X needs c > 0", c=c)
    return X0 * math.cos(math.sqrt(2.0) * c * l)


def oscillation_defect(X0: float, c: float, cfg: Optional[IntegratorConfig] = None) -> float:
    """
    max |X'' + 2 c^2 X| / max |2 c^2 X| along the approximate flow from
    (-|X0|, 0, sqrt(c^2 - X0^2)) until X reaches +|X0|.

    X'' is evaluated on the integrated trajectory as 2 X (Y^2 - Yt^2); the
    defect is of order (X0 / c)^2.
    """
    a = abs(X0)
    if not (c > 0 and 0 < a < c):
        raise DomainError("need 0 < |X0| < c", X0=X0, c=c)
    start = WalkingState(-a, 0.0, math.sqrt(c * c - a * a))
    trace = integrate_walking(start, 1e3 / (c * c), cfg=cfg or invariant_config(),
                              stop=lambda _l, v: v[0] >= a)
    X, Y, Yt = trace.states[:, 0], trace.states[:, 1], trace.states[:, 2]
    d2 = 2.0 * X * (Y * Y - Yt * Yt)
    return float(np.max(np.abs(d2 + 2.0 * c * c * X)) / np.max(np.abs(2.0 * c * c * X)))


def l_star_analytic(K_minus_Kc: float, b: float = WALKING_B, X0: float = 2.0) -> float:
    """l* = arccos(1/X0) / sqrt(2 b (K - K_c)), |X0| >= 1."""
    if abs(X0) < 1.0:
        raise DomainError("l* formula needs |X(0)| >= 1", X0=X0)
    if not K_minus_Kc > 0:
        raise DomainError("K - K_c must be positive", K_minus_Kc=K_minus_Kc)
    if not b > 0:
        raise DomainError("b must be positive", b=b)
    return math.acos(1.0 / X0) / math.sqrt(2.0 * b * K_minus_Kc)


def correlation_length(K_minus_Kc: float, b: float = WALKING_B, X0: float = 2.0) -> float:
    """xi^-1 = exp(-l*) in units of the inverse cutoff."""
    return math.exp(-l_star_analytic(K_minus_Kc, b, X0))


# ------------------------
# Reduced 1D flow
# ------------------------
def walking_start(c2: float, x_init: float) -> WalkingState:
    """
    Start at X = -x_init on the surface c^2 with Y Yt = c^2 / 2:
    Yt^2 - Y^2 = c^2 - x_init^2, Y^2 Yt^2 = c^4 / 4.
    """
    if not c2 > 0:
        raise DomainError("walking start needs c^2 > 0", c2=c2)
    s = c2 - x_init * x_init
    root = math.hypot(s, c2)
    quarter = 0.25 * c2 * c2
    if s >= 0:
        yt2 = 0.5 * (s + root)
        y2 = quarter / yt2
    else:
        y2 = 0.5 * (root - s)
        yt2 = quarter / y2
    return WalkingState(-x_init, math.sqrt(y2), math.sqrt(yt2))


def crossing_time_quadrature(c2: float, p: float, X_start: float, X_end: float) -> float:
    """
    l needed to go from X_start to X_end on the approximate flow with
    invariants (c^2, p): integral of dX / sqrt((X^2 - c^2)^2 + 4 p^2).
    """
    if p == 0.0 and c2 >= 0:
        c = math.sqrt(c2)
        if min(X_start, X_end) <= c <= max(X_start, X_end) or min(X_start, X_end) <= -c <= max(X_start, X_end):
            raise DomainError("flow with p = 0 stalls at X = +-c", c2=c2, X_start=X_start, X_end=X_end)

    def rate_inv(x: np.ndarray) -> np.ndarray:
        return 1.0 / np.sqrt((x * x - c2) ** 2 + 4.0 * p * p)

    scale = math.sqrt(abs(c2)) if c2 != 0 else math.sqrt(abs(p)) or 1.0
    marks = [0.0]
    for k in (1.0, 3.0, 10.0, 30.0):
        marks += [k * scale, -k * scale]
    return quadrature_interval(rate_inv, X_start, X_end, breakpoints=marks)
