# strategy/xi_scaling.py
"""
BKT-like correlation length from the walking flow.

For each K > K_c the approximate system is started on c^2 = b (K - K_c)
(see walking.walking_start) and integrated until X first reaches the
threshold; ln(xi) = l*. The samples are then fitted to

    ln(1/xi) = -s / sqrt(K - K_c) + const
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config.settings import (
    WALKING_B,
    WALKING_L_MAX,
    WALKING_SENSITIVITY_FRACTION,
    WALKING_THRESHOLD,
    WALKING_X_INIT,
    XI_DEFAULT_GRID,
    XI_MIN_SAMPLES,
)
from core.errors import DomainError, FitError
from core.ode_solver import hermite_crossing
from core.types import EVENT
from strategy.walking import (
    KAPPA_C,
    integrate_walking,
    walking_rhs,
    walking_start,
)

logger = logging.getLogger(__name__)


# ------------------------
# Result
# ------------------------
@dataclass
class XiScalingResult:
    samples: List[Tuple[float, float]]       # (K - K_c, ln 1/xi), increasing K - K_c
    fit_slope: float
    fit_intercept: float
    r_squared: float
    l_stars: List[float] = field(default_factory=list)
    dropped: List[float] = field(default_factory=list)   # K - K_c values that never crossed
    threshold: float = WALKING_THRESHOLD

    def to_dict(self) -> dict:
        return {
            "samples": [{"K_minus_Kc": k, "log_inv_xi": v} for k, v in self.samples],
            "l_stars": self.l_stars,
            "fit_slope": self.fit_slope,
            "fit_intercept": self.fit_intercept,
            "r_squared": self.r_squared,
            "dropped": self.dropped,
            "threshold": self.threshold,
        }


def default_k_grid() -> List[float]:
    start, stop, count = XI_DEFAULT_GRID
    return [KAPPA_C + float(v) for v in np.logspace(math.log10(start), math.log10(stop), count)]


# ------------------------
# Fit
# ------------------------
def fit_log_inv_xi(samples: Sequence[Tuple[float, float]]) -> Tuple[float, float, float]:
    """
    Least squares of ln(1/xi) against -1/sqrt(K - K_c).
    Returns (slope s, intercept, r^2).
    """
    if len(samples) < XI_MIN_SAMPLES:
        raise FitError("too few samples for the xi fit", n_samples=len(samples), required=XI_MIN_SAMPLES)
    dk = np.array([s[0] for s in samples], dtype=float)
    if np.any(dk <= 0):
        raise DomainError("K - K_c must be positive", K_minus_Kc=dk.tolist())
    x = -1.0 / np.sqrt(dk)
    y = np.array([s[1] for s in samples], dtype=float)

    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(residual ** 2)) / total if total > 0 else 1.0
    return float(slope), float(intercept), r2


# ------------------------
# Per-K crossing
# ------------------------
def crossing_scale(
    K_minus_Kc: float,
    threshold: float = WALKING_THRESHOLD,
    b: float = WALKING_B,
    x_init: float = WALKING_X_INIT,
    l_max: float = WALKING_L_MAX,
) -> Optional[float]:
    """
    First l with |X(l)| >= threshold, or None when the flow ends first.
    """
    start = walking_start(b * K_minus_Kc, x_init)

    def reached(_l, v) -> bool:
        return abs(v[0]) >= threshold

    trace = integrate_walking(start, l_max, approximate=True, stop=reached)
    if trace.reason != EVENT:
        logger.warning("xi scan: K-K_c=%.6g never reached |X| = %g (%s)", K_minus_Kc, threshold, trace.reason)
        return None
    if len(trace) == 1:
        return trace.final_l
    level = math.copysign(threshold, trace.final_state[0])
    return hermite_crossing(trace, walking_rhs(True), len(trace) - 1, 0, level)


def _crossing_task(args) -> Optional[float]:
    return crossing_scale(*args)


def xi_scaling_numeric(
    K_grid: Optional[Sequence[float]] = None,
    threshold: float = WALKING_THRESHOLD,
    b: float = WALKING_B,
    x_init: float = WALKING_X_INIT,
    l_max: float = WALKING_L_MAX,
    workers: int = 1,
) -> XiScalingResult:
    K_grid = default_k_grid() if K_grid is None else list(K_grid)
    deltas = sorted(float(K) - KAPPA_C for K in K_grid)
    if any(dk <= 0 for dk in deltas):
        raise DomainError("xi scan needs K > K_c = 2/pi", K_min=min(K_grid))
    if len(set(deltas)) != len(deltas):
        raise DomainError("K grid has repeated values")
    if not threshold > x_init > 0:
        raise DomainError("threshold must exceed x_init > 0", threshold=threshold, x_init=x_init)

    tasks = [(dk, threshold, b, x_init, l_max) for dk in deltas]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            l_stars = list(executor.map(_crossing_task, tasks))
    else:
        l_stars = [_crossing_task(t) for t in tasks]

    kept = [(dk, ls) for dk, ls in zip(deltas, l_stars) if ls is not None]
    dropped = [dk for dk, ls in zip(deltas, l_stars) if ls is None]
    samples = [(dk, -ls) for dk, ls in kept]

    slope, intercept, r2 = fit_log_inv_xi(samples)
    logger.info("xi scan: %d samples, slope=%.6g r2=%.6f", len(samples), slope, r2)
    return XiScalingResult(
        samples=samples,
        fit_slope=slope,
        fit_intercept=intercept,
        r_squared=r2,
        l_stars=[ls for _, ls in kept],
        dropped=dropped,
        threshold=threshold,
    )


def slope_change(base: XiScalingResult, moved: XiScalingResult) -> float:
    return abs(moved.fit_slope - base.fit_slope) / abs(base.fit_slope)


def threshold_sensitivity(
    K_grid: Optional[Sequence[float]] = None,
    threshold: float = WALKING_THRESHOLD,
    b: float = WALKING_B,
    x_init: float = WALKING_X_INIT,
    l_max: float = WALKING_L_MAX,
    workers: int = 1,
    fraction: float = WALKING_SENSITIVITY_FRACTION,
) -> float:
    """
    Relative change of the fitted slope when the scan is repeated at
    fraction * threshold. Moving the threshold shifts every l* by nearly the
    same amount, so only the intercept should follow it.
    """
    base = xi_scaling_numeric(K_grid, threshold, b, x_init, l_max, workers)
    moved = xi_scaling_numeric(K_grid, fraction * threshold, b, x_init, l_max, workers)
    change = slope_change(base, moved)
    logger.info("xi scan: threshold %g -> %g changes the slope by %.3g", threshold,
                fraction * threshold, change)
    return change
