# core/ode_solver.py
"""
Embedded Runge-Kutta 5(4) integrator (Dormand-Prince coefficients) with a
PI step-size controller.

The trace keeps every accepted step. Integration ends with one of:
- span_complete: reached the end of l_span
- diverged: a component left the divergence bound (or went non-finite)
- max_steps: step budget exhausted
- event: the optional `stop(l, y)` predicate returned True
"""

import logging
import math
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from config.settings import (
    MIN_STEP,
    PI_ALPHA,
    PI_BETA,
    STEP_GROWTH_MAX,
    STEP_SAFETY,
    STEP_SHRINK_MIN,
)
from core.errors import NumericError, StiffnessError
from core.types import (
    DIVERGED,
    EVENT,
    MAX_STEPS,
    SPAN_COMPLETE,
    FlowTrace,
    IntegratorConfig,
)

logger = logging.getLogger(__name__)

RHS = Callable[[float, np.ndarray], np.ndarray]

# ---- Dormand-Prince tableau ----
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - _B4


def _dp_step(rhs: RHS, l: float, y: np.ndarray, h: float, k1: np.ndarray):
    """
    One Dormand-Prince step. Returns (y_new, error_vector, k7).
    k7 = rhs(l + h, y_new) is reused as k1 of the next step (FSAL).
    """
    k = [k1]
    for i in range(1, 7):
        yi = y + h * sum(a * kj for a, kj in zip(_A[i], k))
        k.append(np.asarray(rhs(l + _C[i] * h, yi), dtype=float))
    y_new = y + h * sum(b * kj for b, kj in zip(_B5, k) if b != 0.0)
    err = h * sum(e * kj for e, kj in zip(_E, k) if e != 0.0)
    return y_new, err, k[6]


def _error_norm(err: np.ndarray, y: np.ndarray, y_new: np.ndarray, cfg: IntegratorConfig) -> float:
    scale = cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(y), np.abs(y_new))
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def integrate_ode(
    rhs: RHS,
    y0: Sequence[float],
    l_span: Tuple[float, float],
    cfg: Optional[IntegratorConfig] = None,
    stop: Optional[Callable[[float, np.ndarray], bool]] = None,
    columns: Tuple[str, ...] = (),
) -> FlowTrace:
    """
    Integrate dy/dl = rhs(l, y) over l_span with per-step error control.
    """
    cfg = cfg or IntegratorConfig()
    l0, l1 = float(l_span[0]), float(l_span[1])
    direction = 1.0 if l1 >= l0 else -1.0

    y = np.array(y0, dtype=float).ravel()
    k1 = np.asarray(rhs(l0, y), dtype=float)
    if not (np.all(np.isfinite(y)) and np.all(np.isfinite(k1))):
        raise NumericError("right-hand side not finite at the initial state", l0=l0)

    ls = [l0]
    ys = [y.copy()]

    if l1 == l0:
        return _trace(ls, ys, SPAN_COMPLETE, columns)
    if stop is not None and stop(l0, y):
        return _trace(ls, ys, EVENT, columns)

    l = l0
    h = min(cfg.initial_step, cfg.max_step, abs(l1 - l0))
    err_prev = 1.0
    rejections = 0
    reason = MAX_STEPS

    for _ in range(int(cfg.max_steps)):
        final_step = h >= abs(l1 - l)
        if final_step:
            h = abs(l1 - l)
        y_new, err, k7 = _dp_step(rhs, l, y, direction * h, k1)

        if not np.all(np.isfinite(y_new)):
            # treat overflow inside a step as a failed step first
            h *= STEP_SHRINK_MIN
            if h < MIN_STEP:
                reason = DIVERGED
                break
            continue

        err_norm = _error_norm(err, y, y_new, cfg)

        if err_norm <= 1.0:
            l = l1 if final_step else l + direction * h
            y = y_new
            k1 = k7
            ls.append(l)
            ys.append(y.copy())

            if np.max(np.abs(y)) > cfg.divergence_bound or not np.all(np.isfinite(k1)):
                reason = DIVERGED
                break
            if stop is not None and stop(l, y):
                reason = EVENT
                break
            if final_step:
                reason = SPAN_COMPLETE
                break

            if err_norm == 0.0:
                factor = STEP_GROWTH_MAX
            else:
                factor = STEP_SAFETY * err_norm ** (-PI_ALPHA) * err_prev ** PI_BETA
            factor = min(STEP_GROWTH_MAX, max(STEP_SHRINK_MIN, factor))
            h = min(h * factor, cfg.max_step)
            err_prev = max(err_norm, 1e-4)
        else:
            rejections += 1
            factor = max(STEP_SHRINK_MIN, STEP_SAFETY * err_norm ** (-1.0 / 5.0))
            h *= factor

        if h < MIN_STEP:
            raise StiffnessError("required step fell below the minimum", l=l, step=h)

    logger.debug("integrate_ode: %d accepted, %d rejected, reason=%s", len(ls) - 1, rejections, reason)
    return _trace(ls, ys, reason, columns)


def _trace(ls, ys, reason, columns) -> FlowTrace:
    return FlowTrace(l=np.array(ls, dtype=float), states=np.array(ys, dtype=float),
                     reason=reason, columns=tuple(columns))


def hermite_crossing(trace: FlowTrace, rhs: RHS, index: int, component: int, level: float) -> float:
    """
    l at which `component` crosses `level` between samples index-1 and index,
    located on the cubic Hermite interpolant built from the stored samples and
    their derivatives.
    """
    la, lb = float(trace.l[index - 1]), float(trace.l[index])
    ya, yb = trace.states[index - 1], trace.states[index]
    da = np.asarray(rhs(la, ya), dtype=float)[component]
    db = np.asarray(rhs(lb, yb), dtype=float)[component]
    h = lb - la
    pa, pb = ya[component], yb[component]

    def interp(s: float) -> float:
        h00 = 2 * s ** 3 - 3 * s ** 2 + 1
        h10 = s ** 3 - 2 * s ** 2 + s
        h01 = -2 * s ** 3 + 3 * s ** 2
        h11 = s ** 3 - s ** 2
        return h00 * pa + h10 * h * da + h01 * pb + h11 * h * db - level

    lo, hi = 0.0, 1.0
    f_lo = interp(lo)
    if f_lo == 0.0:
        return la
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        f_mid = interp(mid)
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return la + 0.5 * (lo + hi) * h
