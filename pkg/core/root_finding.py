# core/root_finding.py

import logging
from typing import Callable, Optional, Sequence

import numpy as np

from config.settings import FD_STEP, NEWTON_MAX_ITER, NEWTON_TOL
from core.errors import RootFindError

logger = logging.getLogger(__name__)

VectorField = Callable[[np.ndarray], np.ndarray]


def central_difference_jacobian(f: VectorField, x: Sequence[float], step: float = FD_STEP) -> np.ndarray:
    """
    Jacobian of f at x by central differences, column by column.
    """
    x = np.asarray(x, dtype=float)
    f0 = np.atleast_1d(np.asarray(f(x), dtype=float))
    jac = np.empty((f0.size, x.size))
    for j in range(x.size):
        h = step * max(1.0, abs(x[j]))
        xp = x.copy()
        xm = x.copy()
        xp[j] += h
        xm[j] -= h
        jac[:, j] = (np.atleast_1d(f(xp)) - np.atleast_1d(f(xm))) / (2.0 * h)
    return jac


def newton_root(
    f: VectorField,
    jac: Optional[Callable[[np.ndarray], np.ndarray]],
    x0: Sequence[float],
    tol: float = NEWTON_TOL,
    max_iter: int = NEWTON_MAX_ITER,
) -> np.ndarray:
    """
    Newton iteration until ||f(x)||_inf < tol.

    jac=None falls back to central differences.
    Raises RootFindError on a singular Jacobian or after max_iter iterations.
    """
    x = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    jac = jac or (lambda z: central_difference_jacobian(f, z))

    for it in range(max_iter + 1):
        fx = np.atleast_1d(np.asarray(f(x), dtype=float))
        if not np.all(np.isfinite(fx)):
            raise RootFindError("residual became non-finite", iteration=it, x=x.tolist())
        residual = float(np.max(np.abs(fx)))
        logger.debug("newton_root: iter=%d residual=%.3e", it, residual)
        if residual < tol:
            return x
        if it == max_iter:
            break

        jx = np.atleast_2d(np.asarray(jac(x), dtype=float))
        if not np.all(np.isfinite(jx)) or np.linalg.cond(jx) > 1e14:
            raise RootFindError("singular Jacobian", iteration=it, x=x.tolist())
        x = x - np.linalg.solve(jx, fx)

    raise RootFindError("Newton iteration did not converge", max_iter=max_iter,
                        residual=residual, x=x.tolist())
