# core/quadrature.py

import math
from typing import Callable

import numpy as np

from config.settings import QUADRATURE_MIN_POINTS
from core.errors import DomainError, NumericError
from core.types import ComplexValue


def periodic_nodes(n_points: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(n_points) / n_points


def quadrature_periodic(f: Callable[[np.ndarray], np.ndarray], n_points: int) -> ComplexValue:
    """
    (2 pi)^-1 * integral of f over [0, 2 pi] by the periodic trapezoid rule.

    f is evaluated once on the whole node array and may return real or
    complex samples. For smooth periodic integrands the error decays
    geometrically in n_points.
    """
    n_points = int(n_points)
    if n_points < QUADRATURE_MIN_POINTS:
        raise DomainError("quadrature_periodic needs at least %d points" % QUADRATURE_MIN_POINTS,
                          n_points=n_points)

    theta = periodic_nodes(n_points)
    samples = np.asarray(f(theta), dtype=complex)
    if samples.shape != theta.shape:
        samples = np.broadcast_to(samples, theta.shape)

    if not np.all(np.isfinite(samples)):
        raise NumericError("non-finite integrand sample", n_points=n_points)

    value = samples.mean()
    return ComplexValue.from_complex(value)


def quadrature_interval(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    breakpoints=(),
    panels: int = 32,
    order: int = 20,
) -> float:
    """
    Composite Gauss-Legendre integral of a real f over [a, b].

    The interval is first cut at `breakpoints` (places where f varies
    quickly), then each piece into `panels` equal panels of `order` nodes.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integration limits must be finite", a=a, b=b)
    if a == b:
        return 0.0
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0

    cuts = sorted({a, b} | {float(p) for p in breakpoints if a < p < b})
    nodes, weights = np.polynomial.legendre.leggauss(order)

    total = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        edges = np.linspace(lo, hi, panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
        samples = np.asarray(f(x), dtype=float)
        if not np.all(np.isfinite(samples)):
            raise NumericError("non-finite integrand sample", lo=lo, hi=hi)
        total += float(np.sum(samples.reshape(panels, order) * weights[None, :] * half[:, None]))
    return sign * total
