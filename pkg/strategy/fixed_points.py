# strategy/fixed_points.py

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config.settings import NEWTON_TOL
from core.eigen import eigenvalues_small
from core.errors import DomainError
from core.root_finding import central_difference_jacobian, newton_root
from core.types import ComplexValue
from strategy.rg_flow import (
    beta_vector,
    f_of_d,
    jacobian_vector,
    validate_phase,
)

logger = logging.getLogger(__name__)

KAPPA_STAR_2D = 2.0 / math.pi
MARGINAL_TOL = 1e-10


# ------------------------
# Fixed point output
# ------------------------
@dataclass
class FixedPoint:
    location: Tuple[float, float, float]   # (kappa, y, y_tilde)
    jacobian: np.ndarray
    eigenvalues: List[ComplexValue]
    classification: str    # sink | source | saddle | spiral_source | spiral_sink | marginal
    label: str             # P1 | P2 | fixed_line_point
    d: float
    pt_phase: str
    residual: float = field(default=0.0)

    @property
    def leading_eigenvalue(self) -> ComplexValue:
        return max(self.eigenvalues, key=lambda z: (z.re, -abs(z.im)))

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "d": self.d,
            "pt_phase": self.pt_phase,
            "location": list(self.location),
            "eigenvalues": [z.to_dict() for z in self.eigenvalues],
            "classification": self.classification,
            "residual": self.residual,
        }


def classify(eigenvalues: Sequence[ComplexValue], tol: float = MARGINAL_TOL) -> str:
    """Stability class from the signs of the real parts."""
    re = np.array([z.re for z in eigenvalues])
    im = np.array([z.im for z in eigenvalues])
    if np.any(np.abs(re) < tol):
        return "marginal"
    spiral = bool(np.any(np.abs(im) > tol))
    if np.all(re > 0):
        return "spiral_source" if spiral else "source"
    if np.all(re < 0):
        return "spiral_sink" if spiral else "sink"
    return "saddle"


def closed_form_p1(d: float) -> np.ndarray:
    kappa1 = d / f_of_d(d)
    return np.array([kappa1, math.sqrt((d - 2.0) / kappa1), 0.0])


def closed_form_p2(d: float) -> np.ndarray:
    kappa2 = 4.0 * f_of_d(d) / (math.pi ** 2 * d)
    return np.array([kappa2, 0.0, 0.5 * math.pi * math.sqrt((d - 2.0) * kappa2)])


def linearize(location, d: float, phase: str, label: str, residual: float = 0.0) -> FixedPoint:
    x = np.asarray(location, dtype=float)
    jac = jacobian_vector(x, d, phase)
    eigenvalues = eigenvalues_small(jac)
    return FixedPoint(
        location=tuple(float(v) for v in x),
        jacobian=jac,
        eigenvalues=eigenvalues,
        classification=classify(eigenvalues),
        label=label,
        d=float(d),
        pt_phase=phase,
        residual=residual,
    )


def refine(seed: np.ndarray, d: float, phase: str) -> Tuple[np.ndarray, float]:
    f = f_of_d(d)
    root = newton_root(
        lambda x: beta_vector(x, d, phase, f),
        lambda x: jacobian_vector(x, d, phase, f),
        seed,
        tol=NEWTON_TOL,
    )
    residual = float(np.max(np.abs(beta_vector(root, d, phase, f))))
    return root, residual


# ------------------------
# Nontrivial fixed points for d > 2
# ------------------------
def fixed_points(d: float, phase: str) -> List[FixedPoint]:
    """
    P1 (y_tilde = 0) exists in both phases; P2 (y = 0) only when PT is broken.
    """
    d = float(d)
    validate_phase(phase)
    if not (2.0 < d <= 4.0):
        raise DomainError("fixed_points needs d in (2, 4]", d=d)

    seeds = [("P1", closed_form_p1(d))]
    if phase == "broken":
        seeds.append(("P2", closed_form_p2(d)))

    points = []
    for label, seed in seeds:
        root, residual = refine(seed, d, phase)
        point = linearize(root, d, phase, label, residual)
        logger.debug("fixed_points: %s d=%g at %s (%s)", label, d, point.location, point.classification)
        points.append(point)
    return points


def fixed_point(d: float, phase: str, label: str) -> FixedPoint:
    for point in fixed_points(d, phase):
        if point.label == label:
            return point
    raise DomainError("no such fixed point in this phase", d=d, pt_phase=phase, label=label)


# ------------------------
# d = 2 fixed lines
# ------------------------
FIXED_LINES = ("y_plane", "y_tilde_plane", "mixed")


def fixed_line_points(line: str, values: Sequence[float], phase: str = "symmetric") -> List[FixedPoint]:
    """
    Points on the d = 2 lines of fixed points.

    - y_plane:       (kappa, 0, 0), kappa >= 2/pi, the BKT line of the y plane
    - y_tilde_plane: (kappa, 0, 0), kappa <= 2/pi, its mirror in the y_tilde
                     plane; a BKT line in the symmetric phase only
    - mixed:         (2/pi, y*, y*), symmetric phase only

    `values` are kappa for the first two lines and y* for the third.
    """
    validate_phase(phase)
    if line not in FIXED_LINES:
        raise DomainError("unknown fixed line", line=line)
    if line != "y_plane" and phase != "symmetric":
        raise DomainError("this fixed line needs the PT-symmetric phase", line=line, pt_phase=phase)

    points = []
    for v in values:
        v = float(v)
        if line == "y_plane":
            if v < KAPPA_STAR_2D:
                raise DomainError("y_plane line needs kappa >= 2/pi", kappa=v)
            loc = (v, 0.0, 0.0)
        elif line == "y_tilde_plane":
            if not 0 < v <= KAPPA_STAR_2D:
                raise DomainError("y_tilde_plane line needs 0 < kappa <= 2/pi", kappa=v)
            loc = (v, 0.0, 0.0)
        else:
            if v < 0:
                raise DomainError("y* must be non-negative", y_star=v)
            loc = (KAPPA_STAR_2D, v, v)
        residual = float(np.max(np.abs(beta_vector(np.array(loc), 2.0, phase))))
        points.append(linearize(loc, 2.0, phase, "fixed_line_point", residual))
    return points


@dataclass
class FixedLineFit:
    samples: List[Tuple[float, float]]   # (y_star, leading eigenvalue)
    slope: float
    relative_residual: float


def fixed_line_scan(y_star_grid: Sequence[float], d: float = 2.0) -> List[Tuple[float, float]]:
    """
    Leading real eigenvalue of the central-difference Jacobian of the full
    3D flow at (2/pi, y*, y*), d = 2, PT-symmetric.
    """
    if float(d) != 2.0:
        raise DomainError("fixed_line_scan is defined at d = 2 only", d=d)
    grid = [float(v) for v in y_star_grid]
    if not grid:
        raise DomainError("empty y* grid")
    for v in grid:
        if not 0.0 <= v <= 0.3:
            raise DomainError("y* must lie in [0, 0.3]", y_star=v)

    f = f_of_d(2.0)
    out = []
    for y_star in grid:
        x = np.array([KAPPA_STAR_2D, y_star, y_star])
        jac = central_difference_jacobian(lambda z: beta_vector(z, 2.0, "symmetric", f), x)
        leading = max(z.re for z in eigenvalues_small(jac))
        out.append((y_star, float(leading)))
    return out


def fit_through_origin(samples: Sequence[Tuple[float, float]]) -> FixedLineFit:
    """
    Least-squares slope of eigenvalue = s * y*, with ||lam - s y*|| / ||lam||.
    """
    ys = np.array([s[0] for s in samples])
    lam = np.array([s[1] for s in samples])
    denom = float(ys @ ys)
    if denom == 0.0:
        raise DomainError("fit through origin needs a nonzero y*")
    slope = float(ys @ lam) / denom
    norm = float(np.linalg.norm(lam))
    rel = float(np.linalg.norm(lam - slope * ys)) / norm if norm > 0 else 0.0
    return FixedLineFit(samples=list(samples), slope=slope, relative_residual=rel)


def mixed_line_slope() -> float:
    """Linear-order slope of the leading eigenvalue on the mixed line: 4/sqrt(pi)."""
    return 4.0 / math.sqrt(math.pi)


def collision_scan(d_grid: Sequence[float]) -> List[dict]:
    """
    P1 / P2 separation as d approaches 2 in the PT-broken phase:
    kappa1 - kappa2, y1, y_tilde2 and lambda0 = d - f(d) kappa2.
    """
    rows = []
    for d in d_grid:
        p1, p2 = fixed_points(float(d), "broken")
        rows.append({
            "d": float(d),
            "kappa1": p1.location[0],
            "kappa2": p2.location[0],
            "gap": p1.location[0] - p2.location[0],
            "y1": p1.location[1],
            "y_tilde2": p2.location[2],
            "lambda0_re": float(p2.jacobian[1, 1]),
        })
    return rows


def leading_power(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Slope of log|y| vs log x (power-law exponent)."""
    lx = np.log(np.asarray(xs, dtype=float))
    ly = np.log(np.abs(np.asarray(ys, dtype=float)))
    slope, _ = np.polyfit(lx, ly, 1)
    return float(slope)


def extrapolate_to_two(d_grid: Sequence[float], values: Sequence[float]) -> float:
    """Quadratic fit in (d - 2), evaluated at d = 2."""
    eps = np.asarray(d_grid, dtype=float) - 2.0
    coeffs = np.polyfit(eps, np.asarray(values, dtype=float), min(2, len(eps) - 1))
    return float(np.polyval(coeffs, 0.0))
