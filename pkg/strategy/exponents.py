# strategy/exponents.py
"""
Critical exponents per (d, regime).

- hermitian_xy:        nu = 1/a+ from the (kappa, y) channel at
                       (d/f(d), sqrt((d-2) f(d)/d)), next to the epsilon
                       expansion nu = 1/(2 sqrt(eps)) + 1/8
- pt_symmetric_clock:  d > 2 uses the same thermal eigenvalue at P1;
                       d = 2 needs a point y* on the mixed fixed line
                       (nu = 1/leading eigenvalue, eta = 1/4, beta = nu eta / 2)
- pt_broken:           d > 2 gives nu = 1/lambda0 at P2; d = 2 is the walking
                       regime (no finite nu, vanishing order parameter)
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

from config.settings import COLLISION_WARNING_EPS
from core.eigen import eigenvalues_small
from core.errors import DomainError
from core.types import ComplexValue
from strategy.fixed_points import fixed_line_points, fixed_point
from strategy.rg_flow import f_of_d, hermitian_jacobian

logger = logging.getLogger(__name__)

REGIMES = ("hermitian_xy", "pt_symmetric_clock", "pt_broken")
ETA_2D = 0.25


# ------------------------
# Report
# ------------------------
@dataclass
class ExponentReport:
    d: float
    regime: str                          # hermitian_xy | pt_symmetric_clock | pt_broken
    nu: float                            # math.inf in the walking regime
    eta: Optional[float]                 # None: not computed for d > 2
    beta_op: Optional[float]
    source_eigenvalue: ComplexValue
    nu_epsilon: Optional[float] = None   # epsilon-expansion value (hermitian_xy)
    eigenvalues: List[ComplexValue] = field(default_factory=list)
    order_parameter: str = "finite"      # finite | vanishes
    near_collision: bool = False
    y_star: Optional[float] = None

    def to_dict(self) -> dict:
        finite_nu = math.isfinite(self.nu)
        return {
            "d": self.d,
            "regime": self.regime,
            "nu": self.nu if finite_nu else None,
            "nu_divergent": not finite_nu,
            "nu_epsilon": self.nu_epsilon,
            "eta": self.eta,
            "beta_op": self.beta_op,
            "source_eigenvalue": self.source_eigenvalue.to_dict(),
            "eigenvalues": [z.to_dict() for z in self.eigenvalues],
            "order_parameter": self.order_parameter,
            "near_collision": self.near_collision,
            "y_star": self.y_star,
        }


def epsilon_expansion_nu(d: float) -> float:
    eps = d - 2.0
    return 1.0 / (2.0 * math.sqrt(eps)) + 0.125


def _leading_real(eigenvalues: List[ComplexValue]) -> ComplexValue:
    real = [z for z in eigenvalues if z.im == 0.0]
    if not real:
        raise DomainError("no real eigenvalue to derive nu from")
    return max(real, key=lambda z: z.re)


def _hermitian_channel(d: float, regime: str) -> ExponentReport:
    f = f_of_d(d)
    kappa = d / f
    y = math.sqrt((d - 2.0) / kappa)
    eigenvalues = eigenvalues_small(hermitian_jacobian(kappa, y, d))
    source = _leading_real(eigenvalues)
    return ExponentReport(
        d=d,
        regime=regime,
        nu=1.0 / source.re,
        eta=None,
        beta_op=None,
        source_eigenvalue=source,
        nu_epsilon=epsilon_expansion_nu(d),
        eigenvalues=eigenvalues,
    )


def _pt_broken(d: float) -> ExponentReport:
    p2 = fixed_point(d, "broken", "P2")
    lambda0 = float(p2.jacobian[1, 1])
    source = min((z for z in p2.eigenvalues if z.im == 0.0), key=lambda z: abs(z.re - lambda0))
    near = d - 2.0 < COLLISION_WARNING_EPS
    if near:
        logger.warning("exponent_report: d=%g is close to the P1/P2 collision at d = 2", d)
    return ExponentReport(
        d=d,
        regime="pt_broken",
        nu=1.0 / source.re,
        eta=None,
        beta_op=None,
        source_eigenvalue=source,
        eigenvalues=list(p2.eigenvalues),
        near_collision=near,
    )


def _mixed_line(y_star: float) -> ExponentReport:
    if not y_star > 0:
        raise DomainError("y* must be positive for a finite nu", y_star=y_star)
    point = fixed_line_points("mixed", [y_star])[0]
    source = _leading_real(point.eigenvalues)
    nu = 1.0 / source.re
    return ExponentReport(
        d=2.0,
        regime="pt_symmetric_clock",
        nu=nu,
        eta=ETA_2D,
        beta_op=0.5 * nu * ETA_2D,
        source_eigenvalue=source,
        eigenvalues=list(point.eigenvalues),
        y_star=y_star,
    )


def _walking() -> ExponentReport:
    return ExponentReport(
        d=2.0,
        regime="pt_broken",
        nu=math.inf,
        eta=ETA_2D,
        beta_op=None,
        source_eigenvalue=ComplexValue(0.0, 0.0),
        order_parameter="vanishes",
        near_collision=True,
    )


def exponent_report(d: float, regime: str, y_star: Optional[float] = None) -> ExponentReport:
    d = float(d)
    if regime not in REGIMES:
        raise DomainError("unknown regime", regime=regime)

    if d == 2.0:
        if regime == "pt_broken":
            return _walking()
        if regime == "pt_symmetric_clock" and y_star is not None:
            return _mixed_line(float(y_star))
        raise DomainError("d = 2 supports pt_broken, or pt_symmetric_clock with y_star", regime=regime)

    if not 2.0 < d <= 4.0:
        raise DomainError("exponent_report needs d in (2, 4] or d = 2", d=d)

    if regime == "pt_broken":
        return _pt_broken(d)
    return _hermitian_channel(d, regime)
