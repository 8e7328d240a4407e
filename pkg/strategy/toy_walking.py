# strategy/toy_walking.py

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from config.settings import TOY_WALKING_CONST
from core.errors import DomainError
from core.types import ComplexValue


@dataclass(frozen=True)
class ToyWalkingResult:
    fixed_points: Tuple[ComplexValue, ComplexValue]   # (g-, g+)
    scale_ratio: Optional[float]                      # mu_IR / mu_UV, walking side only
    regime: str                                       # real_pair | collision | walking

    def to_dict(self) -> dict:
        return {
            "g_minus": self.fixed_points[0].to_dict(),
            "g_plus": self.fixed_points[1].to_dict(),
            "scale_ratio": self.scale_ratio,
            "regime": self.regime,
        }


def toy_beta(g: float, alpha: float, alpha_star: float, g_star: float) -> float:
    """mu dg/dmu = alpha - alpha* - (g - g*)^2"""
    return alpha - alpha_star - (g - g_star) ** 2


def toy_walking(alpha: float, alpha_star: float, g_star: float) -> ToyWalkingResult:
    """
    g+- = g* +- sqrt(alpha - alpha*). Below alpha* the pair is complex and
    the flow needs a log-scale of pi / sqrt(alpha* - alpha) to pass from
    g = +inf to g = -inf, so mu_IR / mu_UV = exp(-pi / sqrt(alpha* - alpha)).
    """
    gap = alpha - alpha_star
    if gap > 0:
        root = math.sqrt(gap)
        return ToyWalkingResult(
            fixed_points=(ComplexValue(g_star - root, 0.0), ComplexValue(g_star + root, 0.0)),
            scale_ratio=None,
            regime="real_pair",
        )
    if gap == 0:
        g = ComplexValue(g_star, 0.0)
        return ToyWalkingResult(fixed_points=(g, g), scale_ratio=None, regime="collision")

    root = math.sqrt(-gap)
    return ToyWalkingResult(
        fixed_points=(ComplexValue(g_star, -root), ComplexValue(g_star, root)),
        scale_ratio=math.exp(-TOY_WALKING_CONST / root),
        regime="walking",
    )


def toy_traversal_time(alpha: float, alpha_star: float, g_span: float) -> float:
    """
    Log-scale spent between g - g* = +g_span and -g_span below alpha*:
    (2 / a) arctan(g_span / a), a = sqrt(alpha* - alpha). Tends to pi / a.
    """
    if not alpha < alpha_star:
        raise DomainError("traversal time needs alpha < alpha*", alpha=alpha, alpha_star=alpha_star)
    if not g_span > 0:
        raise DomainError("g_span must be positive", g_span=g_span)
    a = math.sqrt(alpha_star - alpha)
    return 2.0 * math.atan(g_span / a) / a
