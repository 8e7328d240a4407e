# strategy/josephson.py

import cmath
import math
from dataclasses import dataclass
from typing import Tuple

from core.errors import DomainError
from core.types import ComplexValue


# ------------------------
# Two-site Bose-Hubbard parameters
# ------------------------
@dataclass(frozen=True)
class BoseHubbardParams:
    J_tunnel: float
    U: float
    mu: float
    n_total: float
    delta_n: float          # population imbalance
    delta_theta: float      # phase difference across the wells
    mode: str = "closed"    # closed | gain_loss

    def __post_init__(self):
        if self.mode not in ("closed", "gain_loss"):
            raise DomainError("mode must be closed or gain_loss", mode=self.mode)
        if not self.J_tunnel > 0:
            raise DomainError("J_tunnel must be positive", J_tunnel=self.J_tunnel)
        if not self.U > 0:
            raise DomainError("U must be positive", U=self.U)
        if not self.n_total > 0:
            raise DomainError("n_total must be positive", n_total=self.n_total)
        if self.mode == "closed" and not abs(self.delta_n) < self.n_total:
            raise DomainError("closed system requires |delta_n| < n_total",
                              delta_n=self.delta_n, n_total=self.n_total)


def onsite_energy(p: BoseHubbardParams) -> float:
    """E_n = -(mu + U/2) n + U n^2 / 4"""
    n = p.n_total
    return -(p.mu + 0.5 * p.U) * n + 0.25 * p.U * n * n


def josephson_semiclassical(p: BoseHubbardParams) -> ComplexValue:
    """
    E_n - J sqrt(n^2 - dn^2) cos(dtheta) + (U/4) dn^2.

    With gain and loss dn^2 can exceed n^2; the root then continues to
    +i sqrt(dn^2 - n^2) and the tunneling term is purely imaginary.
    """
    radicand = p.n_total ** 2 - p.delta_n ** 2
    root = cmath.sqrt(complex(radicand, 0.0))
    tunneling = -p.J_tunnel * root * math.cos(p.delta_theta)
    energy = onsite_energy(p) + tunneling + 0.25 * p.U * p.delta_n ** 2
    return ComplexValue.from_complex(energy)


def gain_loss_imbalance(n10: float, n20: float, delta_gain: float) -> Tuple[float, bool]:
    """
    Shift n1 -> n10 + delta_gain, n2 -> n20 - delta_gain.

    Returns (delta_n, pt_broken); the tunneling root turns imaginary once
    delta_gain > n20.
    """
    if n10 < 0 or n20 < 0:
        raise DomainError("occupations must be non-negative", n10=n10, n20=n20)

    n1 = n10 + delta_gain
    n2 = n20 - delta_gain
    total = n10 + n20
    if not math.isclose(n1 + n2, total, rel_tol=1e-12, abs_tol=1e-12):
        raise DomainError("total occupation not conserved by the shift", n1=n1, n2=n2)

    delta_n = n10 - n20 + 2.0 * delta_gain
    return delta_n, delta_gain > n20
