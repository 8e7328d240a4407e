# strategy/field_map.py

import math
from dataclasses import dataclass
from typing import Optional

from config.settings import DEFAULT_CLOCK_ORDER
from core.errors import DomainError
from core.types import ComplexValue


# ------------------------
# Field-theory couplings
# ------------------------
@dataclass(frozen=True)
class FieldTheoryParams:
    m2: float                        # mass squared, < 0 in the ordered phase
    u: float                         # quartic coupling, > 0
    v: float                         # real clock amplitude, >= 0
    w: float                         # imaginary clock amplitude, >= 0
    N: int = DEFAULT_CLOCK_ORDER

    def __post_init__(self):
        if not self.u > 0:
            raise DomainError("quartic coupling u must be positive", u=self.u)
        if int(self.N) != self.N or self.N < 1:
            raise DomainError("clock order N must be a positive integer", N=self.N)
        if self.v < 0 or self.w < 0:
            raise DomainError("clock amplitudes must be non-negative", v=self.v, w=self.w)


@dataclass(frozen=True)
class EffectiveCouplings:
    K_stiffness: float
    z_r: float
    z_i: float
    z_tilde: ComplexValue    # sqrt(z_r^2 - z_i^2), imaginary when PT is broken
    pt_phase: str            # symmetric | broken

    @property
    def theta_shift(self) -> Optional[float]:
        """
        Imaginary shift arctanh(z_i/z_r) of the clock angle N theta that maps
        the clock term onto -z_tilde cos(N theta). Only defined for z_r > z_i.
        """
        if self.pt_phase != "symmetric" or self.z_r == 0:
            return None
        return None if self.z_i >= self.z_r else math.atanh(self.z_i / self.z_r)

    def to_dict(self) -> dict:
        return {
            "K_stiffness": self.K_stiffness,
            "z_r": self.z_r,
            "z_i": self.z_i,
            "z_tilde": self.z_tilde.to_dict(),
            "pt_phase": self.pt_phase,
        }


def map_to_effective(p: FieldTheoryParams) -> EffectiveCouplings:
    """
    Freeze the amplitude at rho0^2 = -2 m2 / u:
    K = rho0^2, z_r = v rho0^N / 2^(N/2), z_i = w rho0^N / 2^(N/2).
    """
    if p.m2 >= 0:
        raise DomainError("amplitude freezing needs the ordered phase (m2 < 0)", m2=p.m2)

    rho0_sq = -2.0 * p.m2 / p.u
    rho0 = math.sqrt(rho0_sq)
    scale = rho0 ** p.N / 2.0 ** (0.5 * p.N)
    z_r = p.v * scale
    z_i = p.w * scale

    gap = z_r * z_r - z_i * z_i
    if gap >= 0:
        z_tilde = ComplexValue(math.sqrt(gap), 0.0)
        phase = "symmetric"
    else:
        z_tilde = ComplexValue(0.0, math.sqrt(-gap))
        phase = "broken"

    return EffectiveCouplings(K_stiffness=rho0_sq, z_r=z_r, z_i=z_i, z_tilde=z_tilde, pt_phase=phase)
