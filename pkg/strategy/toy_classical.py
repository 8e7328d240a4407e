# strategy/toy_classical.py
"""
Zero-dimensional toy model with complex Hamiltonian

    H(theta) = -J cos(theta) - i K sin(theta)

Z = (2 pi)^-1 * integral exp(-beta H) is real and depends on J^2 - K^2 only:
I0(beta sqrt(J^2 - K^2)) for J >= K, J0(beta sqrt(K^2 - J^2)) for K > J.
"""

import math
from dataclasses import dataclass

import numpy as np

from config.settings import TOY_MIN_POINTS, TOY_QUADRATURE_POINTS
from core.errors import DomainError
from core.quadrature import quadrature_periodic
from core.special_functions import bessel_I0, bessel_J0
from core.types import ComplexValue


# ------------------------
# Parameters
# ------------------------
@dataclass(frozen=True)
class ToyParams:
    beta: float   # inverse temperature, > 0
    J: float      # cosine coupling, >= 0
    K: float      # imaginary sine coupling, >= 0

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise DomainError("beta must be positive and finite", beta=self.beta)
        for name in ("J", "K"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise DomainError(f"{name} must be finite and non-negative", **{name: value})

    @property
    def coupling_gap(self) -> float:
        """J^2 - K^2 (sign decides which Bessel branch applies)."""
        return self.J * self.J - self.K * self.K


# ------------------------
# Partition function
# ------------------------
def partition_exact(p: ToyParams) -> float:
    gap = p.coupling_gap
    if gap >= 0:
        return bessel_I0(p.beta * math.sqrt(gap))
    # I0(i x) = J0(x)
    return bessel_J0(p.beta * math.sqrt(-gap))


def partition_quadrature(p: ToyParams, n_points: int = TOY_QUADRATURE_POINTS) -> ComplexValue:
    """
    Direct evaluation of (2 pi)^-1 * integral exp(beta (J cos + i K sin)).
    The imaginary part is pure quadrature noise.
    """
    if int(n_points) < TOY_MIN_POINTS:
        raise DomainError("toy quadrature needs at least %d points" % TOY_MIN_POINTS, n_points=n_points)

    def integrand(theta: np.ndarray) -> np.ndarray:
        return np.exp(p.beta * (p.J * np.cos(theta) + 1j * p.K * np.sin(theta)))

    return quadrature_periodic(integrand, n_points)


def equivalent_real_hamiltonian(p: ToyParams, theta: float) -> ComplexValue:
    """
    H'(theta) = -sqrt(J^2 - K^2) cos(theta).
    For K > J the principal branch sqrt(J^2 - K^2) = +i sqrt(K^2 - J^2) is used.
    """
    gap = p.coupling_gap
    c = math.cos(theta)
    if gap >= 0:
        return ComplexValue(-math.sqrt(gap) * c, 0.0)
    return ComplexValue(0.0, -math.sqrt(-gap) * c)
