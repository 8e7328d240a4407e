# core/types.py

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from config import settings
from core.errors import DomainError, NumericError


# =========================
# Complex scalar
# =========================

@dataclass(frozen=True)
class ComplexValue:
    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise NumericError("non-finite complex value", re=self.re, im=self.im)

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexValue":
        z = complex(z)
        return cls(float(z.real), float(z.imag))

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def conjugate(self) -> "ComplexValue":
        return ComplexValue(self.re, -self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def to_dict(self) -> dict:
        return {"re": self.re, "im": self.im}


# =========================
# Integrator settings
# =========================

@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = settings.REL_TOL
    abs_tol: float = settings.ABS_TOL
    initial_step: float = settings.INITIAL_STEP
    max_step: float = settings.MAX_STEP
    max_steps: int = settings.MAX_STEPS
    divergence_bound: float = settings.DIVERGENCE_BOUND

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol", "initial_step", "max_step", "divergence_bound"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive and finite", **{name: value})
        if int(self.max_steps) <= 0:
            raise DomainError("max_steps must be positive", max_steps=self.max_steps)


# =========================
# Integrator output
# =========================

# termination reasons
SPAN_COMPLETE = "span_complete"
DIVERGED = "diverged"
MAX_STEPS = "max_steps"
EVENT = "event"
FIXED_POINT = "fixed_point"   # RG flow entered a fixed-point neighborhood


@dataclass(frozen=True)
class FlowTrace:
    """
    Accepted integrator samples, oldest -> newest.
    l: shape (n,), states: shape (n, dim).
    """
    l: np.ndarray
    states: np.ndarray
    reason: str
    columns: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        self.l.setflags(write=False)
        self.states.setflags(write=False)

    def __len__(self) -> int:
        return len(self.l)

    @property
    def final_l(self) -> float:
        return float(self.l[-1])

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    def column(self, name: str) -> np.ndarray:
        return self.states[:, self.columns.index(name)]
