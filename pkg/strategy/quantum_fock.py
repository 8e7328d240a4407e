# strategy/quantum_fock.py
"""
Truncated Fock-space clock Hamiltonian

    H = eps a^dag a - (J/2) (a^N + (a^dag)^N) - (K/2) (a^N - (a^dag)^N)

in the basis |0> .. |cutoff-1>, a|m> = sqrt(m)|m-1>. The a^N term fills the
upper band (row m, column m+N), (a^dag)^N the lower band.

For J > K the diagonal similarity exp(lam n) H exp(-lam n) with
lam = arctanh(K/J)/N turns H into a real symmetric matrix with clock
coupling sqrt(J^2 - K^2), so the spectrum is real at every cutoff.
spectrum_report diagonalizes that symmetric form whenever it exists.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from config.settings import EXCEPTIONAL_TOL, FOCK_MAX_CUTOFF, IMAG_TOL_FACTOR
from core.eigen import eigenvalues_dense
from core.errors import PTBrokenError, SpecError
from core.types import ComplexValue

logger = logging.getLogger(__name__)


# ------------------------
# Model spec
# ------------------------
@dataclass(frozen=True)
class ClockHamiltonianSpec:
    eps: float      # oscillator energy
    J: float        # Hermitian clock coupling, >= 0
    K: float        # anti-Hermitian clock coupling, >= 0
    N: int          # clock order
    cutoff: int     # Fock-space dimension, N <= cutoff <= 512

    def __post_init__(self):
        for name in ("eps", "J", "K"):
            if not math.isfinite(getattr(self, name)):
                raise SpecError(f"{name} must be finite", **{name: getattr(self, name)})
        if self.J < 0 or self.K < 0:
            raise SpecError("J and K must be non-negative", J=self.J, K=self.K)
        if int(self.N) != self.N or self.N < 1:
            raise SpecError("clock order N must be a positive integer", N=self.N)
        if int(self.cutoff) != self.cutoff or self.cutoff < self.N:
            raise SpecError("cutoff must be an integer >= N", cutoff=self.cutoff, N=self.N)
        if self.cutoff > FOCK_MAX_CUTOFF:
            raise SpecError("cutoff above dense eigensolver bound", cutoff=self.cutoff,
                            max_cutoff=FOCK_MAX_CUTOFF)

    @property
    def is_exceptional(self) -> bool:
        return self.J > 0 and abs(self.J - self.K) <= EXCEPTIONAL_TOL


@dataclass(frozen=True)
class FockMatrix:
    dim: int
    entries: np.ndarray
    spec: ClockHamiltonianSpec
    similarity_lambda: float = 0.0   # lam of exp(lam n) H exp(-lam n) already applied

    def __post_init__(self):
        self.entries.setflags(write=False)

    def norm(self) -> float:
        return float(np.linalg.norm(self.entries, ord=np.inf))

    def symmetry_defect(self) -> float:
        """max |H - H^T| relative to max |H|."""
        scale = float(np.max(np.abs(self.entries))) or 1.0
        return float(np.max(np.abs(self.entries - self.entries.T))) / scale


@dataclass
class SpectrumReport:
    eigenvalues: List[ComplexValue]
    max_abs_imag: float
    n_complex_pairs: int
    pt_phase_label: str      # symmetric | broken | exceptional
    tol_imag: float
    spectral_radius: float
    spec: Optional[ClockHamiltonianSpec] = field(default=None)

    def to_dict(self) -> dict:
        out = {
            "eigenvalues": [z.to_dict() for z in self.eigenvalues],
            "max_abs_imag": self.max_abs_imag,
            "n_complex_pairs": self.n_complex_pairs,
            "pt_phase_label": self.pt_phase_label,
            "tol_imag": self.tol_imag,
            "spectral_radius": self.spectral_radius,
        }
        if self.spec is not None:
            out["spec"] = {"eps": self.spec.eps, "J": self.spec.J, "K": self.spec.K,
                           "N": self.spec.N, "cutoff": self.spec.cutoff}
        return out


# ------------------------
# Construction
# ------------------------
def _ladder_amplitudes(cutoff: int, N: int) -> np.ndarray:
    """sqrt((m+N)!/m!) for m = 0 .. cutoff-N-1, accumulated in log space."""
    log_fact = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, cutoff, dtype=float)))))
    m = np.arange(cutoff - N)
    return np.exp(0.5 * (log_fact[m + N] - log_fact[m]))


def build_clock_hamiltonian(spec: ClockHamiltonianSpec) -> FockMatrix:
    n, N = int(spec.cutoff), int(spec.N)
    h = np.zeros((n, n))
    h[np.arange(n), np.arange(n)] = spec.eps * np.arange(n)

    if n > N:
        amp = _ladder_amplitudes(n, N)
        m = np.arange(n - N)
        upper = -0.5 * (spec.J + spec.K)
        lower = -0.5 * (spec.J - spec.K) + 0.0
        h[m, m + N] = upper * amp
        h[m + N, m] = lower * amp

    return FockMatrix(dim=n, entries=h, spec=spec)


def similarity_transform(h: FockMatrix) -> FockMatrix:
    """
    exp(lam n) H exp(-lam n), applied entrywise as H_ij exp(lam (i - j)).
    Only J > K keeps lam real.
    """
    spec = h.spec
    if not spec.J > spec.K:
        raise PTBrokenError("similarity transform needs J > K", J=spec.J, K=spec.K)

    lam = math.atanh(spec.K / spec.J) / spec.N
    out = np.array(h.entries, dtype=float)
    rows, cols = np.nonzero(out)
    out[rows, cols] *= np.exp(lam * (rows - cols))
    return FockMatrix(dim=h.dim, entries=out, spec=spec, similarity_lambda=h.similarity_lambda + lam)


# ------------------------
# Spectral diagnostics
# ------------------------
def spectral_matrix(h: FockMatrix) -> np.ndarray:
    """
    Matrix handed to the dense eigensolver.

    For J > K (away from the exceptional point) this is the symmetric part of
    the similarity-transformed matrix, which carries the same spectrum. The
    raw matrix is exp(-lam n) S exp(lam n) with S symmetric; QR on it loses
    reality once exp(lam cutoff) is large.
    """
    spec = h.spec
    if not spec.J > spec.K or spec.is_exceptional:
        return h.entries
    g = h if h.similarity_lambda or spec.K == 0 else similarity_transform(h)
    return 0.5 * (g.entries + g.entries.T)


def spectrum_report(h: FockMatrix, tol_imag: Optional[float] = None) -> SpectrumReport:
    eigenvalues = eigenvalues_dense(spectral_matrix(h))
    radius = max((abs(z) for z in eigenvalues), default=0.0)
    if tol_imag is None:
        tol_imag = IMAG_TOL_FACTOR * max(radius, 1.0)

    imag = np.array([z.im for z in eigenvalues])
    max_abs_imag = float(np.max(np.abs(imag))) if imag.size else 0.0
    n_complex_pairs = int(np.count_nonzero(imag > tol_imag))

    if h.spec.is_exceptional:
        label = "exceptional"
    elif max_abs_imag < tol_imag:
        label = "symmetric"
    else:
        label = "broken"

    logger.info("spectrum_report: dim=%d label=%s max|Im|=%.3e pairs=%d",
                h.dim, label, max_abs_imag, n_complex_pairs)
    return SpectrumReport(
        eigenvalues=eigenvalues,
        max_abs_imag=max_abs_imag,
        n_complex_pairs=n_complex_pairs,
        pt_phase_label=label,
        tol_imag=float(tol_imag),
        spectral_radius=float(radius),
        spec=h.spec,
    )


def low_lying(report: SpectrumReport, fraction: float = 0.5) -> List[ComplexValue]:
    """
    Lowest `fraction` of the spectrum by real part. Truncation artifacts sit
    near the top of the band, so cross-cutoff comparisons use this part only.
    """
    ordered = sorted(report.eigenvalues, key=lambda z: (z.re, z.im))
    return ordered[: max(1, int(len(ordered) * fraction))]


def semiclassical_energy(spec: ClockHamiltonianSpec, alpha_abs: float, theta: float) -> ComplexValue:
    """
    Coherent-state energy eps |a|^2 - |a|^N (J cos N theta + i K sin N theta).
    """
    if alpha_abs < 0:
        raise SpecError("alpha_abs must be non-negative", alpha_abs=alpha_abs)
    amp = alpha_abs ** spec.N
    return ComplexValue(
        spec.eps * alpha_abs ** 2 - amp * spec.J * math.cos(spec.N * theta),
        -amp * spec.K * math.sin(spec.N * theta),
    )
