# tests/test_quantum_fock.py

import math

import numpy as np
import pytest

from core.eigen import eigenvalues_dense
from core.errors import PTBrokenError, SpecError
from strategy.quantum_fock import (
    ClockHamiltonianSpec,
    build_clock_hamiltonian,
    low_lying,
    semiclassical_energy,
    similarity_transform,
    spectrum_report,
)
from tests.spectra import match_spectra


def _spec(J, K, cutoff=64, eps=1.0, N=4):
    return ClockHamiltonianSpec(eps=eps, J=J, K=K, N=N, cutoff=cutoff)


def test_matrix_bands():
    h = build_clock_hamiltonian(_spec(3.0, 1.0, cutoff=5, N=2))
    e = h.entries
    assert e[0, 2] == pytest.approx(-2.0 * math.sqrt(2.0))
    assert e[2, 0] == pytest.approx(-1.0 * math.sqrt(2.0))
    assert e[1, 3] == pytest.approx(-2.0 * math.sqrt(6.0))
    np.testing.assert_array_equal(np.diag(e), np.arange(5.0))
    assert e[0, 1] == 0.0


def test_pt_symmetric_spectrum_is_real_and_similarity_invariant():
    h = build_clock_hamiltonian(_spec(2.0, 1.0))
    report = spectrum_report(h)
    assert report.pt_phase_label == "symmetric"
    assert report.max_abs_imag < 1e-8 * h.norm()

    g = similarity_transform(h)
    assert g.symmetry_defect() < 1e-12
    transformed = spectrum_report(g)
    worst = match_spectra([z.value for z in transformed.eigenvalues],
                          [z.value for z in report.eigenvalues])
    assert worst < 1e-9 * h.norm()


def test_exceptional_point_spectrum_is_the_diagonal():
    h = build_clock_hamiltonian(_spec(1.0, 1.0))
    report = spectrum_report(h)
    assert report.pt_phase_label == "exceptional"
    assert [z.re for z in report.eigenvalues] == pytest.approx(list(range(64)), abs=1e-12)
    assert report.max_abs_imag == 0.0


def test_pt_broken_has_complex_pairs():
    report = spectrum_report(build_clock_hamiltonian(_spec(1.0, 2.0)))
    assert report.pt_phase_label == "broken"
    assert report.n_complex_pairs >= 1
    imag = sorted(z.im for z in report.eigenvalues)
    assert imag == pytest.approx(sorted(-v for v in imag), abs=1e-8 * report.spectral_radius)


def test_matches_numpy_oracle():
    h = build_clock_hamiltonian(_spec(1.5, 0.7, cutoff=24))
    report = spectrum_report(h)
    worst = match_spectra([z.value for z in report.eigenvalues], np.linalg.eigvals(h.entries))
    assert worst < 1e-9 * h.norm()


def test_hermitian_limit_is_symmetric():
    h = build_clock_hamiltonian(_spec(1.0, 0.0, cutoff=16))
    assert h.symmetry_defect() == 0.0
    assert spectrum_report(h).pt_phase_label == "symmetric"


def test_similarity_transform_requires_unbroken_phase():
    with pytest.raises(PTBrokenError):
        similarity_transform(build_clock_hamiltonian(_spec(1.0, 1.0, cutoff=8)))


def test_low_lying_fraction():
    report = spectrum_report(build_clock_hamiltonian(_spec(1.0, 1.0, cutoff=8)))
    assert [z.re for z in low_lying(report)] == pytest.approx([0.0, 1.0, 2.0, 3.0])


def test_semiclassical_energy():
    spec = _spec(2.0, 1.0)
    e = semiclassical_energy(spec, 1.0, math.pi / 8.0)
    assert e.re == pytest.approx(1.0)
    assert e.im == pytest.approx(-1.0)


@pytest.mark.parametrize("kwargs", [
    {"eps": 1.0, "J": -1.0, "K": 0.0, "N": 4, "cutoff": 16},
    {"eps": 1.0, "J": 1.0, "K": 0.0, "N": 4, "cutoff": 3},
    {"eps": 1.0, "J": 1.0, "K": 0.0, "N": 0, "cutoff": 16},
    {"eps": 1.0, "J": 1.0, "K": 0.0, "N": 4, "cutoff": 513},
    {"eps": math.nan, "J": 1.0, "K": 0.0, "N": 4, "cutoff": 16},
])
def test_invalid_specs(kwargs):
    with pytest.raises(SpecError):
        ClockHamiltonianSpec(**kwargs)


def test_report_serializes():
    report = spectrum_report(build_clock_hamiltonian(_spec(2.0, 1.0, cutoff=8)))
    data = report.to_dict()
    assert data["spec"]["cutoff"] == 8
    assert len(data["eigenvalues"]) == 8


@pytest.mark.parametrize("cutoff", [16, 64, 256])
@pytest.mark.parametrize("J,K,N", [(2.0, 1.0, 4), (1.0, 0.5, 2)])
def test_unbroken_spectrum_is_real_at_every_cutoff(cutoff, J, K, N):
    h = build_clock_hamiltonian(_spec(J, K, cutoff=cutoff, N=N))
    report = spectrum_report(h)
    assert report.pt_phase_label == "symmetric"
    assert report.n_complex_pairs == 0
    assert report.max_abs_imag < 1e-8 * h.norm()

    g = similarity_transform(h).entries
    expected = np.linalg.eigvalsh(0.5 * (g + g.T))
    np.testing.assert_allclose(sorted(z.re for z in report.eigenvalues), expected,
                               atol=1e-8 * h.norm())


@pytest.mark.parametrize("J,K,N,cutoff,expected", [
    (2.0, 1.0, 4, 32, 2 * 28),
    (1.0, 0.5, 2, 16, 2 * 14),
    (1.0, 1.0, 2, 16, 14),
    (0.5, 1.0, 3, 10, 2 * 7),
    (0.0, 0.0, 2, 8, 0),
])
def test_banded_nonzero_count(J, K, N, cutoff, expected):
    e = build_clock_hamiltonian(_spec(J, K, cutoff=cutoff, N=N)).entries
    off_diagonal = e - np.diag(np.diag(e))
    assert np.count_nonzero(off_diagonal) == expected

    rows, cols = np.nonzero(off_diagonal)
    assert set(np.abs(rows - cols)) <= {N}


@pytest.mark.parametrize("N", [1, 2, 4])
@pytest.mark.parametrize("J,K", [(1.0, 0.0), (1.0, 0.3), (2.0, 1.0), (1.5, 0.7)])
def test_similarity_preserves_spectrum(J, K, N):
    h = build_clock_hamiltonian(_spec(J, K, cutoff=24, N=N))
    g = similarity_transform(h)
    worst = match_spectra([z.value for z in eigenvalues_dense(g.entries)],
                          [z.value for z in eigenvalues_dense(h.entries)])
    assert worst < 1e-9 * h.norm()
