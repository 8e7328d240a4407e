# tests/test_eigen.py

import numpy as np
import pytest

from core.eigen import characteristic_polynomial, eigenvalues_dense, eigenvalues_small
from core.errors import DomainError, NumericError
from tests.spectra import match_spectra


def _values(spectrum):
    return [z.value for z in spectrum]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 8])
def test_small_matches_numpy(rng, n):
    for _ in range(5):
        a = rng.normal(size=(n, n))
        worst = match_spectra(_values(eigenvalues_small(a)), np.linalg.eigvals(a))
        assert worst < 1e-8 * max(1.0, np.linalg.norm(a))


def test_small_exact_cases():
    rotation = [[0.0, -1.0], [1.0, 0.0]]
    assert _values(eigenvalues_small(rotation)) == pytest.approx([-1j, 1j], abs=1e-15)
    assert _values(eigenvalues_small(np.diag([3.0, 1.0, 2.0]))) == pytest.approx([1.0, 2.0, 3.0])
    assert _values(eigenvalues_small(np.eye(3) * 2.0)) == pytest.approx([2.0, 2.0, 2.0])


def test_small_sorted_by_real_part():
    values = _values(eigenvalues_small(np.diag([5.0, -1.0, 0.5])))
    assert [v.real for v in values] == sorted(v.real for v in values)


@pytest.mark.parametrize("n", [10, 32, 64])
def test_dense_matches_numpy(rng, n):
    a = rng.normal(size=(n, n))
    worst = match_spectra(_values(eigenvalues_dense(a)), np.linalg.eigvals(a))
    assert worst < 1e-9 * np.linalg.norm(a, ord=np.inf)


def test_dense_symmetric_is_real(rng):
    b = rng.normal(size=(20, 20))
    spectrum = eigenvalues_dense(b + b.T)
    assert max(abs(z.im) for z in spectrum) < 1e-10
    np.testing.assert_allclose([z.re for z in spectrum], np.linalg.eigvalsh(b + b.T), atol=1e-10)


def test_dense_triangular_is_exact():
    a = np.triu(np.ones((6, 6))) + np.diag(np.arange(6.0))
    assert [z.re for z in eigenvalues_dense(a)] == [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]


def test_characteristic_polynomial_matches_numpy(rng):
    a = rng.normal(size=(5, 5))
    np.testing.assert_allclose(characteristic_polynomial(a), np.poly(a), atol=1e-10)


def test_invalid_input():
    with pytest.raises(DomainError):
        eigenvalues_small(np.ones((2, 3)))
    with pytest.raises(DomainError):
        eigenvalues_small(np.eye(9))
    with pytest.raises(NumericError):
        eigenvalues_dense([[1.0, np.nan], [0.0, 1.0]])


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_small_and_dense_agree(rng, n):
    for _ in range(5):
        a = rng.normal(size=(n, n))
        small = _values(eigenvalues_small(a))
        dense = _values(eigenvalues_dense(a))
        assert match_spectra(small, dense) < 1e-8
