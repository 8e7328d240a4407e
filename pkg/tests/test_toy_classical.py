# tests/test_toy_classical.py

import itertools
import math

import pytest
from scipy import special

from core.errors import DomainError
from strategy.toy_classical import (
    ToyParams,
    equivalent_real_hamiltonian,
    partition_exact,
    partition_quadrature,
)

GRID = list(itertools.product([0.5, 1.0, 2.0], [0.0, 0.5, 1.0, 2.0], [0.0, 0.5, 1.0, 2.0]))


@pytest.mark.parametrize("beta,J,K", GRID)
def test_quadrature_matches_closed_form(beta, J, K):
    p = ToyParams(beta, J, K)
    z = partition_quadrature(p)
    assert abs(z.value - partition_exact(p)) < 1e-9
    assert abs(z.im) < 1e-10


def test_i0_branch():
    p = ToyParams(1.0, 2.0, 1.0)
    assert partition_exact(p) == pytest.approx(float(special.i0(math.sqrt(3.0))), rel=1e-12)


def test_j0_branch_when_k_exceeds_j():
    p = ToyParams(2.0, 0.5, 2.0)
    assert partition_exact(p) == pytest.approx(float(special.j0(2.0 * math.sqrt(3.75))), abs=1e-12)


def test_depends_on_coupling_gap_only():
    a = ToyParams(1.0, 1.25, 0.75)
    b = ToyParams(1.0, 1.0, 0.0)
    assert a.coupling_gap == b.coupling_gap
    assert partition_exact(a) == partition_exact(b)
    assert partition_quadrature(a).re == pytest.approx(partition_quadrature(b).re, abs=1e-12)


def test_degenerate_couplings_give_one():
    assert partition_exact(ToyParams(1.0, 1.0, 1.0)) == 1.0


def test_equivalent_real_hamiltonian():
    h = equivalent_real_hamiltonian(ToyParams(1.0, 2.0, 1.0), 0.0)
    assert h.re == pytest.approx(-math.sqrt(3.0))
    assert h.im == 0.0
    h = equivalent_real_hamiltonian(ToyParams(1.0, 1.0, 2.0), math.pi)
    assert h.re == 0.0
    assert h.im == pytest.approx(math.sqrt(3.0))


@pytest.mark.parametrize("kwargs", [
    {"beta": 0.0, "J": 1.0, "K": 0.0},
    {"beta": 1.0, "J": -1.0, "K": 0.0},
    {"beta": 1.0, "J": 1.0, "K": math.inf},
])
def test_invalid_parameters(kwargs):
    with pytest.raises(DomainError):
        ToyParams(**kwargs)


def test_quadrature_needs_enough_nodes():
    with pytest.raises(DomainError):
        partition_quadrature(ToyParams(1.0, 1.0, 0.5), n_points=32)
