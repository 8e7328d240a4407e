# tests/test_field_map.py

import math

import pytest

from core.errors import DomainError
from strategy.field_map import FieldTheoryParams, map_to_effective


def test_ordered_phase_map():
    eff = map_to_effective(FieldTheoryParams(m2=-2.0, u=1.0, v=1.0, w=0.0, N=4))
    assert eff.K_stiffness == pytest.approx(4.0)
    # rho0 = 2, z_r = rho0^4 / 2^2
    assert eff.z_r == pytest.approx(4.0)
    assert eff.z_i == 0.0
    assert eff.pt_phase == "symmetric"
    assert eff.theta_shift == 0.0


def test_broken_when_imaginary_amplitude_dominates():
    eff = map_to_effective(FieldTheoryParams(m2=-2.0, u=1.0, v=1.0, w=2.0))
    assert eff.pt_phase == "broken"
    assert eff.z_tilde.re == 0.0
    assert eff.z_tilde.im == pytest.approx(4.0 * math.sqrt(3.0))
    assert eff.theta_shift is None


def test_theta_shift_in_symmetric_phase():
    eff = map_to_effective(FieldTheoryParams(m2=-1.0, u=2.0, v=2.0, w=1.0))
    assert eff.theta_shift == pytest.approx(math.atanh(0.5))
    assert eff.z_tilde.re == pytest.approx(math.sqrt(eff.z_r ** 2 - eff.z_i ** 2))


def test_disordered_phase_rejected():
    with pytest.raises(DomainError):
        map_to_effective(FieldTheoryParams(m2=1.0, u=1.0, v=1.0, w=0.0))


def test_invalid_couplings():
    with pytest.raises(DomainError):
        FieldTheoryParams(m2=-1.0, u=0.0, v=1.0, w=0.0)
    with pytest.raises(DomainError):
        FieldTheoryParams(m2=-1.0, u=1.0, v=-1.0, w=0.0)
