# tests/test_root_finding.py

import math

import numpy as np
import pytest

from core.errors import RootFindError
from core.root_finding import central_difference_jacobian, newton_root


def test_newton_scalar():
    root = newton_root(lambda x: x * x - 2.0, lambda x: np.array([[2.0 * x[0]]]), [1.0])
    assert root[0] == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_newton_without_jacobian():
    def f(x):
        return np.array([x[0] ** 2 + x[1] ** 2 - 4.0, x[0] - x[1]])

    root = newton_root(f, None, [1.0, 0.5])
    assert root == pytest.approx([math.sqrt(2.0), math.sqrt(2.0)], abs=1e-10)


def test_newton_singular_jacobian():
    with pytest.raises(RootFindError):
        newton_root(lambda x: x * x + 1.0, lambda x: np.array([[2.0 * x[0]]]), [0.0])


def test_newton_iteration_cap():
    with pytest.raises(RootFindError):
        newton_root(lambda x: x * x + 1.0, lambda x: np.array([[2.0 * x[0]]]), [0.3], max_iter=5)


def test_central_difference_of_linear_map():
    a = np.array([[1.0, 2.0], [-3.0, 0.5]])
    jac = central_difference_jacobian(lambda x: a @ x, [0.2, -0.7])
    np.testing.assert_allclose(jac, a, atol=1e-9)
