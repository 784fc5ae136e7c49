import numpy as np
import pytest
from scipy.integrate import solve_ivp

from geomint.algebra import orthogonality_residual, rot_x
from geomint.errors import StepSizeUnderflow
from geomint.integrators import InertiaOperator, LiePoissonState
from geomint.reference import _rhs, reference_oracle, reference_trajectory

I123 = InertiaOperator.diagonal([1.0, 2.0, 3.0])
MU0 = np.ones(3) / np.sqrt(3)
S0 = LiePoissonState(np.eye(3), MU0)


def test_zero_time_returns_initial_state():
    s = reference_oracle(I123, S0, 0.0)
    assert np.array_equal(s.mu, MU0) and np.array_equal(s.g, np.eye(3))


def test_principal_axis_relative_equilibrium():
    s = reference_oracle(I123, LiePoissonState(np.eye(3), np.array([1.0, 0.0, 0.0])), 2.0)
    assert np.array_equal(s.mu, [1.0, 0.0, 0.0])
    assert np.linalg.norm(s.g - rot_x(2.0)) <= 1e-10


def test_agrees_with_scipy_dop853():
    f = _rhs(I123)
    y0 = np.concatenate([MU0, np.eye(3).ravel()])
    sol = solve_ivp(lambda t, y: f(y), (0.0, 1.0), y0, method="DOP853", rtol=1e-13, atol=1e-14)
    s = reference_oracle(I123, S0, 1.0)
    assert np.linalg.norm(sol.y[:3, -1] - s.mu) <= 1e-11
    assert np.linalg.norm(sol.y[3:, -1].reshape(3, 3) - s.g) <= 1e-10


def test_conserves_casimir_and_orthogonality():
    out = reference_trajectory(I123, S0, np.linspace(0.0, 5.0, 51))
    assert max(abs(np.linalg.norm(s.mu) - 1.0) for s in out) <= 1e-10
    assert max(orthogonality_residual(s.g) for s in out) <= 1e-13


def test_validation_and_underflow():
    with pytest.raises(ValueError):
        reference_oracle(I123, S0, 1.0, tol=0.0)
    with pytest.raises(ValueError):
        reference_oracle(I123, S0, -1.0)
    with pytest.raises(ValueError):
        reference_trajectory(I123, S0, [1.0, 0.5])
    # a blow-up in finite time cannot be resolved
    with pytest.raises(StepSizeUnderflow):
        reference_oracle(I123, LiePoissonState(np.eye(3), np.array([np.nan, 0.0, 0.0])), 1.0)
