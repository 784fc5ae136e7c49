import math

import numpy as np
import pytest
from conftest import E1, E3, ball, rotations, rz, vectors
from hypothesis import given

from geomint.algebra import so3
from geomint.errors import OutOfDomain
from geomint.retraction import CayleyTau, DiscretizationMap, TauKind, TauMap, make_tau, rd, rd_inv

I3 = np.eye(3)
TAUS = [make_tau(k) for k in TauKind]
THETAS = (0.0, 0.25, 0.5, 1.0)


def fd_dtauL(tau, xi, eta, h=1e-6):
    R = tau(xi)
    D = R.T @ (tau(xi + h * eta) - R) / h
    return so3.vee(0.5 * (D - D.T))


def dexp_series(xi, eta, terms=20):
    out, term = np.zeros(3), np.array(eta, dtype=float)
    for k in range(terms):
        out += term / math.factorial(k + 1)
        term = -so3.bracket(xi, term)
    return out


@pytest.mark.parametrize("tau", TAUS, ids=lambda t: t.kind.value)
def test_tau_basic(tau):
    assert np.array_equal(tau(np.zeros(3)), I3)
    assert np.array_equal(tau.inverse(I3), np.zeros(3))
    eta = np.array([0.3, -0.2, 0.9])
    for f in (tau.dtauL, tau.dtauL_inv, tau.dtauL_dual, tau.dtauL_dual_inv):
        assert np.allclose(f(np.zeros(3), eta), eta, atol=1e-16)


def test_tau_closed_form_values():
    exp, cay = make_tau("exp"), make_tau("cayley")
    assert np.allclose(exp(np.pi * E3), np.diag([-1.0, -1.0, 1.0]), atol=1e-15)
    assert np.allclose(cay(2 * E3), [[0, -1, 0], [1, 0, 0], [0, 0, 1]], atol=1e-15)
    assert np.allclose(exp.inverse(rz(np.pi / 2)), np.pi / 2 * E3, atol=1e-15)
    assert np.allclose(cay.inverse(rz(np.pi / 2)), 2 * E3, atol=1e-14)


def test_dexp_matches_series():
    exp = make_tau("exp")
    assert np.allclose(exp.dtauL(np.pi / 2 * E3, E1), dexp_series(np.pi / 2 * E3, E1), atol=1e-14)


def test_out_of_domain():
    exp = make_tau("exp")
    with pytest.raises(OutOfDomain):
        exp.inverse(exp(np.pi * E1))
    with pytest.raises(OutOfDomain):
        exp.check_domain((np.pi - 1e-10) * E1)
    exp.check_domain((np.pi - 1e-8) * E1)
    with pytest.raises(OutOfDomain):
        make_tau("cayley").inverse(np.diag([1.0, -1.0, -1.0]))


def test_discretization_map_validation():
    with pytest.raises(ValueError):
        DiscretizationMap(make_tau("exp"), 1.5)
    with pytest.raises(ValueError):
        make_tau("quaternion")


@pytest.mark.parametrize("tau", TAUS, ids=lambda t: t.kind.value)
def test_rd_examples(tau, rng):
    g = so3.random_element(rng)
    xi = np.array([0.2, -0.4, 0.1])
    for th in THETAS:
        d = DiscretizationMap(tau, th)
        a, b = rd(d, g, np.zeros(3))
        assert np.array_equal(a, g) and np.array_equal(b, g)
        gg, xx = rd_inv(d, g, g)
        assert np.allclose(gg, g, atol=1e-15) and np.allclose(xx, 0.0, atol=1e-15)
    a, b = rd(DiscretizationMap(tau, 0.0), I3, xi)
    assert np.array_equal(a, I3) and np.allclose(b, tau(xi), atol=1e-16)
    a, b = rd(DiscretizationMap(tau, 0.5), g, xi)
    assert np.allclose(a, g @ tau(-xi / 2), atol=1e-15) and np.allclose(b, g @ tau(xi / 2), atol=1e-15)
    gg, xx = rd_inv(DiscretizationMap(tau, 0.0), I3, tau(xi))
    assert np.allclose(gg, I3) and np.allclose(xx, xi, atol=1e-15)


@pytest.mark.parametrize("theta", [0.25, 0.5, 0.8])
def test_cayley_split_matches_generic_newton(theta):
    cay = CayleyTau()
    zeta = np.array([0.9, -1.3, 0.4])
    closed = cay.split(theta, zeta)
    generic = TauMap.split(cay, theta, zeta)
    assert np.allclose(closed, generic, atol=1e-12)
    assert np.allclose(cay(theta * closed) @ cay((1 - theta) * closed), cay(zeta), atol=1e-14)


@given(ball(1.0))
def test_tau_inverse_pair(xi):
    for tau in TAUS:
        assert np.linalg.norm(tau(xi) @ tau(-xi) - I3) <= 1e-12


@given(ball(2.0), ball(1.0), vectors())
def test_dtauL_against_finite_differences(xi, eta, mu):
    for tau in TAUS:
        J = tau.dtauL(xi, eta)
        assert np.linalg.norm(J - fd_dtauL(tau, xi, eta)) <= 1e-5
        assert np.linalg.norm(tau.dtauL_inv(xi, J) - eta) <= 1e-11
        assert abs(tau.dtauL_dual(xi, mu) @ eta - mu @ J) <= 1e-12
        assert np.linalg.norm(tau.dtauL_dual_inv(xi, tau.dtauL_dual(xi, mu)) - mu) <= 1e-11


@given(rotations(), ball(1.0), ball(np.pi / 2 - 1e-3))
def test_rd_roundtrips(g, xi, zeta):
    for tau in TAUS:
        for th in THETAS:
            d = DiscretizationMap(tau, th)
            gg, xx = rd_inv(d, *rd(d, g, xi))
            assert np.linalg.norm(gg - g) <= 1e-11 and np.linalg.norm(xx - xi) <= 1e-11
            g1 = g @ tau(zeta)
            a, b = rd(d, *rd_inv(d, g, g1))
            assert np.linalg.norm(a - g) <= 1e-11 and np.linalg.norm(b - g1) <= 1e-11


@given(rotations(), ball(1.0))
def test_discretization_condition_ii(g, v):
    # d/ds rd(s v) legs: their trivialized velocities differ by exactly v
    h = 1e-5
    for tau in TAUS:
        for th in THETAS:
            d = DiscretizationMap(tau, th)
            p0, p1 = rd(d, g, h * v)
            m0, m1 = rd(d, g, -h * v)
            diff = so3.vee(g.T @ (p1 - m1)) / (2 * h) - so3.vee(g.T @ (p0 - m0)) / (2 * h)
            assert np.linalg.norm(diff - v) <= 1e-8
