import numpy as np
import pytest
from conftest import ball, rotations, vectors
from hypothesis import given

from geomint.algebra import so3
from geomint.bundles import (
    TrivializedCotangentPoint as CP,
    TrivializedTangentPoint as TP,
    TTGPoint,
    TTStarGPoint,
)
from geomint.lifts import (
    cotangent_lift,
    cotangent_lift_inverse,
    cotangent_of_rd,
    cotangent_of_rd_inverse,
    tangent_lift,
    tangent_lift_inverse,
    tangent_of_rd,
)
from geomint.retraction import DiscretizationMap, TauKind, make_tau, rd
from geomint.tulczyjew import Orientation, kappa

THETAS = (0.0, 0.25, 0.5, 1.0)
MAPS = [DiscretizationMap(make_tau(k), th) for k in TauKind for th in THETAS]
MAPS0 = [DiscretizationMap(make_tau(k)) for k in TauKind]
Z = np.zeros(3)


def ids(d):
    return f"{d.tau.kind.value}-{d.theta:g}"


def fd_tangent(d, p, h=1e-6):
    """Oracle: differentiate rd along a curve through (g, xi) with g^-1 g' = zeta, xi' = xi_tilde - [zeta, xi]."""
    xi_dot = p.xi_tilde - so3.bracket(p.xi_bar, p.xi)

    def legs(s):
        return rd(d, p.g @ so3.exp(s * p.xi_bar), p.xi + s * xi_dot)

    (a0, a1), (b0, b1) = legs(h), legs(-h)
    g0, g1 = rd(d, p.g, p.xi)
    return so3.vee(g0.T @ (a0 - b0)) / (2 * h), so3.vee(g1.T @ (a1 - b1)) / (2 * h)


@pytest.mark.parametrize("d", MAPS0, ids=ids)
def test_tangent_of_rd_examples(d, rng):
    g = so3.random_element(rng)
    zeta, eta = rng.standard_normal(3), rng.standard_normal(3)
    a, b = tangent_of_rd(d, TTGPoint(g, Z, zeta, eta))
    assert a.distance(TP(g, zeta)) == 0.0 and b.distance(TP(g, zeta + eta)) <= 1e-15
    a, b = tangent_of_rd(d, TTGPoint(g, rng.standard_normal(3), Z, Z))
    assert np.array_equal(a.xi, Z) and np.allclose(b.xi, Z, atol=0)


@pytest.mark.parametrize("d", MAPS, ids=ids)
def test_tangent_of_rd_matches_finite_differences(d, rng):
    for _ in range(20):
        p = TTGPoint(so3.random_element(rng), 0.8 * rng.standard_normal(3) / 2, rng.standard_normal(3), rng.standard_normal(3))
        v0, v1 = fd_tangent(d, p)
        a, b = tangent_of_rd(d, p)
        assert np.linalg.norm(a.xi - v0) <= 1e-5 and np.linalg.norm(b.xi - v1) <= 1e-5


@pytest.mark.parametrize("d", MAPS0, ids=ids)
def test_tangent_lift_examples(d, rng):
    g, xi = so3.random_element(rng), rng.standard_normal(3)
    a, b = tangent_lift(d, TTGPoint(g, xi, Z, Z))
    assert a.distance(TP(g, xi)) == 0.0 and b.distance(TP(g, xi)) <= 1e-15
    p = TTGPoint(g, xi, 0.5 * rng.standard_normal(3), rng.standard_normal(3))
    a1, b1 = tangent_lift(d, p)
    a2, b2 = tangent_of_rd(d, kappa(p))
    assert a1.distance(a2) == 0.0 and b1.distance(b2) == 0.0
    assert tangent_lift_inverse(d, TP(g, xi), TP(g, xi)).distance(TTGPoint(g, xi, Z, Z)) <= 1e-15


def test_tangent_lift_inverse_slot_formula(rng):
    # theta = 0 closed form: xi_bar = tau^-1(g0^-1 g1), xi_tilde = dtauL^-1(xi_bar, xi1 - Ad_{tau(-xi_bar)} xi0)
    d = MAPS0[0]
    tau = d.tau
    g0, xi0, xi1 = so3.random_element(rng), rng.standard_normal(3), rng.standard_normal(3)
    g1 = g0 @ tau(np.array([0.3, 0.4, -0.2]))
    p = tangent_lift_inverse(d, TP(g0, xi0), TP(g1, xi1))
    xb = tau.inverse(g0.T @ g1)
    assert np.allclose(p.xi_bar, xb, atol=1e-15)
    assert np.allclose(p.xi_tilde, tau.dtauL_inv(xb, xi1 - so3.Ad(tau(-xb), xi0)), atol=1e-14)


@pytest.mark.parametrize("d", MAPS0, ids=ids)
def test_cotangent_lift_inverse_examples(d, rng):
    g, mk, mk1 = so3.random_element(rng), rng.standard_normal(3), rng.standard_normal(3)
    out = cotangent_lift_inverse(d, CP(g, mk), CP(g, mk1))
    assert out.distance(TTStarGPoint(g, -mk1, Z, mk - mk1)) <= 1e-15
    assert cotangent_lift_inverse(d, CP(g, mk), CP(g, mk)).distance(TTStarGPoint(g, -mk, Z, Z)) <= 1e-15


@pytest.mark.parametrize("d", MAPS0, ids=ids)
def test_cotangent_lift_inverse_closed_form(d, rng):
    # (g_k, -d^{L*}tau(mu_{k+1}), xi, mu_k - coAd(g_{k+1}^-1 g_k, mu_{k+1})) with xi = tau^-1(g_k^-1 g_{k+1})
    tau = d.tau
    for _ in range(10):
        gk, mk, mk1 = so3.random_element(rng), rng.standard_normal(3), rng.standard_normal(3)
        gk1 = gk @ tau(0.5 * rng.standard_normal(3))
        xi = tau.inverse(gk.T @ gk1)
        expected = TTStarGPoint(gk, -tau.dtauL_dual(xi, mk1), xi, mk - so3.coAd(gk1.T @ gk, mk1))
        assert cotangent_lift_inverse(d, CP(gk, mk), CP(gk1, mk1)).distance(expected) <= 1e-13


@pytest.mark.parametrize("d", MAPS, ids=ids)
def test_cotangent_of_rd_is_pullback(d, rng):
    # oracle: <T*rd(mu0, mu1), v> = <mu0, v0> + <mu1, v1> with (v0, v1) = T rd(v)
    for _ in range(10):
        g, xi = so3.random_element(rng), 0.5 * rng.standard_normal(3)
        mu0, mu1, zeta, xt = (rng.standard_normal(3) for _ in range(4))
        q = cotangent_of_rd(d, g, xi, mu0, mu1)
        a, b = tangent_of_rd(d, TTGPoint(g, xi, zeta, xt))
        assert abs(q.p_bar @ zeta + q.p_tilde @ xt - (mu0 @ a.xi + mu1 @ b.xi)) <= 1e-12
        g0, g1, m0, m1 = cotangent_of_rd_inverse(d, q)
        assert np.allclose(m0, mu0, atol=1e-12) and np.allclose(m1, mu1, atol=1e-12)


@given(rotations(), vectors(), ball(1.0), vectors())
def test_tangent_lift_roundtrips(g, xi, xb, xt):
    p = TTGPoint(g, xi, xb, xt)
    for d in MAPS:
        a, b = tangent_lift(d, p)
        assert tangent_lift_inverse(d, a, b).distance(p) <= 1e-10
        a2, b2 = tangent_lift(d, tangent_lift_inverse(d, a, b))
        assert a2.distance(a) <= 1e-10 and b2.distance(b) <= 1e-10
        r0, r1 = rd(d, g, xb)
        assert np.array_equal(a.g, r0) and np.array_equal(b.g, r1)


@given(rotations(), vectors(), ball(1.0), vectors(), vectors())
def test_cotangent_lift_roundtrips(g, mu, xb, nu, s):
    p = TTStarGPoint(g, mu, xb, nu)
    for d in MAPS:
        for o in Orientation:
            a, b = cotangent_lift(d, p, o)
            assert cotangent_lift_inverse(d, a, b, o).distance(p) <= 1e-10
            a2, b2 = cotangent_lift(d, cotangent_lift_inverse(d, a, b, o), o)
            assert a2.distance(a) <= 1e-10 and b2.distance(b) <= 1e-10
            r0, r1 = rd(d, g, xb)
            assert np.array_equal(a.g, r0) and np.array_equal(b.g, r1)
            # linear in the covector slots for a fixed base
            c = s[0]
            sa, sb = cotangent_lift(d, TTStarGPoint(g, c * mu, xb, c * nu), o)
            assert np.linalg.norm(sa.mu - c * a.mu) <= 1e-12 * (1 + abs(c) * np.linalg.norm(a.mu))
            assert np.linalg.norm(sb.mu - c * b.mu) <= 1e-12 * (1 + abs(c) * np.linalg.norm(b.mu))
