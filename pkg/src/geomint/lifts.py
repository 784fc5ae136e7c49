"""Tangent and cotangent lifts of trivialized discretization maps.

Velocities on ``G x g`` use the coordinates documented in
:mod:`geomint.bundles`: the ``TTG`` point ``(g, xi, zeta, xi_tilde)`` is the
velocity of a curve through ``(g, xi)`` with ``g^-1 g' = zeta`` and
``xi' = xi_tilde - [zeta, xi]``.  Covectors on ``G x g`` are the dual
coordinates, paired slot-wise with the coordinate dot product.

For ``theta = 0`` every map has a closed form.  Other values of ``theta`` go
through the 6x6 (``2 dim``) matrix of the tangent map of ``rd``; the tangent
map itself is exact for every ``theta``.
"""

from __future__ import annotations

import numpy as np

from geomint.bundles import (
    TrivializedCotangentPoint,
    TrivializedTangentPoint,
    TStarTGPoint,
    TTGPoint,
    TTStarGPoint,
)
from geomint.retraction import DiscretizationMap, rd, rd_inv
from geomint.tulczyjew import Orientation, alpha, alpha_inv, kappa, phi, phi_inv


def _leg_velocities(dmap: DiscretizationMap, xi, zeta, xi_tilde):
    G, tau, th = dmap.group, dmap.tau, dmap.theta
    xi_dot = xi_tilde - G.bracket(zeta, xi)
    if th == 0.0:
        v0 = np.array(zeta, dtype=float)
    else:
        v0 = G.Ad(tau(th * xi), zeta) + tau.dtauL(-th * xi, -th * xi_dot)
    s = 1.0 - th
    v1 = G.Ad(tau(-s * xi), zeta) + tau.dtauL(s * xi, s * xi_dot)
    return v0, v1


def tangent_of_rd(dmap: DiscretizationMap, p: TTGPoint):
    """Push the velocity ``p`` at ``(p.g, p.xi)`` through ``rd``.

    Returns the two legs as trivialized tangent points ``(g_i, g_i^-1 g_i')``.
    """
    g0, g1 = rd(dmap, p.g, p.xi)
    v0, v1 = _leg_velocities(dmap, p.xi, p.xi_bar, p.xi_tilde)
    return TrivializedTangentPoint(g0, v0), TrivializedTangentPoint(g1, v1)


def tangent_matrix(dmap: DiscretizationMap, xi) -> np.ndarray:
    """Matrix of the fibre map ``(zeta, xi_tilde) -> (v0, v1)`` at base slot ``xi``.

    Independent of the group slot.
    """
    n = dmap.group.dim
    M = np.empty((2 * n, 2 * n))
    for j in range(2 * n):
        e = np.zeros(2 * n)
        e[j] = 1.0
        v0, v1 = _leg_velocities(dmap, xi, e[:n], e[n:])
        M[:n, j] = v0
        M[n:, j] = v1
    return M


def tangent_lift(dmap: DiscretizationMap, p: TTGPoint):
    """``R_d^T = T rd o kappa``."""
    return tangent_of_rd(dmap, kappa(p, dmap.group))


def tangent_lift_inverse(dmap: DiscretizationMap, a: TrivializedTangentPoint, b: TrivializedTangentPoint) -> TTGPoint:
    G, tau = dmap.group, dmap.tau
    if dmap.theta == 0.0:
        xi_bar = tau.inverse(G.compose(G.inverse(a.g), b.g))
        xi_tilde = tau.dtauL_inv(xi_bar, b.xi - G.Ad(tau(-xi_bar), a.xi))
        return TTGPoint(np.array(a.g, dtype=float), np.array(a.xi, dtype=float), xi_bar, xi_tilde)
    # after the flip the base point is (g, xi_bar) and the legs are linear in (xi, xi_tilde)
    g, xi_bar = rd_inv(dmap, a.g, b.g)
    n = G.dim
    sol = np.linalg.solve(tangent_matrix(dmap, xi_bar), np.concatenate([a.xi, b.xi]))
    xi = sol[:n]
    # undo the flip: its fourth slot is xi_tilde + [xi, xi_bar]
    return TTGPoint(g, xi, xi_bar, sol[n:] - G.bracket(xi, xi_bar))


def cotangent_of_rd(dmap: DiscretizationMap, g, xi, mu0, mu1) -> TStarTGPoint:
    """Pull the leg covectors ``(mu0, mu1)`` at ``rd(g, xi)`` back to ``(g, xi)``."""
    G, tau = dmap.group, dmap.tau
    if dmap.theta == 0.0:
        p_tilde = tau.dtauL_dual(xi, mu1)
        p_bar = mu0 + G.coAd(tau(-xi), mu1) + G.ad_star(xi, p_tilde)
    else:
        n = G.dim
        p = tangent_matrix(dmap, xi).T @ np.concatenate([mu0, mu1])
        p_bar, p_tilde = p[:n], p[n:]
    return TStarTGPoint(np.array(g, dtype=float), np.array(xi, dtype=float), p_bar, p_tilde)


def cotangent_of_rd_inverse(dmap: DiscretizationMap, q: TStarTGPoint):
    """Inverse of :func:`cotangent_of_rd`: returns ``(g0, g1, mu0, mu1)``."""
    G, tau = dmap.group, dmap.tau
    g0, g1 = rd(dmap, q.g, q.xi)
    if dmap.theta == 0.0:
        mu1 = tau.dtauL_dual_inv(q.xi, q.p_tilde)
        mu0 = q.p_bar - G.coAd(tau(-q.xi), mu1) - G.ad_star(q.xi, q.p_tilde)
    else:
        n = G.dim
        m = np.linalg.solve(tangent_matrix(dmap, q.xi).T, np.concatenate([q.p_bar, q.p_tilde]))
        mu0, mu1 = m[:n], m[n:]
    return g0, g1, mu0, mu1


def cotangent_lift(dmap: DiscretizationMap, p: TTStarGPoint, orientation=Orientation.PAPER):
    """``R_d^{T*} = phi o (T* rd)^-1 o alpha``."""
    q = alpha(p, dmap.group)
    g0, g1, mu0, mu1 = cotangent_of_rd_inverse(dmap, q)
    return phi_inv(g0, g1, mu0, mu1, orientation)


def cotangent_lift_inverse(
    dmap: DiscretizationMap,
    a: TrivializedCotangentPoint,
    b: TrivializedCotangentPoint,
    orientation=Orientation.PAPER,
) -> TTStarGPoint:
    g0, g1, mu0, mu1 = phi(a, b, orientation)
    g, xi = rd_inv(dmap, g0, g1)
    return alpha_inv(cotangent_of_rd(dmap, g, xi, mu0, mu1), dmap.group)
