"""Trivialized Tulczyjew triple and the twisting map on ``T*(G x G)``."""

from __future__ import annotations

import enum

from geomint.algebra import LieGroup, so3
from geomint.bundles import (
    TrivializedCotangentPoint,
    TStarTGPoint,
    TStarTStarGPoint,
    TTGPoint,
    TTStarGPoint,
)


class Orientation(str, enum.Enum):
    """Where the twisting map puts its sign flip.

    ``PAPER`` negates the covector of the second factor, ``FORWARD`` the
    first.  Discrete flows built on ``PAPER`` advance the Lie-Poisson system
    backwards in time; ``FORWARD`` gives the same scheme run forwards.
    """

    PAPER = "paper"
    FORWARD = "forward"


def alpha(p: TTStarGPoint, group: LieGroup = so3) -> TStarTGPoint:
    """``(g, mu, xi, nu) -> (g, xi, nu + ad*_xi mu, mu)``."""
    return TStarTGPoint(p.g, p.xi_bar, p.mu_tilde + group.ad_star(p.xi_bar, p.mu), p.mu)


def alpha_inv(q: TStarTGPoint, group: LieGroup = so3) -> TTStarGPoint:
    return TTStarGPoint(q.g, q.p_tilde, q.xi, q.p_bar - group.ad_star(q.xi, q.p_tilde))


def beta(p: TTStarGPoint, group: LieGroup = so3) -> TStarTStarGPoint:
    """``(g, mu, eta, nu) -> (g, mu, nu + ad*_eta mu, -eta)``."""
    return TStarTStarGPoint(p.g, p.mu, p.mu_tilde + group.ad_star(p.xi_bar, p.mu), -p.xi_bar)


def beta_inv(q: TStarTStarGPoint, group: LieGroup = so3) -> TTStarGPoint:
    eta = -q.eta
    return TTStarGPoint(q.g, q.mu, eta, q.nu - group.ad_star(eta, q.mu))


def kappa(p: TTGPoint, group: LieGroup = so3) -> TTGPoint:
    """Canonical flip ``(g, xi, eta, zeta) -> (g, eta, xi, zeta + [xi, eta])``; an involution."""
    return TTGPoint(p.g, p.xi_bar, p.xi, p.xi_tilde + group.bracket(p.xi, p.xi_bar))


def phi(a: TrivializedCotangentPoint, b: TrivializedCotangentPoint, orientation=Orientation.PAPER):
    """Twist a pair of cotangent points into a point of ``(G x G) x (g* x g*)``.

    Returns ``(g, h, mu, nu)`` as a plain tuple.
    """
    if Orientation(orientation) is Orientation.PAPER:
        return a.g, b.g, a.mu, -b.mu
    return a.g, b.g, -a.mu, b.mu


def phi_inv(g, h, mu, nu, orientation=Orientation.PAPER):
    if Orientation(orientation) is Orientation.PAPER:
        return TrivializedCotangentPoint(g, mu), TrivializedCotangentPoint(h, -nu)
    return TrivializedCotangentPoint(g, -mu), TrivializedCotangentPoint(h, nu)
