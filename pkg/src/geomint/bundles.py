"""Left-trivialized tangent, cotangent and second-order bundles as semidirect products.

``G x g`` carries the product ``(g, xi)(h, eta) = (gh, Ad_{h^-1} xi + eta)``
and ``G x g*`` the analogous product with the coadjoint action.  The
second-order bundle ``TTG`` is the tower ``(G x g) x (g x g)`` with the
product implemented in :func:`ttg_mult`.

The remaining second-order bundles (``TT*G``, ``T*TG``, ``T*T*G``) appear only
as four-slot containers consumed by :mod:`geomint.tulczyjew` and
:mod:`geomint.lifts`; no group law is defined for them.

A velocity ``(d/ds)(g(s), xi(s))`` at ``(g, xi)`` is stored in the ``TTG``
slots as ``(g, xi, zeta, xi' + [zeta, xi])`` where ``zeta = g^-1 g'``.  This is
the left trivialization of ``T(G x g)`` by the semidirect group itself, and is
the coordinate system in which the canonical flip takes its closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from geomint.algebra import LieGroup, so3


class _Point:
    """Mixin for tuple-like bundle points holding numpy slots."""

    def slots(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    def __iter__(self):
        return iter(self.slots())

    def distance(self, other) -> float:
        """Largest slot-wise norm of the difference (Frobenius on the group slot)."""
        if type(other) is not type(self):
            raise TypeError(f"cannot compare {type(self).__name__} with {type(other).__name__}")
        return max(float(np.linalg.norm(np.asarray(a) - np.asarray(b))) for a, b in zip(self, other))

    def __repr__(self):
        body = ", ".join(f"{f.name}={np.array2string(np.asarray(getattr(self, f.name)), precision=6)}" for f in fields(self))
        return f"{type(self).__name__}({body})"


@dataclass(frozen=True, eq=False, repr=False)
class TrivializedTangentPoint(_Point):
    g: np.ndarray
    xi: np.ndarray


@dataclass(frozen=True, eq=False, repr=False)
class TrivializedCotangentPoint(_Point):
    g: np.ndarray
    mu: np.ndarray


@dataclass(frozen=True, eq=False, repr=False)
class TTGPoint(_Point):
    """``(g, xi, xi_bar, xi_tilde)`` in ``(G x g) x (g x g)``."""

    g: np.ndarray
    xi: np.ndarray
    xi_bar: np.ndarray
    xi_tilde: np.ndarray

    def pr12(self) -> TrivializedTangentPoint:
        return TrivializedTangentPoint(self.g, self.xi)

    def pr13(self) -> TrivializedTangentPoint:
        return TrivializedTangentPoint(self.g, self.xi_bar)


@dataclass(frozen=True, eq=False, repr=False)
class TTStarGPoint(_Point):
    """``(g, mu, xi_bar, mu_tilde)`` in ``(G x g*) x (g x g*)``."""

    g: np.ndarray
    mu: np.ndarray
    xi_bar: np.ndarray
    mu_tilde: np.ndarray

    def pr12(self) -> TrivializedCotangentPoint:
        return TrivializedCotangentPoint(self.g, self.mu)

    def pr13(self) -> TrivializedTangentPoint:
        return TrivializedTangentPoint(self.g, self.xi_bar)


@dataclass(frozen=True, eq=False, repr=False)
class TStarTGPoint(_Point):
    """``(g, xi, p_bar, p_tilde)`` in ``(G x g) x (g* x g*)``."""

    g: np.ndarray
    xi: np.ndarray
    p_bar: np.ndarray
    p_tilde: np.ndarray

    def pr12(self) -> TrivializedTangentPoint:
        return TrivializedTangentPoint(self.g, self.xi)


@dataclass(frozen=True, eq=False, repr=False)
class TStarTStarGPoint(_Point):
    """``(g, mu, nu, eta)`` in ``(G x g*) x (g* x g)``."""

    g: np.ndarray
    mu: np.ndarray
    nu: np.ndarray
    eta: np.ndarray

    def pr12(self) -> TrivializedCotangentPoint:
        return TrivializedCotangentPoint(self.g, self.mu)


# -- G x g -----------------------------------------------------------------


def tg_identity(group: LieGroup = so3) -> TrivializedTangentPoint:
    return TrivializedTangentPoint(group.identity(), group.zero())


def tg_mult(a: TrivializedTangentPoint, b: TrivializedTangentPoint, group: LieGroup = so3):
    h_inv = group.inverse(b.g)
    return TrivializedTangentPoint(group.compose(a.g, b.g), group.Ad(h_inv, a.xi) + b.xi)


def tg_inverse(a: TrivializedTangentPoint, group: LieGroup = so3):
    return TrivializedTangentPoint(group.inverse(a.g), -group.Ad(a.g, a.xi))


# -- G x g* ----------------------------------------------------------------


def tstarg_identity(group: LieGroup = so3) -> TrivializedCotangentPoint:
    return TrivializedCotangentPoint(group.identity(), group.zero())


def tstarg_mult(a: TrivializedCotangentPoint, b: TrivializedCotangentPoint, group: LieGroup = so3):
    # The coadjoint representation at h^-1 is the dual of Ad_h, i.e. coAd(h, .)
    # in the pairing convention of `LieGroup.coAd`; this is the right action
    # that makes the product associative, mirroring Ad_{h^-1} on G x g.
    return TrivializedCotangentPoint(group.compose(a.g, b.g), group.coAd(b.g, a.mu) + b.mu)


def tstarg_inverse(a: TrivializedCotangentPoint, group: LieGroup = so3):
    return TrivializedCotangentPoint(group.inverse(a.g), -group.coAd(group.inverse(a.g), a.mu))


# -- (G x g) x (g x g) -----------------------------------------------------


def ttg_identity(group: LieGroup = so3) -> TTGPoint:
    z = group.zero()
    return TTGPoint(group.identity(), z, z.copy(), z.copy())


def ttg_mult(a: TTGPoint, b: TTGPoint, group: LieGroup = so3) -> TTGPoint:
    h_inv = group.inverse(b.g)
    tilde = group.Ad(h_inv, a.xi_tilde + group.bracket(a.xi_bar, group.Ad(b.g, b.xi))) + b.xi_tilde
    return TTGPoint(
        group.compose(a.g, b.g),
        group.Ad(h_inv, a.xi) + b.xi,
        group.Ad(h_inv, a.xi_bar) + b.xi_bar,
        tilde,
    )


def ttg_inverse(a: TTGPoint, group: LieGroup = so3) -> TTGPoint:
    return TTGPoint(
        group.inverse(a.g),
        -group.Ad(a.g, a.xi),
        -group.Ad(a.g, a.xi_bar),
        -group.Ad(a.g, a.xi_tilde + group.bracket(a.xi, a.xi_bar)),
    )


def random_tg(rng, group: LieGroup = so3, scale=1.0):
    return TrivializedTangentPoint(group.random_element(rng), group.random_algebra(rng, scale))


def random_tstarg(rng, group: LieGroup = so3, scale=1.0):
    return TrivializedCotangentPoint(group.random_element(rng), group.random_algebra(rng, scale))


def random_four_slot(cls, rng, group: LieGroup = so3, scale=1.0):
    """Random point of any of the four second-order bundle types."""
    return cls(group.random_element(rng), *(group.random_algebra(rng, scale) for _ in range(3)))
