"""Tau maps, their left-trivialized tangents and trivialized discretization maps.

A tau map is a local diffeomorphism ``tau: g -> G`` with ``tau(0) = e`` and
``tau(xi) tau(-xi) = e``.  It generates the retraction ``(g, xi) -> g tau(xi)``
and the family of discretization maps

    rd(g, xi) = (g tau(-theta xi), g tau((1 - theta) xi)),   theta in [0, 1].

``dtauL(xi, eta) = tau(-xi) . D tau(xi)[eta]`` is the left-trivialized
tangent; ``dtauL_dual`` is its adjoint under the coordinate pairing.
"""

from __future__ import annotations

import abc
import enum
import math
from dataclasses import dataclass

import numpy as np

from geomint.algebra import DOMAIN_MARGIN, LieGroup, so3
from geomint.errors import OutOfDomain
from geomint.solvers import SolverKind, fixed_point_solve


class TauKind(str, enum.Enum):
    EXPONENTIAL = "exp"
    CAYLEY = "cayley"


class TauMap(abc.ABC):
    kind: TauKind

    def __init__(self, group: LieGroup = so3):
        self.group = group

    @abc.abstractmethod
    def __call__(self, xi) -> np.ndarray:
        ...

    @abc.abstractmethod
    def inverse(self, g) -> np.ndarray:
        """``tau^-1``; raises :class:`OutOfDomain` outside the injectivity domain."""

    @abc.abstractmethod
    def dL(self, xi) -> np.ndarray:
        """Matrix of ``eta -> dtauL(xi, eta)``."""

    @abc.abstractmethod
    def dL_inv(self, xi) -> np.ndarray:
        ...

    def check_domain(self, xi):
        """Raise :class:`OutOfDomain` if ``xi`` is not the image of ``tau^-1``."""

    def dtauL(self, xi, eta):
        return self.dL(xi) @ self.group.check_vector(eta)

    def dtauL_inv(self, xi, eta):
        return self.dL_inv(xi) @ self.group.check_vector(eta)

    def dtauL_dual(self, xi, mu):
        return self.dL(xi).T @ self.group.check_vector(mu)

    def dtauL_dual_inv(self, xi, mu):
        return self.dL_inv(xi).T @ self.group.check_vector(mu)

    def split(self, theta, zeta, tol=1e-14, max_iter=50):
        """Solve ``tau(theta xi) tau((1-theta) xi) = tau(zeta)`` for ``xi``.

        Generic Newton fallback; maps whose flows along one direction commute
        override this with a closed form.
        """
        if theta == 0.0 or theta == 1.0:
            return np.array(zeta, dtype=float)
        target = self(zeta)
        G = self.group

        def residual(xi):
            pair = G.compose(self(theta * xi), self((1.0 - theta) * xi))
            return self.inverse(G.compose(G.inverse(target), pair))

        return fixed_point_solve(residual, zeta, tol=tol, max_iter=max_iter, kind=SolverKind.NEWTON)

    def __repr__(self):
        return f"{type(self).__name__}({self.group!r})"


class ExponentialTau(TauMap):
    """Group exponential (Rodrigues formula on SO(3))."""

    kind = TauKind.EXPONENTIAL

    def __call__(self, xi):
        return self.group.exp(xi)

    def inverse(self, g):
        return self.group.log(g)

    def dL(self, xi):
        return self.group.dexp_left(xi)

    def dL_inv(self, xi):
        return self.group.dexp_left_inv(xi)

    def check_domain(self, xi):
        theta = float(np.linalg.norm(xi))
        if theta >= math.pi - DOMAIN_MARGIN:
            raise OutOfDomain(f"exp: |xi| = {theta!r} is outside the log domain (< pi); reduce the step")

    def split(self, theta, zeta, tol=1e-14, max_iter=50):
        # exp(theta xi) exp((1 - theta) xi) = exp(xi)
        return np.array(zeta, dtype=float)


class CayleyTau(TauMap):
    """Cayley transform ``(I - hat(xi)/2)^-1 (I + hat(xi)/2)``.

    On SO(3) the rotation angle of ``cay(xi)`` is ``2 atan(|xi|/2)``.
    """

    kind = TauKind.CAYLEY

    def __call__(self, xi):
        return self.group.cayley(xi)

    def inverse(self, g):
        return self.group.cayley_inv(g)

    def dL(self, xi):
        return self.group.dcayley_left(xi)

    def dL_inv(self, xi):
        return self.group.dcayley_left_inv(xi)

    def split(self, theta, zeta, tol=1e-14, max_iter=50):
        # Along a fixed axis the half-angle tangents add like
        # tan(a + b) = (tan a + tan b) / (1 - tan a tan b); this leaves a
        # quadratic in |xi|, whose positive root is taken in stable form.
        zeta = np.array(zeta, dtype=float)
        T = 0.5 * float(np.linalg.norm(zeta))
        if T == 0.0:
            return zeta
        c = 0.25 * theta * (1.0 - theta)
        r = 2.0 * T / (0.5 + math.sqrt(0.25 + 4.0 * c * T * T))
        return zeta * (r / (2.0 * T))


def make_tau(kind, group: LieGroup = so3) -> TauMap:
    kind = TauKind(kind)
    if kind is TauKind.EXPONENTIAL:
        return ExponentialTau(group)
    return CayleyTau(group)


@dataclass(frozen=True)
class DiscretizationMap:
    """``rd(g, xi) = (g tau(-theta xi), g tau((1 - theta) xi))``."""

    tau: TauMap
    theta: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError(f"theta must lie in [0, 1], got {self.theta!r}")

    @property
    def group(self) -> LieGroup:
        return self.tau.group

    def __call__(self, g, xi):
        return rd(self, g, xi)

    def inverse(self, g0, g1):
        return rd_inv(self, g0, g1)


def rd(dmap: DiscretizationMap, g, xi):
    G = dmap.group
    xi = G.check_vector(xi)
    th = dmap.theta
    return G.compose(g, dmap.tau(-th * xi)), G.compose(g, dmap.tau((1.0 - th) * xi))


def rd_inv(dmap: DiscretizationMap, g0, g1):
    """The unique ``(g, xi)`` with ``rd(g, xi) = (g0, g1)``."""
    G = dmap.group
    zeta = dmap.tau.inverse(G.compose(G.inverse(g0), g1))
    xi = dmap.tau.split(dmap.theta, zeta)
    if dmap.theta == 0.0:
        return np.array(g0, dtype=float), xi
    return G.compose(g0, dmap.tau(dmap.theta * xi)), xi
