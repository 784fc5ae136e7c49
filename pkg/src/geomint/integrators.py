"""Euler-Poincare, Lie-Poisson and Euler-Arnold dynamics and their discrete flows.

All steppers here are built for ``theta = 0``, i.e. ``rd(g, xi) = (g, g tau(xi))``.

Lie-Poisson step (state ``(g, mu)``, Hamiltonian ``h = <mu, I^-1 mu>/2``)::

    xi = s t I^-1(dtauL_dual(xi, mu_next))
    mu_next = coAd(tau(xi), mu)
    g_next = g tau(xi)

with ``s = +1`` for :attr:`Orientation.FORWARD` and ``s = -1`` for
:attr:`Orientation.PAPER`.  The first line is solved by fixed-point iteration
after substituting the second one.

Euler-Poincare step (state ``(g, xi)``, Lagrangian ``l = <I xi, xi>/2``)::

    g_next = g tau(t xi)
    xi_next = xi + t dtauL(t xi, I^-1(ad*_xi(I xi)))
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from geomint.algebra import LieGroup, so3
from geomint.bundles import (
    TrivializedCotangentPoint,
    TrivializedTangentPoint,
    TTGPoint,
    TTStarGPoint,
)
from geomint.errors import OutOfDomain, SolverDiverged
from geomint.lifts import cotangent_lift_inverse, tangent_lift, tangent_lift_inverse
from geomint.retraction import DiscretizationMap
from geomint.solvers import SolverKind, fixed_point_solve
from geomint.tulczyjew import Orientation

__all__ = [
    "EulerPoincareState",
    "InertiaOperator",
    "IntegratorConfig",
    "LiePoissonState",
    "Orientation",
    "SolverKind",
    "euler_arnold_rhs",
    "euler_poincare_residual",
    "euler_poincare_step",
    "euler_poincare_vf",
    "fixed_point_solve",
    "group_flow_step",
    "lie_poisson_residual",
    "lie_poisson_step",
    "lie_poisson_vf",
]


@dataclass(frozen=True, eq=False)
class InertiaOperator:
    """Symmetric positive-definite map ``g -> g*``."""

    matrix: np.ndarray
    inverse_matrix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        M = np.array(self.matrix, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError(f"inertia must be a square matrix, got shape {M.shape}")
        if np.max(np.abs(M - M.T)) > 1e-14 * max(1.0, np.max(np.abs(M))):
            raise ValueError("inertia matrix is not symmetric")
        if np.min(np.linalg.eigvalsh(M)) <= 0.0:
            raise ValueError("inertia matrix is not positive definite")
        M.setflags(write=False)
        Minv = np.linalg.inv(M)
        Minv = 0.5 * (Minv + Minv.T)
        Minv.setflags(write=False)
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "inverse_matrix", Minv)

    @classmethod
    def diagonal(cls, moments):
        return cls(np.diag(np.asarray(moments, dtype=float)))

    @property
    def dim(self):
        return self.matrix.shape[0]

    def apply(self, xi):
        return self.matrix @ xi

    def solve(self, mu):
        """``I^-1(mu)``."""
        return self.inverse_matrix @ mu

    def energy(self, mu) -> float:
        """``h(mu) = <mu, I^-1 mu> / 2``."""
        mu = np.asarray(mu, dtype=float)
        return 0.5 * float(mu @ (self.inverse_matrix @ mu))


@dataclass(frozen=True, eq=False)
class LiePoissonState:
    g: np.ndarray
    mu: np.ndarray


@dataclass(frozen=True, eq=False)
class EulerPoincareState:
    g: np.ndarray
    xi: np.ndarray


@dataclass(frozen=True)
class IntegratorConfig:
    step: float
    tol: float = 1e-13
    max_iter: int = 100
    solver: SolverKind = SolverKind.FIXED_POINT
    orientation: Orientation = Orientation.FORWARD

    def __post_init__(self):
        # step == 0 is allowed and gives the identity map
        if not self.step >= 0.0:
            raise ValueError(f"step must be non-negative, got {self.step!r}")
        if not self.tol > 0.0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        object.__setattr__(self, "solver", SolverKind(self.solver))
        object.__setattr__(self, "orientation", Orientation(self.orientation))

    @property
    def sign(self) -> float:
        return 1.0 if self.orientation is Orientation.FORWARD else -1.0


def _require_theta_zero(dmap: DiscretizationMap):
    if dmap.theta != 0.0:
        raise ValueError(f"this stepper is only defined for theta = 0, got theta = {dmap.theta!r}")


# -- vector fields ---------------------------------------------------------


def lie_poisson_vf(inertia: InertiaOperator, s: LiePoissonState) -> TTStarGPoint:
    """Trivialized Lie-Poisson field ``(g, mu; I^-1 mu, 0)``."""
    mu = np.asarray(s.mu, dtype=float)
    return TTStarGPoint(np.asarray(s.g, dtype=float), mu, inertia.solve(mu), np.zeros_like(mu))


def euler_arnold_rhs(inertia: InertiaOperator, xi, group: LieGroup = so3):
    """``xi' = I^-1(ad*_xi(I xi))``."""
    return inertia.solve(group.ad_star(xi, inertia.apply(xi)))


def euler_poincare_vf(inertia: InertiaOperator, s: EulerPoincareState, group: LieGroup = so3) -> TTGPoint:
    """Trivialized Euler-Poincare field ``(g, xi; xi, xi')``."""
    xi = np.asarray(s.xi, dtype=float)
    return TTGPoint(np.asarray(s.g, dtype=float), xi, xi.copy(), euler_arnold_rhs(inertia, xi, group))


def _scale(t, p):
    """Scale the fibre (velocity) slots of a second-order point by ``t``."""
    return type(p)(p.g, p.slots()[1], t * p.slots()[2], t * p.slots()[3])


# -- steppers --------------------------------------------------------------


def lie_poisson_step(
    inertia: InertiaOperator, cfg: IntegratorConfig, dmap: DiscretizationMap, s: LiePoissonState
) -> LiePoissonState:
    _require_theta_zero(dmap)
    if cfg.step == 0.0:
        return LiePoissonState(np.array(s.g, dtype=float), np.array(s.mu, dtype=float))
    G, tau = dmap.group, dmap.tau
    mu = G.check_vector(s.mu)
    h = cfg.sign * cfg.step

    def residual(xi):
        return xi - h * inertia.solve(tau.dtauL_dual(xi, G.coAd(tau(xi), mu)))

    guess = h * inertia.solve(mu)
    if cfg.solver is SolverKind.FIXED_POINT:
        try:
            xi = fixed_point_solve(residual, guess, cfg.tol, cfg.max_iter, SolverKind.FIXED_POINT)
        except SolverDiverged:
            xi = fixed_point_solve(residual, guess, cfg.tol, cfg.max_iter, SolverKind.NEWTON)
    else:
        xi = fixed_point_solve(residual, guess, cfg.tol, cfg.max_iter, SolverKind.NEWTON)
    tau.check_domain(xi)
    R = tau(xi)
    return LiePoissonState(G.compose(s.g, R), G.coAd(R, mu))


def euler_poincare_step(
    inertia: InertiaOperator, cfg: IntegratorConfig, dmap: DiscretizationMap, s: EulerPoincareState
) -> EulerPoincareState:
    # For theta = 0 the lifted equation pins the inverse lift to t X(g_k, xi_k),
    # so the next state is the second leg of the tangent lift of that point.
    _require_theta_zero(dmap)
    G = dmap.group
    p = _scale(cfg.step, euler_poincare_vf(inertia, s, G))
    dmap.tau.check_domain(p.xi_bar)
    _, nxt = tangent_lift(dmap, p)
    return EulerPoincareState(nxt.g, nxt.xi)


def group_flow_step(f, cfg: IntegratorConfig, dmap: DiscretizationMap, g):
    """One step of ``t X(base(rd^-1(g_k, g_next))) = rd^-1(g_k, g_next)`` for ``X(g) = (g, f(g))``."""
    G, tau, th = dmap.group, dmap.tau, dmap.theta
    g = G.check_element(g)
    t = cfg.step
    if th == 0.0:
        xi = t * np.asarray(f(g), dtype=float)
    else:
        def residual(xi):
            return xi - t * np.asarray(f(G.compose(g, tau(th * xi))), dtype=float)

        xi = fixed_point_solve(residual, t * np.asarray(f(g), dtype=float), cfg.tol, cfg.max_iter, cfg.solver)
    tau.check_domain(xi)
    return G.compose(G.compose(g, tau(th * xi)), tau((1.0 - th) * xi))


# -- residuals of the lifted equations --------------------------------------


def lie_poisson_residual(inertia, cfg, dmap, s0: LiePoissonState, s1: LiePoissonState) -> float:
    """Largest slot mismatch of ``t X(pr12(p)) = p`` with ``p`` the inverse cotangent lift."""
    p = cotangent_lift_inverse(
        dmap,
        TrivializedCotangentPoint(s0.g, s0.mu),
        TrivializedCotangentPoint(s1.g, s1.mu),
        cfg.orientation,
    )
    base = p.pr12()
    target = _scale(cfg.step, lie_poisson_vf(inertia, LiePoissonState(base.g, base.mu)))
    return target.distance(p)


def euler_poincare_residual(inertia, cfg, dmap, s0: EulerPoincareState, s1: EulerPoincareState) -> float:
    p = tangent_lift_inverse(
        dmap, TrivializedTangentPoint(s0.g, s0.xi), TrivializedTangentPoint(s1.g, s1.xi)
    )
    base = p.pr12()
    target = _scale(cfg.step, euler_poincare_vf(inertia, EulerPoincareState(base.g, base.xi), dmap.group))
    return target.distance(p)


def check_step_domain(dmap, xi, step_index):
    try:
        dmap.tau.check_domain(xi)
    except OutOfDomain as exc:
        raise OutOfDomain(f"step {step_index}: {exc}", step_index=step_index) from None
