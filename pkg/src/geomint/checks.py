"""Randomized structural property suites, runnable from the CLI.

Every suite draws its samples from a seeded generator.  The seed comes from
``GEOMINT_SEED`` (default :data:`DEFAULT_SEED`), so runs are reproducible.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from geomint.algebra import orthogonality_residual, so3
from geomint.bundles import (
    TrivializedTangentPoint,
    TStarTGPoint,
    TStarTStarGPoint,
    TTGPoint,
    TTStarGPoint,
    random_four_slot,
    random_tg,
    random_tstarg,
    tg_identity,
    tg_inverse,
    tg_mult,
    tstarg_identity,
    tstarg_inverse,
    tstarg_mult,
    ttg_identity,
    ttg_inverse,
    ttg_mult,
)
from geomint.integrators import (
    EulerPoincareState,
    InertiaOperator,
    IntegratorConfig,
    LiePoissonState,
    euler_poincare_residual,
    euler_poincare_step,
    lie_poisson_residual,
    lie_poisson_step,
)
from geomint.lifts import (
    cotangent_lift,
    cotangent_lift_inverse,
    kappa,
    tangent_lift,
    tangent_lift_inverse,
    tangent_of_rd,
)
from geomint.retraction import DiscretizationMap, TauKind, make_tau, rd, rd_inv
from geomint.tulczyjew import Orientation, alpha, alpha_inv, beta, beta_inv

DEFAULT_SEED = 20240611
DEFAULT_SAMPLES = 500
THETAS = (0.0, 0.25, 0.5, 1.0)
FD_STEP = 1e-6


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    max_error: float
    tol: float
    samples: int

    @property
    def passed(self) -> bool:
        return bool(self.max_error <= self.tol)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.suite}: {self.name}  max err {self.max_error:.3e} (tol {self.tol:.0e}, n={self.samples})"


class _Collector:
    def __init__(self, suite):
        self.suite = suite
        self._err = {}
        self._tol = {}
        self._n = {}

    def add(self, name, err, tol):
        err = float(err)
        if not np.isfinite(err):
            err = np.inf
        self._err[name] = max(self._err.get(name, 0.0), err)
        self._tol[name] = tol
        self._n[name] = self._n.get(name, 0) + 1

    def results(self):
        return [CheckResult(self.suite, k, self._err[k], self._tol[k], self._n[k]) for k in self._err]


def _ball(rng, radius, dim=3):
    """Uniform sample from the closed ball of the given radius."""
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v) * radius * rng.random() ** (1.0 / dim)


def _fro(a, b):
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def _taus():
    return [make_tau(k) for k in TauKind]


# -- suites ----------------------------------------------------------------


def _algebra(rng, n, c):
    G = so3
    e = G.identity()
    for _ in range(n):
        g, h, k = (G.random_element(rng) for _ in range(3))
        xi, eta, zeta, mu = (G.random_algebra(rng) for _ in range(4))
        c.add("associativity", _fro(G.compose(G.compose(g, h), k), G.compose(g, G.compose(h, k))), 1e-12)
        c.add("identity", max(_fro(G.compose(e, g), g), _fro(G.compose(g, e), g)), 1e-12)
        c.add("inverse", max(_fro(G.compose(g, G.inverse(g)), e), _fro(G.compose(G.inverse(g), g), e)), 1e-12)
        c.add("element invariants", max(orthogonality_residual(g), 0.0 if np.linalg.det(g) > 0 else np.inf), 1e-9)
        c.add("Ad is an action", _fro(G.Ad(G.compose(g, h), xi), G.Ad(g, G.Ad(h, xi))), 1e-12)
        c.add("Ad is an algebra automorphism", _fro(G.Ad(g, G.bracket(xi, eta)), G.bracket(G.Ad(g, xi), G.Ad(g, eta))), 1e-12)
        c.add("coAd composition", _fro(G.coAd(g, G.coAd(h, mu)), G.coAd(G.compose(h, g), mu)), 1e-12)
        c.add("coAd dual to Ad", abs(G.pairing(G.coAd(g, mu), xi) - G.pairing(mu, G.Ad(g, xi))), 1e-12)
        c.add("ad_star dual to bracket", abs(G.pairing(G.ad_star(xi, mu), eta) - G.pairing(mu, G.bracket(xi, eta))), 1e-12)
        c.add("hat/vee inverse", _fro(G.vee(G.hat(xi)), xi), 0.0)
        c.add("hat(xi) eta = bracket", _fro(G.hat(xi) @ eta, G.bracket(xi, eta)), 1e-14)
        c.add("bracket antisymmetry", _fro(G.bracket(xi, eta), -G.bracket(eta, xi)), 1e-14)
        jac = G.bracket(xi, G.bracket(eta, zeta)) + G.bracket(eta, G.bracket(zeta, xi)) + G.bracket(zeta, G.bracket(xi, eta))
        c.add("Jacobi identity", np.linalg.norm(jac), 1e-13)


def _group_axioms(c, label, mult, inv, ident, a, b, d, tol=1e-12):
    c.add(f"{label} associativity", mult(mult(a, b), d).distance(mult(a, mult(b, d))), tol)
    c.add(f"{label} identity", max(mult(ident, a).distance(a), mult(a, ident).distance(a)), tol)
    c.add(f"{label} inverse", max(mult(a, inv(a)).distance(ident), mult(inv(a), a).distance(ident)), tol)


def _bundles(rng, n, c):
    G = so3
    for _ in range(n):
        a, b, d = (random_tg(rng) for _ in range(3))
        _group_axioms(c, "G x g", tg_mult, tg_inverse, tg_identity(), a, b, d)
        a, b, d = (random_tstarg(rng) for _ in range(3))
        _group_axioms(c, "G x g*", tstarg_mult, tstarg_inverse, tstarg_identity(), a, b, d)
        p, q, r = (random_four_slot(TTGPoint, rng) for _ in range(3))
        _group_axioms(c, "TTG", ttg_mult, ttg_inverse, ttg_identity(), p, q, r)
        c.add("TTG pr12 homomorphism", ttg_mult(p, q).pr12().distance(tg_mult(p.pr12(), q.pr12())), 1e-12)
        xi, eta = G.random_algebra(rng), G.random_algebra(rng)
        fibre = tg_mult(TrivializedTangentPoint(G.identity(), xi), TrivializedTangentPoint(G.identity(), eta))
        c.add("fibre over e is vector addition", fibre.distance(TrivializedTangentPoint(G.identity(), xi + eta)), 1e-15)


def _tulczyjew(rng, n, c):
    for _ in range(n):
        p = random_four_slot(TTGPoint, rng)
        c.add("kappa involution", kappa(kappa(p)).distance(p), 1e-14)
        c.add("kappa swaps pr12/pr13", kappa(p).pr12().distance(p.pr13()), 0.0)
        s = random_four_slot(TTStarGPoint, rng)
        c.add("alpha round-trip", alpha_inv(alpha(s)).distance(s), 1e-13)
        q = random_four_slot(TStarTGPoint, rng)
        c.add("alpha inverse round-trip", alpha(alpha_inv(q)).distance(q), 1e-13)
        c.add("beta round-trip", beta_inv(beta(s)).distance(s), 1e-13)
        w = random_four_slot(TStarTStarGPoint, rng)
        c.add("beta inverse round-trip", beta(beta_inv(w)).distance(w), 1e-13)
        # base and first-fibre projections agree: alpha keeps (g, xi_bar), beta keeps (g, mu)
        c.add("alpha preserves base", _fro(alpha(s).g, s.g) + _fro(alpha(s).xi, s.xi_bar), 0.0)
        c.add("beta preserves base", beta(s).pr12().distance(s.pr12()), 0.0)


def _retraction(rng, n, c):
    G = so3
    e = G.identity()
    for tau in _taus():
        k = tau.kind.value
        c.add(f"{k}: tau(0) = e", _fro(tau(G.zero()), e), 0.0)
        for _ in range(n):
            xi = _ball(rng, 1.0)
            c.add(f"{k}: tau(xi) tau(-xi) = e", _fro(G.compose(tau(xi), tau(-xi)), e), 1e-12)
            xi = _ball(rng, 2.0)
            eta = _ball(rng, 1.0)
            R = tau(xi)
            D = G.inverse(R) @ (tau(xi + FD_STEP * eta) - R) / FD_STEP
            c.add(f"{k}: dtauL vs finite differences", _fro(G.vee(0.5 * (D - D.T)), tau.dtauL(xi, eta)), 1e-5)
            c.add(f"{k}: dtauL_inv round-trip", _fro(tau.dtauL_inv(xi, tau.dtauL(xi, eta)), eta), 1e-11)
            mu = G.random_algebra(rng)
            c.add(f"{k}: dtauL_dual adjoint", abs(mu @ tau.dtauL(xi, eta) - tau.dtauL_dual(xi, mu) @ eta), 1e-12)
            c.add(f"{k}: dtauL_dual_inv round-trip", _fro(tau.dtauL_dual_inv(xi, tau.dtauL_dual(xi, mu)), mu), 1e-11)
            c.add(f"{k}: tau_inv round-trip", _fro(tau.inverse(tau(xi)), xi), 1e-11)
        for th in THETAS:
            dmap = DiscretizationMap(tau, th)
            for _ in range(n // len(THETAS)):
                g = G.random_element(rng)
                xi = _ball(rng, 1.0)
                g0, g1 = rd(dmap, g, G.zero())
                c.add(f"{k}: rd condition (i), theta={th:g}", max(_fro(g0, g), _fro(g1, g)), 0.0)
                h = 1e-5
                p0, p1 = rd(dmap, g, h * xi)
                m0, m1 = rd(dmap, g, -h * xi)
                v1 = G.vee(G.inverse(g) @ (p1 - m1)) / (2 * h)
                v0 = G.vee(G.inverse(g) @ (p0 - m0)) / (2 * h)
                c.add(f"{k}: rd condition (ii), theta={th:g}", _fro(v1 - v0, xi), 1e-8)
                a, b = rd(dmap, g, xi)
                gg, xx = rd_inv(dmap, a, b)
                c.add(f"{k}: rd_inv o rd = id, theta={th:g}", max(_fro(gg, g), _fro(xx, xi)), 1e-11)
                b = G.compose(a, tau(_ball(rng, 0.5 * np.pi)) if tau.kind is TauKind.EXPONENTIAL else tau(_ball(rng, 2.0)))
                r0, r1 = rd(dmap, *rd_inv(dmap, a, b))
                c.add(f"{k}: rd o rd_inv = id, theta={th:g}", max(_fro(r0, a), _fro(r1, b)), 1e-11)


def _lifts(rng, n, c):
    G = so3
    for tau in _taus():
        k = tau.kind.value
        for th in THETAS:
            dmap = DiscretizationMap(tau, th)
            for _ in range(n // len(THETAS)):
                g = G.random_element(rng)
                xi, xt = G.random_algebra(rng), G.random_algebra(rng)
                xb = _ball(rng, 1.0)
                p = TTGPoint(g, xi, xb, xt)
                a, b = tangent_lift(dmap, p)
                c.add(f"{k}: tangent lift round-trip, theta={th:g}", tangent_lift_inverse(dmap, a, b).distance(p), 1e-10)
                a2, b2 = tangent_lift(dmap, tangent_lift_inverse(dmap, a, b))
                c.add(f"{k}: tangent lift inverse round-trip, theta={th:g}", max(a2.distance(a), b2.distance(b)), 1e-10)
                # the base pair of the lift is rd at the flipped base point
                r0, r1 = rd(dmap, g, xb)
                c.add(f"{k}: tangent lift base is rd(g, xi_bar), theta={th:g}", max(_fro(a.g, r0), _fro(b.g, r1)), 1e-12)
                s = 2.0 * rng.random() - 1.0
                al, bl = tangent_lift(dmap, TTGPoint(g, s * xi, xb, s * xt))
                c.add(f"{k}: tangent lift linear in fibres, theta={th:g}", max(_fro(al.xi, s * a.xi), _fro(bl.xi, s * b.xi)), 1e-12)
                q = TTStarGPoint(g, G.random_algebra(rng), xb, G.random_algebra(rng))
                for o in Orientation:
                    ca, cb = cotangent_lift(dmap, q, o)
                    back = cotangent_lift_inverse(dmap, ca, cb, o)
                    c.add(f"{k}: cotangent lift round-trip, theta={th:g}", back.distance(q), 1e-10)
                    ca2, cb2 = cotangent_lift(dmap, back, o)
                    c.add(f"{k}: cotangent lift inverse round-trip, theta={th:g}", max(ca2.distance(ca), cb2.distance(cb)), 1e-10)
                    c.add(f"{k}: cotangent lift base is rd(g, xi_bar), theta={th:g}", max(_fro(ca.g, r0), _fro(cb.g, r1)), 1e-12)
                    sa, sb = cotangent_lift(dmap, TTStarGPoint(g, s * q.mu, xb, s * q.mu_tilde), o)
                    c.add(f"{k}: cotangent lift linear in fibres, theta={th:g}", max(_fro(sa.mu, s * ca.mu), _fro(sb.mu, s * cb.mu)), 1e-12)
                if th == 0.0:
                    v0, _ = tangent_of_rd(dmap, p)
                    c.add(f"{k}: first leg of T rd is pr13 velocity", v0.distance(TrivializedTangentPoint(g, xb)), 0.0)


def _integrators(rng, n, c):
    G = so3
    for tau in _taus():
        k = tau.kind.value
        dmap = DiscretizationMap(tau)
        for _ in range(max(1, n // 10)):
            inertia = InertiaOperator.diagonal(0.5 + 2.5 * rng.random(3))
            xi, eta = G.random_algebra(rng), G.random_algebra(rng)
            c.add("inertia self-adjoint", abs(inertia.apply(xi) @ eta - inertia.apply(eta) @ xi), 1e-12)
            g = G.random_element(rng)
            mu = G.random_algebra(rng)
            t = 10.0 ** rng.uniform(-3, -1.5)
            for o in Orientation:
                cfg = IntegratorConfig(t, orientation=o)
                s0 = LiePoissonState(g, mu)
                s1 = lie_poisson_step(inertia, cfg, dmap, s0)
                c.add(f"{k}: Lie-Poisson lifted-equation residual", lie_poisson_residual(inertia, cfg, dmap, s0, s1), 1e-10)
                c.add(f"{k}: Lie-Poisson Casimir", abs(np.linalg.norm(s1.mu) / np.linalg.norm(mu) - 1.0), 1e-14)
                q = G.compose(G.inverse(g), s1.g)
                c.add(f"{k}: Lie-Poisson coadjoint orbit", _fro(G.coAd(q, mu), s1.mu), 1e-11)
            cfg = IntegratorConfig(t)
            e0 = EulerPoincareState(g, inertia.solve(mu))
            e1 = euler_poincare_step(inertia, cfg, dmap, e0)
            c.add(f"{k}: Euler-Poincare lifted-equation residual", euler_poincare_residual(inertia, cfg, dmap, e0, e1), 1e-10)
            c.add(f"{k}: Euler-Poincare vs Lie-Poisson (/ t^2)",
                  _fro(inertia.apply(e1.xi), lie_poisson_step(inertia, cfg, dmap, LiePoissonState(g, mu)).mu) / t**2,
                  10.0 * max(1.0, np.linalg.norm(mu)) ** 2)  # fmt: skip
            axis = int(rng.integers(3))
            m = 2.0 * rng.standard_normal() * G.basis(axis)
            s1 = lie_poisson_step(inertia, cfg, dmap, LiePoissonState(g, m))
            c.add(f"{k}: relative equilibrium preserved", _fro(s1.mu, m), 1e-15)


SUITES = {
    "algebra": _algebra,
    "bundles": _bundles,
    "tulczyjew": _tulczyjew,
    "retraction": _retraction,
    "lifts": _lifts,
    "integrators": _integrators,
}


def default_seed() -> int:
    raw = os.environ.get("GEOMINT_SEED")
    if raw is None or raw.strip() == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"GEOMINT_SEED must be an integer, got {raw!r}") from None


def run_suite(name: str, samples: int = DEFAULT_SAMPLES, seed: int | None = None) -> list[CheckResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; valid suites: {', '.join(SUITES)}, all")
    seed = default_seed() if seed is None else seed
    rng = np.random.default_rng([seed, list(SUITES).index(name)])
    c = _Collector(name)
    SUITES[name](rng, samples, c)
    return c.results()


def run_suites(names, samples: int = DEFAULT_SAMPLES, seed: int | None = None) -> list[CheckResult]:
    if isinstance(names, str):
        names = [names]
    names = list(SUITES) if list(names) == ["all"] else list(names)
    return [r for name in names for r in run_suite(name, samples, seed)]
