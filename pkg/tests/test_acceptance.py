"""Acceptance criteria on the canonical free rigid body.

Canonical configuration: SO(3), I = diag(1, 2, 3), mu0 = (1, 1, 1)/sqrt(3),
g0 = identity, tau = exp, theta = 0.  Each criterion prints one PASS/FAIL
line.  Run standalone with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time

import numpy as np
import pytest

from geomint.algebra import rot_x
from geomint.checks import DEFAULT_SEED, run_suites
from geomint.config import config_from_dict
from geomint.harness import order_study, run
from geomint.integrators import (
    EulerPoincareState,
    LiePoissonState,
    euler_poincare_residual,
    euler_poincare_step,
    lie_poisson_residual,
    lie_poisson_step,
)

MU0 = (np.ones(3) / np.sqrt(3)).tolist()

# pinned tolerances and runtime limits
CASIMIR_TOL = 1e-12
CASIMIR_RUNTIME = 5.0
ORTH_TOL = 1e-8
SLOPE_RANGE = (0.8, 2.2)
ORDER_STEPS = (1e-2, 5e-3, 2.5e-3)
ORDER_TIME = 1.0
ORDER_RUNTIME = 10.0
ENERGY_RATIO = 2.0
RELEQ_MU_TOL = 1e-12
RELEQ_G_TOL = 1e-9
SUITE_SAMPLES = 500
CONSISTENCY_STEP = 1e-3
CONSISTENCY_C = 10.0
RESIDUAL_TOL = 1e-10

LINES: list[str] = []


def canonical(**kw):
    d = {"group": "so3", "tau": "exp", "theta": 0.0, "step": 1e-2, "steps": 10_000,
         "inertia": [1, 2, 3], "g0": "identity", "mu0": MU0, "integrator": "lie_poisson"}  # fmt: skip
    d.update(kw)
    return config_from_dict(d)


_cache = {}


def canonical_run():
    if "run" not in _cache:
        start = time.perf_counter()
        traj = run(canonical())
        _cache["run"] = (traj, time.perf_counter() - start)
    return _cache["run"]


def c1_casimir():
    traj, elapsed = canonical_run()
    c = traj.casimir()
    drift = float(np.max(np.abs(c / c[0] - 1.0)))
    ok = drift <= CASIMIR_TOL and elapsed <= CASIMIR_RUNTIME
    return ok, f"max relative drift {drift:.3e} (tol {CASIMIR_TOL:.0e}), runtime {elapsed:.3f} s (limit {CASIMIR_RUNTIME:g} s)"


def c2_orthogonality():
    traj, _ = canonical_run()
    res = float(np.max(traj.orth_residual()))
    return res <= ORTH_TOL, f"max |g^T g - I|_F {res:.3e} (tol {ORTH_TOL:.0e})"


def c3_order():
    start = time.perf_counter()
    r = order_study(canonical(), ORDER_STEPS, ORDER_TIME)
    elapsed = time.perf_counter() - start
    in_range = r.slope is not None and SLOPE_RANGE[0] <= r.slope <= SLOPE_RANGE[1]
    ok = in_range and r.monotone and elapsed <= ORDER_RUNTIME
    errs = ", ".join(f"{e:.3e}" for e in r.errors)
    slope = "exact" if r.exact else f"{r.slope:.4f}"
    return ok, (
        f"slope {slope} (range [{SLOPE_RANGE[0]}, {SLOPE_RANGE[1]}]), errors [{errs}], "
        f"monotone {r.monotone}, runtime {elapsed:.3f} s (limit {ORDER_RUNTIME:g} s)"
    )


def c4_energy():
    cfg = canonical(step=1e-3)
    traj = run(cfg)
    dev = np.abs(traj.energy(cfg.inertia) - cfg.inertia.energy(cfg.mu0))
    n = len(dev) // 10
    first, last = float(np.mean(dev[:n])), float(np.mean(dev[-n:]))
    return last <= ENERGY_RATIO * first, f"last-decile mean {last:.3e} vs {ENERGY_RATIO:g} x first-decile mean {first:.3e}"


def c5_relative_equilibrium():
    cfg = canonical(mu0=[1.0, 0.0, 0.0], steps=1000)
    traj = run(cfg)
    mu_err = float(np.max(np.linalg.norm(traj.mu - traj.mu[0], axis=1)))
    # angular velocity I^-1 e1 = e1, so the accumulated angle is k t
    g_err = max(float(np.linalg.norm(g - rot_x(t))) for g, t in zip(traj.g, traj.times))
    ok = mu_err <= RELEQ_MU_TOL and g_err <= RELEQ_G_TOL
    return ok, f"max |mu_k - mu0| {mu_err:.3e} (tol {RELEQ_MU_TOL:.0e}), max |g_k - R_x(kt)|_F {g_err:.3e} (tol {RELEQ_G_TOL:.0e})"


def c6_property_suites():
    results = run_suites("all", SUITE_SAMPLES, DEFAULT_SEED)
    failed = [r for r in results if not r.passed]
    detail = f"{len(results) - len(failed)}/{len(results)} checks passed ({SUITE_SAMPLES} samples, seed {DEFAULT_SEED})"
    if failed:
        detail += "; failing: " + "; ".join(f"{r.suite}: {r.name}" for r in failed)
    return not failed, detail


def c7_consistency():
    cfg = canonical()
    t = CONSISTENCY_STEP
    ic, d = cfg.integrator_config(t), cfg.dmap()
    a = lie_poisson_step(cfg.inertia, ic, d, LiePoissonState(cfg.g0, cfg.mu0))
    b = euler_poincare_step(cfg.inertia, ic, d, EulerPoincareState(cfg.g0, cfg.xi0))
    diff = float(np.linalg.norm(cfg.inertia.apply(b.xi) - a.mu))
    bound = CONSISTENCY_C * t * t
    return diff <= bound, f"|I xi_1 - mu_1| {diff:.3e} (bound {CONSISTENCY_C:g} t^2 = {bound:.0e})"


def c8_step_residuals():
    traj, _ = canonical_run()
    cfg = canonical()
    ic, d = cfg.integrator_config(), cfg.dmap()
    lp = max(
        lie_poisson_residual(cfg.inertia, ic, d, LiePoissonState(traj.g[k], traj.mu[k]), LiePoissonState(traj.g[k + 1], traj.mu[k + 1]))
        for k in range(len(traj) - 1)
    )
    ep_traj = run(cfg.replace(integrator="euler_poincare"))
    ep = max(
        euler_poincare_residual(cfg.inertia, ic, d, EulerPoincareState(ep_traj.g[k], ep_traj.m[k]), EulerPoincareState(ep_traj.g[k + 1], ep_traj.m[k + 1]))
        for k in range(len(ep_traj) - 1)
    )
    worst = max(lp, ep)
    return worst <= RESIDUAL_TOL, f"max residual lie_poisson {lp:.3e}, euler_poincare {ep:.3e} over {len(traj) - 1} steps each (tol {RESIDUAL_TOL:.0e})"


CRITERIA = [
    ("1 Casimir conservation", c1_casimir),
    ("2 group-manifold preservation", c2_orthogonality),
    ("3 convergence order", c3_order),
    ("4 energy stability", c4_energy),
    ("5 relative equilibrium", c5_relative_equilibrium),
    ("6 structural property suites", c6_property_suites),
    ("7 Euler-Poincare / Lie-Poisson consistency", c7_consistency),
    ("8 lifted step residuals", c8_step_residuals),
]


def evaluate(label, fn):
    ok, detail = fn()
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {label}: {detail}"
    print(line)
    LINES.append(line)
    return ok, line


@pytest.mark.parametrize("label, fn", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(label, fn):
    ok, line = evaluate(label, fn)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(label, fn)[0] for label, fn in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
