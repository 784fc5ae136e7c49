"""Trajectory drivers with a compiled fast path.

The compiled module ``geomint._kernels`` is used when it is importable;
otherwise ``geomint._pykernels`` provides the same functions in pure Python.
Set ``GEOMINT_BACKEND=python`` to force the fallback.

Both kernels handle SO(3) with ``theta = 0`` and an exp or Cayley tau map.
Anything else (or a step the kernel's plain fixed-point loop cannot solve)
goes through the generic steppers in :mod:`geomint.integrators`.
"""

from __future__ import annotations

import os

import numpy as np

from geomint import _pykernels
from geomint.algebra import SO3
from geomint.errors import OutOfDomain, SolverDiverged
from geomint.integrators import (
    EulerPoincareState,
    InertiaOperator,
    IntegratorConfig,
    LiePoissonState,
    euler_poincare_step,
    lie_poisson_step,
)
from geomint.retraction import DiscretizationMap, TauKind
from geomint.solvers import SolverKind

try:
    from geomint import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

OK, DIVERGED, OUT_OF_DOMAIN = 0, 1, 2


def _select_backend():
    want = os.environ.get("GEOMINT_BACKEND", "").strip().lower()
    if want == "python" or _compiled is None:
        return "python", _pykernels
    return "cython", _compiled


BACKEND, _backend = _select_backend()


def get_backend(name=None):
    """Kernel module for ``name`` in {"cython", "python"}; default is :data:`BACKEND`."""
    if name is None:
        return _backend
    if name == "python":
        return _pykernels
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not available; rebuild the package")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def _kernel_ok(dmap: DiscretizationMap) -> bool:
    return isinstance(dmap.group, SO3) and dmap.theta == 0.0


def _tau_code(dmap):
    return 0 if dmap.tau.kind is TauKind.EXPONENTIAL else 1


def _buffers(n, g0, v0):
    g = np.empty((n + 1, 3, 3))
    v = np.empty((n + 1, 3))
    g[0] = g0
    v[0] = v0
    return g, v


def run_lie_poisson(
    inertia: InertiaOperator,
    cfg: IntegratorConfig,
    dmap: DiscretizationMap,
    s0: LiePoissonState,
    n: int,
    backend=None,
):
    """Take ``n`` Lie-Poisson steps from ``s0``.

    Returns arrays ``g`` of shape ``(n+1, 3, 3)`` and ``mu`` of shape ``(n+1, 3)``.
    A step the kernel fails to converge is retried with the Newton stepper.
    """
    G = dmap.group
    if not _kernel_ok(dmap) or cfg.solver is SolverKind.NEWTON:
        return _generic_run(lie_poisson_step, inertia, cfg, dmap, LiePoissonState(s0.g, s0.mu), n, "mu")
    kern = get_backend(backend)
    g, mu = _buffers(n, G.check_element(s0.g), G.check_vector(s0.mu))
    h = cfg.sign * cfg.step
    k = 0
    while k < n:
        status, k, rnorm = kern.lie_poisson_run(
            inertia.inverse_matrix, g, mu, h, _tau_code(dmap), cfg.tol, cfg.max_iter, k
        )
        if status == OK:
            break
        if status == OUT_OF_DOMAIN:
            raise OutOfDomain(f"step {k}: increment left the tau domain; reduce the step", step_index=k)
        retry = IntegratorConfig(cfg.step, cfg.tol, cfg.max_iter, SolverKind.NEWTON, cfg.orientation)
        try:
            nxt = lie_poisson_step(inertia, retry, dmap, LiePoissonState(g[k], mu[k]))
        except SolverDiverged as exc:
            raise SolverDiverged(
                f"step {k}: implicit solve did not converge (residual {exc.residual_norm:.3e})",
                residual_norm=exc.residual_norm,
                step_index=k,
            ) from None
        except OutOfDomain as exc:
            raise OutOfDomain(f"step {k}: {exc}", step_index=k) from None
        g[k + 1], mu[k + 1] = nxt.g, nxt.mu
        k += 1
    return g, mu


def run_euler_poincare(
    inertia: InertiaOperator,
    cfg: IntegratorConfig,
    dmap: DiscretizationMap,
    s0: EulerPoincareState,
    n: int,
    backend=None,
):
    """Take ``n`` explicit Euler-Poincare steps from ``s0``; returns ``(g, xi)`` arrays."""
    G = dmap.group
    if not _kernel_ok(dmap):
        return _generic_run(euler_poincare_step, inertia, cfg, dmap, EulerPoincareState(s0.g, s0.xi), n, "xi")
    kern = get_backend(backend)
    g, xi = _buffers(n, G.check_element(s0.g), G.check_vector(s0.xi))
    status, k = kern.euler_poincare_run(inertia.matrix, inertia.inverse_matrix, g, xi, cfg.step, _tau_code(dmap), 0)
    if status == OUT_OF_DOMAIN:
        raise OutOfDomain(f"step {k}: t*xi left the tau domain; reduce the step", step_index=k)
    return g, xi


def _generic_run(step, inertia, cfg, dmap, s, n, slot):
    G = dmap.group
    g0 = G.check_element(s.g)
    v0 = G.check_vector(getattr(s, slot))
    g = np.empty((n + 1,) + g0.shape)
    v = np.empty((n + 1,) + v0.shape)
    g[0], v[0] = g0, v0
    for k in range(n):
        try:
            s = step(inertia, cfg, dmap, s)
        except SolverDiverged as exc:
            raise SolverDiverged(f"step {k}: {exc}", residual_norm=exc.residual_norm, step_index=k) from None
        except OutOfDomain as exc:
            raise OutOfDomain(f"step {k}: {exc}", step_index=k) from None
        g[k + 1], v[k + 1] = s.g, getattr(s, slot)
    return g, v
