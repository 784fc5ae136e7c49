"""High-accuracy reference solution of the free rigid body.

Integrates ``mu' = ad*_{I^-1 mu} mu``, ``g' = g hat(I^-1 mu)`` in plain
coordinates with an adaptive Dormand-Prince 5(4) pair, then projects ``g``
back onto SO(3) (polar decomposition) after every accepted step.  The method
is not structure preserving; it is meant only as a test oracle.
"""

from __future__ import annotations

import numpy as np

from geomint.algebra import project_to_group, so3
from geomint.errors import StepSizeUnderflow
from geomint.integrators import InertiaOperator, LiePoissonState

# Dormand-Prince 5(4) tableau
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - _B4

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
_MAX_STEPS = 10_000_000


def _rhs(inertia: InertiaOperator):
    Iinv = inertia.inverse_matrix

    def f(y):
        mu, g = y[:3], y[3:].reshape(3, 3)
        om = Iinv @ mu
        return np.concatenate([np.cross(mu, om), (g @ so3.hat(om)).ravel()])

    return f


def _dopri_step(f, y, k1, h):
    K = np.empty((7, y.size))
    K[0] = k1
    for i in range(1, 7):
        K[i] = f(y + h * (np.asarray(_A[i]) @ K[:i]))
    return y + h * (_B5 @ K), h * (_E @ K)


def reference_trajectory(inertia: InertiaOperator, s0: LiePoissonState, times, tol=1e-12):
    """Reference states at each of the non-decreasing ``times`` (starting from 0).

    Raises :class:`StepSizeUnderflow` if the step controller collapses.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    times = np.asarray(times, dtype=float)
    if times.size and (times[0] < 0.0 or np.any(np.diff(times) < 0.0)):
        raise ValueError("output times must be non-negative and non-decreasing")
    f = _rhs(inertia)
    y = np.concatenate([so3.check_vector(s0.mu), so3.check_element(s0.g).ravel()])
    k1 = f(y)
    t = 0.0
    span = float(times[-1]) if times.size else 0.0
    h = min(1e-2, span) if span > 0.0 else 0.0
    out = []
    steps = 0
    for t_out in times:
        while t < t_out:
            h = min(h, t_out - t)
            # floor below which t + h no longer resolves
            if h <= 16.0 * np.finfo(float).eps * max(abs(t), 1.0):
                if t_out - t <= 16.0 * np.finfo(float).eps * max(abs(t), 1.0):
                    t = t_out
                    break
                raise StepSizeUnderflow(f"step size underflow at t = {t!r} (h = {h!r})")
            y_new, err = _dopri_step(f, y, k1, h)
            scale = tol + tol * np.maximum(np.abs(y), np.abs(y_new))
            enorm = float(np.sqrt(np.mean((err / scale) ** 2)))
            if not np.isfinite(enorm):
                h *= _MIN_FACTOR
                continue
            if enorm <= 1.0:
                t = t_out if h >= t_out - t else t + h
                g = project_to_group(y_new[3:].reshape(3, 3))
                y = np.concatenate([y_new[:3], g.ravel()])
                # projection moves y, so the FSAL stage is stale
                k1 = f(y)
                factor = _MAX_FACTOR if enorm == 0.0 else min(_MAX_FACTOR, _SAFETY * enorm ** -0.2)
            else:
                factor = max(_MIN_FACTOR, _SAFETY * enorm ** -0.2)
            h *= factor
            steps += 1
            if steps > _MAX_STEPS:
                raise StepSizeUnderflow(f"more than {_MAX_STEPS} steps before t = {t_out!r}")
        out.append(LiePoissonState(y[3:].reshape(3, 3).copy(), y[:3].copy()))
    return out


def reference_oracle(inertia: InertiaOperator, s0: LiePoissonState, t_total: float, tol=1e-12) -> LiePoissonState:
    """Reference state at time ``t_total``."""
    if t_total < 0.0:
        raise ValueError(f"t_total must be non-negative, got {t_total!r}")
    return reference_trajectory(inertia, s0, [t_total], tol)[0]
