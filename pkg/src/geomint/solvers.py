"""Small nonlinear solvers for the implicit step equations."""

from __future__ import annotations

import enum

import numpy as np

from geomint.errors import SolverDiverged

FD_STEP = 1e-7


class SolverKind(str, enum.Enum):
    FIXED_POINT = "fixed_point"
    NEWTON = "newton"


def fixed_point_solve(residual, guess, tol=1e-13, max_iter=100, kind=SolverKind.FIXED_POINT):
    """Find ``x`` with ``norm(residual(x)) <= tol``.

    ``FIXED_POINT`` iterates ``x <- x - residual(x)``, which converges when
    ``x - residual(x)`` is a contraction.  It never switches method; a
    stalled iteration raises :class:`SolverDiverged`.  ``NEWTON`` starts with
    the same iteration and switches to Newton steps with a forward-difference
    Jacobian once the residual stops shrinking.
    """
    kind = SolverKind(kind)
    x = np.array(guess, dtype=float)
    r = np.asarray(residual(x), dtype=float)
    rnorm = float(np.linalg.norm(r))
    newton = False
    for _ in range(max_iter):
        if rnorm <= tol:
            return x
        if not np.isfinite(rnorm):
            break
        if newton:
            x = x - np.linalg.solve(_fd_jacobian(residual, x, r), r)
        else:
            x = x - r
        r_new = np.asarray(residual(x), dtype=float)
        rnew_norm = float(np.linalg.norm(r_new))
        if kind is SolverKind.NEWTON and not newton and rnew_norm > 0.5 * rnorm:
            newton = True
        r, rnorm = r_new, rnew_norm
    if rnorm <= tol:
        return x
    raise SolverDiverged(
        f"{kind.value} solve did not converge: residual {rnorm:.3e} > tol {tol:.1e} after {max_iter} iterations",
        residual_norm=rnorm,
    )


def _fd_jacobian(residual, x, r0):
    n = x.size
    J = np.empty((r0.size, n))
    for j in range(n):
        dx = np.zeros(n)
        dx[j] = FD_STEP * max(1.0, abs(x[j]))
        J[:, j] = (np.asarray(residual(x + dx)) - r0) / dx[j]
    return J
