"""Simulation runs, conservation diagnostics, CSV output and order studies."""

from __future__ import annotations

import io
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from geomint.config import RunConfig
from geomint.errors import ConfigError
from geomint.integrators import EulerPoincareState, LiePoissonState
from geomint.kernels import run_euler_poincare, run_lie_poisson
from geomint.reference import reference_oracle, reference_trajectory

CSV_HEADER = (
    "k,time,g00,g01,g02,g10,g11,g12,g20,g21,g22,m1,m2,m3,energy,casimir,orth_residual"
)
# errors at or below this are indistinguishable from the reference oracle's own error
EXACT_TOL = 1e-10


@dataclass(frozen=True)
class TrajectoryRecord:
    k: int
    time: float
    g: tuple
    m: tuple
    energy: float
    casimir: float
    orth_residual: float


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Arrays of a run: ``g`` is ``(N+1, 3, 3)``; ``m`` holds mu or xi (native variable)."""

    integrator: str
    step: float
    g: np.ndarray
    m: np.ndarray
    mu: np.ndarray

    def __len__(self):
        return self.g.shape[0]

    @property
    def times(self) -> np.ndarray:
        return self.step * np.arange(len(self))

    def casimir(self) -> np.ndarray:
        return np.linalg.norm(self.mu, axis=1)

    def energy(self, inertia) -> np.ndarray:
        return 0.5 * np.einsum("ki,ij,kj->k", self.mu, inertia.inverse_matrix, self.mu)

    def orth_residual(self) -> np.ndarray:
        gtg = np.einsum("kji,kjl->kil", self.g, self.g)
        return np.linalg.norm(gtg - np.eye(3), axis=(1, 2))

    def records(self, inertia):
        E, C, O, T = self.energy(inertia), self.casimir(), self.orth_residual(), self.times
        for k in range(len(self)):
            yield TrajectoryRecord(k, float(T[k]), tuple(self.g[k].ravel()), tuple(self.m[k]), E[k], C[k], O[k])


def run(cfg: RunConfig, step=None, steps=None, backend=None) -> Trajectory:
    """Integrate ``cfg`` (optionally overriding the step size and count)."""
    t = cfg.step if step is None else step
    n = cfg.steps if steps is None else steps
    if cfg.integrator == "lie_poisson":
        g, mu = run_lie_poisson(
            cfg.inertia, cfg.integrator_config(t), cfg.dmap(), LiePoissonState(cfg.g0, cfg.mu0), n, backend
        )
        return Trajectory(cfg.integrator, t, g, mu, mu)
    if cfg.integrator == "euler_poincare":
        g, xi = run_euler_poincare(
            cfg.inertia, cfg.integrator_config(t), cfg.dmap(), EulerPoincareState(cfg.g0, cfg.xi0), n, backend
        )
        return Trajectory(cfg.integrator, t, g, xi, xi @ cfg.inertia.matrix.T)
    if cfg.integrator == "reference":
        states = reference_trajectory(cfg.inertia, LiePoissonState(cfg.g0, cfg.mu0), t * np.arange(n + 1), cfg.reference_tol)
        g = np.array([s.g for s in states])
        mu = np.array([s.mu for s in states])
        return Trajectory(cfg.integrator, t, g, mu, mu)
    raise ConfigError(f"unknown integrator {cfg.integrator!r}")


def format_csv(traj: Trajectory, inertia) -> str:
    """The whole trajectory as CSV text, 17 significant digits per value."""
    k = np.arange(len(traj), dtype=float)
    table = np.column_stack(
        [k, traj.times, traj.g.reshape(len(traj), 9), traj.m, traj.energy(inertia), traj.casimir(), traj.orth_residual()]
    )
    buf = io.StringIO()
    fmt = ["%d"] + ["%.17g"] * (table.shape[1] - 1)
    np.savetxt(buf, table, fmt=fmt, delimiter=",", header=CSV_HEADER, comments="")
    return buf.getvalue()


def write_atomic(path, text: str):
    """Write ``text`` to ``path`` through a temporary file in the same directory."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def simulate(cfg: RunConfig, output=None, backend=None) -> tuple[Path, Trajectory]:
    """Run ``cfg`` and write its CSV.  Nothing is written if the run fails."""
    traj = run(cfg, backend=backend)
    path = Path(output if output is not None else cfg.output)
    write_atomic(path, format_csv(traj, cfg.inertia))
    return path, traj


@dataclass(frozen=True)
class OrderReport:
    steps: tuple
    errors: tuple
    slope: float | None
    exact: bool
    monotone: bool
    total_time: float

    def lines(self):
        yield f"total time {self.total_time:g}"
        yield f"{'step':>12}  {'N':>8}  {'terminal error':>22}"
        for t, e in zip(self.steps, self.errors):
            yield f"{t:12.6g}  {round(self.total_time / t):8d}  {e:22.15e}"
        yield "slope: exact" if self.exact else f"slope: {self.slope:.6f}"
        yield f"monotone error decay: {'yes' if self.monotone else 'no'}"


def terminal_error(a: LiePoissonState, b: LiePoissonState) -> float:
    """``max(|mu_a - mu_b|, |g_a - g_b|_F)``."""
    return max(float(np.linalg.norm(a.mu - b.mu)), float(np.linalg.norm(a.g - b.g)))


def check_step_list(step_list, total_time):
    steps = [float(s) for s in step_list]
    if len(steps) < 3:
        raise ConfigError(f"order study needs at least 3 step sizes, got {len(steps)}")
    for a, b in zip(steps, steps[1:]):
        if not (a > 0.0 and abs(a / b - 2.0) <= 1e-9):
            raise ConfigError(f"each step size must halve the previous one ({a!r} -> {b!r})")
    for t in steps:
        n = round(total_time / t)
        if n < 1 or abs(n * t - total_time) > 1e-9 * total_time:
            raise ConfigError(f"step {t!r} does not divide total time {total_time!r}")
    return steps


def order_study(cfg: RunConfig, step_list, total_time=None, backend=None) -> OrderReport:
    """Terminal error against :func:`reference_oracle` for each step size, and the fitted order."""
    T = cfg.horizon if total_time is None else float(total_time)
    steps = check_step_list(step_list, T)
    s0 = LiePoissonState(cfg.g0, cfg.mu0)
    ref = reference_oracle(cfg.inertia, s0, T, cfg.reference_tol)
    errors = []
    for t in steps:
        if cfg.integrator == "reference":
            end = reference_oracle(cfg.inertia, s0, T, cfg.reference_tol)
        else:
            traj = run(cfg, step=t, steps=round(T / t), backend=backend)
            end = LiePoissonState(traj.g[-1], traj.mu[-1])
        errors.append(terminal_error(end, ref))
    errors = np.array(errors)
    exact = bool(np.all(errors <= EXACT_TOL))
    slope = None if exact else float(np.polyfit(np.log(steps), np.log(errors), 1)[0])
    monotone = exact or bool(np.all(np.diff(errors) < 0.0))
    return OrderReport(tuple(steps), tuple(float(e) for e in errors), slope, exact, monotone, T)
