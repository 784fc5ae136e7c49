"""Run configuration: a single JSON document, validated field by field.

Example::

    {
      "group": "so3",
      "tau": "exp",
      "theta": 0.0,
      "step": 0.01,
      "steps": 10000,
      "inertia": [1, 2, 3],
      "g0": "identity",
      "mu0": [0.5773502691896258, 0.5773502691896258, 0.5773502691896258],
      "integrator": "lie_poisson",
      "orientation": "forward",
      "output": "trajectory.csv"
    }

``inertia`` is a diagonal (list of 3) or a full 3x3 matrix.  ``g0`` is
``"identity"``, an axis-angle list ``[ax, ay, az, angle]`` or a 3x3 matrix.
Give exactly one of ``mu0`` and ``xi0``; the other is derived through the
inertia operator.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from geomint.algebra import axis_angle, get_group
from geomint.errors import ConfigError
from geomint.integrators import InertiaOperator, IntegratorConfig
from geomint.retraction import DiscretizationMap, TauKind, make_tau
from geomint.solvers import SolverKind
from geomint.tulczyjew import Orientation

INTEGRATORS = ("lie_poisson", "euler_poincare", "reference")
FORMATS = ("csv",)

_FIELDS = {
    "group", "tau", "theta", "step", "steps", "inertia", "g0", "mu0", "xi0", "integrator",
    "orientation", "output", "format", "total_time", "tol", "max_iter", "solver", "reference_tol",
}  # fmt: skip


@dataclass(frozen=True, eq=False)
class RunConfig:
    step: float
    steps: int
    inertia: InertiaOperator
    g0: np.ndarray
    mu0: np.ndarray
    group: str = "so3"
    tau: TauKind = TauKind.EXPONENTIAL
    theta: float = 0.0
    integrator: str = "lie_poisson"
    orientation: Orientation = Orientation.FORWARD
    output: str = "trajectory.csv"
    format: str = "csv"
    total_time: float | None = None
    tol: float = 1e-13
    max_iter: int = 100
    solver: SolverKind = SolverKind.FIXED_POINT
    reference_tol: float = 1e-12

    @property
    def xi0(self) -> np.ndarray:
        return self.inertia.solve(self.mu0)

    @property
    def horizon(self) -> float:
        """Total simulated time used by the order study."""
        return self.total_time if self.total_time is not None else self.step * self.steps

    def dmap(self) -> DiscretizationMap:
        return DiscretizationMap(make_tau(self.tau, get_group(self.group)), self.theta)

    def integrator_config(self, step=None) -> IntegratorConfig:
        return IntegratorConfig(
            self.step if step is None else step, self.tol, self.max_iter, self.solver, self.orientation
        )

    def replace(self, **changes) -> RunConfig:
        kw = {k: getattr(self, k) for k in self.__dataclass_fields__}
        kw.update(changes)
        return RunConfig(**kw)


def _vector(name, v, errors, n=3):
    try:
        a = np.asarray(v, dtype=float)
    except (TypeError, ValueError):
        errors.append(f"field '{name}': expected a list of {n} numbers")
        return None
    if a.shape != (n,) or not np.all(np.isfinite(a)):
        errors.append(f"field '{name}': expected a list of {n} finite numbers, got {v!r}")
        return None
    return a


def _number(name, v, errors, check, what):
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        errors.append(f"field '{name}': expected a finite number, got {v!r}")
        return None
    if not check(v):
        errors.append(f"field '{name}': must be {what}, got {v!r}")
        return None
    return float(v)


def _choice(name, v, options, errors):
    if v not in options:
        errors.append(f"field '{name}': must be one of {', '.join(map(str, options))}; got {v!r}")
        return None
    return v


def config_from_dict(d: dict) -> RunConfig:
    """Validate a decoded JSON object; raises :class:`ConfigError` listing every bad field."""
    if not isinstance(d, dict):
        raise ConfigError("config must be a JSON object")
    errors = []
    for k in sorted(set(d) - _FIELDS):
        errors.append(f"field '{k}': unknown field")
    for k in ("step", "steps", "inertia"):
        if k not in d:
            errors.append(f"field '{k}': required")

    group = _choice("group", d.get("group", "so3"), ("so3",), errors)
    tau = _choice("tau", d.get("tau", "exp"), [k.value for k in TauKind], errors)
    theta = _number("theta", d.get("theta", 0.0), errors, lambda x: 0.0 <= x <= 1.0, "in [0, 1]")
    step = _number("step", d["step"], errors, lambda x: x > 0.0, "positive") if "step" in d else None
    steps = d.get("steps")
    if "steps" in d and (isinstance(steps, bool) or not isinstance(steps, int) or steps < 1):
        errors.append(f"field 'steps': must be an integer >= 1, got {steps!r}")
        steps = None
    integrator = _choice("integrator", d.get("integrator", "lie_poisson"), INTEGRATORS, errors)
    orientation = _choice("orientation", d.get("orientation", "forward"), [o.value for o in Orientation], errors)
    fmt = _choice("format", d.get("format", "csv"), FORMATS, errors)
    solver = _choice("solver", d.get("solver", "fixed_point"), [s.value for s in SolverKind], errors)
    output = d.get("output", "trajectory.csv")
    if not isinstance(output, str) or not output:
        errors.append(f"field 'output': expected a non-empty path string, got {output!r}")
    tol = _number("tol", d.get("tol", 1e-13), errors, lambda x: x > 0.0, "positive")
    reference_tol = _number("reference_tol", d.get("reference_tol", 1e-12), errors, lambda x: x > 0.0, "positive")
    max_iter = d.get("max_iter", 100)
    if isinstance(max_iter, bool) or not isinstance(max_iter, int) or max_iter < 1:
        errors.append(f"field 'max_iter': must be an integer >= 1, got {max_iter!r}")
    total_time = d.get("total_time")
    if total_time is not None:
        total_time = _number("total_time", total_time, errors, lambda x: x > 0.0, "positive")
    if theta not in (None, 0.0) and integrator in ("lie_poisson", "euler_poincare"):
        errors.append(f"field 'theta': the {integrator} integrator requires theta = 0")

    inertia = None
    if "inertia" in d:
        try:
            m = np.asarray(d["inertia"], dtype=float)
            if m.shape == (3,):
                m = np.diag(m)
            if m.shape != (3, 3):
                raise ValueError(f"expected 3 moments or a 3x3 matrix, got shape {m.shape}")
            inertia = InertiaOperator(m)
        except (TypeError, ValueError) as exc:
            errors.append(f"field 'inertia': {exc}")

    g0 = _initial_rotation(d.get("g0", "identity"), errors)

    mu0 = None
    if ("mu0" in d) == ("xi0" in d):
        errors.append("fields 'mu0'/'xi0': give exactly one initial momentum or velocity")
    elif "mu0" in d:
        mu0 = _vector("mu0", d["mu0"], errors)
    else:
        xi0 = _vector("xi0", d["xi0"], errors)
        if xi0 is not None and inertia is not None:
            mu0 = inertia.apply(xi0)

    if errors:
        raise ConfigError("invalid config:\n  " + "\n  ".join(errors))
    return RunConfig(
        step=step,
        steps=steps,
        inertia=inertia,
        g0=g0,
        mu0=mu0,
        group=group,
        tau=TauKind(tau),
        theta=theta,
        integrator=integrator,
        orientation=Orientation(orientation),
        output=output,
        format=fmt,
        total_time=total_time,
        tol=tol,
        max_iter=max_iter,
        solver=SolverKind(solver),
        reference_tol=reference_tol,
    )


def _initial_rotation(v, errors):
    if isinstance(v, str):
        if v == "identity":
            return np.eye(3)
        errors.append(f"field 'g0': unknown value {v!r} (use \"identity\", [ax, ay, az, angle] or a 3x3 matrix)")
        return None
    try:
        a = np.asarray(v, dtype=float)
    except (TypeError, ValueError):
        errors.append(f"field 'g0': could not read {v!r}")
        return None
    if a.shape == (4,):
        if not np.linalg.norm(a[:3]) > 0.0:
            errors.append("field 'g0': axis-angle axis must be non-zero")
            return None
        return axis_angle(a[:3], a[3])
    if a.shape == (3, 3):
        if np.linalg.norm(a.T @ a - np.eye(3)) > 1e-9 or np.linalg.det(a) <= 0.0:
            errors.append("field 'g0': matrix is not a rotation (|R^T R - I| > 1e-9 or det <= 0)")
            return None
        return a
    errors.append(f"field 'g0': expected \"identity\", [ax, ay, az, angle] or a 3x3 matrix, got shape {a.shape}")
    return None


def load_config(path) -> RunConfig:
    """Read and validate a JSON config file.

    Syntax errors are reported as ``path:line:column: message``.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from None
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return config_from_dict(d)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None
