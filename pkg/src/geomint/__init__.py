"""Structure-preserving integrators on left-trivialized Lie group bundles."""

from geomint.algebra import SO3, LieGroup, so3
from geomint.errors import (
    ConfigError,
    GeomintError,
    GroupMismatchError,
    OutOfDomain,
    SolverDiverged,
    StepSizeUnderflow,
)
from geomint.integrators import (
    EulerPoincareState,
    InertiaOperator,
    IntegratorConfig,
    LiePoissonState,
    euler_poincare_step,
    lie_poisson_step,
)
from geomint.retraction import DiscretizationMap, TauKind, make_tau
from geomint.tulczyjew import Orientation

__version__ = "0.1.0"

__all__ = [
    "SO3",
    "ConfigError",
    "DiscretizationMap",
    "EulerPoincareState",
    "GeomintError",
    "GroupMismatchError",
    "InertiaOperator",
    "IntegratorConfig",
    "LieGroup",
    "LiePoissonState",
    "Orientation",
    "OutOfDomain",
    "SolverDiverged",
    "StepSizeUnderflow",
    "TauKind",
    "euler_poincare_step",
    "lie_poisson_step",
    "make_tau",
    "so3",
]
