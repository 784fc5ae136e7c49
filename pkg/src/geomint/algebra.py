"""Lie group and Lie algebra kernel.

Group elements are dense ``numpy`` arrays (SO(3): 3x3 rotation matrices).
Algebra and coalgebra vectors are coordinate arrays of length ``dim`` in a
fixed basis; the pairing between them is the coordinate dot product.

The coadjoint action follows the convention

    <coAd(g, mu), xi> = <mu, Ad(g, xi)>

so that ``coAd(g, coAd(h, mu)) == coAd(h @ g, mu)``.  With this choice the
semidirect law ``(g, mu)(h, nu) = (gh, coAd(h^-1, mu) + nu)`` is associative.
"""

from __future__ import annotations

import abc
import math

import numpy as np

from geomint.errors import GroupMismatchError, OutOfDomain

# below this rotation angle the closed forms switch to Taylor series
SMALL_ANGLE = 1e-4
# exp/log and Cayley inverses are rejected within this margin of angle pi
DOMAIN_MARGIN = 1e-9


class LieGroup(abc.ABC):
    """Interface for a matrix Lie group with coordinates on its algebra.

    Subclasses fix ``name``, ``dim`` (dimension of the algebra), the shape of
    the group representation and the structure maps.  Everything downstream
    (bundles, retractions, lifts, integrators) only talks to this interface.
    """

    name: str
    dim: int
    matrix_shape: tuple[int, int]
    basis_labels: tuple[str, ...]
    # tolerance used by ``is_element``
    element_tol: float = 1e-9

    @abc.abstractmethod
    def identity(self) -> np.ndarray:
        ...

    @abc.abstractmethod
    def compose(self, g, h) -> np.ndarray:
        ...

    @abc.abstractmethod
    def inverse(self, g) -> np.ndarray:
        ...

    @abc.abstractmethod
    def Ad(self, g, xi) -> np.ndarray:
        ...

    @abc.abstractmethod
    def coAd(self, g, mu) -> np.ndarray:
        ...

    @abc.abstractmethod
    def bracket(self, xi, eta) -> np.ndarray:
        ...

    @abc.abstractmethod
    def ad_star(self, xi, mu) -> np.ndarray:
        ...

    @abc.abstractmethod
    def hat(self, xi) -> np.ndarray:
        ...

    @abc.abstractmethod
    def vee(self, X) -> np.ndarray:
        ...

    @abc.abstractmethod
    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        ...

    def pairing(self, mu, xi) -> float:
        mu = self.check_vector(mu)
        xi = self.check_vector(xi)
        return float(mu @ xi)

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim)

    def basis(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim)
        e[i] = 1.0
        return e

    def ad_matrix(self, xi) -> np.ndarray:
        """Matrix of ``eta -> bracket(xi, eta)`` in coordinates."""
        return np.column_stack([self.bracket(xi, self.basis(i)) for i in range(self.dim)])

    def Ad_matrix(self, g) -> np.ndarray:
        return np.column_stack([self.Ad(g, self.basis(i)) for i in range(self.dim)])

    def check_vector(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape != (self.dim,):
            raise GroupMismatchError(
                f"{self.name}: expected a coordinate vector of length {self.dim}, got shape {v.shape}"
            )
        return v

    def check_element(self, g) -> np.ndarray:
        g = np.asarray(g, dtype=float)
        if g.shape != self.matrix_shape:
            raise GroupMismatchError(
                f"{self.name}: expected an element of shape {self.matrix_shape}, got {g.shape}"
            )
        return g

    def is_element(self, g, tol: float | None = None) -> bool:
        raise NotImplementedError

    def random_algebra(self, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
        return scale * rng.standard_normal(self.dim)

    def __repr__(self):
        return f"{type(self).__name__}()"


def _sinc(theta):
    """sin(theta)/theta."""
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0
    return math.sin(theta) / theta


def _cosc(theta):
    """(1 - cos(theta))/theta**2, written without cancellation."""
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        return 0.5 - t2 / 24.0 + t2 * t2 / 720.0
    s = math.sin(0.5 * theta)
    return 2.0 * s * s / (theta * theta)


def _sinc3(theta):
    """(theta - sin(theta))/theta**3."""
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        return 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0
    return (theta - math.sin(theta)) / theta**3


def _dexpinv_coeff(theta):
    """Coefficient of hat(xi)^2 in the inverse left-trivialized tangent of exp."""
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        return 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0
    return 1.0 / theta**2 - (1.0 + math.cos(theta)) / (2.0 * theta * math.sin(theta))


class SO3(LieGroup):
    """Rotation group with ``so(3)`` identified with R^3 via the hat map.

    The bracket is the cross product, ``Ad(R, xi) = R xi`` and, under the
    pairing convention of this module, ``coAd(R, mu) = R^T mu`` and
    ``ad_star(xi, mu) = mu x xi``.
    """

    name = "SO3"
    dim = 3
    matrix_shape = (3, 3)
    basis_labels = ("e1", "e2", "e3")

    def identity(self):
        return np.eye(3)

    def compose(self, g, h):
        return self.check_element(g) @ self.check_element(h)

    def inverse(self, g):
        return self.check_element(g).T.copy()

    def Ad(self, g, xi):
        return self.check_element(g) @ self.check_vector(xi)

    def coAd(self, g, mu):
        return self.check_element(g).T @ self.check_vector(mu)

    def bracket(self, xi, eta):
        return np.cross(self.check_vector(xi), self.check_vector(eta))

    def ad_star(self, xi, mu):
        return np.cross(self.check_vector(mu), self.check_vector(xi))

    def ad_matrix(self, xi):
        return self.hat(xi)

    def Ad_matrix(self, g):
        return self.check_element(g).copy()

    def hat(self, xi):
        x, y, z = self.check_vector(xi)
        return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])

    def vee(self, X):
        X = np.asarray(X, dtype=float)
        return np.array([X[2, 1], X[0, 2], X[1, 0]])

    def is_element(self, g, tol=None):
        tol = self.element_tol if tol is None else tol
        g = np.asarray(g, dtype=float)
        if g.shape != (3, 3):
            return False
        return orthogonality_residual(g) <= tol and np.linalg.det(g) > 0

    def random_element(self, rng):
        # uniform (Haar) sample through a random unit quaternion
        q = rng.standard_normal(4)
        w, x, y, z = q / np.linalg.norm(q)
        return np.array(
            [
                [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
                [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
                [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
            ]
        )

    # -- closed forms used by the tau maps -------------------------------

    def exp(self, xi):
        """Rodrigues formula."""
        xi = self.check_vector(xi)
        theta = float(np.linalg.norm(xi))
        X = self.hat(xi)
        return np.eye(3) + _sinc(theta) * X + _cosc(theta) * (X @ X)

    @staticmethod
    def rotation_angle(R):
        s = 0.5 * np.linalg.norm([R[2, 1] - R[1, 2], R[0, 2] - R[2, 0], R[1, 0] - R[0, 1]])
        c = 0.5 * (np.trace(R) - 1.0)
        return math.atan2(s, c)

    def log(self, R):
        R = self.check_element(R)
        axis2 = np.array([R[2, 1] - R[1, 2], R[0, 2] - R[2, 0], R[1, 0] - R[0, 1]])
        theta = self.rotation_angle(R)
        if theta >= math.pi - DOMAIN_MARGIN:
            raise OutOfDomain(f"log: rotation angle {theta!r} is at the cut locus (pi)")
        if theta < SMALL_ANGLE:
            t2 = theta * theta
            return 0.5 * (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0) * axis2
        if theta < 2.5:
            return theta / (2.0 * math.sin(theta)) * axis2
        # near pi the skew part is small; read the axis off the symmetric part
        c = math.cos(theta)
        B = 0.5 * (R + R.T) - c * np.eye(3)
        i = int(np.argmax(np.diag(B)))
        n = B[:, i] / math.sqrt(B[i, i] * (1.0 - c))
        if n @ axis2 < 0:
            n = -n
        return theta * n

    def dexp_left(self, xi):
        """Matrix of the left-trivialized tangent of exp at ``xi``."""
        xi = self.check_vector(xi)
        theta = float(np.linalg.norm(xi))
        X = self.hat(xi)
        return np.eye(3) - _cosc(theta) * X + _sinc3(theta) * (X @ X)

    def dexp_left_inv(self, xi):
        xi = self.check_vector(xi)
        theta = float(np.linalg.norm(xi))
        if theta >= 2.0 * math.pi - DOMAIN_MARGIN:
            raise OutOfDomain(f"dexp inverse is singular at |xi| = {theta!r}")
        X = self.hat(xi)
        return np.eye(3) + 0.5 * X + _dexpinv_coeff(theta) * (X @ X)

    def cayley(self, xi):
        """(I - hat(xi)/2)^-1 (I + hat(xi)/2) in closed form."""
        xi = self.check_vector(xi)
        X = self.hat(xi)
        return np.eye(3) + 4.0 / (4.0 + xi @ xi) * (X + 0.5 * (X @ X))

    def cayley_inv(self, R):
        R = self.check_element(R)
        theta = self.rotation_angle(R)
        if theta >= math.pi - DOMAIN_MARGIN:
            raise OutOfDomain(f"inverse Cayley: rotation angle {theta!r} is at pi")
        axis2 = np.array([R[2, 1] - R[1, 2], R[0, 2] - R[2, 0], R[1, 0] - R[0, 1]])
        return axis2 / (0.5 * (np.trace(R) + 1.0))

    def dcayley_left(self, xi):
        xi = self.check_vector(xi)
        return (np.eye(3) - 0.5 * self.hat(xi)) / (1.0 + 0.25 * (xi @ xi))

    def dcayley_left_inv(self, xi):
        xi = self.check_vector(xi)
        return np.eye(3) + 0.5 * self.hat(xi) + 0.25 * np.outer(xi, xi)


so3 = SO3()

_GROUPS = {"SO3": so3}


def get_group(name: str) -> LieGroup:
    try:
        return _GROUPS[name.upper().replace("(", "").replace(")", "")]
    except KeyError:
        raise ValueError(f"unknown group {name!r}; available: {sorted(_GROUPS)}") from None


def orthogonality_residual(R) -> float:
    """Frobenius norm of ``R^T R - I``."""
    R = np.asarray(R, dtype=float)
    return float(np.linalg.norm(R.T @ R - np.eye(R.shape[0])))


def project_to_group(R) -> np.ndarray:
    """Nearest rotation in Frobenius norm (orthogonal polar factor).

    Never called implicitly by the integrators.
    """
    U, _, Vt = np.linalg.svd(np.asarray(R, dtype=float))
    Q = U @ Vt
    if np.linalg.det(Q) < 0:
        U[:, -1] = -U[:, -1]
        Q = U @ Vt
    return Q


def axis_angle(axis, angle) -> np.ndarray:
    """Rotation by ``angle`` radians about ``axis`` (need not be normalized)."""
    axis = np.asarray(axis, dtype=float)
    n = np.linalg.norm(axis)
    if n == 0.0:
        if angle == 0.0:
            return np.eye(3)
        raise ValueError("axis_angle: zero axis with nonzero angle")
    return so3.exp(axis / n * angle)


def rot_x(angle):
    return axis_angle([1.0, 0.0, 0.0], angle)


def rot_z(angle):
    return axis_angle([0.0, 0.0, 1.0], angle)
