"""Pure-Python SO(3) trajectory kernels.

Line-for-line twin of ``_kernels.pyx``, used when the extension is not
built.  Works on plain floats; numpy only holds the output buffers.
"""

from math import isfinite, pi, sin, sqrt

SMALL_ANGLE = 1e-4
DOMAIN_MARGIN = 1e-9

OK = 0
DIVERGED = 1
OUT_OF_DOMAIN = 2
TAU_EXP = 0
TAU_CAYLEY = 1


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _exp_coeffs(theta):
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        return (
            1.0 - t2 / 6.0 + t2 * t2 / 120.0,
            0.5 - t2 / 24.0 + t2 * t2 / 720.0,
            1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0,
        )
    s = sin(0.5 * theta)
    return sin(theta) / theta, 2.0 * s * s / (theta * theta), (theta - sin(theta)) / theta**3


def _tau_matrix(xi, tau_kind):
    x, y, z = xi
    n2 = x * x + y * y + z * z
    if tau_kind == TAU_EXP:
        a, b, _ = _exp_coeffs(sqrt(n2))
    else:
        a = 4.0 / (4.0 + n2)
        b = 0.5 * a
    return (
        1.0 + b * (x * x - n2), -a * z + b * x * y, a * y + b * x * z,
        a * z + b * x * y, 1.0 + b * (y * y - n2), -a * x + b * y * z,
        -a * y + b * x * z, a * x + b * y * z, 1.0 + b * (z * z - n2),
    )  # fmt: skip


def _dtau_apply(xi, v, tau_kind, transpose):
    sgn = 1.0 if transpose else -1.0
    w = _cross(xi, v)
    if tau_kind == TAU_EXP:
        _, cosc, sinc3 = _exp_coeffs(sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]))
        ww = _cross(xi, w)
        return tuple(v[i] + sgn * cosc * w[i] + sinc3 * ww[i] for i in range(3))
    scale = 1.0 / (1.0 + 0.25 * (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]))
    return tuple(scale * (v[i] + sgn * 0.5 * w[i]) for i in range(3))


def _matvec(M, v):
    return (
        M[0] * v[0] + M[1] * v[1] + M[2] * v[2],
        M[3] * v[0] + M[4] * v[1] + M[5] * v[2],
        M[6] * v[0] + M[7] * v[1] + M[8] * v[2],
    )


def _matTvec(M, v):
    return (
        M[0] * v[0] + M[3] * v[1] + M[6] * v[2],
        M[1] * v[0] + M[4] * v[1] + M[7] * v[2],
        M[2] * v[0] + M[5] * v[1] + M[8] * v[2],
    )


def _matmul(A, B):
    return tuple(
        A[3 * i] * B[j] + A[3 * i + 1] * B[3 + j] + A[3 * i + 2] * B[6 + j] for i in range(3) for j in range(3)
    )


def _in_domain(xi, tau_kind):
    if tau_kind == TAU_EXP:
        return sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]) < pi - DOMAIN_MARGIN
    return True


def lie_poisson_run(inertia_inv, g_out, mu_out, h, tau_kind, tol, max_iter, k_start=0):
    n = g_out.shape[0] - 1
    Iinv = tuple(float(v) for v in inertia_inv.ravel())
    g = tuple(float(v) for v in g_out[k_start].ravel())
    mu = tuple(float(v) for v in mu_out[k_start])
    rnorm = 0.0
    for k in range(k_start, n):
        xi = tuple(h * c for c in _matvec(Iinv, mu))
        converged = False
        for _ in range(max_iter):
            R = _tau_matrix(xi, tau_kind)
            w = _dtau_apply(xi, _matTvec(R, mu), tau_kind, True)
            f = tuple(h * c for c in _matvec(Iinv, w))
            rnorm = sqrt(sum((xi[i] - f[i]) ** 2 for i in range(3)))
            if rnorm <= tol:
                converged = True
                break
            if not isfinite(rnorm):
                break
            xi = f
        if not converged:
            return DIVERGED, k, rnorm
        if not _in_domain(xi, tau_kind):
            return OUT_OF_DOMAIN, k, rnorm
        R = _tau_matrix(xi, tau_kind)
        mu = _matTvec(R, mu)
        g = _matmul(g, R)
        mu_out[k + 1] = mu
        g_out[k + 1] = ((g[0], g[1], g[2]), (g[3], g[4], g[5]), (g[6], g[7], g[8]))
    return OK, n, rnorm


def euler_poincare_run(inertia, inertia_inv, g_out, xi_out, t, tau_kind, k_start=0):
    n = g_out.shape[0] - 1
    I = tuple(float(v) for v in inertia.ravel())
    Iinv = tuple(float(v) for v in inertia_inv.ravel())
    g = tuple(float(v) for v in g_out[k_start].ravel())
    xi = tuple(float(v) for v in xi_out[k_start])
    for k in range(k_start, n):
        xbar = tuple(t * c for c in xi)
        if not _in_domain(xbar, tau_kind):
            return OUT_OF_DOMAIN, k
        ea = tuple(t * c for c in _matvec(Iinv, _cross(_matvec(I, xi), xi)))
        R = _tau_matrix(xbar, tau_kind)
        adv = _matTvec(R, xi)
        dv = _dtau_apply(xbar, ea, tau_kind, False)
        g = _matmul(g, R)
        xi = tuple(adv[i] + dv[i] for i in range(3))
        xi_out[k + 1] = xi
        g_out[k + 1] = ((g[0], g[1], g[2]), (g[3], g[4], g[5]), (g[6], g[7], g[8]))
    return OK, n
