# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled SO(3) trajectory kernels.

Same call signatures and status codes as ``geomint._pykernels``; see
``geomint.kernels`` for the contract.
"""

from libc.math cimport sqrt, sin, cos, isfinite, M_PI

cdef double SMALL_ANGLE = 1e-4
cdef double DOMAIN_MARGIN = 1e-9

cdef enum:
    OK = 0
    DIVERGED = 1
    OUT_OF_DOMAIN = 2
    TAU_EXP = 0
    TAU_CAYLEY = 1


cdef inline void cross(const double* a, const double* b, double* out) noexcept nogil:
    out[0] = a[1] * b[2] - a[2] * b[1]
    out[1] = a[2] * b[0] - a[0] * b[2]
    out[2] = a[0] * b[1] - a[1] * b[0]


cdef inline double norm3(const double* a) noexcept nogil:
    return sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2])


cdef inline void exp_coeffs(double theta, double* sinc, double* cosc, double* sinc3) noexcept nogil:
    cdef double t2, s
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        sinc[0] = 1.0 - t2 / 6.0 + t2 * t2 / 120.0
        cosc[0] = 0.5 - t2 / 24.0 + t2 * t2 / 720.0
        sinc3[0] = 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0
    else:
        s = sin(0.5 * theta)
        sinc[0] = sin(theta) / theta
        cosc[0] = 2.0 * s * s / (theta * theta)
        sinc3[0] = (theta - sin(theta)) / (theta * theta * theta)


cdef inline void tau_matrix(const double* xi, int tau_kind, double* R) noexcept nogil:
    # R = I + a X + b X^2, row-major
    cdef double a, b, c3, theta, n2
    cdef double x = xi[0], y = xi[1], z = xi[2]
    if tau_kind == TAU_EXP:
        theta = norm3(xi)
        exp_coeffs(theta, &a, &b, &c3)
    else:
        n2 = x * x + y * y + z * z
        a = 4.0 / (4.0 + n2)
        b = 0.5 * a
    # X^2 = xi xi^T - |xi|^2 I
    n2 = x * x + y * y + z * z
    R[0] = 1.0 + b * (x * x - n2)
    R[1] = -a * z + b * x * y
    R[2] = a * y + b * x * z
    R[3] = a * z + b * x * y
    R[4] = 1.0 + b * (y * y - n2)
    R[5] = -a * x + b * y * z
    R[6] = -a * y + b * x * z
    R[7] = a * x + b * y * z
    R[8] = 1.0 + b * (z * z - n2)


cdef inline void dtau_apply(const double* xi, const double* v, int tau_kind, int transpose,
                            double* out) noexcept nogil:
    # dtauL(xi) v, or its transpose, written with cross products
    cdef double scale, theta, sinc, cosc, sinc3, sgn
    cdef double w[3]
    cdef double ww[3]
    sgn = -1.0 if transpose == 0 else 1.0
    cross(xi, v, w)
    if tau_kind == TAU_EXP:
        theta = norm3(xi)
        exp_coeffs(theta, &sinc, &cosc, &sinc3)
        cross(xi, w, ww)
        out[0] = v[0] + sgn * cosc * w[0] + sinc3 * ww[0]
        out[1] = v[1] + sgn * cosc * w[1] + sinc3 * ww[1]
        out[2] = v[2] + sgn * cosc * w[2] + sinc3 * ww[2]
    else:
        scale = 1.0 / (1.0 + 0.25 * (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]))
        out[0] = scale * (v[0] + sgn * 0.5 * w[0])
        out[1] = scale * (v[1] + sgn * 0.5 * w[1])
        out[2] = scale * (v[2] + sgn * 0.5 * w[2])


cdef inline void matvec(const double* M, const double* v, double* out) noexcept nogil:
    out[0] = M[0] * v[0] + M[1] * v[1] + M[2] * v[2]
    out[1] = M[3] * v[0] + M[4] * v[1] + M[5] * v[2]
    out[2] = M[6] * v[0] + M[7] * v[1] + M[8] * v[2]


cdef inline void matTvec(const double* M, const double* v, double* out) noexcept nogil:
    out[0] = M[0] * v[0] + M[3] * v[1] + M[6] * v[2]
    out[1] = M[1] * v[0] + M[4] * v[1] + M[7] * v[2]
    out[2] = M[2] * v[0] + M[5] * v[1] + M[8] * v[2]


cdef inline void matmul(const double* A, const double* B, double* out) noexcept nogil:
    cdef int i, j
    for i in range(3):
        for j in range(3):
            out[3 * i + j] = A[3 * i] * B[j] + A[3 * i + 1] * B[3 + j] + A[3 * i + 2] * B[6 + j]


cdef inline int in_domain(const double* xi, int tau_kind) noexcept nogil:
    if tau_kind == TAU_EXP:
        return norm3(xi) < M_PI - DOMAIN_MARGIN
    return 1


def lie_poisson_run(const double[:, ::1] inertia_inv, double[:, :, ::1] g_out, double[:, ::1] mu_out,
                    double h, int tau_kind, double tol, int max_iter, Py_ssize_t k_start=0):
    """Fill rows ``k_start + 1 ..`` of ``g_out``/``mu_out`` with Lie-Poisson steps of signed size ``h``.

    Returns ``(status, k, residual_norm)``; on failure ``k`` is the index of the
    step that could not be taken (row ``k`` holds the last good state).
    """
    cdef Py_ssize_t n = g_out.shape[0] - 1
    cdef Py_ssize_t k
    cdef int it, converged
    cdef double Iinv[9]
    cdef double R[9]
    cdef double gk[9]
    cdef double gn[9]
    cdef double mu[3]
    cdef double xi[3]
    cdef double mu_next[3]
    cdef double w[3]
    cdef double f[3]
    cdef double rnorm = 0.0
    cdef int i, j
    for i in range(3):
        for j in range(3):
            Iinv[3 * i + j] = inertia_inv[i, j]
    with nogil:
        for k in range(k_start, n):
            for i in range(3):
                mu[i] = mu_out[k, i]
                for j in range(3):
                    gk[3 * i + j] = g_out[k, i, j]
            matvec(Iinv, mu, xi)
            for i in range(3):
                xi[i] = h * xi[i]
            converged = 0
            for it in range(max_iter):
                # f = h I^-1 dtauL_dual(xi, tau(xi)^T mu)
                tau_matrix(xi, tau_kind, R)
                matTvec(R, mu, mu_next)
                dtau_apply(xi, mu_next, tau_kind, 1, w)
                matvec(Iinv, w, f)
                rnorm = 0.0
                for i in range(3):
                    f[i] = h * f[i]
                    rnorm += (xi[i] - f[i]) * (xi[i] - f[i])
                rnorm = sqrt(rnorm)
                if rnorm <= tol:
                    converged = 1
                    break
                if not isfinite(rnorm):
                    break
                for i in range(3):
                    xi[i] = f[i]
            if not converged:
                with gil:
                    return DIVERGED, k, rnorm
            if not in_domain(xi, tau_kind):
                with gil:
                    return OUT_OF_DOMAIN, k, rnorm
            tau_matrix(xi, tau_kind, R)
            matTvec(R, mu, mu_next)
            matmul(gk, R, gn)
            for i in range(3):
                mu_out[k + 1, i] = mu_next[i]
                for j in range(3):
                    g_out[k + 1, i, j] = gn[3 * i + j]
    return OK, n, rnorm


def euler_poincare_run(const double[:, ::1] inertia, const double[:, ::1] inertia_inv, double[:, :, ::1] g_out,
                       double[:, ::1] xi_out, double t, int tau_kind, Py_ssize_t k_start=0):
    """Fill rows ``k_start + 1 ..`` of ``g_out``/``xi_out`` with Euler-Poincare steps of size ``t``.

    Returns ``(status, k)``.
    """
    cdef Py_ssize_t n = g_out.shape[0] - 1
    cdef Py_ssize_t k
    cdef double I[9]
    cdef double Iinv[9]
    cdef double R[9]
    cdef double gk[9]
    cdef double gn[9]
    cdef double xi[3]
    cdef double xbar[3]
    cdef double m[3]
    cdef double w[3]
    cdef double ea[3]
    cdef double adv[3]
    cdef double dv[3]
    cdef int i, j
    for i in range(3):
        for j in range(3):
            I[3 * i + j] = inertia[i, j]
            Iinv[3 * i + j] = inertia_inv[i, j]
    with nogil:
        for k in range(k_start, n):
            for i in range(3):
                xi[i] = xi_out[k, i]
                xbar[i] = t * xi[i]
                for j in range(3):
                    gk[3 * i + j] = g_out[k, i, j]
            if not in_domain(xbar, tau_kind):
                with gil:
                    return OUT_OF_DOMAIN, k
            # euler-arnold right-hand side I^-1((I xi) x xi), scaled by t
            matvec(I, xi, m)
            cross(m, xi, w)
            matvec(Iinv, w, ea)
            for i in range(3):
                ea[i] = t * ea[i]
            tau_matrix(xbar, tau_kind, R)
            matTvec(R, xi, adv)
            dtau_apply(xbar, ea, tau_kind, 0, dv)
            matmul(gk, R, gn)
            for i in range(3):
                xi_out[k + 1, i] = adv[i] + dv[i]
                for j in range(3):
                    g_out[k + 1, i, j] = gn[3 * i + j]
    return OK, n
