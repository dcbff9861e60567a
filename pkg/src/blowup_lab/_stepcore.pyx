# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner kernels for the finite-volume stepper.

Cell-centered layout on a uniform grid: n cells, n+1 faces, zero flux on
the two boundary faces. Face flux is |g|^{p-2} g of the face gradient g;
p == 2 short-circuits the pow call. All reductions run in fixed index
order so results are reproducible bit for bit.
"""

from libc.math cimport fabs, pow, sqrt, isfinite


cdef inline double _flux(double g, double p) noexcept nogil:
    if p == 2.0:
        return g
    if p == 3.0:
        return fabs(g) * g
    if p == 4.0:
        return g * g * g
    return pow(fabs(g), p - 2.0) * g


cpdef void plap_apply(const double[::1] u, double dx, double p, double[::1] out) noexcept:
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t i
    cdef double inv = 1.0 / dx
    cdef double fprev = 0.0
    cdef double fl
    for i in range(n - 1):
        fl = _flux((u[i + 1] - u[i]) * inv, p)
        out[i] = (fl - fprev) * inv
        fprev = fl
    out[n - 1] = (0.0 - fprev) * inv


cpdef void rhs_into(const double[::1] u, const double[::1] fu, double dx, double p,
                    double[::1] out) noexcept:
    """out = div flux + (fu - mean(fu)); mean over cells, fixed order."""
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t i
    cdef double s = 0.0
    for i in range(n):
        s += fu[i]
    cdef double mfu = s / n
    cdef double inv = 1.0 / dx
    cdef double fprev = 0.0
    cdef double fl
    for i in range(n - 1):
        fl = _flux((u[i + 1] - u[i]) * inv, p)
        out[i] = (fl - fprev) * inv + (fu[i] - mfu)
        fprev = fl
    out[n - 1] = (0.0 - fprev) * inv + (fu[n - 1] - mfu)


cpdef void euler_step_into(const double[::1] u, const double[::1] fu, double dx, double p,
                           double dt, double[::1] out) noexcept:
    """out = u + dt * rhs(u); identical rhs expression to rhs_into."""
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t i
    cdef double s = 0.0
    for i in range(n):
        s += fu[i]
    cdef double mfu = s / n
    cdef double inv = 1.0 / dx
    cdef double fprev = 0.0
    cdef double fl
    for i in range(n - 1):
        fl = _flux((u[i + 1] - u[i]) * inv, p)
        out[i] = u[i] + dt * ((fl - fprev) * inv + (fu[i] - mfu))
        fprev = fl
    out[n - 1] = u[n - 1] + dt * ((0.0 - fprev) * inv + (fu[n - 1] - mfu))


cpdef double max_abs_face_grad(const double[::1] u, double dx) noexcept:
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t i
    cdef double inv = 1.0 / dx
    cdef double m = 0.0
    cdef double g
    for i in range(n - 1):
        g = fabs((u[i + 1] - u[i]) * inv)
        if g > m:
            m = g
    return m


cpdef double grad_p_norm(const double[::1] u, double dx, double p) noexcept:
    """Sum over interior faces of |g|^p * dx (boundary faces carry 0)."""
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t i
    cdef double inv = 1.0 / dx
    cdef double s = 0.0
    cdef double g
    if p == 2.0:
        for i in range(n - 1):
            g = (u[i + 1] - u[i]) * inv
            s += g * g
    elif p == 3.0:
        for i in range(n - 1):
            g = (u[i + 1] - u[i]) * inv
            s += fabs(g) * g * g
    elif p == 4.0:
        for i in range(n - 1):
            g = (u[i + 1] - u[i]) * inv
            g = g * g
            s += g * g
    else:
        for i in range(n - 1):
            s += pow(fabs((u[i + 1] - u[i]) * inv), p)
    return s * dx


cpdef tuple field_stats(const double[::1] u, double dx):
    """(integral, l2 norm, sup norm) with cell-measure quadrature."""
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t i
    cdef double s = 0.0
    cdef double s2 = 0.0
    cdef double m = 0.0
    cdef double v
    for i in range(n):
        v = u[i]
        s += v
        s2 += v * v
        if fabs(v) > m:
            m = fabs(v)
    return (s * dx, sqrt(s2 * dx), m)


cpdef double max_abs_diff(const double[::1] a, const double[::1] b) noexcept:
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i
    cdef double m = 0.0
    cdef double d
    for i in range(n):
        d = fabs(a[i] - b[i])
        if d > m:
            m = d
    return m


cpdef double diff_l2sq(const double[::1] a, const double[::1] b, double inv_dt,
                       double dx) noexcept:
    """|| (a - b) * inv_dt ||_2^2 with cell measure dx."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i
    cdef double s = 0.0
    cdef double d
    for i in range(n):
        d = (a[i] - b[i]) * inv_dt
        s += d * d
    return s * dx


cpdef bint all_finite(const double[::1] u) noexcept:
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t i
    for i in range(n):
        if not isfinite(u[i]):
            return False
    return True
