# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled step kernel; mirrors _kernel_py.step_kernel operation for operation."""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, isfinite, pow, sqrt

cnp.import_array()

BACKEND = "compiled"


def step_kernel(double[::1] rho, double[::1] mom, double dx, double cfl,
                double dt_cap, double A, double B, double n, double alpha,
                double beta):
    """Advance (rho, mom) in place by one step; returns the dt taken.

    Same contract as the python kernel: 0.0 signals a collapsed step,
    B-dependent terms are skipped when B is zero.
    """
    cdef Py_ssize_t m = rho.shape[0]
    cdef Py_ssize_t i, il, ir
    cdef bint has_b = B > 0.0
    cdef double u, c2, p, smax = 0.0

    cdef cnp.ndarray[cnp.float64_t, ndim=1] s_arr = np.empty(m, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] fm_arr = np.empty(m, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] frho_arr = np.empty(m + 1, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] fmom_arr = np.empty(m + 1, dtype=np.float64)
    cdef double[::1] s = s_arr
    cdef double[::1] f_mom = fm_arr
    cdef double[::1] flux_rho = frho_arr
    cdef double[::1] flux_mom = fmom_arr

    for i in range(m):
        u = mom[i] / rho[i]
        c2 = A * n * pow(rho[i], n - 1.0)
        if has_b:
            c2 = c2 + alpha * B * pow(rho[i], -alpha - 1.0)
        s[i] = fabs(u) + sqrt(c2)
        if not isfinite(s[i]):
            return 0.0
        if s[i] > smax:
            smax = s[i]
        p = A * pow(rho[i], n)
        if has_b:
            p = p - B * pow(rho[i], -alpha)
        f_mom[i] = mom[i] * u + p

    if not isfinite(smax) or smax <= 0.0:
        return 0.0
    cdef double dt = cfl * dx / smax
    if dt > dt_cap:
        dt = dt_cap

    # interfaces 0..m with copied ghost cells (free outflow)
    cdef double a
    for i in range(m + 1):
        il = i - 1 if i > 0 else 0
        ir = i if i < m else m - 1
        a = s[il] if s[il] > s[ir] else s[ir]
        flux_rho[i] = 0.5 * (mom[il] + mom[ir]) - 0.5 * a * (rho[ir] - rho[il])
        flux_mom[i] = 0.5 * (f_mom[il] + f_mom[ir]) - 0.5 * a * (mom[ir] - mom[il])

    cdef double lam = dt / dx
    for i in range(m):
        rho[i] -= lam * (flux_rho[i + 1] - flux_rho[i])
        mom[i] -= lam * (flux_mom[i + 1] - flux_mom[i])
        mom[i] += beta * rho[i] * dt
    return dt
