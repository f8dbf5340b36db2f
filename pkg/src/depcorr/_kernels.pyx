# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops: Gaussian Nadaraya-Watson smoothing, leave-one-out
cross-validation over a bandwidth grid, and the 2F1 power series on a grid.

Every function here has a numpy twin in ``_kernels_py`` with the same
signature and semantics. All loops run without the GIL so callers can fan
work out over threads.
"""
import numpy as np

from libc.math cimport INFINITY, exp, fabs

# LOO denominators below this count as "no neighbours in range".
cdef double TINY = 1e-300


def nw_fitted(const double[::1] x, const double[::1] y, double h):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i, j
    cdef double inv = 0.5 / (h * h)
    cdef double d, w
    num_arr = np.empty(n, dtype=np.float64)
    den_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] num = num_arr
    cdef double[::1] den = den_arr
    with nogil:
        for i in range(n):
            num[i] = y[i]
            den[i] = 1.0
        for i in range(n):
            for j in range(i + 1, n):
                d = x[i] - x[j]
                w = exp(-(d * d) * inv)
                num[i] += w * y[j]
                den[i] += w
                num[j] += w * y[i]
                den[j] += w
        for i in range(n):
            num[i] = num[i] / den[i]
    return num_arr


def loo_cv_profile(const double[::1] x, const double[::1] y, const double[::1] hs):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t m = hs.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double inv, d, w, resid, total
    cdef bint degenerate
    out_arr = np.empty(m, dtype=np.float64)
    d2_arr = np.empty((n, n), dtype=np.float64)
    num_arr = np.empty(n, dtype=np.float64)
    den_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double[:, ::1] d2 = d2_arr
    cdef double[::1] num = num_arr
    cdef double[::1] den = den_arr
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                d = x[i] - x[j]
                d2[i, j] = d * d
        for k in range(m):
            inv = 0.5 / (hs[k] * hs[k])
            for i in range(n):
                num[i] = 0.0
                den[i] = 0.0
            for i in range(n):
                for j in range(i + 1, n):
                    w = exp(-d2[i, j] * inv)
                    num[i] += w * y[j]
                    den[i] += w
                    num[j] += w * y[i]
                    den[j] += w
            degenerate = False
            total = 0.0
            for i in range(n):
                if den[i] < TINY:
                    degenerate = True
                    break
                resid = y[i] - num[i] / den[i]
                total += resid * resid
            if degenerate:
                out[k] = INFINITY
            else:
                out[k] = total / n
    return out_arr


def hyp2f1_series(double a, double b, double c, const double[::1] z,
                  double tol, long max_terms):
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t i
    cdef long k
    cdef double term, s, zi
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    with nogil:
        for i in range(n):
            zi = z[i]
            term = 1.0
            s = 1.0
            for k in range(max_terms):
                term = term * (a + k) * (b + k) / ((c + k) * (k + 1.0)) * zi
                s = s + term
                if fabs(term) < tol:
                    break
            out[i] = s
    return out_arr
