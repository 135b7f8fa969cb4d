# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the numerical kernels.

Same contract as _pykernels. All reductions use Neumaier compensated
accumulation and a fixed loop order, so results are deterministic and match
the fsum-based fallback to well below the 1e-12 tolerances. Callers pass
C-contiguous float64 arrays (the dispatch layer coerces).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


cdef inline void _acc(double v, double* s, double* c) noexcept nogil:
    # Neumaier update: s running sum, c running compensation.
    cdef double t = s[0] + v
    if fabs(s[0]) >= fabs(v):
        c[0] += (s[0] - t) + v
    else:
        c[0] += (v - t) + s[0]
    s[0] = t


def sum_all(const double[::1] v):
    cdef double s = 0.0, c = 0.0
    cdef Py_ssize_t i
    for i in range(v.shape[0]):
        _acc(v[i], &s, &c)
    return s + c


def row_sums(const double[:, ::1] m):
    cdef Py_ssize_t n = m.shape[0], p = m.shape[1], i, j
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double s, c
    for i in range(n):
        s = 0.0
        c = 0.0
        for j in range(p):
            _acc(m[i, j], &s, &c)
        o[i] = s + c
    return out


def tv_matrix(const double[:, ::1] q):
    cdef Py_ssize_t n = q.shape[0], m = q.shape[1], i, j, t
    out = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef double s, c, d
    for i in range(n):
        for j in range(i + 1, n):
            s = 0.0
            c = 0.0
            for t in range(m):
                _acc(fabs(q[i, t] - q[j, t]), &s, &c)
            d = 0.5 * (s + c)
            o[i, j] = d
            o[j, i] = d
    return out


def euclidean_matrix(const double[:, ::1] v):
    cdef Py_ssize_t n = v.shape[0], d = v.shape[1], i, j, t
    out = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef double s, diff, r
    for i in range(n):
        for j in range(i + 1, n):
            s = 0.0
            for t in range(d):
                diff = v[i, t] - v[j, t]
                s += diff * diff
            r = sqrt(s)
            o[i, j] = r
            o[j, i] = r
    return out


def normalize_edges(const double[:, ::1] m):
    cdef Py_ssize_t n = m.shape[0], i, j
    cdef double s = 0.0, c = 0.0, t, half
    for i in range(n):
        for j in range(i, n):
            _acc(m[i, j], &s, &c)
    t = s + c
    out = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    if t <= 0.0:
        return out, t
    half = 2.0 * t
    for i in range(n):
        for j in range(n):
            if i == j:
                o[i, j] = m[i, j] / t
            else:
                o[i, j] = m[i, j] / half
    return out, t


def scalar_terms(const double[:, ::1] am, const double[::1] kv, const double[::1] xv):
    cdef Py_ssize_t n = am.shape[0], i, j
    cdef double s = 0.0, c = 0.0, xbar, cov, var

    for i in range(n):
        _acc(kv[i] * xv[i], &s, &c)
    xbar = s + c

    cen = np.empty(n, dtype=np.float64)
    cdef double[::1] cv = cen
    for i in range(n):
        cv[i] = xv[i] - xbar

    s = 0.0
    c = 0.0
    for i in range(n):
        for j in range(n):
            _acc(am[i, j] * cv[i] * cv[j], &s, &c)
    cov = s + c

    s = 0.0
    c = 0.0
    for i in range(n):
        _acc(kv[i] * cv[i] * cv[i], &s, &c)
    var = s + c
    return xbar, cov, var


def f1_f2(const double[:, ::1] am, const double[::1] kv, const double[:, ::1] bm):
    cdef Py_ssize_t n = am.shape[0], i, j, l
    cdef double s, c, acc

    # two O(n^3) products: m2 = B.A.B; inner loops are plain ordered sums,
    # final reductions are compensated.
    m1 = np.empty((n, n), dtype=np.float64)
    m2 = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] m1v = m1
    cdef double[:, ::1] m2v = m2
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for l in range(n):
                acc += bm[i, l] * am[l, j]
            m1v[i, j] = acc
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for l in range(n):
                acc += m1v[i, l] * bm[l, j]
            m2v[i, j] = acc

    cdef double s1, s2, s3, s4, dmean, f1, f2
    s = 0.0
    c = 0.0
    for i in range(n):
        for j in range(n):
            _acc(am[i, j] * m2v[i, j], &s, &c)
    s1 = s + c

    rowavg = np.empty(n, dtype=np.float64)
    cdef double[::1] rv = rowavg
    for i in range(n):
        s = 0.0
        c = 0.0
        for j in range(n):
            _acc(kv[j] * bm[i, j], &s, &c)
        rv[i] = s + c

    s = 0.0
    c = 0.0
    for i in range(n):
        for j in range(n):
            _acc(am[i, j] * rv[i] * rv[j], &s, &c)
    s2 = s + c

    s = 0.0
    c = 0.0
    for i in range(n):
        _acc(kv[i] * rv[i], &s, &c)
    dmean = s + c

    s = 0.0
    c = 0.0
    for i in range(n):
        for j in range(n):
            _acc(kv[i] * kv[j] * bm[i, j] * bm[i, j], &s, &c)
    s3 = s + c

    s = 0.0
    c = 0.0
    for i in range(n):
        _acc(kv[i] * rv[i] * rv[i], &s, &c)
    s4 = s + c

    f1 = s1 - 2.0 * s2 + dmean * dmean
    f2 = s3 - 2.0 * s4 + dmean * dmean
    return f1, f2
