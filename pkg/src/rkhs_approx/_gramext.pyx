# Compiled pairwise kernel evaluation: the hot loops behind Gram assembly.
# Mirrors the API of _gram_numpy; kept loop-based so no N*M*d intermediate
# is ever materialized.

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, sqrt

cnp.import_array()


def gaussian_cross(const double[:, ::1] X, const double[:, ::1] Y, double gamma):
    cdef Py_ssize_t n = X.shape[0], m = Y.shape[0], d = X.shape[1]
    out = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, j, k
    cdef double acc, diff
    for i in range(n):
        for j in range(m):
            acc = 0.0
            for k in range(d):
                diff = X[i, k] - Y[j, k]
                acc += diff * diff
            o[i, j] = exp(-gamma * acc)
    return out


def laplacian_cross(const double[:, ::1] X, const double[:, ::1] Y, double gamma):
    cdef Py_ssize_t n = X.shape[0], m = Y.shape[0], d = X.shape[1]
    out = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, j, k
    cdef double acc, diff
    for i in range(n):
        for j in range(m):
            acc = 0.0
            for k in range(d):
                diff = X[i, k] - Y[j, k]
                acc += diff * diff
            o[i, j] = exp(-gamma * sqrt(acc))
    return out


def polynomial_cross(const double[:, ::1] X, const double[:, ::1] Y,
                     long degree, double offset):
    cdef Py_ssize_t n = X.shape[0], m = Y.shape[0], d = X.shape[1]
    out = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, j, k
    cdef long p
    cdef double acc, val
    for i in range(n):
        for j in range(m):
            acc = offset
            for k in range(d):
                acc += X[i, k] * Y[j, k]
            val = 1.0
            for p in range(degree):
                val *= acc
            o[i, j] = val
    return out


def szego_cross(const double complex[::1] Z, const double complex[::1] W):
    cdef Py_ssize_t n = Z.shape[0], m = W.shape[0]
    out = np.empty((n, m), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(m):
            o[i, j] = 1.0 / (1.0 - W[j].conjugate() * Z[i])
    return out


def bergman_cross(const double complex[::1] Z, const double complex[::1] W):
    cdef Py_ssize_t n = Z.shape[0], m = W.shape[0]
    out = np.empty((n, m), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef Py_ssize_t i, j
    cdef double complex t
    for i in range(n):
        for j in range(m):
            t = 1.0 - W[j].conjugate() * Z[i]
            o[i, j] = 1.0 / (t * t)
    return out
