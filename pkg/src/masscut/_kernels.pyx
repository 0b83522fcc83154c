# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# Compiled hot kernels; semantics match _kernels_py (bit i of an orthant
# index is set when the point lies strictly on the positive side of plane i).

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, fabs

cnp.import_array()


cdef inline double _sigmoid(double t) nogil:
    cdef double e
    if t >= 0.0:
        return 1.0 / (1.0 + exp(-t))
    e = exp(t)
    return e / (1.0 + e)


def orthant_accumulate(const double[:, ::1] points, const double[::1] weights,
                       const double[:, ::1] normals, const double[::1] offsets,
                       double tau):
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t d = points.shape[1]
    cdef Py_ssize_t h = normals.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] entries = np.zeros(1 << h, dtype=np.float64)
    cdef double[::1] ev = entries
    cdef double boundary = 0.0
    cdef Py_ssize_t p, i, j, idx
    cdef double s
    cdef bint on_plane

    for p in range(n):
        idx = 0
        on_plane = False
        for i in range(h):
            s = -offsets[i]
            for j in range(d):
                s += normals[i, j] * points[p, j]
            if fabs(s) <= tau:
                on_plane = True
                break
            if s > 0.0:
                idx |= 1 << i
        if on_plane:
            boundary += weights[p]
        else:
            ev[idx] += weights[p]
    return entries, boundary


def smoothed_orthant_measures(const double[:, ::1] points, const double[::1] weights,
                              const double[:, ::1] normals, const double[::1] offsets,
                              double beta):
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t d = points.shape[1]
    cdef Py_ssize_t h = normals.shape[0]
    cdef Py_ssize_t size = 1 << h
    cdef cnp.ndarray[cnp.float64_t, ndim=1] mu = np.zeros(size, dtype=np.float64)
    cdef double[::1] mv = mu
    cdef cnp.ndarray[cnp.float64_t, ndim=1] scratch = np.empty(size, dtype=np.float64)
    cdef double[::1] acc = scratch
    cdef Py_ssize_t p, i, j, width
    cdef double s, g, a

    for p in range(n):
        acc[0] = weights[p]
        width = 1
        for i in range(h):
            s = -offsets[i]
            for j in range(d):
                s += normals[i, j] * points[p, j]
            g = _sigmoid(s / beta)
            for j in range(width):
                a = acc[j]
                acc[j] = a * (1.0 - g)
                acc[j + width] = a * g
            width <<= 1
        for j in range(size):
            mv[j] += acc[j]
    return mu
