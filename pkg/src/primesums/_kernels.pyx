# cython: language_level=3
"""Compiled inner loops. Signatures mirror :mod:`primesums._kernels_py`."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


def index_table(i64 p, i64 g):
    cdef cnp.ndarray[i64, ndim=1] ind = np.full(p, -1, dtype=np.int64)
    cdef i64[::1] iv = ind
    cdef i64 a, v = 1
    with nogil:
        for a in range(p - 1):
            iv[v] = a
            v = (v * g) % p
    return ind


def power_table(i64 p, i64 k):
    cdef cnp.ndarray[i64, ndim=1] out = np.empty(p, dtype=np.int64)
    cdef i64[::1] ov = out
    cdef i64 x, b, e, r
    with nogil:
        for x in range(p):
            r = 1 % p
            b = x
            e = k
            while e > 0:
                if e & 1:
                    r = (r * b) % p
                b = (b * b) % p
                e >>= 1
            ov[x] = r
    return out


def weighted_exp_sums(const double[::1] cos_t, const double[::1] sin_t, const i64[::1] pts,
                      const double[::1] w_re, const double[::1] w_im, const i64[::1] svals):
    """For each s: sum_j w[j] * exp(2 pi i s pts[j] / p), Kahan-compensated, ascending j."""
    cdef i64 p = cos_t.shape[0]
    cdef Py_ssize_t m = pts.shape[0], ns = svals.shape[0]
    cdef cnp.ndarray[double, ndim=1] out_re = np.empty(ns)
    cdef cnp.ndarray[double, ndim=1] out_im = np.empty(ns)
    cdef double[::1] ore = out_re, oim = out_im
    cdef Py_ssize_t i, j
    cdef i64 s, idx
    cdef double c, sn, vr, vi, sr, si, cr, ci, y, t
    with nogil:
        for i in range(ns):
            s = svals[i] % p
            sr = 0.0
            si = 0.0
            cr = 0.0
            ci = 0.0
            for j in range(m):
                idx = (s * pts[j]) % p
                c = cos_t[idx]
                sn = sin_t[idx]
                vr = w_re[j] * c - w_im[j] * sn
                vi = w_re[j] * sn + w_im[j] * c
                y = vr - cr
                t = sr + y
                cr = (t - sr) - y
                sr = t
                y = vi - ci
                t = si + y
                ci = (t - si) - y
                si = t
            ore[i] = sr
            oim[i] = si
    return out_re, out_im
