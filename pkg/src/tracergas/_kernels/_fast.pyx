# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled phase-space kernels; see _reference.py for the semantics."""

import numpy as np

from cython.parallel import prange
from libc.math cimport exp, cos, M_PI


cdef inline double _w(double xq, double pq,
                      double xa, double pa, double xb, double pb,
                      double c, double phi,
                      double inv_s2, double s2_h2, double inv_h,
                      double inv_pih) nogil:
    cdef double x_m = 0.5 * (xa + xb)
    cdef double p_m = 0.5 * (pa + pb)
    cdef double x_d = xa - xb
    cdef double p_d = pa - pb
    cdef double g_a = exp(-(xq - xa) * (xq - xa) * inv_s2 - s2_h2 * (pq - pa) * (pq - pa))
    cdef double g_b = exp(-(xq - xb) * (xq - xb) * inv_s2 - s2_h2 * (pq - pb) * (pq - pb))
    cdef double g_x = exp(-(xq - x_m) * (xq - x_m) * inv_s2 - s2_h2 * (pq - p_m) * (pq - p_m))
    cdef double arg = phi + 0.5 * (x_m * p_d - p_m * x_d) * inv_h \
        + x_d * (p_m - pq) * inv_h - p_d * (x_m - xq) * inv_h
    return (g_a + g_b + 2.0 * c * g_x * cos(arg)) * inv_pih


def wigner_on_points(xq, pq, double xa, double pa, double xb, double pb,
                     double c, double phi, double sigma, double hbar):
    cdef double[::1] xv = np.ascontiguousarray(xq, dtype=np.float64).ravel()
    cdef double[::1] pv = np.ascontiguousarray(pq, dtype=np.float64).ravel()
    out_arr = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double inv_s2 = 1.0 / (sigma * sigma)
    cdef double s2_h2 = (sigma * sigma) / (hbar * hbar)
    cdef double inv_h = 1.0 / hbar
    cdef double inv_pih = 1.0 / (M_PI * hbar)
    cdef Py_ssize_t i
    for i in prange(xv.shape[0], nogil=True, schedule="static"):
        out[i] = _w(xv[i], pv[i], xa, pa, xb, pb, c, phi,
                    inv_s2, s2_h2, inv_h, inv_pih)
    return out_arr.reshape(np.shape(xq))


def wigner_cats_at_point(double xq, double pq, xa, pa, xb, pb, c, phi,
                         double sigma, double hbar):
    cdef double[::1] xav = np.ascontiguousarray(xa, dtype=np.float64)
    cdef double[::1] pav = np.ascontiguousarray(pa, dtype=np.float64)
    cdef double[::1] xbv = np.ascontiguousarray(xb, dtype=np.float64)
    cdef double[::1] pbv = np.ascontiguousarray(pb, dtype=np.float64)
    cdef double[::1] cv = np.ascontiguousarray(c, dtype=np.float64)
    cdef double[::1] phiv = np.ascontiguousarray(phi, dtype=np.float64)
    out_arr = np.empty(xav.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double inv_s2 = 1.0 / (sigma * sigma)
    cdef double s2_h2 = (sigma * sigma) / (hbar * hbar)
    cdef double inv_h = 1.0 / hbar
    cdef double inv_pih = 1.0 / (M_PI * hbar)
    cdef Py_ssize_t k
    with nogil:
        for k in range(xav.shape[0]):
            out[k] = _w(xq, pq, xav[k], pav[k], xbv[k], pbv[k], cv[k], phiv[k],
                        inv_s2, s2_h2, inv_h, inv_pih)
    return out_arr


def wigner_mean_on_points(xq, pq, xa, pa, xb, pb, c, phi,
                          double sigma, double hbar):
    cdef double[::1] xv = np.ascontiguousarray(xq, dtype=np.float64).ravel()
    cdef double[::1] pv = np.ascontiguousarray(pq, dtype=np.float64).ravel()
    cdef double[::1] xav = np.ascontiguousarray(xa, dtype=np.float64)
    cdef double[::1] pav = np.ascontiguousarray(pa, dtype=np.float64)
    cdef double[::1] xbv = np.ascontiguousarray(xb, dtype=np.float64)
    cdef double[::1] pbv = np.ascontiguousarray(pb, dtype=np.float64)
    cdef double[::1] cv = np.ascontiguousarray(c, dtype=np.float64)
    cdef double[::1] phiv = np.ascontiguousarray(phi, dtype=np.float64)
    out_arr = np.zeros(xv.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double inv_s2 = 1.0 / (sigma * sigma)
    cdef double s2_h2 = (sigma * sigma) / (hbar * hbar)
    cdef double inv_h = 1.0 / hbar
    cdef double inv_pih = 1.0 / (M_PI * hbar)
    cdef Py_ssize_t i, k
    cdef Py_ssize_t n = xav.shape[0]
    cdef double acc
    for i in prange(xv.shape[0], nogil=True, schedule="static"):
        acc = 0.0
        for k in range(n):
            acc = acc + _w(xv[i], pv[i], xav[k], pav[k], xbv[k], pbv[k],
                           cv[k], phiv[k], inv_s2, s2_h2, inv_h, inv_pih)
        out[i] = acc / n
    return out_arr.reshape(np.shape(xq))
