# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel core: general-position covariant/contravariant
quadratures, the direct principal-value sum, and the maximal-function hull
sweep.  Mirrors affharm._kernels._pure operation for operation."""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp as cexp
from libc.math cimport fabs, pow

cnp.import_array()

KIND_SAMPLED = -1
KIND_CAUCHY_PLUS = 0
KIND_CAUCHY_MINUS = 1
KIND_POISSON = 2
KIND_CONJ_POISSON = 3
KIND_GAUSSIAN = 4
KIND_MEXICAN_HAT = 5
KIND_BOX = 6
KIND_CAUCHY_INTEGRAL = 7

cdef double PI = 3.141592653589793238462643383279502884

ctypedef double complex cplx


cdef inline cplx kernel_eval(int kind, double s, cplx[:] ks,
                             double kx0, double kdx, int nk) nogil:
    cdef cplx I = 1j
    cdef double t, frac
    cdef Py_ssize_t j
    if kind == 0:
        return 1.0 / (PI * I * (I - s))
    if kind == 1:
        return 1.0 / (PI * I * (I + s))
    if kind == 2:
        return (1.0 / PI) / (1.0 + s * s) + 0.0 * I
    if kind == 3:
        return (-(1.0 / PI) * s / (1.0 + s * s)) + 0.0 * I
    if kind == 4:
        return cexp(-s * s) + 0.0 * I
    if kind == 5:
        return (1.0 - s * s) * cexp(-0.5 * s * s) + 0.0 * I
    if kind == 6:
        if fabs(s) <= 1.0:
            return 0.5 + 0.0 * I
        return 0.0 + 0.0 * I
    if kind == 7:
        return 1.0 / (2.0 * PI * I * (s - I))
    # sampled kernel: linear interpolation, zero outside
    t = (s - kx0) / kdx
    if t < 0.0 or t > nk - 1:
        return 0.0 + 0.0 * I
    j = <Py_ssize_t> t
    if j == nk - 1:
        return ks[j]
    frac = t - j
    return ks[j] * (1.0 - frac) + ks[j + 1] * frac


def field_general(cplx[:] fw, double[:] x, double[:] a_axis, double[:] b_axis,
                  int kind, cplx[:] ks, double kx0, double kdx, double expo):
    cdef Py_ssize_t na = a_axis.shape[0], nb = b_axis.shape[0], n = x.shape[0]
    cdef Py_ssize_t nk = ks.shape[0]
    out_arr = np.empty((na, nb), dtype=np.complex128)
    cdef cplx[:, :] out = out_arr
    cdef Py_ssize_t l, i, j
    cdef double a, pref
    cdef cplx acc
    with nogil:
        for l in range(na):
            a = a_axis[l]
            pref = pow(a, expo)
            for i in range(nb):
                acc = 0
                for j in range(n):
                    acc = acc + fw[j] * kernel_eval(kind, (x[j] - b_axis[i]) / a,
                                                    ks, kx0, kdx, nk)
                out[l, i] = pref * acc
    return out_arr


def contra_general(cplx[:, :] uw, double[:] b_axis, double[:] a_axis,
                   cplx[:] scal, double[:] x_out,
                   int kind, cplx[:] ks, double kx0, double kdx):
    cdef Py_ssize_t na = a_axis.shape[0], nb = b_axis.shape[0]
    cdef Py_ssize_t n = x_out.shape[0], nk = ks.shape[0]
    out_arr = np.zeros(n, dtype=np.complex128)
    cdef cplx[:] out = out_arr
    cdef Py_ssize_t l, i, j
    cdef double a
    cdef cplx acc
    with nogil:
        for l in range(na):
            a = a_axis[l]
            for i in range(n):
                acc = 0
                for j in range(nb):
                    acc = acc + uw[l, j] * kernel_eval(kind, (x_out[i] - b_axis[j]) / a,
                                                       ks, kx0, kdx, nk)
                out[i] = out[i] + scal[l] * acc
    return out_arr


def hilbert_direct(cplx[:] fvals, double dx):
    cdef Py_ssize_t n = fvals.shape[0]
    out_arr = np.empty(n, dtype=np.complex128)
    cdef cplx[:] out = out_arr
    cdef Py_ssize_t i, j
    cdef cplx acc
    cdef double w
    with nogil:
        for i in range(n):
            acc = 0
            for j in range(n):
                if j != i:
                    w = dx
                    if j == 0 or j == n - 1:
                        w = 0.5 * dx
                    acc = acc + w * fvals[j] / ((i - j) * dx)
            out[i] = acc / PI
    return out_arr


cdef void _one_sided_sweep(double[:] yc, double[:] xc, long[:] order,
                           long[:] best, long[:] hull) nogil:
    cdef Py_ssize_t n = yc.shape[0]
    cdef Py_ssize_t hlen = 0, k, lo, hi, mid
    cdef long new, q, h1, h2, i1, i2
    cdef double lhs, rhs, n1, d1, n2, d2
    for k in range(1, n):
        new = order[k - 1]
        while hlen >= 2:
            h2 = hull[hlen - 2]
            h1 = hull[hlen - 1]
            lhs = (yc[h1] - yc[h2]) * (xc[new] - xc[h1])
            rhs = (yc[new] - yc[h1]) * (xc[h1] - xc[h2])
            if lhs >= rhs:
                hlen -= 1
            else:
                break
        hull[hlen] = new
        hlen += 1

        q = order[k]
        lo = 0
        hi = hlen - 1
        while lo < hi:
            mid = (lo + hi) // 2
            i1 = hull[mid]
            i2 = hull[mid + 1]
            n1 = yc[q] - yc[i1]
            d1 = xc[q] - xc[i1]
            n2 = yc[q] - yc[i2]
            d2 = xc[q] - xc[i2]
            if n2 * d1 > n1 * d2:
                lo = mid + 1
            else:
                hi = mid
        best[q] = hull[lo]


def hl_maximal(double[:] T):
    cdef Py_ssize_t n = T.shape[0]
    out_arr = np.full(n, -np.inf)
    cdef double[:] out = out_arr

    idx_arr = np.arange(n, dtype=float)
    neg_T_arr = np.negative(np.asarray(T))
    neg_idx_arr = np.negative(idx_arr)
    fwd_arr = np.arange(n, dtype=np.int64)
    rev_arr = np.arange(n - 1, -1, -1, dtype=np.int64)
    left_arr = np.full(n, -1, dtype=np.int64)
    right_arr = np.full(n, -1, dtype=np.int64)
    hull_arr = np.empty(n, dtype=np.int64)

    cdef double[:] idx = idx_arr, neg_T = neg_T_arr, neg_idx = neg_idx_arr
    cdef long[:] fwd = fwd_arr, rev = rev_arr
    cdef long[:] left = left_arr, right = right_arr, hull = hull_arr
    cdef Py_ssize_t t
    cdef long i, j
    cdef double v

    with nogil:
        _one_sided_sweep(T, idx, fwd, left, hull)
        _one_sided_sweep(neg_T, neg_idx, rev, right, hull)
        for t in range(n):
            i = left[t]
            if i >= 0:
                out[t] = (T[t] - T[i]) / (2.0 * (t - i))
            j = right[t]
            if j >= 0:
                v = (T[j] - T[t]) / (2.0 * (j - t))
                if v > out[t]:
                    out[t] = v
    return out_arr
