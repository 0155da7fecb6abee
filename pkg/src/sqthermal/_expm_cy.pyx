# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: initializedcheck=False
# cython: cdivision=True
"""Compiled scaling-and-squaring matrix exponential.

Same diagonal Pade scheme as the numpy fallback in ``_expm_py`` (orders
3/5/7/9/13 with the Higham 2005 thresholds), with the matrix products and
the final solve routed straight to BLAS/LAPACK and the polynomial
assembly done in fused in-place loops instead of numpy temporaries.

The two implementations must stay in lockstep so that backend choice
never changes results beyond rounding error.
"""

import math

import numpy as np

from scipy.linalg.cython_blas cimport zgemm
from scipy.linalg.cython_lapack cimport zgesv

ctypedef double complex zcomplex

cdef char _TRANS_N = b"N"[0]

# 1-norm thresholds theta_m for Pade orders 3, 5, 7, 9, 13 (Higham 2005).
cdef double _THETA_3 = 1.495585217958292e-2
cdef double _THETA_5 = 2.539398330063230e-1
cdef double _THETA_7 = 9.504178996162932e-1
cdef double _THETA_9 = 2.097847961257068
cdef double _THETA_13 = 5.371920351148152

cdef double[14] _B13
_B13 = [64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0, 129060195264000.0, 10559470521600.0,
        670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
        960960.0, 16380.0, 182.0, 1.0]
cdef double[10] _B9
_B9 = [17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
       2162160.0, 110880.0, 3960.0, 90.0, 1.0]
cdef double[8] _B7
_B7 = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0]
cdef double[6] _B5
_B5 = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0]
cdef double[4] _B3
_B3 = [120.0, 60.0, 12.0, 1.0]


cdef void _gemm(zcomplex[::1, :] a, zcomplex[::1, :] b, zcomplex[::1, :] out) noexcept nogil:
    cdef int n = <int> a.shape[0]
    cdef zcomplex one = 1.0
    cdef zcomplex zero = 0.0
    zgemm(&_TRANS_N, &_TRANS_N, &n, &n, &n, &one,
          &a[0, 0], &n, &b[0, 0], &n, &zero, &out[0, 0], &n)


cdef void _fill_scaled(zcomplex[::1, :] out, double c, zcomplex[::1, :] m) noexcept nogil:
    cdef Py_ssize_t i, j, n = out.shape[0]
    for j in range(n):
        for i in range(n):
            out[i, j] = c * m[i, j]


cdef void _accum_scaled(zcomplex[::1, :] out, double c, zcomplex[::1, :] m) noexcept nogil:
    cdef Py_ssize_t i, j, n = out.shape[0]
    for j in range(n):
        for i in range(n):
            out[i, j] = out[i, j] + c * m[i, j]


cdef void _accum_diag(zcomplex[::1, :] out, double c) noexcept nogil:
    cdef Py_ssize_t i, n = out.shape[0]
    for i in range(n):
        out[i, i] = out[i, i] + c


cdef void _scale_inplace(zcomplex[::1, :] a, double c) noexcept nogil:
    cdef Py_ssize_t i, j, n = a.shape[0]
    for j in range(n):
        for i in range(n):
            a[i, j] = c * a[i, j]


cdef void _split(zcomplex[::1, :] u, zcomplex[::1, :] v,
                 zcomplex[::1, :] p, zcomplex[::1, :] q) noexcept nogil:
    # p = v - u, q = v + u
    cdef Py_ssize_t i, j, n = u.shape[0]
    for j in range(n):
        for i in range(n):
            p[i, j] = v[i, j] - u[i, j]
            q[i, j] = v[i, j] + u[i, j]


def expm(a):
    """Matrix exponential of a square complex matrix."""
    a_arr = np.array(a, dtype=np.complex128, order="F", copy=True)
    if a_arr.ndim != 2 or a_arr.shape[0] != a_arr.shape[1]:
        raise ValueError(f"expm expects a square matrix, got shape {a_arr.shape}")
    cdef Py_ssize_t n = a_arr.shape[0]
    if n == 0:
        return a_arr

    cdef double norm = float(np.abs(a_arr).sum(axis=0).max())
    cdef int order = 13
    cdef int scale = 0
    if norm <= _THETA_3:
        order = 3
    elif norm <= _THETA_5:
        order = 5
    elif norm <= _THETA_7:
        order = 7
    elif norm <= _THETA_9:
        order = 9
    elif norm > _THETA_13:
        scale = max(0, int(math.ceil(math.log2(norm / _THETA_13))))

    cdef zcomplex[::1, :] A = a_arr
    if scale > 0:
        _scale_inplace(A, 2.0 ** -scale)

    def _buf():
        return np.empty((n, n), dtype=np.complex128, order="F")

    a2_arr = _buf()
    t1_arr = _buf()
    u_arr = _buf()
    v_arr = _buf()
    cdef zcomplex[::1, :] A2 = a2_arr
    cdef zcomplex[::1, :] T1 = t1_arr
    cdef zcomplex[::1, :] U = u_arr
    cdef zcomplex[::1, :] V = v_arr
    cdef zcomplex[::1, :] A4
    cdef zcomplex[::1, :] A6
    cdef zcomplex[::1, :] A8
    cdef zcomplex[::1, :] T2

    _gemm(A, A, A2)
    if order == 3:
        _fill_scaled(T1, _B3[3], A2)
        _accum_diag(T1, _B3[1])
        _gemm(A, T1, U)
        _fill_scaled(V, _B3[2], A2)
        _accum_diag(V, _B3[0])
    elif order == 5:
        a4_arr = _buf()
        A4 = a4_arr
        _gemm(A2, A2, A4)
        _fill_scaled(T1, _B5[5], A4)
        _accum_scaled(T1, _B5[3], A2)
        _accum_diag(T1, _B5[1])
        _gemm(A, T1, U)
        _fill_scaled(V, _B5[4], A4)
        _accum_scaled(V, _B5[2], A2)
        _accum_diag(V, _B5[0])
    elif order == 7:
        a4_arr = _buf()
        a6_arr = _buf()
        A4 = a4_arr
        A6 = a6_arr
        _gemm(A2, A2, A4)
        _gemm(A2, A4, A6)
        _fill_scaled(T1, _B7[7], A6)
        _accum_scaled(T1, _B7[5], A4)
        _accum_scaled(T1, _B7[3], A2)
        _accum_diag(T1, _B7[1])
        _gemm(A, T1, U)
        _fill_scaled(V, _B7[6], A6)
        _accum_scaled(V, _B7[4], A4)
        _accum_scaled(V, _B7[2], A2)
        _accum_diag(V, _B7[0])
    elif order == 9:
        a4_arr = _buf()
        a6_arr = _buf()
        a8_arr = _buf()
        A4 = a4_arr
        A6 = a6_arr
        A8 = a8_arr
        _gemm(A2, A2, A4)
        _gemm(A2, A4, A6)
        _gemm(A6, A2, A8)
        _fill_scaled(T1, _B9[9], A8)
        _accum_scaled(T1, _B9[7], A6)
        _accum_scaled(T1, _B9[5], A4)
        _accum_scaled(T1, _B9[3], A2)
        _accum_diag(T1, _B9[1])
        _gemm(A, T1, U)
        _fill_scaled(V, _B9[8], A8)
        _accum_scaled(V, _B9[6], A6)
        _accum_scaled(V, _B9[4], A4)
        _accum_scaled(V, _B9[2], A2)
        _accum_diag(V, _B9[0])
    else:
        a4_arr = _buf()
        a6_arr = _buf()
        t2_arr = _buf()
        A4 = a4_arr
        A6 = a6_arr
        T2 = t2_arr
        _gemm(A2, A2, A4)
        _gemm(A2, A4, A6)
        # U = A @ (A6 @ (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
        _fill_scaled(T1, _B13[13], A6)
        _accum_scaled(T1, _B13[11], A4)
        _accum_scaled(T1, _B13[9], A2)
        _gemm(A6, T1, T2)
        _accum_scaled(T2, _B13[7], A6)
        _accum_scaled(T2, _B13[5], A4)
        _accum_scaled(T2, _B13[3], A2)
        _accum_diag(T2, _B13[1])
        _gemm(A, T2, U)
        # V = A6 @ (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
        _fill_scaled(T1, _B13[12], A6)
        _accum_scaled(T1, _B13[10], A4)
        _accum_scaled(T1, _B13[8], A2)
        _gemm(A6, T1, V)
        _accum_scaled(V, _B13[6], A6)
        _accum_scaled(V, _B13[4], A4)
        _accum_scaled(V, _B13[2], A2)
        _accum_diag(V, _B13[0])

    # Solve (V - U) X = (V + U); zgesv overwrites the right-hand side.
    p_arr = _buf()
    q_arr = _buf()
    cdef zcomplex[::1, :] P = p_arr
    cdef zcomplex[::1, :] Q = q_arr
    _split(U, V, P, Q)
    ipiv_arr = np.empty(n, dtype=np.intc)
    cdef int[::1] ipiv = ipiv_arr
    cdef int info = 0
    cdef int ni = <int> n
    zgesv(&ni, &ni, &P[0, 0], &ni, &ipiv[0], &Q[0, 0], &ni, &info)
    if info != 0:
        raise np.linalg.LinAlgError(f"Pade denominator solve failed (zgesv info={info})")

    x_arr = q_arr
    t_arr = p_arr  # reuse as the squaring scratch buffer
    cdef zcomplex[::1, :] X
    cdef zcomplex[::1, :] T
    cdef int k
    for k in range(scale):
        X = x_arr
        T = t_arr
        _gemm(X, X, T)
        x_arr, t_arr = t_arr, x_arr
    return x_arr
