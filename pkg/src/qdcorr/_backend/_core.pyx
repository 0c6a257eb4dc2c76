# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Cython implementation of the hot numerical kernels.

Matches qdcorr._backend._py operation for operation; see the package
docstring of qdcorr._backend for the interface contract.
"""

import numpy as np

cimport cython
from libc.math cimport cos, log, sin, sqrt

NAME = "cython"

ctypedef double complex cplx

cdef double _LN2 = log(2.0)
cdef double _P_FLOOR = 1e-14


cdef void _matmul(const cplx[:, ::1] a, const cplx[:, ::1] b,
                  cplx[:, ::1] out, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef cplx acc
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = acc + a[i, k] * b[k, j]
            out[i, j] = acc


cdef void _rhs(const cplx[:, ::1] m, const cplx[:, ::1] md,
               const cplx[:, :, ::1] jumps, const cplx[:, :, ::1] jumps_d,
               const cplx[:, ::1] r, cplx[:, ::1] t1, cplx[:, ::1] t2,
               cplx[:, ::1] out, Py_ssize_t n) noexcept nogil:
    # out = m r + r md + sum_k jumps[k] r jumps_d[k]
    cdef Py_ssize_t i, j, k
    _matmul(m, r, out, n)
    _matmul(r, md, t1, n)
    for i in range(n):
        for j in range(n):
            out[i, j] = out[i, j] + t1[i, j]
    for k in range(jumps.shape[0]):
        _matmul(jumps[k], r, t1, n)
        _matmul(t1, jumps_d[k], t2, n)
        for i in range(n):
            for j in range(n):
                out[i, j] = out[i, j] + t2[i, j]


def rk4_lindblad(rho, mmat, jumps, double h, Py_ssize_t nsub):
    """Advance `nsub` fixed RK4 steps of drho/dt = M rho + rho M^dag + sum_k A_k rho A_k^dag.

    `jumps` is a (k, n, n) complex array (k may be 0).  Returns the new
    density matrix; the input is not modified.
    """
    cdef Py_ssize_t n = rho.shape[0]
    r_arr = np.array(rho, dtype=np.complex128, order="C")
    m_arr = np.ascontiguousarray(mmat, dtype=np.complex128)
    md_arr = np.ascontiguousarray(np.conj(mmat).T, dtype=np.complex128)
    j_arr = np.ascontiguousarray(jumps, dtype=np.complex128)
    jd_arr = np.ascontiguousarray(np.conj(jumps).transpose(0, 2, 1),
                                  dtype=np.complex128)
    k1_arr = np.empty((n, n), dtype=np.complex128)
    k2_arr = np.empty((n, n), dtype=np.complex128)
    k3_arr = np.empty((n, n), dtype=np.complex128)
    k4_arr = np.empty((n, n), dtype=np.complex128)
    w_arr = np.empty((n, n), dtype=np.complex128)
    t1_arr = np.empty((n, n), dtype=np.complex128)
    t2_arr = np.empty((n, n), dtype=np.complex128)

    cdef cplx[:, ::1] r = r_arr, m = m_arr, md = md_arr
    cdef cplx[:, ::1] k1 = k1_arr, k2 = k2_arr, k3 = k3_arr, k4 = k4_arr
    cdef cplx[:, ::1] w = w_arr, t1 = t1_arr, t2 = t2_arr
    cdef cplx[:, :, ::1] jm = j_arr, jmd = jd_arr
    cdef Py_ssize_t step, i, j
    cdef double h2 = 0.5 * h, h6 = h / 6.0

    with nogil:
        for step in range(nsub):
            _rhs(m, md, jm, jmd, r, t1, t2, k1, n)
            for i in range(n):
                for j in range(n):
                    w[i, j] = r[i, j] + h2 * k1[i, j]
            _rhs(m, md, jm, jmd, w, t1, t2, k2, n)
            for i in range(n):
                for j in range(n):
                    w[i, j] = r[i, j] + h2 * k2[i, j]
            _rhs(m, md, jm, jmd, w, t1, t2, k3, n)
            for i in range(n):
                for j in range(n):
                    w[i, j] = r[i, j] + h * k3[i, j]
            _rhs(m, md, jm, jmd, w, t1, t2, k4, n)
            for i in range(n):
                for j in range(n):
                    r[i, j] = r[i, j] + h6 * (k1[i, j] + 2.0 * k2[i, j]
                                              + 2.0 * k3[i, j] + k4[i, j])
    return r_arr


cdef double _h2(double x) noexcept nogil:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -(x * log(x) + (1.0 - x) * log(1.0 - x)) / _LN2


cdef double _objective(const double[::1] rB, const double[::1] rA,
                       const double[:, ::1] S, double theta,
                       double phi) noexcept nogil:
    cdef double nx = sin(theta) * cos(phi)
    cdef double ny = sin(theta) * sin(phi)
    cdef double nz = cos(theta)
    cdef double dot = rB[0] * nx + rB[1] * ny + rB[2] * nz
    cdef double sn0 = S[0, 0] * nx + S[0, 1] * ny + S[0, 2] * nz
    cdef double sn1 = S[1, 0] * nx + S[1, 1] * ny + S[1, 2] * nz
    cdef double sn2 = S[2, 0] * nx + S[2, 1] * ny + S[2, 2] * nz
    cdef double total = 0.0
    cdef double s, p, ux, uy, uz, unorm, lam
    for s in (1.0, -1.0):
        p = 0.5 * (1.0 + s * dot)
        if p <= _P_FLOOR:
            continue
        ux = rA[0] + s * sn0
        uy = rA[1] + s * sn1
        uz = rA[2] + s * sn2
        unorm = sqrt(ux * ux + uy * uy + uz * uz)
        lam = 0.5 * (1.0 + unorm / (2.0 * p))
        total = total + p * _h2(lam)
    return total


def discord_objective(rB, rA, S, double theta, double phi):
    """Conditional entropy after measuring along Bloch direction (theta, phi)."""
    cdef double[::1] rb = np.ascontiguousarray(rB, dtype=np.float64)
    cdef double[::1] ra = np.ascontiguousarray(rA, dtype=np.float64)
    cdef double[:, ::1] s = np.ascontiguousarray(S, dtype=np.float64)
    return _objective(rb, ra, s, theta, phi)


def discord_scan(rB, rA, S, thetas, phis):
    """Grid minimum of the measured conditional entropy.

    Returns (value, theta, phi) at the first grid minimum in
    lexicographic (theta, phi) index order.
    """
    cdef double[::1] rb = np.ascontiguousarray(rB, dtype=np.float64)
    cdef double[::1] ra = np.ascontiguousarray(rA, dtype=np.float64)
    cdef double[:, ::1] s = np.ascontiguousarray(S, dtype=np.float64)
    cdef double[::1] th = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef double[::1] ph = np.ascontiguousarray(phis, dtype=np.float64)
    cdef Py_ssize_t nth = th.shape[0], nph = ph.shape[0]
    cdef Py_ssize_t i, j, bi = 0, bj = 0
    cdef double best = 1e300, val
    with nogil:
        for i in range(nth):
            for j in range(nph):
                val = _objective(rb, ra, s, th[i], ph[j])
                if val < best:
                    best = val
                    bi = i
                    bj = j
    return best, th[bi], ph[bj]
