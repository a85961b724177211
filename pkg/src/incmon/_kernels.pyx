# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled GF(q) kernels over upper-triangular integer matrices.

Every matrix is an ``int64`` array with entries in ``[0, q)``.  Members of a
monoid context are identified by a code: the base-q number whose digits are
the entries at the context's free positions, most significant first.
Signatures match :mod:`incmon._fallback` exactly.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline int64_t _encode_one(const int64_t[:, :] m, int64_t q, const int64_t[:] rows, const int64_t[:] cols) noexcept nogil:
    cdef Py_ssize_t p
    cdef int64_t code = 0
    for p in range(rows.shape[0]):
        code = code * q + m[rows[p], cols[p]]
    return code


def decode(const int64_t[:] codes, int64_t q, Py_ssize_t n, const int64_t[:] rows, const int64_t[:] cols, const int64_t[:] base):
    cdef Py_ssize_t N = codes.shape[0], f = rows.shape[0], a, p, i, j
    cdef int64_t c
    out_arr = np.empty((N, n, n), dtype=np.int64)
    cdef int64_t[:, :, :] out = out_arr
    with nogil:
        for a in range(N):
            for i in range(n):
                for j in range(n):
                    out[a, i, j] = base[i * n + j]
            c = codes[a]
            for p in range(f - 1, -1, -1):
                out[a, rows[p], cols[p]] = c % q
                c = c // q
    return out_arr


def encode(const int64_t[:, :, :] mats, int64_t q, const int64_t[:] rows, const int64_t[:] cols):
    cdef Py_ssize_t N = mats.shape[0], a
    out_arr = np.empty(N, dtype=np.int64)
    cdef int64_t[:] out = out_arr
    with nogil:
        for a in range(N):
            out[a] = _encode_one(mats[a], q, rows, cols)
    return out_arr


def products(const int64_t[:, :, :] A, const int64_t[:, :, :] B, int64_t q, const int64_t[:] rows, const int64_t[:] cols):
    """``out[a, b]`` is the code of ``A[a] @ B[b] mod q``."""
    cdef Py_ssize_t NA = A.shape[0], NB = B.shape[0], n = A.shape[1], f = rows.shape[0]
    cdef Py_ssize_t a, b, p, l, i, j
    cdef int64_t s, code
    out_arr = np.empty((NA, NB), dtype=np.int64)
    cdef int64_t[:, :] out = out_arr
    with nogil:
        for a in range(NA):
            for b in range(NB):
                code = 0
                for p in range(f):
                    i = rows[p]
                    j = cols[p]
                    s = 0
                    for l in range(i, j + 1):
                        s += A[a, i, l] * B[b, l, j]
                    code = code * q + s % q
                out[a, b] = code
    return out_arr


cdef inline bint _is_idem(const int64_t[:, :] m, Py_ssize_t n, int64_t q) noexcept nogil:
    cdef Py_ssize_t i, j, l
    cdef int64_t s
    for i in range(n):
        for j in range(i, n):
            s = 0
            for l in range(i, j + 1):
                s += m[i, l] * m[l, j]
            if s % q != m[i, j]:
                return False
    return True


def idempotent_mask(const int64_t[:, :, :] mats, int64_t q):
    cdef Py_ssize_t N = mats.shape[0], n = mats.shape[1], a
    out_arr = np.zeros(N, dtype=np.uint8)
    cdef cnp.uint8_t[:] out = out_arr
    with nogil:
        for a in range(N):
            out[a] = _is_idem(mats[a], n, q)
    return out_arr


def idempotent_codes(int64_t total, int64_t q, Py_ssize_t n, const int64_t[:] rows, const int64_t[:] cols, const int64_t[:] base):
    """Codes in ``[0, total)`` whose decoded matrix is idempotent, ascending."""
    cdef Py_ssize_t f = rows.shape[0], p, i, j
    cdef int64_t code, c
    scratch_arr = np.empty((n, n), dtype=np.int64)
    cdef int64_t[:, :] m = scratch_arr
    found = []
    for i in range(n):
        for j in range(n):
            m[i, j] = base[i * n + j]
    for code in range(total):
        c = code
        for p in range(f - 1, -1, -1):
            m[rows[p], cols[p]] = c % q
            c = c // q
        if _is_idem(m, n, q):
            found.append(code)
    return np.asarray(found, dtype=np.int64)


def conjugates(const int64_t[:, :, :] G, const int64_t[:, :, :] Ginv, const int64_t[:, :] x, int64_t q, const int64_t[:] rows, const int64_t[:] cols):
    """Codes of ``G[a] @ x @ Ginv[a] mod q`` for every ``a``."""
    cdef Py_ssize_t N = G.shape[0], n = G.shape[1], a, i, j, l
    cdef int64_t s
    out_arr = np.empty(N, dtype=np.int64)
    cdef int64_t[:] out = out_arr
    tmp_arr = np.empty((n, n), dtype=np.int64)
    res_arr = np.empty((n, n), dtype=np.int64)
    cdef int64_t[:, :] tmp = tmp_arr
    cdef int64_t[:, :] res = res_arr
    with nogil:
        for a in range(N):
            for i in range(n):
                for j in range(n):
                    s = 0
                    if j >= i:
                        for l in range(i, j + 1):
                            s += G[a, i, l] * x[l, j]
                    tmp[i, j] = s % q
            for i in range(n):
                for j in range(n):
                    s = 0
                    if j >= i:
                        for l in range(i, j + 1):
                            s += tmp[i, l] * Ginv[a, l, j]
                    res[i, j] = s % q
            out[a] = _encode_one(res, q, rows, cols)
    return out_arr
