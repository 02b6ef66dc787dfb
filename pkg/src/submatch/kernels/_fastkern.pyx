# cython: boundscheck=False, wraparound=False, initializedcheck=False
# cython: cdivision=True, language_level=3
"""Compiled implementations of the hot kernels.

Same signatures and semantics as `submatch.kernels.pure`; that module is
the readable reference. CSR adjacency: indptr int64 (n+1), indices int32.
"""

import numpy as np

cimport numpy as cnp

BACKEND_NAME = "compiled"

ctypedef cnp.int64_t i64
ctypedef cnp.int32_t i32
ctypedef cnp.uint8_t u8
ctypedef cnp.float64_t f64


cdef inline void _csr_args(object indptr, object indices, list out):
    out.append(np.ascontiguousarray(indptr, dtype=np.int64))
    out.append(np.ascontiguousarray(indices, dtype=np.int32))


def neigh_sum_f64(indptr, indices, m):
    """Row i of the result = sum of m's rows over i's neighbors (empty -> 0)."""
    args = []
    _csr_args(indptr, indices, args)
    m = np.ascontiguousarray(m, dtype=np.float64)
    out = np.zeros((args[0].shape[0] - 1, m.shape[1]), dtype=np.float64)
    _sum_f64(args[0], args[1], m, out)
    return out


cdef void _sum_f64(const i64[::1] indptr, const i32[::1] indices,
                   const f64[:, ::1] m, f64[:, ::1] out):
    cdef Py_ssize_t n = indptr.shape[0] - 1, cols = m.shape[1]
    cdef Py_ssize_t i, p, c, j
    for i in range(n):
        for p in range(indptr[i], indptr[i + 1]):
            j = indices[p]
            for c in range(cols):
                out[i, c] += m[j, c]


def neigh_max_f64(indptr, indices, m):
    """Elementwise max over neighbor rows; empty neighborhood -> 0."""
    args = []
    _csr_args(indptr, indices, args)
    m = np.ascontiguousarray(m, dtype=np.float64)
    out = np.zeros((args[0].shape[0] - 1, m.shape[1]), dtype=np.float64)
    _extreme_f64(args[0], args[1], m, out, 1)
    return out


def neigh_min_f64(indptr, indices, m):
    """Elementwise min over neighbor rows; empty neighborhood -> 1."""
    args = []
    _csr_args(indptr, indices, args)
    m = np.ascontiguousarray(m, dtype=np.float64)
    out = np.ones((args[0].shape[0] - 1, m.shape[1]), dtype=np.float64)
    _extreme_f64(args[0], args[1], m, out, 0)
    return out


cdef void _extreme_f64(const i64[::1] indptr, const i32[::1] indices,
                       const f64[:, ::1] m, f64[:, ::1] out, bint is_max):
    # first neighbor row is copied, so the empty-row fill never leaks into
    # the reduction (matters for values outside [0, 1])
    cdef Py_ssize_t n = indptr.shape[0] - 1, cols = m.shape[1]
    cdef Py_ssize_t i, p, c, j
    for i in range(n):
        for p in range(indptr[i], indptr[i + 1]):
            j = indices[p]
            if p == indptr[i]:
                for c in range(cols):
                    out[i, c] = m[j, c]
            elif is_max:
                for c in range(cols):
                    if m[j, c] > out[i, c]:
                        out[i, c] = m[j, c]
            else:
                for c in range(cols):
                    if m[j, c] < out[i, c]:
                        out[i, c] = m[j, c]


def neigh_max_u8(indptr, indices, m):
    args = []
    _csr_args(indptr, indices, args)
    m = np.ascontiguousarray(m, dtype=np.uint8)
    out = np.zeros((args[0].shape[0] - 1, m.shape[1]), dtype=np.uint8)
    _extreme_u8(args[0], args[1], m, out, 1)
    return out


def neigh_min_u8(indptr, indices, m):
    args = []
    _csr_args(indptr, indices, args)
    m = np.ascontiguousarray(m, dtype=np.uint8)
    out = np.ones((args[0].shape[0] - 1, m.shape[1]), dtype=np.uint8)
    _extreme_u8(args[0], args[1], m, out, 0)
    return out


cdef void _extreme_u8(const i64[::1] indptr, const i32[::1] indices,
                      const u8[:, ::1] m, u8[:, ::1] out, bint is_max):
    cdef Py_ssize_t n = indptr.shape[0] - 1, cols = m.shape[1]
    cdef Py_ssize_t i, p, c, j
    for i in range(n):
        for p in range(indptr[i], indptr[i + 1]):
            j = indices[p]
            if p == indptr[i]:
                for c in range(cols):
                    out[i, c] = m[j, c]
            elif is_max:
                for c in range(cols):
                    if m[j, c] > out[i, c]:
                        out[i, c] = m[j, c]
            else:
                for c in range(cols):
                    if m[j, c] < out[i, c]:
                        out[i, c] = m[j, c]


def neigh_count_u8(indptr, indices, m):
    """Per-row counts: sum of 0/1 neighbor rows, widened to int64."""
    args = []
    _csr_args(indptr, indices, args)
    m = np.ascontiguousarray(m, dtype=np.uint8)
    out = np.zeros((args[0].shape[0] - 1, m.shape[1]), dtype=np.int64)
    _count_u8(args[0], args[1], m, out)
    return out


cdef void _count_u8(const i64[::1] indptr, const i32[::1] indices,
                    const u8[:, ::1] m, i64[:, ::1] out):
    cdef Py_ssize_t n = indptr.shape[0] - 1, cols = m.shape[1]
    cdef Py_ssize_t i, p, c, j
    for i in range(n):
        for p in range(indptr[i], indptr[i + 1]):
            j = indices[p]
            for c in range(cols):
                out[i, c] += m[j, c]


cdef bint _try_assign(u8[:, ::1] sub, Py_ssize_t n_rows, Py_ssize_t c,
                      i64[::1] match_row, u8[::1] seen):
    cdef Py_ssize_t r
    for r in range(n_rows):
        if sub[r, c] and not seen[r]:
            seen[r] = 1
            if match_row[r] < 0 or _try_assign(sub, n_rows, match_row[r], match_row, seen):
                match_row[r] = c
                return True
    return False


def exact_hall_layer(t_indptr, t_indices, q_indptr, q_indices, s, s0):
    """One exact recursion layer: out[t, q] = s0[t, q] AND a matching of
    N(q) into N(t) saturating N(q) exists, with (q_i, t_j) an edge iff
    s[t_j, q_i] = 1."""
    targs = []
    _csr_args(t_indptr, t_indices, targs)
    qargs = []
    _csr_args(q_indptr, q_indices, qargs)
    s = np.ascontiguousarray(s, dtype=np.uint8)
    s0 = np.ascontiguousarray(s0, dtype=np.uint8)
    cdef Py_ssize_t nt = targs[0].shape[0] - 1
    cdef Py_ssize_t nq = qargs[0].shape[0] - 1
    out = np.zeros((nt, nq), dtype=np.uint8)
    max_dt = int(np.max(np.diff(targs[0]))) if nt else 0
    max_dq = int(np.max(np.diff(qargs[0]))) if nq else 0
    sub = np.empty((max(max_dt, 1), max(max_dq, 1)), dtype=np.uint8)
    match_row = np.empty(max(max_dt, 1), dtype=np.int64)
    seen = np.empty(max(max_dt, 1), dtype=np.uint8)
    _hall_layer(targs[0], targs[1], qargs[0], qargs[1], s, s0, out,
                sub, match_row, seen)
    return out


cdef void _hall_layer(const i64[::1] t_indptr, const i32[::1] t_indices,
                      const i64[::1] q_indptr, const i32[::1] q_indices,
                      const u8[:, ::1] s, const u8[:, ::1] s0, u8[:, ::1] out,
                      u8[:, ::1] sub, i64[::1] match_row, u8[::1] seen):
    cdef Py_ssize_t nt = t_indptr.shape[0] - 1, nq = q_indptr.shape[0] - 1
    cdef Py_ssize_t t, q, r, c, dt, dq, qs, ts
    cdef bint feasible, col_ok
    for q in range(nq):
        qs = q_indptr[q]
        dq = q_indptr[q + 1] - qs
        for t in range(nt):
            if not s0[t, q]:
                continue
            if dq == 0:
                out[t, q] = 1
                continue
            ts = t_indptr[t]
            dt = t_indptr[t + 1] - ts
            if dq > dt:
                continue
            # gather the per-pair bipartite graph; reject empty columns early
            feasible = True
            for c in range(dq):
                col_ok = False
                for r in range(dt):
                    sub[r, c] = s[t_indices[ts + r], q_indices[qs + c]]
                    if sub[r, c]:
                        col_ok = True
                if not col_ok:
                    feasible = False
                    break
            if not feasible:
                continue
            for r in range(dt):
                match_row[r] = -1
            for c in range(dq):
                for r in range(dt):
                    seen[r] = 0
                if not _try_assign(sub, dt, c, match_row, seen):
                    feasible = False
                    break
            if feasible:
                out[t, q] = 1


def bip_match_size(n_left, n_right, indptr, indices):
    """Maximum bipartite matching size; CSR rows are left-side adjacency."""
    args = []
    _csr_args(indptr, indices, args)
    match_right = np.full(int(n_right), -1, dtype=np.int64)
    seen = np.empty(int(n_right), dtype=np.uint8)
    return _match_csr(int(n_left), args[0], args[1], match_right, seen)


cdef int _match_csr(Py_ssize_t n_left, const i64[::1] indptr, const i32[::1] indices,
                    i64[::1] match_right, u8[::1] seen):
    cdef Py_ssize_t left, r
    cdef int size = 0
    for left in range(n_left):
        for r in range(seen.shape[0]):
            seen[r] = 0
        if _try_assign_csr(left, indptr, indices, match_right, seen):
            size += 1
    return size


cdef bint _try_assign_csr(Py_ssize_t left, const i64[::1] indptr, const i32[::1] indices,
                          i64[::1] match_right, u8[::1] seen):
    cdef Py_ssize_t p, r
    for p in range(indptr[left], indptr[left + 1]):
        r = indices[p]
        if not seen[r]:
            seen[r] = 1
            if match_right[r] < 0 or _try_assign_csr(match_right[r], indptr, indices,
                                                     match_right, seen):
                match_right[r] = left
                return True
    return False
