"""NumPy fallback implementations of the hot kernels.

Signature-compatible with the compiled extension `_fastkern`; one of the
two is selected at import time by `submatch.kernels`. All functions take
adjacency in CSR form (indptr int64 of length n+1, indices int32) and a
matrix with one row per node of that adjacency.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "pure"


def _reduce_rows(ufunc, indptr, indices, m, fill):
    n = indptr.shape[0] - 1
    out = np.full((n, m.shape[1]), fill, dtype=m.dtype)
    starts = indptr[:-1]
    nonempty = indptr[1:] > starts
    if nonempty.any():
        # reduceat segment k runs to the next passed start; empty rows add
        # no entries, so consecutive kept starts line up with row ends
        out[nonempty] = ufunc.reduceat(m[indices], starts[nonempty], axis=0)
    return out


def neigh_sum_f64(indptr, indices, m):
    """Row i of the result = sum of m's rows over i's neighbors (empty -> 0)."""
    return _reduce_rows(np.add, indptr, indices, np.asarray(m, dtype=np.float64), 0.0)


def neigh_max_f64(indptr, indices, m):
    """Elementwise max over neighbor rows; empty neighborhood -> 0."""
    return _reduce_rows(np.maximum, indptr, indices, np.asarray(m, dtype=np.float64), 0.0)


def neigh_min_f64(indptr, indices, m):
    """Elementwise min over neighbor rows; empty neighborhood -> 1."""
    return _reduce_rows(np.minimum, indptr, indices, np.asarray(m, dtype=np.float64), 1.0)


def neigh_max_u8(indptr, indices, m):
    return _reduce_rows(np.maximum, indptr, indices, np.asarray(m, dtype=np.uint8), 0)


def neigh_min_u8(indptr, indices, m):
    return _reduce_rows(np.minimum, indptr, indices, np.asarray(m, dtype=np.uint8), 1)


def neigh_count_u8(indptr, indices, m):
    """Per-row counts: sum of 0/1 neighbor rows, widened to int64."""
    return _reduce_rows(np.add, indptr, indices, np.asarray(m, dtype=np.int64), 0)


def _kuhn_saturates(sub: np.ndarray) -> bool:
    """True iff a matching saturating all columns of boolean `sub` exists.

    Columns are the side to saturate, rows the other side. Kuhn's
    augmenting-path algorithm; fine for the small per-pair graphs here.
    """
    n_rows, n_cols = sub.shape
    if not sub.any(axis=0).all():
        return False
    rows_of = [np.flatnonzero(sub[:, c]) for c in range(n_cols)]
    match_row = np.full(n_rows, -1, dtype=np.int64)

    def try_assign(c: int, seen: np.ndarray) -> bool:
        for r in rows_of[c]:
            if not seen[r]:
                seen[r] = True
                if match_row[r] < 0 or try_assign(match_row[r], seen):
                    match_row[r] = c
                    return True
        return False

    for c in range(n_cols):
        if not try_assign(c, np.zeros(n_rows, dtype=bool)):
            return False
    return True


def exact_hall_layer(t_indptr, t_indices, q_indptr, q_indices, s, s0):
    """One exact recursion layer: out[t, q] = s0[t, q] AND a matching of
    N(q) into N(t) saturating N(q) exists, with (q_i, t_j) an edge iff
    s[t_j, q_i] = 1."""
    nt = t_indptr.shape[0] - 1
    nq = q_indptr.shape[0] - 1
    s_bool = np.asarray(s, dtype=bool)
    out = np.zeros((nt, nq), dtype=np.uint8)
    for q in range(nq):
        qn = q_indices[q_indptr[q] : q_indptr[q + 1]]
        dq = qn.shape[0]
        for t in range(nt):
            if not s0[t, q]:
                continue
            if dq == 0:
                out[t, q] = 1
                continue
            tn = t_indices[t_indptr[t] : t_indptr[t + 1]]
            if dq > tn.shape[0]:
                continue
            if _kuhn_saturates(s_bool[np.ix_(tn, qn)]):
                out[t, q] = 1
    return out


def bip_match_size(n_left, n_right, indptr, indices) -> int:
    """Maximum bipartite matching size; CSR rows are left-side adjacency."""
    match_right = np.full(n_right, -1, dtype=np.int64)

    def try_assign(left: int, seen: np.ndarray) -> bool:
        for r in indices[indptr[left] : indptr[left + 1]]:
            if not seen[r]:
                seen[r] = True
                if match_right[r] < 0 or try_assign(match_right[r], seen):
                    match_right[r] = left
                    return True
        return False

    size = 0
    for left in range(n_left):
        if try_assign(left, np.zeros(n_right, dtype=bool)):
            size += 1
    return size
