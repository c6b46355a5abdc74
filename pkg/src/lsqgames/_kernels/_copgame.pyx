# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled cop-game fixpoint. Mirrors fallback.solve_cop_game exactly."""

import numpy as np

cimport cython
from libc.stdint cimport uint64_t, int64_t


def solve_cop_game(closed_masks, int k):
    """Backward induction for k cops on a <=64-vertex graph.

    Same contract as lsqgames._kernels.fallback.solve_cop_game.
    """
    closed_arr = np.ascontiguousarray(closed_masks, dtype=np.uint64)
    cdef int V = closed_arr.shape[0]
    if V > 64:
        raise ValueError("kernel supports at most 64 vertices")

    cdef uint64_t[::1] closed = closed_arr

    # flattened closed-neighbor lists
    nbr_flat_l = []
    nbr_off_l = [0]
    cdef int x, i
    for x in range(V):
        for i in range(V):
            if (closed[x] >> i) & 1:
                nbr_flat_l.append(i)
        nbr_off_l.append(len(nbr_flat_l))
    nbr_flat_arr = np.array(nbr_flat_l, dtype=np.int64)
    nbr_off_arr = np.array(nbr_off_l, dtype=np.int64)
    cdef int64_t[::1] nbr_flat = nbr_flat_arr
    cdef int64_t[::1] nbr_off = nbr_off_arr

    cdef int64_t size = 1
    for i in range(k):
        size *= V

    cap_arr = np.zeros(size, dtype=np.uint64)
    cdef uint64_t[::1] cap = cap_arr
    cdef int64_t idx, rest
    for idx in range(size):
        rest = idx
        for i in range(k):
            cap[idx] |= (<uint64_t>1) << (rest % V)
            rest //= V

    Wc_arr = cap_arr.copy()
    Wr_arr = np.zeros(size, dtype=np.uint64)
    U_arr = np.zeros(size, dtype=np.uint64)
    tmp_arr = np.zeros(size, dtype=np.uint64)
    cdef uint64_t[::1] Wc = Wc_arr
    cdef uint64_t[::1] Wr = Wr_arr
    cdef uint64_t[::1] U = U_arr
    cdef uint64_t[::1] tmp = tmp_arr

    cdef int r, axis, changed
    cdef int64_t stride, blocks, outer, inner, base_src, base_dst, t, j
    cdef uint64_t w, nw, acc

    while True:
        # robber to move
        for idx in range(size):
            w = Wc[idx]
            nw = cap[idx]
            for r in range(V):
                if (closed[r] & ~w) == 0:
                    nw |= (<uint64_t>1) << r
            Wr[idx] = nw

        # cops to move: per-axis closed-neighborhood OR
        U[:] = Wr
        stride = 1
        for axis in range(k):
            blocks = size // (stride * V)
            for outer in range(blocks):
                for x in range(V):
                    base_dst = (outer * V + x) * stride
                    for inner in range(stride):
                        acc = 0
                        for t in range(nbr_off[x], nbr_off[x + 1]):
                            j = nbr_flat[t]
                            acc |= U[(outer * V + j) * stride + inner]
                        tmp[base_dst + inner] = acc
            U[:] = tmp
            stride *= V

        changed = 0
        for idx in range(size):
            w = cap[idx] | U[idx]
            if w != Wc[idx]:
                changed = 1
                Wc[idx] = w
        if not changed:
            return Wc_arr
