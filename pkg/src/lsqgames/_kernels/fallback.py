"""Pure numpy implementation of the cop-game fixpoint.

State space: ordered cop tuples (an array of shape (V,)*k of uint64 robber
bitmasks) plus whose turn it is. Win sets grow monotonically from the
immediate-capture states until stable, so the loop computes the least
fixpoint: exactly the states from which the cops capture in finitely many
moves. Works for graphs with at most 64 vertices.
"""

from __future__ import annotations

import numpy as np


def solve_cop_game(closed_masks: np.ndarray, k: int) -> np.ndarray:
    """Backward induction for k cops on a <=64-vertex graph.

    closed_masks[v] is the closed-neighborhood bitmask of vertex v. Returns
    the flat array W of length V**k where bit r of W[c1, ..., ck] is set iff
    the cops, about to move from positions (c1, ..., ck) with the robber on
    r, capture with optimal play.
    """
    closed = np.asarray(closed_masks, dtype=np.uint64)
    V = len(closed)
    if V > 64:
        raise ValueError("kernel supports at most 64 vertices")
    shape = (V,) * k

    nbr_lists = []
    for x in range(V):
        m = int(closed[x])
        nbr_lists.append(np.array([i for i in range(V) if (m >> i) & 1], dtype=np.intp))

    # capture[c1..ck] = bits of the cop vertices themselves
    capture = np.zeros(shape, dtype=np.uint64)
    for axis in range(k):
        idx = [np.newaxis] * k
        idx[axis] = slice(None)
        bits = np.array([np.uint64(1) << np.uint64(v) for v in range(V)], dtype=np.uint64)
        capture |= bits[tuple(idx)]
    capture_flat = capture.reshape(-1)

    not_closed = np.array([~np.uint64(int(closed[r])) for r in range(V)], dtype=np.uint64)
    robber_bits = np.array([np.uint64(1) << np.uint64(r) for r in range(V)], dtype=np.uint64)

    Wc = capture_flat.copy()
    zero = np.uint64(0)
    while True:
        # robber to move: trapped iff every closed neighbor is a cop win
        Wr = capture_flat.copy()
        for r in range(V):
            trapped = (not_closed[r] | Wc) == ~zero
            Wr[trapped] |= robber_bits[r]

        # cops to move: union over per-cop closed-neighborhood moves
        U = Wr.reshape(shape)
        for axis in range(k):
            moved = np.moveaxis(U, axis, 0)
            out = np.empty_like(moved)
            for x in range(V):
                out[x] = np.bitwise_or.reduce(moved[nbr_lists[x]], axis=0)
            U = np.moveaxis(out, 0, axis)
        Wc_next = capture_flat | U.reshape(-1)

        if np.array_equal(Wc_next, Wc):
            return Wc
        Wc = Wc_next
