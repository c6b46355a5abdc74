"""Exact cop-number solver and exhaustive verification of cop strategies.

The solver does backward induction over (cop positions, robber position,
turn) states; cop positions are kept as ordered tuples, which is equivalent
to multisets because every quantity involved is symmetric under permuting
the cops. The per-k game solve runs in the compiled kernel when available.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BudgetExceededError
from .graphs import LsqGraph

# Default cap on 2 * V^(k+1) game states; admits order 6 with 3 cops.
DEFAULT_BUDGET_STATES = 4_000_000


@dataclass
class CopNumberResult:
    value: int | None            # least winning cop count, None if > max_cops
    max_cops: int
    initial_positions: tuple[int, ...] | None  # a winning initial placement
    states: int                  # states in the largest game solved
    backend: str

    @property
    def exceeds_max(self) -> bool:
        return self.value is None


def _closed_masks(G: LsqGraph) -> np.ndarray:
    return np.array(
        [np.uint64(G.closed_mask(v)) for v in G.vertices()], dtype=np.uint64
    )


def cop_win_table(G: LsqGraph, k: int) -> np.ndarray:
    """Flat V^k array of robber-position win masks at cop-turn states."""
    return _kernels.solve_cop_game(_closed_masks(G), k)


def exact_cop_number(
    G: LsqGraph,
    max_cops: int = 3,
    budget_states: int = DEFAULT_BUDGET_STATES,
) -> CopNumberResult:
    """Least k <= max_cops cops that capture the robber under optimal play.

    The cops win with k cops iff some initial placement wins against every
    robber placement. Raises BudgetExceededError (with the state estimate)
    before exploring a k whose state space 2*V^(k+1) exceeds the budget.
    """
    V = G.vertex_count
    if V > 64:
        raise BudgetExceededError("exact_cop_number vertex count", V, 64)
    full = (1 << V) - 1
    states = 0
    for k in range(1, max_cops + 1):
        estimate = 2 * V ** (k + 1)
        if estimate > budget_states:
            raise BudgetExceededError(f"exact_cop_number k={k} states", estimate, budget_states)
        W = cop_win_table(G, k)
        states = estimate
        wins = np.nonzero(W == np.uint64(full))[0]
        if len(wins) > 0:
            flat = int(wins[0])
            placement = []
            for _ in range(k):
                placement.append(flat % V + 1)
                flat //= V
            return CopNumberResult(
                value=k,
                max_cops=max_cops,
                initial_positions=tuple(sorted(placement)),
                states=states,
                backend=_kernels.BACKEND,
            )
    return CopNumberResult(
        value=None,
        max_cops=max_cops,
        initial_positions=None,
        states=states,
        backend=_kernels.BACKEND,
    )


@dataclass
class StrategyVerification:
    captured_all: bool
    states_explored: int
    max_rounds: int              # longest capture over all robber play
    escape: tuple | None         # a state on a capture-free cycle, if any


class _Escape(Exception):
    def __init__(self, state):
        self.state = state


def verify_cop_strategy_exhaustive(
    G: LsqGraph, strategy, max_states: int = 500_000
) -> StrategyVerification:
    """Play a deterministic cop strategy against every robber behavior.

    Only the robber branches, so the reachable game graph has one node per
    (cop positions, robber) pair at a cop turn. The robber escapes iff that
    graph contains a capture-free cycle; otherwise every play ends in
    capture and the deepest path bounds the capture round.
    """
    initial = tuple(strategy.initial_positions(G))
    ON_PATH, DONE = 1, 2
    status: dict[tuple, int] = {}
    depth: dict[tuple, int] = {}
    sys.setrecursionlimit(max(200_000, sys.getrecursionlimit()))

    def explore(cops: tuple[int, ...], robber: int) -> int:
        """Max rounds to capture from a cop-turn state; raises on escape."""
        if robber in cops:
            return 0
        state = (cops, robber)
        if state in status:
            if status[state] == ON_PATH:
                raise _Escape(state)
            return depth[state]
        if len(status) > max_states:
            raise BudgetExceededError("verify_cop_strategy", len(status), max_states)
        status[state] = ON_PATH
        new_cops = tuple(strategy.move(G, cops, robber))
        for old, new in zip(cops, new_cops):
            if new != old and not G.adjacent(old, new):
                raise ValueError(f"illegal cop move {old} -> {new}")
        if robber in new_cops:
            status[state] = DONE
            depth[state] = 1
            return 1
        worst = 0
        for nxt in G.closed_neighbors(robber):
            worst = max(worst, explore(new_cops, nxt))
        status[state] = DONE
        depth[state] = worst + 1
        return worst + 1

    try:
        max_rounds = 0
        for r0 in G.vertices():
            max_rounds = max(max_rounds, explore(initial, r0))
        return StrategyVerification(True, len(status), max_rounds, None)
    except _Escape as esc:
        return StrategyVerification(False, len(status), 0, esc.state)
