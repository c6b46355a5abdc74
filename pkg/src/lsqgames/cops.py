"""Cops and Robbers on latin square graphs: strategies, simulation, bounds.

Game loop: cops place, the robber places seeing them, then rounds alternate
with the cops moving first. Capture happens the moment any cop occupies the
robber's vertex, including at placement. Cops may share a vertex.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .bounds import BoundEntry
from .graphs import LsqGraph
from .latin import LatinSquare


def _occupancy(positions) -> int:
    mask = 0
    for p in positions:
        mask |= 1 << (p - 1)
    return mask


# ---------------------------------------------------------------------------
# Cop strategies


class IndexPinningCops:
    """k+2 cops, one per index type, for a graph built from a k-MOLS set.

    After the opening move each cop pins one coordinate of the robber's
    entry: cop i <= k holds the robber's i-th symbol (moving along its own
    row, where every symbol occurs), cop k+1 sits in the robber's row and
    cop k+2 in the robber's column. Any robber move shares an index with
    the old entry, so some cop is adjacent after it and captures.
    """

    def __init__(self):
        self._symbol_pos = None

    def reset(self, G: LsqGraph, rng=None):
        if G.n < 2:
            raise ValueError("strategy needs order >= 2")
        self.count = G.k + 2
        # (square, symbol, row) -> vertex id
        self._symbol_pos = {}
        for v in G.vertices():
            e = G.entry_of(v)
            for i, s in enumerate(e.symbols, start=1):
                self._symbol_pos[(i, s, e.row)] = v

    def initial_positions(self, G: LsqGraph) -> tuple[int, ...]:
        return tuple(range(1, self.count + 1))

    def move(self, G: LsqGraph, cops, robber: int) -> tuple[int, ...]:
        for i, u in enumerate(cops):
            if u == robber or G.adjacent(u, robber):
                moved = list(cops)
                moved[i] = robber
                return tuple(moved)
        target = G.entry_of(robber)
        k = G.k
        moved = []
        for i in range(k):
            own = G.entry_of(cops[i])
            moved.append(self._symbol_pos[(i + 1, target.symbols[i], own.row)])
        moved.append(G.id_of(target.row, G.entry_of(cops[k]).col))
        moved.append(G.id_of(G.entry_of(cops[k + 1]).row, target.col))
        return tuple(moved)


class MatePairCops:
    """Two cops on a graph from an (n-2)-MOLS set, steered by the unique
    orthogonal mate L'.

    In such a graph two cells are adjacent exactly when their L' symbols
    differ, so two cops with distinct L' symbols can always capture: one of
    them differs from the robber's symbol and is therefore adjacent.
    """

    count = 2

    def __init__(self, mate: LatinSquare):
        self.mate = mate

    def reset(self, G: LsqGraph, rng=None):
        if G.k != G.n - 2:
            raise ValueError("strategy applies to (n-2)-MOLS graphs")
        value = self._values(G)
        for u in G.vertices():
            for v in range(u + 1, G.vertex_count + 1):
                if G.adjacent(u, v) != (value[u] != value[v]):
                    raise ValueError("mate square does not match the graph")

    def _values(self, G):
        return {v: self.mate.symbol(*G.cell_of(v)) for v in G.vertices()}

    def initial_positions(self, G: LsqGraph) -> tuple[int, ...]:
        # two cops on row 1, columns 1 and 2: distinct L' symbols
        return (G.id_of(1, 1), G.id_of(1, 2))

    def move(self, G: LsqGraph, cops, robber: int) -> tuple[int, ...]:
        for i, u in enumerate(cops):
            if u == robber or G.adjacent(u, robber):
                moved = list(cops)
                moved[i] = robber
                return tuple(moved)
        return tuple(cops)


class GreedyCops:
    """Each cop steps to the closed neighbor closest to the robber."""

    def __init__(self, count: int):
        self.count = count
        self._rng = None

    def reset(self, G: LsqGraph, rng=None):
        self._rng = rng

    def initial_positions(self, G: LsqGraph) -> tuple[int, ...]:
        if self._rng is not None:
            return tuple(sorted(self._rng.sample(list(G.vertices()), self.count)))
        return tuple(range(1, self.count + 1))

    def move(self, G: LsqGraph, cops, robber: int) -> tuple[int, ...]:
        moved = []
        for u in cops:
            moved.append(
                min(
                    G.closed_neighbors(u),
                    key=lambda w: (G.distance(w, robber), w),
                )
            )
        return tuple(moved)


class RandomCops:
    """Seeded uniformly random walkers (distinct initial placements)."""

    def __init__(self, count: int):
        self.count = count
        self._rng = None

    def reset(self, G: LsqGraph, rng=None):
        self._rng = rng if rng is not None else random.Random(0)

    def initial_positions(self, G: LsqGraph) -> tuple[int, ...]:
        return tuple(sorted(self._rng.sample(list(G.vertices()), self.count)))

    def move(self, G: LsqGraph, cops, robber: int) -> tuple[int, ...]:
        return tuple(self._rng.choice(G.closed_neighbors(u)) for u in cops)


class StillCops:
    """Cops that never move; useful as a degenerate adversary."""

    def __init__(self, count: int, positions=None):
        self.count = count
        self.positions = positions

    def reset(self, G: LsqGraph, rng=None):
        pass

    def initial_positions(self, G: LsqGraph) -> tuple[int, ...]:
        if self.positions is not None:
            return tuple(self.positions)
        return tuple(range(1, self.count + 1))

    def move(self, G: LsqGraph, cops, robber: int) -> tuple[int, ...]:
        return tuple(cops)


# ---------------------------------------------------------------------------
# Robber strategies


class FreeLineRobber:
    """Evades along a cop-free incident line.

    Distinct cells share at most one index, so each cop blocks at most one
    of the k+2 lines through the robber; with few enough cops a cop-free
    line always exists and carries an entry with no cop in its closed
    neighborhood. Preference order: row, column, then symbol lines by
    square; lexicographic-least safe entry.
    """

    def __init__(self, cop_count: int):
        self.cop_count = cop_count
        self.precondition_ok = None

    def reset(self, G: LsqGraph, rng=None, cop_strategy=None):
        n, k = G.n, G.k
        if n > (k + 1) ** 2:
            self.precondition_ok = self.cop_count <= k + 1
        else:
            self.precondition_ok = self.cop_count <= math.ceil(n / (k + 1)) - 1

    def initial_position(self, G: LsqGraph, cops) -> int:
        cop_occ = _occupancy(cops)
        for v in G.vertices():
            if not (cop_occ & G.closed_mask(v)):
                return v
        # no safe placement (precondition must be violated): least free vertex
        for v in G.vertices():
            if not (cop_occ >> (v - 1)) & 1:
                return v
        return 1

    def move(self, G: LsqGraph, cops, current: int) -> int:
        cop_occ = _occupancy(cops)
        for line in G.lines_through(current):
            line_mask = _occupancy(line.vertices)
            if cop_occ & line_mask:
                continue
            safe = [w for w in line.vertices if not (cop_occ & G.closed_mask(w))]
            if safe:
                return min(safe)
        # best effort: minimize exposure among reachable vertices
        return min(
            G.closed_neighbors(current),
            key=lambda w: (
                bool((cop_occ >> (w - 1)) & 1),
                (cop_occ & G.closed_mask(w)).bit_count(),
                w,
            ),
        )


class RandomRobber:
    def __init__(self):
        self._rng = None

    def reset(self, G: LsqGraph, rng=None, cop_strategy=None):
        self._rng = rng if rng is not None else random.Random(0)

    def initial_position(self, G: LsqGraph, cops) -> int:
        return self._rng.choice(list(G.vertices()))

    def move(self, G: LsqGraph, cops, current: int) -> int:
        return self._rng.choice(G.closed_neighbors(current))


class StillRobber:
    def __init__(self, start: int | None = None):
        self.start = start

    def reset(self, G: LsqGraph, rng=None, cop_strategy=None):
        pass

    def initial_position(self, G: LsqGraph, cops) -> int:
        if self.start is not None:
            return self.start
        occupied = set(cops)
        for v in G.vertices():
            if v not in occupied:
                return v
        return 1

    def move(self, G: LsqGraph, cops, current: int) -> int:
        return current


# ---------------------------------------------------------------------------
# Simulation


@dataclass
class CnrTranscript:
    n: int
    k: int
    seed: int | None
    rounds: list = field(default_factory=list)  # rounds[0] is the placement
    captured: bool = False
    capture_round: int = 0

    def to_json_dict(self) -> dict:
        return {
            "game": "cnr",
            "n": self.n,
            "k": self.k,
            "seed": self.seed,
            "rounds": [
                {"cops": list(r["cops"]), "robber": r["robber"]}
                for r in self.rounds
            ],
            "outcome": {"captured": self.captured, "round": self.capture_round},
        }

    def check_legal(self, G: LsqGraph) -> bool:
        """Consecutive positions of every player are equal or adjacent."""
        for prev, cur in zip(self.rounds, self.rounds[1:]):
            for a, b in zip(prev["cops"], cur["cops"]):
                if a != b and not G.adjacent(a, b):
                    return False
            a, b = prev["robber"], cur["robber"]
            if a != b and not G.adjacent(a, b):
                return False
        return True


def simulate_cnr(
    G: LsqGraph,
    cop_strategy,
    robber_strategy,
    horizon: int,
    seed: int | None = None,
) -> CnrTranscript:
    """Run one game to capture or to the horizon. Deterministic given seed."""
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    rng = random.Random(seed)
    cop_strategy.reset(G, rng)
    robber_strategy.reset(G, rng)

    cops = tuple(cop_strategy.initial_positions(G))
    robber = robber_strategy.initial_position(G, cops)
    t = CnrTranscript(n=G.n, k=G.k, seed=seed)
    t.rounds.append({"cops": cops, "robber": robber})
    if robber in cops:
        t.captured, t.capture_round = True, 0
        return t

    for rnd in range(1, horizon + 1):
        new_cops = tuple(cop_strategy.move(G, cops, robber))
        for old, new in zip(cops, new_cops):
            if old != new and not G.adjacent(old, new):
                raise ValueError(f"illegal cop move {old} -> {new}")
        cops = new_cops
        if robber in cops:
            t.rounds.append({"cops": cops, "robber": robber})
            t.captured, t.capture_round = True, rnd
            return t
        new_robber = robber_strategy.move(G, cops, robber)
        if new_robber != robber and not G.adjacent(robber, new_robber):
            raise ValueError(f"illegal robber move {robber} -> {new_robber}")
        robber = new_robber
        t.rounds.append({"cops": cops, "robber": robber})
        if robber in cops:
            t.captured, t.capture_round = True, rnd
            return t
    t.captured, t.capture_round = False, horizon
    return t


def default_horizon(G: LsqGraph) -> int:
    """Generous cap for strategy verification runs."""
    return 4 * G.vertex_count


# ---------------------------------------------------------------------------
# Bounds


def cop_number_bounds(n: int, k: int) -> list[BoundEntry]:
    """Every cop-number bound evaluated at (n, k), with applicability."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    entries = [
        BoundEntry(
            "cop-upper-index-pinning",
            "upper",
            k + 2,
            True,
            "k+2 cops pin one robber index each",
        )
    ]
    if n > (k + 1) ** 2:
        entries.append(
            BoundEntry(
                "cop-lower-free-line",
                "lower",
                k + 2,
                True,
                "free-line evasion beats k+1 cops; matches the upper bound",
            )
        )
    else:
        entries.append(
            BoundEntry(
                "cop-lower-ceil",
                "lower",
                math.ceil(n / (k + 1)),
                True,
                "free-line evasion when n <= (k+1)^2",
            )
        )
    if k == n - 1:
        entries.append(
            BoundEntry(
                "cop-exact-complete-graph",
                "exact",
                1,
                True,
                "an (n-1)-MOLS graph is complete",
            )
        )
    if k == n - 2:
        entries.append(
            BoundEntry(
                "cop-exact-mate-pair",
                "exact",
                2,
                True,
                "two cops guided by the unique orthogonal mate",
            )
        )
    if k == 1:
        value = 1 if n <= 2 else (2 if n == 3 else 3)
        entries.append(
            BoundEntry(
                "cop-exact-single-square",
                "exact",
                value,
                True,
                "exact value for single latin squares (checked small orders, 3 for n >= 5)",
            )
        )
    return entries
