"""The localization game on latin square graphs.

Each round the invisible robber moves first (staying is allowed), then the
cops probe a set of vertices and learn the distance from each probe to the
robber. The cops win when the positions consistent with every observation
so far, the belief state, shrink to a single vertex. Duplicate probes are
dropped; probe counts always refer to distinct vertices.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations

from ._setcover import min_set_cover
from .bounds import BoundEntry
from .errors import BudgetExceededError
from .graphs import LsqGraph, Line, agreement_graph
from .latin import LatinSquare, OrthogonalArray, min_cover
from .metric import distance_vector

EXACT_LOC_ORDER_LIMIT = 3          # belief space is 2^(n^2)
DEFAULT_LOC_BUDGET = 5_000_000
ROW_GAME_ORDER_LIMIT = 7


# ---------------------------------------------------------------------------
# Belief state


def expand_belief(G: LsqGraph, belief: frozenset[int]) -> frozenset[int]:
    """Positions reachable after one robber move (stay or step)."""
    out = 0
    for v in belief:
        out |= G.closed_mask(v)
    return _mask_to_set(out)


def filter_belief(G: LsqGraph, candidates, probes, observed) -> frozenset[int]:
    """Candidates whose distance vector matches the observation."""
    observed = tuple(observed)
    return frozenset(
        v for v in candidates if distance_vector(G, probes, v) == observed
    )


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return frozenset(out)


# ---------------------------------------------------------------------------
# Transcripts and simulation


@dataclass
class LocTranscript:
    n: int
    k: int
    seed: int | None
    rounds: list = field(default_factory=list)
    localized: bool = False
    final_round: int = 0
    max_probes: int = 0
    true_positions: list = field(default_factory=list)  # for soundness checks

    def to_json_dict(self) -> dict:
        return {
            "game": "loc",
            "n": self.n,
            "k": self.k,
            "seed": self.seed,
            "rounds": [
                {
                    "probes": list(r["probes"]),
                    "vector": [(-1 if d == math.inf else int(d)) for d in r["vector"]],
                    "beliefSize": r["beliefSize"],
                }
                for r in self.rounds
            ],
            "outcome": {"localized": self.localized, "round": self.final_round},
            "maxProbes": self.max_probes,
        }


def simulate_localization(
    G: LsqGraph,
    cop_policy,
    robber_policy,
    horizon: int,
    seed: int | None = None,
) -> LocTranscript:
    """Run the localization game; probe rounds are numbered from 0.

    The robber policy receives the cop policy at reset (the robber is
    omniscient) and the prior belief at each move.
    """
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    rng = random.Random(seed)
    cop_policy.reset(G, rng)
    robber_policy.reset(G, rng, cop_policy)

    t = LocTranscript(n=G.n, k=G.k, seed=seed)
    belief = frozenset(G.vertices())
    robber = robber_policy.initial_position(G)
    if robber not in belief:
        raise ValueError("robber placed outside the graph")

    for rnd in range(horizon):
        prior = belief  # what the cops knew before this round's robber move
        if rnd > 0:
            new_robber = robber_policy.move(G, robber, prior)
            if new_robber != robber and not G.adjacent(robber, new_robber):
                raise ValueError(f"illegal robber move {robber} -> {new_robber}")
            robber = new_robber
            belief = expand_belief(G, prior)
        probes = _dedupe(cop_policy.next_probes(rnd, prior))
        observed = distance_vector(G, probes, robber)
        belief = filter_belief(G, belief, probes, observed)
        if robber not in belief:
            raise AssertionError("belief state evicted the true robber position")
        t.rounds.append(
            {"probes": probes, "vector": observed, "beliefSize": len(belief)}
        )
        t.true_positions.append(robber)
        t.max_probes = max(t.max_probes, len(probes))
        if len(belief) == 1:
            t.localized, t.final_round = True, rnd
            return t
    t.localized, t.final_round = False, horizon - 1
    return t


def _dedupe(probes) -> list[int]:
    seen = []
    for p in probes:
        if p not in seen:
            seen.append(p)
    return seen


# ---------------------------------------------------------------------------
# Probe policies


class FixedProbes:
    """Probes the same vertex set every round."""

    def __init__(self, probes):
        self.probes = list(probes)

    def reset(self, G, rng=None):
        pass

    def next_probes(self, round_index, belief):
        return list(self.probes)


class AllVerticesProbes:
    def reset(self, G, rng=None):
        self._all = list(G.vertices())

    def next_probes(self, round_index, belief):
        return list(self._all)


class RandomProbes:
    """A seeded random probe set of fixed size each round."""

    def __init__(self, count: int):
        self.count = count

    def reset(self, G, rng=None):
        self._rng = rng if rng is not None else random.Random(0)
        self._verts = list(G.vertices())

    def next_probes(self, round_index, belief):
        return sorted(self._rng.sample(self._verts, self.count))


class CoverProbeStrategy:
    """Three-phase localization using a minimum cover of the square.

    Phase 1 probes a minimum cover; if the robber avoids distance 0, the
    consistent positions collapse to at most six. Phase 2 re-probes the
    cover plus three extra probes on every line through each survivor
    (at most mc + 54 distinct probes for a single square), leaving at most
    two candidates that share a line. Phase 3 probes that shared line in
    full plus two extra probes on each of the four residual lines (at most
    n + 8 probes), which pins the robber exactly.

    The policy is a pure function of (round, prior belief), so exhaustive
    robber checks can walk the belief graph directly.
    """

    def __init__(self, L: LatinSquare, cover=None):
        self.L = L
        self.cover = cover
        if L.n < 5:
            raise ValueError("cover strategy needs order >= 5")

    def reset(self, G: LsqGraph, rng=None):
        if G.k != 1 or G.n != self.L.n:
            raise ValueError("graph does not match the square")
        self.G = G
        if self.cover is None:
            self.cover = min_cover(self.L)
        n = self.L.n
        self._cover_ids = sorted((r - 1) * n + c for (r, c, _) in self.cover.entries)

    def next_probes(self, round_index, belief):
        G = self.G
        if len(belief) == G.vertex_count or len(belief) > 6:
            return list(self._cover_ids)
        belief = sorted(belief)
        if len(belief) > 2 or len(belief) == 1:
            return self._cover_plus_line_probes(belief)
        shared = self._shared_line(belief[0], belief[1])
        if shared is None:
            # outside the guarantee; probing every line through both
            # candidates contains all their neighbors, hence the robber
            probes = set()
            for v in belief:
                for line in G.lines_through(v):
                    probes.update(line.vertices)
            return sorted(probes)
        return self._phase3_probes(belief, shared)

    def _cover_plus_line_probes(self, candidates):
        G = self.G
        probes = list(self._cover_ids)
        have = set(probes)
        for v in candidates:
            for line in G.lines_through(v):
                added = 0
                for w in line.vertices:
                    if added == 3:
                        break
                    if w not in have:
                        probes.append(w)
                        have.add(w)
                        added += 1
        return probes

    def _shared_line(self, u, v) -> Line | None:
        G = self.G
        eu, ev = G.entry_of(u), G.entry_of(v)
        if eu.row == ev.row:
            return G.line("row", eu.row)
        if eu.col == ev.col:
            return G.line("column", eu.col)
        for i, (a, b) in enumerate(zip(eu.symbols, ev.symbols), start=1):
            if a == b:
                return G.line("symbol", a, i)
        return None

    def _phase3_probes(self, candidates, shared: Line):
        G = self.G
        u, v = candidates
        eu, ev = G.entry_of(u), G.entry_of(v)
        probes = list(shared.vertices)
        have = set(probes)
        residual = []
        for e in (eu, ev):
            if shared.kind != "row":
                residual.append(G.line("row", e.row))
            if shared.kind != "column":
                residual.append(G.line("column", e.col))
            for i, s in enumerate(e.symbols, start=1):
                if not (shared.kind == "symbol" and shared.square == i):
                    residual.append(G.line("symbol", s, i))
        # with k = 1 the two candidates leave exactly four residual lines
        for line in residual:
            added = 0
            for w in line.vertices:
                if added == 2:
                    break
                if w not in have:
                    probes.append(w)
                    have.add(w)
                    added += 1
        return probes


# ---------------------------------------------------------------------------
# Robber policies for the localization game


class RandomWalkRobber:
    def reset(self, G, rng=None, cop_policy=None):
        self._rng = rng if rng is not None else random.Random(0)

    def initial_position(self, G):
        return self._rng.choice(list(G.vertices()))

    def move(self, G, current, belief):
        return self._rng.choice(G.closed_neighbors(current))


class StationaryRobber:
    def __init__(self, start: int | None = None):
        self.start = start

    def reset(self, G, rng=None, cop_policy=None):
        pass

    def initial_position(self, G):
        return self.start if self.start is not None else 1

    def move(self, G, current, belief):
        return current


class BeliefMaxRobber:
    """Omniscient robber: one-step lookahead maximizing the next belief."""

    def reset(self, G, rng=None, cop_policy=None):
        self._cop_policy = cop_policy
        self._round = 0

    def initial_position(self, G):
        self._round = 1
        belief = frozenset(G.vertices())
        probes = _dedupe(self._cop_policy.next_probes(0, belief))
        best, best_size = None, -1
        for v in sorted(belief):
            size = len(
                filter_belief(G, belief, probes, distance_vector(G, probes, v))
            )
            if size > best_size:
                best, best_size = v, size
        return best

    def move(self, G, current, belief):
        expanded = expand_belief(G, belief)
        probes = _dedupe(self._cop_policy.next_probes(self._round, belief))
        self._round += 1
        best, best_size = current, -1
        for v in G.closed_neighbors(current):
            size = len(
                filter_belief(G, expanded, probes, distance_vector(G, probes, v))
            )
            if size > best_size:
                best, best_size = v, size
        return best


# ---------------------------------------------------------------------------
# Exhaustive verification over all robber trajectories


@dataclass
class ExhaustiveLocReport:
    localized_all: bool
    max_rounds_used: int             # 0-based probe round index
    max_probes_per_round: list[int]  # indexed by round
    max_phase1_candidates: int
    states_explored: int
    failure: tuple | None            # (round, belief) left unresolved


def exhaustive_localization_check(
    G: LsqGraph, policy, max_rounds: int = 3
) -> ExhaustiveLocReport:
    """Check that a deterministic probe policy localizes every trajectory.

    Walks the belief graph: every element of a reachable belief state is
    realized by some robber trajectory, so the policy wins within
    ``max_rounds`` probe rounds iff no belief of size >= 2 survives round
    max_rounds - 1.
    """
    policy.reset(G, None)
    max_probes = [0] * max_rounds
    states = 0
    max_phase1 = 0
    worst_round = 0

    start = frozenset(G.vertices())
    stack = [(0, start)]
    seen = {(0, start)}
    while stack:
        rnd, belief = stack.pop()
        states += 1
        expanded = belief if rnd == 0 else expand_belief(G, belief)
        probes = _dedupe(policy.next_probes(rnd, belief))
        max_probes[rnd] = max(max_probes[rnd], len(probes))
        classes: dict[tuple, list[int]] = {}
        for v in expanded:
            classes.setdefault(distance_vector(G, probes, v), []).append(v)
        for members in classes.values():
            if len(members) == 1:
                worst_round = max(worst_round, rnd)
                continue
            if rnd == 0:
                max_phase1 = max(max_phase1, len(members))
            if rnd + 1 >= max_rounds:
                return ExhaustiveLocReport(
                    False, rnd, max_probes, max_phase1, states,
                    (rnd, frozenset(members)),
                )
            nxt = (rnd + 1, frozenset(members))
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
            worst_round = max(worst_round, rnd + 1)
    return ExhaustiveLocReport(True, worst_round, max_probes, max_phase1, states, None)


# ---------------------------------------------------------------------------
# Exact localization number (tiny instances)


def exact_localization_number(
    G: LsqGraph,
    max_cops: int | None = None,
    budget: int = DEFAULT_LOC_BUDGET,
    order_limit: int = EXACT_LOC_ORDER_LIMIT,
) -> int | None:
    """Least probe count that forces a singleton belief, or None if the
    search hit max_cops without a win.

    Minimax over belief states: the cops pick the probe set, the omniscient
    robber picks the observation class. Computed as a least fixpoint, so a
    belief wins only when the cops force localization in finitely many
    rounds. One probe is the minimum even on a single vertex: an
    observation is needed to return the identifying distance 0.
    """
    if G.n > order_limit:
        raise BudgetExceededError("exact_localization_number order", G.n, order_limit)
    V = G.vertex_count
    if max_cops is None:
        max_cops = V
    all_vertices = frozenset(G.vertices())

    for k in range(1, max_cops + 1):
        estimate = (2 ** V) * math.comb(V, k)
        if estimate > budget:
            raise BudgetExceededError(f"exact_localization_number k={k}", estimate, budget)
        if _loc_cops_win(G, k, all_vertices):
            return k
    return None


def _loc_cops_win(G: LsqGraph, k: int, start: frozenset[int]) -> bool:
    V = G.vertex_count
    probe_sets = [tuple(c) for c in combinations(range(1, V + 1), k)]

    # classes[(expanded belief, probe set)] -> partition into beliefs
    partition_cache: dict[tuple, list[frozenset[int]]] = {}

    def partition(expanded: frozenset[int], probes: tuple[int, ...]):
        key = (expanded, probes)
        if key not in partition_cache:
            classes: dict[tuple, list[int]] = {}
            for v in expanded:
                classes.setdefault(distance_vector(G, probes, v), []).append(v)
            partition_cache[key] = [frozenset(m) for m in classes.values()]
        return partition_cache[key]

    # enumerate all beliefs of size >= 2 as masks for the fixpoint loop
    beliefs = []
    for mask in range(1, 1 << V):
        if mask.bit_count() >= 2:
            beliefs.append(_mask_to_set(mask))
    win: dict[frozenset[int], bool] = {b: False for b in beliefs}

    def cops_win_from(belief: frozenset[int], first_round: bool) -> bool:
        expanded = belief if first_round else expand_belief(G, belief)
        for probes in probe_sets:
            if all(
                len(c) == 1 or win.get(c, False)
                for c in partition(expanded, probes)
            ):
                return True
        return False

    changed = True
    while changed:
        changed = False
        for b in beliefs:
            if not win[b] and cops_win_from(b, first_round=False):
                win[b] = True
                changed = True
    return cops_win_from(start, first_round=True)


# ---------------------------------------------------------------------------
# Single-round line localization


def row_localization_min_probes(
    G: LsqGraph, line: Line, order_limit: int = ROW_GAME_ORDER_LIMIT
) -> int:
    """Fewest probes (anywhere in G) giving the n line vertices pairwise
    distinct distance vectors: the single-round game restricted to a line."""
    if G.n > order_limit:
        raise BudgetExceededError("row_localization_min_probes order", G.n, order_limit)
    targets = list(line.vertices)
    pairs = [(u, v) for a, u in enumerate(targets) for v in targets[a + 1:]]
    masks = []
    for p in G.vertices():
        m = 0
        for idx, (u, v) in enumerate(pairs):
            if G.distance(p, u) != G.distance(p, v):
                m |= 1 << idx
        masks.append(m)
    universe = (1 << len(pairs)) - 1
    return len(min_set_cover(masks, universe))


# ---------------------------------------------------------------------------
# Orthogonal array column-split transform


@dataclass
class OaPartitionTransform:
    graph_p: LsqGraph
    graph_q: LsqGraph
    cols_p: tuple[int, ...]
    cols_q: tuple[int, ...]
    swap_certified: bool
    witness: tuple | None

    def map_vector(self, vector):
        """Translate a distance vector observed in G_P into the one the same
        probes would observe in G_Q: 0 stays, 1 and 2 swap."""
        out = []
        for d in vector:
            if d == 0:
                out.append(0)
            elif d == 1:
                out.append(2)
            elif d == 2:
                out.append(1)
            else:
                raise ValueError(f"distance {d} cannot occur in a complete-set split")
        return tuple(out)


def oa_partition_transform(O: OrthogonalArray, cols_p) -> OaPartitionTransform:
    """Split a complete-set OA's columns into P and its complement Q.

    Distinct rows of an OA of an (n-1)-MOLS set agree in exactly one
    column, so they agree in P exactly when they do not agree in Q: the two
    agreement graphs are edge complements, and distance vectors translate
    between them by swapping 1 and 2. The swap property is certified
    exhaustively over all vertex pairs.
    """
    if O.m != O.n + 1:
        raise ValueError(
            f"need the OA of a complete set: m = n+1, got m={O.m}, n={O.n}"
        )
    cols_p = tuple(sorted(set(cols_p)))
    if not (2 <= len(cols_p) <= O.m - 2):
        raise ValueError("need 2 <= |P| <= m-2")
    if any(not 1 <= c <= O.m for c in cols_p):
        raise ValueError("column out of range")
    # complete-set check: every distinct row pair agrees in exactly one column
    rows = O.rows
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            agreements = sum(x == y for x, y in zip(rows[a], rows[b]))
            if agreements != 1:
                raise ValueError(
                    f"rows {a + 1} and {b + 1} agree in {agreements} columns; "
                    "not the OA of a complete set"
                )
    cols_q = tuple(c for c in range(1, O.m + 1) if c not in cols_p)
    gp = agreement_graph(O, cols_p)
    gq = agreement_graph(O, cols_q)
    witness = None
    certified = True
    for u in gp.vertices():
        for v in range(u + 1, gp.vertex_count + 1):
            dp, dq = gp.distance(u, v), gq.distance(u, v)
            if not ((dp == 1 and dq == 2) or (dp == 2 and dq == 1)):
                certified = False
                witness = (u, v, dp, dq)
                break
        if not certified:
            break
    return OaPartitionTransform(gp, gq, cols_p, cols_q, certified, witness)


# ---------------------------------------------------------------------------
# Bounds


def localization_bounds(n: int, k: int, mc: int | None = None) -> list[BoundEntry]:
    """Localization-number bounds at (n, k); mc feeds the cover bound."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    entries = [
        BoundEntry(
            "loc-lower-row-reveal",
            "lower",
            2 * (n - 1) / (k + 2),
            True,
            "a robber announcing its row still needs this many probes",
        ),
        BoundEntry(
            "loc-lower-completable",
            "lower",
            2 * (n - 1) / (n - k + 1) if n - k + 1 > 0 else float("inf"),
            False,
            "applies only when the set completes to an (n-1)-MOLS set",
        ),
    ]
    if k == 1:
        entries.append(
            BoundEntry(
                "loc-upper-resolving",
                "upper",
                2 * n - 2,
                n >= 4,
                "localization number is at most the metric dimension",
            )
        )
        entries.append(
            BoundEntry(
                "loc-upper-cover",
                "upper",
                (mc + 54) if mc is not None else float("nan"),
                mc is not None and n >= 5,
                "three-phase cover strategy; needs mc(L)",
            )
        )
    return entries
