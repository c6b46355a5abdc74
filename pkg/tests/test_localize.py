"""Localization game: belief tracking, cover strategy, solvers, transform."""

import json
import math
from itertools import combinations

import pytest

from lsqgames.errors import BudgetExceededError
from lsqgames.graphs import build_graph
from lsqgames.latin import (
    dumps,
    make_back_circulant,
    make_mols_prime_power,
    min_cover,
    mols_to_oa,
)
from lsqgames.localize import (
    AllVerticesProbes,
    BeliefMaxRobber,
    CoverProbeStrategy,
    FixedProbes,
    RandomProbes,
    RandomWalkRobber,
    StationaryRobber,
    exact_localization_number,
    exhaustive_localization_check,
    expand_belief,
    filter_belief,
    localization_bounds,
    oa_partition_transform,
    row_localization_min_probes,
    simulate_localization,
)
from lsqgames.metric import distance_vector, exact_metric_dimension


# ---------------------------------------------------------------------------
# belief state


def test_expand_belief_is_closed_neighborhood(graphs):
    G = graphs["L3"]
    b = expand_belief(G, frozenset({1}))
    assert b == frozenset({1} | set(G.neighbors(1)))


def test_filter_belief_refines(graphs):
    G = graphs["B4"]
    belief = frozenset(G.vertices())
    probes = [1, 6]
    obs = distance_vector(G, probes, 11)
    filtered = filter_belief(G, belief, probes, obs)
    assert 11 in filtered
    assert filtered <= belief


# ---------------------------------------------------------------------------
# simulation basics


def test_all_vertex_probes_localize_round_0(graphs):
    t = simulate_localization(
        graphs["B4"], AllVerticesProbes(), RandomWalkRobber(), horizon=3, seed=0
    )
    assert t.localized and t.final_round == 0


def test_empty_probes_never_localize(graphs):
    t = simulate_localization(
        graphs["L3"], FixedProbes([]), StationaryRobber(5), horizon=6, seed=0
    )
    assert not t.localized
    assert all(r["beliefSize"] == 9 for r in t.rounds)


def test_robber_on_cover_vertex_found_round_0(graphs):
    L = make_back_circulant(5)
    cover = min_cover(L)
    start = min((r - 1) * 5 + c for (r, c, _) in cover.entries)
    t = simulate_localization(
        graphs["B5"], CoverProbeStrategy(L, cover), StationaryRobber(start), horizon=4
    )
    assert t.localized and t.final_round == 0
    assert 0 in t.rounds[0]["vector"]


def test_localization_seed_determinism(graphs):
    G = graphs["B5"]
    a = simulate_localization(G, RandomProbes(4), RandomWalkRobber(), 5, seed=3)
    b = simulate_localization(G, RandomProbes(4), RandomWalkRobber(), 5, seed=3)
    assert dumps(a.to_json_dict()) == dumps(b.to_json_dict())


def test_transcript_json_schema(graphs):
    t = simulate_localization(
        graphs["L3"], FixedProbes([1, 2]), StationaryRobber(4), horizon=2
    )
    d = json.loads(dumps(t.to_json_dict()))
    assert d["game"] == "loc"
    for r in d["rounds"]:
        assert set(r) == {"probes", "vector", "beliefSize"}
        assert all(isinstance(x, int) for x in r["vector"])
    assert set(d["outcome"]) == {"localized", "round"}


def test_belief_soundness_random_runs(graphs):
    # simulate_localization asserts the invariant internally every round
    for name in ("L3", "B4", "B5"):
        G = graphs[name]
        for seed in range(200):
            simulate_localization(G, RandomProbes(3), RandomWalkRobber(), 5, seed=seed)


def test_belief_refinement_chain(graphs):
    G = graphs["B4"]
    t = simulate_localization(G, RandomProbes(2), RandomWalkRobber(), 6, seed=11)
    sizes = [r["beliefSize"] for r in t.rounds]
    assert all(s >= 1 for s in sizes)


# ---------------------------------------------------------------------------
# cover strategy


@pytest.mark.parametrize("n", [5, 6, 7])
def test_cover_strategy_localizes_exhaustively(n):
    L = make_back_circulant(n)
    G = build_graph(L)
    rep = exhaustive_localization_check(G, CoverProbeStrategy(L), max_rounds=3)
    assert rep.localized_all
    assert rep.max_phase1_candidates <= 6
    mc = len(min_cover(L).entries)
    cap = min(G.vertex_count, mc + 54)
    assert all(p <= cap for p in rep.max_probes_per_round)
    assert rep.max_probes_per_round[2] <= n + 8


def test_cover_strategy_vs_omniscient_robber(graphs):
    L = make_back_circulant(5)
    t = simulate_localization(
        graphs["B5"], CoverProbeStrategy(L), BeliefMaxRobber(), horizon=5, seed=0
    )
    assert t.localized and t.final_round <= 2


def test_cover_strategy_rejects_small_orders():
    with pytest.raises(ValueError):
        CoverProbeStrategy(make_back_circulant(4))


def test_cover_strategy_midsize_belief_branch(graphs):
    # beliefs of size 3..6 trigger the cover-plus-line-probes phase
    L = make_back_circulant(5)
    policy = CoverProbeStrategy(L)
    policy.reset(graphs["B5"], None)
    mc = len(min_cover(L).entries)
    belief = frozenset({1, 7, 13})
    probes = policy.next_probes(1, belief)
    assert len(probes) == len(set(probes))
    assert len(probes) <= mc + 54
    assert set(policy._cover_ids) <= set(probes)
    # three extra probes per line through each candidate, deduplicated
    for v in belief:
        for line in graphs["B5"].lines_through(v):
            assert len(set(probes) & set(line.vertices)) >= 3


def test_cover_strategy_non_shared_pair_fallback(graphs):
    # two candidates sharing no line: probing all their lines contains the
    # whole expanded belief, so the next filter pins the robber exactly
    G = graphs["B5"]
    L = make_back_circulant(5)
    policy = CoverProbeStrategy(L)
    policy.reset(G, None)
    u, v = 1, 7  # (1,1,1) and (2,2,3): no shared index
    assert not G.adjacent(u, v)
    probes = policy.next_probes(2, frozenset({u, v}))
    expanded = expand_belief(G, frozenset({u, v}))
    assert expanded <= set(probes)


class ScriptedRobber:
    """Replays a fixed trajectory; for oracle-style enumeration."""

    def __init__(self, path):
        self.path = list(path)

    def reset(self, G, rng=None, cop_policy=None):
        self._i = 0

    def initial_position(self, G):
        return self.path[0]

    def move(self, G, current, belief):
        self._i += 1
        return self.path[self._i]


def test_exhaustive_check_matches_direct_trajectory_enumeration(graphs):
    # dual route: simulate every robber trajectory of length 3 and compare
    # with the belief-graph walk, including per-round probe counts
    L = make_back_circulant(5)
    G = graphs["B5"]
    policy_report = exhaustive_localization_check(G, CoverProbeStrategy(L), max_rounds=3)

    all_localized = True
    worst_round = 0
    max_probes = [0, 0, 0]
    for r0 in G.vertices():
        for r1 in G.closed_neighbors(r0):
            for r2 in G.closed_neighbors(r1):
                t = simulate_localization(
                    G, CoverProbeStrategy(L), ScriptedRobber([r0, r1, r2]), horizon=3
                )
                all_localized &= t.localized
                worst_round = max(worst_round, t.final_round)
                for i, r in enumerate(t.rounds):
                    max_probes[i] = max(max_probes[i], len(r["probes"]))

    assert all_localized == policy_report.localized_all == True  # noqa: E712
    assert worst_round == policy_report.max_rounds_used
    assert max_probes == policy_report.max_probes_per_round


def test_exhaustive_check_reports_weak_policy_failure(graphs):
    # probing only the cover forever cannot split the last two candidates
    L = make_back_circulant(5)
    cover = min_cover(L)
    ids = sorted((r - 1) * 5 + c for (r, c, _) in cover.entries)
    rep = exhaustive_localization_check(graphs["B5"], FixedProbes(ids), max_rounds=3)
    assert not rep.localized_all
    assert rep.failure is not None
    rnd, belief = rep.failure
    assert len(belief) >= 2


# ---------------------------------------------------------------------------
# exact localization number


def test_zeta_single_vertex_is_1():
    assert exact_localization_number(build_graph(make_back_circulant(1))) == 1


def test_zeta_k4_is_3(graphs):
    G = graphs["B2"]
    zeta = exact_localization_number(G)
    beta, _ = exact_metric_dimension(G)
    assert beta == 3
    assert zeta == 3
    assert zeta <= beta


def test_zeta_l3_bracket(graphs):
    G = graphs["L3"]
    zeta = exact_localization_number(G)
    beta, _ = exact_metric_dimension(G)
    lower = math.ceil(2 * (3 - 1) / 3)
    assert lower <= zeta <= beta
    assert zeta == 5


def test_zeta_complete_graph_k9(mols_sets):
    # classical fact: the localization number of K_n is n-1
    G = build_graph(mols_sets["2-MOLS(3)"])
    assert G.degree(1) == 8  # K_9
    assert exact_localization_number(G, max_cops=8) == 8


def test_zeta_max_cops_cutoff(graphs):
    assert exact_localization_number(graphs["B2"], max_cops=2) is None


def test_zeta_budget(graphs):
    with pytest.raises(BudgetExceededError):
        exact_localization_number(graphs["B4"])


# ---------------------------------------------------------------------------
# single-round row localization


def test_row_game_b5_value_and_bound(graphs):
    G = graphs["B5"]
    for r in range(1, 6):
        v = row_localization_min_probes(G, G.line("row", r))
        assert v >= math.ceil(2 * 4 / 3)
        assert v == 3


def test_row_game_b7(graphs):
    G = graphs["B7"]
    v = row_localization_min_probes(G, G.line("row", 1))
    assert v >= 4


def test_row_game_line_itself_suffices(graphs):
    # probing the whole line answers distance 0 somewhere: n probes resolve it
    G = graphs["B5"]
    line = G.line("row", 2)
    vectors = {distance_vector(G, line.vertices, v) for v in line.vertices}
    assert len(vectors) == len(line.vertices)
    assert row_localization_min_probes(G, line) <= len(line.vertices)


def test_row_game_budget():
    G = build_graph(make_back_circulant(8))
    with pytest.raises(BudgetExceededError):
        row_localization_min_probes(G, G.line("row", 1))


def test_row_game_works_on_columns_and_symbols(graphs):
    G = graphs["B5"]
    assert row_localization_min_probes(G, G.line("column", 3)) >= 3
    assert row_localization_min_probes(G, G.line("symbol", 2, 1)) >= 3


# ---------------------------------------------------------------------------
# OA partition transform


def test_transform_certifies_n5():
    O = mols_to_oa(make_mols_prime_power(5, 4))
    tr = oa_partition_transform(O, (1, 3, 5))
    assert tr.swap_certified and tr.witness is None
    assert tr.cols_q == (2, 4, 6)


def test_transform_vector_map():
    O = mols_to_oa(make_mols_prime_power(5, 4))
    tr = oa_partition_transform(O, (1, 2))
    gp, gq = tr.graph_p, tr.graph_q
    probes = [1, 7, 20]
    for v in gp.vertices():
        vec_p = distance_vector(gp, probes, v)
        assert tr.map_vector(vec_p) == distance_vector(gq, probes, v)


def test_transform_rejects_non_complete():
    O = mols_to_oa(make_back_circulant(5))
    with pytest.raises(ValueError, match="complete"):
        oa_partition_transform(O, (1, 2))


def test_transform_rejects_bad_subset():
    O = mols_to_oa(make_mols_prime_power(5, 4))
    with pytest.raises(ValueError):
        oa_partition_transform(O, tuple(range(1, O.m + 1)))
    with pytest.raises(ValueError):
        oa_partition_transform(O, (1,))


def test_transform_edge_complement_everywhere():
    O = mols_to_oa(make_mols_prime_power(5, 4))
    for size in range(2, O.m - 1):
        for cols in combinations(range(1, O.m + 1), size):
            tr = oa_partition_transform(O, cols)
            assert tr.swap_certified, cols


# ---------------------------------------------------------------------------
# bounds


def test_loc_bounds_n5_k1_with_mc():
    entries = {e.name: e for e in localization_bounds(5, 1, mc=5)}
    assert entries["loc-lower-row-reveal"].value == pytest.approx(8 / 3)
    assert entries["loc-upper-resolving"].value == 8
    assert entries["loc-upper-cover"].value == 59


def test_loc_bounds_completable_values():
    entries = {e.name: e for e in localization_bounds(9, 7)}
    assert entries["loc-lower-completable"].value == pytest.approx(16 / 3)
    assert not entries["loc-lower-completable"].applies

    entries = {e.name: e for e in localization_bounds(5, 4)}
    assert entries["loc-lower-completable"].value == pytest.approx(4.0)


def test_loc_bounds_reject_bad_input():
    with pytest.raises(ValueError):
        localization_bounds(1, 0)
