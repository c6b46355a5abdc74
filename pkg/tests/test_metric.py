"""Resolving sets, exact metric dimension, constructions, case tables."""

import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsqgames.bounds import best_lower
from lsqgames.errors import BudgetExceededError
from lsqgames.graphs import build_graph
from lsqgames.latin import make_back_circulant, make_cayley_table, make_mols_prime_power
from lsqgames.metric import (
    back_circulant_resolving,
    back_circulant_transversal,
    distance_vector,
    exact_metric_dimension,
    find_intercalate,
    find_three_symbol_config,
    is_resolving,
    metric_dimension_bounds,
    rowcol_resolving_set,
    two_columns_plus_one_resolving_set,
    two_columns_resolving_set,
    verify_backcirculant_case_analysis,
)

L3_TWIN_CLASSES = [{1, 5, 9}, {2, 6, 7}, {3, 4, 8}]


def oracle_metric_dimension(G):
    """Plain ascending subset enumeration over distance vectors."""
    verts = list(G.vertices())
    for size in range(1, len(verts) + 1):
        for probes in combinations(verts, size):
            vectors = {distance_vector(G, probes, v) for v in verts}
            if len(vectors) == len(verts):
                return size
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# is_resolving


def test_all_vertices_resolve(graphs):
    G = graphs["B4"]
    ok, witness = is_resolving(G, list(G.vertices()))
    assert ok and witness is None


def test_single_probe_fails(graphs):
    G = graphs["L3"]
    ok, witness = is_resolving(G, [1])
    assert not ok and witness is not None
    u, v = witness
    assert distance_vector(G, [1], u) == distance_vector(G, [1], v)


def test_l3_twin_classes_are_twins(graphs):
    G = graphs["L3"]
    for cls in L3_TWIN_CLASSES:
        for u, v in combinations(sorted(cls), 2):
            assert not G.adjacent(u, v)
            assert G.open_mask(u) == G.open_mask(v)


def test_two_probes_per_twin_class_resolve(graphs):
    G = graphs["L3"]
    probes = [1, 5, 2, 6, 3, 4]  # two from each twin class
    ok, _ = is_resolving(G, probes)
    assert ok


def test_twin_obstruction(graphs):
    # only probes inside a twin pair split it, so a class of three mutual
    # twins needs at least two probes and a resolving set hits every pair
    G = graphs["L3"]
    for cls in L3_TWIN_CLASSES:
        rest = [v for v in G.vertices() if v not in cls]
        two = sorted(cls)[:2]
        assert is_resolving(G, rest + two)[0]
        assert not is_resolving(G, rest + two[:1])[0]
        assert not is_resolving(G, rest)[0]


# ---------------------------------------------------------------------------
# exact metric dimension


def test_beta_l3_is_6(graphs):
    beta, witness = exact_metric_dimension(graphs["L3"])
    assert beta == 6
    assert is_resolving(graphs["L3"], witness)[0]


@pytest.mark.parametrize("name", ["B2", "L3"])
def test_beta_matches_bruteforce(graphs, name):
    G = graphs[name]
    beta, _ = exact_metric_dimension(G)
    assert beta == oracle_metric_dimension(G)


def test_beta_witness_is_lexicographic_least(graphs):
    G = graphs["L3"]
    beta, witness = exact_metric_dimension(G)
    for probes in combinations(G.vertices(), beta):
        if is_resolving(G, probes)[0]:
            assert tuple(witness) == probes
            break


def test_beta_b4_b5_within_bounds(graphs):
    for name in ("B4", "Z2Z2", "B5", "Cyc5x2"):
        G = graphs[name]
        beta, witness = exact_metric_dimension(G)
        n = G.n
        lower = best_lower(metric_dimension_bounds(n, 1))
        assert math.ceil(lower) <= beta <= 2 * n - 2
        assert is_resolving(G, witness)[0]


def test_beta_budget(graphs):
    with pytest.raises(BudgetExceededError):
        exact_metric_dimension(graphs["B7"])


def test_beta_b6_within_bounds(graphs):
    beta, witness = exact_metric_dimension(graphs["B6"])
    assert beta == 6
    assert is_resolving(graphs["B6"], witness)[0]
    lower = best_lower(metric_dimension_bounds(6, 1))
    assert math.ceil(lower) <= beta <= 2 * 6 - 2


def test_beta_disconnected_agreement_graph():
    # one-column agreement graph of an order-4 OA: four disjoint K_4s;
    # same-clique vertices are twins, so each clique needs three probes
    from lsqgames.graphs import agreement_graph
    from lsqgames.latin import mols_to_oa

    O = mols_to_oa(make_back_circulant(4))
    H = agreement_graph(O, [1])
    beta, witness = exact_metric_dimension(H)
    assert beta == 12
    assert is_resolving(H, witness)[0]


@settings(max_examples=20, deadline=None)
@given(st.randoms(use_true_random=False))
def test_resolving_superset_monotone(rand):
    G = build_graph(make_back_circulant(4))
    beta, witness = exact_metric_dimension(G)
    extra = [v for v in G.vertices() if v not in witness]
    rand.shuffle(extra)
    superset = list(witness) + extra[: rand.randint(0, len(extra))]
    assert is_resolving(G, superset)[0]


# ---------------------------------------------------------------------------
# constructions


def test_rowcol_l3_is_all_vertices(graphs):
    probes = rowcol_resolving_set(make_back_circulant(3))
    assert len(probes) == 9
    assert is_resolving(graphs["L3"], probes)[0]


def test_rowcol_b5(graphs):
    probes = rowcol_resolving_set(make_back_circulant(5))
    assert len(probes) == 21
    assert is_resolving(graphs["B5"], probes)[0]


def test_rowcol_2mols5():
    M = make_mols_prime_power(5, 2)
    probes = rowcol_resolving_set(M)
    assert len(probes) == 4 * (10 - 4)
    assert is_resolving(build_graph(M), probes)[0]


def test_rowcol_needs_enough_rows():
    with pytest.raises(ValueError):
        rowcol_resolving_set(make_mols_prime_power(4, 3))  # n=4 < k+2=5


def test_three_symbol_config_b5():
    assert find_three_symbol_config(make_back_circulant(5)) == (1, 1, 2, 2)


def test_three_symbol_config_z2z2_none():
    Z = make_cayley_table([2, 2])
    assert find_three_symbol_config(Z) is None
    assert find_intercalate(Z) == (1, 1, 2, 2)


def test_three_symbol_config_l3():
    # full scan oracle: L3 entries are (r+c-2 mod 3)+1
    L = make_back_circulant(3)
    config = find_three_symbol_config(L)
    if config is not None:
        r1, c1, r2, c2 = config
        s = {L.symbol(r1, c1), L.symbol(r1, c2), L.symbol(r2, c2)}
        assert L.symbol(r1, c2) == L.symbol(r2, c1)
        assert len(s) == 3


@pytest.mark.parametrize("n,size", [(5, 7), (7, 11)])
def test_two_columns_construction(n, size):
    L = make_back_circulant(n)
    probes = two_columns_resolving_set(L)
    assert len(probes) == size == 2 * n - 3
    assert is_resolving(build_graph(L), probes)[0]


def test_two_columns_rejects_small_order():
    with pytest.raises(ValueError, match="order >= 5"):
        two_columns_resolving_set(make_back_circulant(4))


def test_two_columns_plus_one():
    for L, cap in [
        (make_cayley_table([2, 2]), 6),
        (make_back_circulant(5), 8),
        (make_back_circulant(6), 10),
    ]:
        probes = two_columns_plus_one_resolving_set(L)
        assert len(probes) <= cap
        assert is_resolving(build_graph(L), probes)[0]


def test_two_columns_plus_one_rejects_order3():
    with pytest.raises(ValueError):
        two_columns_plus_one_resolving_set(make_back_circulant(3))


def test_two_columns_plus_one_on_xor_table_order8():
    # elementary abelian 2-groups have no three-distinct-symbol config at
    # any order, exercising the subsquare-plus-extra-probe branch at n >= 5
    Z8 = make_cayley_table([2, 2, 2])
    assert find_three_symbol_config(Z8) is None
    probes = two_columns_plus_one_resolving_set(Z8)
    assert len(probes) == 14 == 2 * 8 - 2
    assert is_resolving(build_graph(Z8), probes)[0]


# ---------------------------------------------------------------------------
# back-circulant transversal construction


def test_transversal_entries_are_valid():
    for n in (11, 13):
        for offset in (0, 1):
            B = make_back_circulant(n)
            entries = back_circulant_transversal(n, offset)
            assert len({r for r, _, _ in entries}) == n
            assert len({c for _, c, _ in entries}) == n
            assert len({s for _, _, s in entries}) == n
            assert all(B.symbol(r, c) == s for r, c, s in entries)


def test_back_circulant_resolving_11_13():
    for n in (11, 13):
        for offset in (0, 1):
            rep = back_circulant_resolving(n, offset)
            assert len(rep.probes) == n - 1
            assert rep.resolving, (n, offset, rep.witness)


def test_back_circulant_resolving_rejects_divisible():
    with pytest.raises(ValueError):
        back_circulant_resolving(6)
    with pytest.raises(ValueError):
        back_circulant_resolving(35)  # 5 and 7 divide


# ---------------------------------------------------------------------------
# case-analysis tables


def test_case_analysis_single_pair():
    rep = verify_backcirculant_case_analysis(11, 1, 2)
    assert rep["ok"]
    assert len(set(rep["third_cops"])) == 6
    pairs = {tuple(c["pair"]) for c in rep["congruences"]}
    assert pairs == {(e, f) for e in range(1, 7) for f in range(e + 1, 7)}


@pytest.mark.parametrize("n", [11, 13])
def test_case_analysis_all_pairs(n):
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            assert verify_backcirculant_case_analysis(n, i, j)["ok"], (n, i, j)


def test_case_analysis_rejects_bad_input():
    with pytest.raises(ValueError):
        verify_backcirculant_case_analysis(12, 1, 2)
    with pytest.raises(ValueError):
        verify_backcirculant_case_analysis(11, 3, 3)


def test_case_analysis_coefficients_are_small_prime_smooth():
    rep = verify_backcirculant_case_analysis(13, 3, 7)
    for c in rep["congruences"]:
        x = c["coefficient"]
        for p in (2, 3, 5, 7):
            while x % p == 0:
                x //= p
        assert x == 1


# ---------------------------------------------------------------------------
# bounds


def test_bounds_n5_k1_values():
    entries = {e.name: e for e in metric_dimension_bounds(5, 1)}
    assert entries["md-lower-degree-count"].value == pytest.approx(3.0)
    assert entries["md-lower-uncovered-rows"].value == pytest.approx(
        5 - math.sqrt(5 / 3 + 37 / 36) + 1 / 6
    )
    assert entries["md-upper-two-columns-plus-one"].value == 8


def test_bounds_n3_k1_mdmain():
    entries = {e.name: e for e in metric_dimension_bounds(3, 1)}
    assert entries["md-lower-uncovered-rows"].value == pytest.approx(
        3 - math.sqrt(3 / 3 + 37 / 36) + 1 / 6
    )
    # exact beta = 6 does not contradict the lower bounds
    assert entries["md-lower-uncovered-rows"].value <= 6


def test_bounds_n10_k2():
    entries = {e.name: e for e in metric_dimension_bounds(10, 2)}
    assert entries["md-lower-degree-count"].value == pytest.approx(198 / 40)
    assert entries["md-upper-rowcol"].value == 4 * (20 - 4)
    assert "md-upper-two-columns" not in entries  # k = 1 only


# ---------------------------------------------------------------------------
# probe-set JSON


def test_probe_set_json(graphs):
    from lsqgames.metric import probe_set_to_json_dict, resolving_report_to_json_dict

    assert probe_set_to_json_dict((1, 5, 9)) == {"vertices": [1, 5, 9]}
    report = resolving_report_to_json_dict(graphs["L3"], [1])
    assert report["resolving"] is False
    assert len(report["witness"]) == 2
    full = resolving_report_to_json_dict(graphs["L3"], list(range(1, 10)))
    assert full["resolving"] is True and full["witness"] is None
