"""Squares, MOLS, orthogonal arrays, transversals, covers."""

from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsqgames.errors import BudgetExceededError, InvalidSquareError, NotOrthogonalError
from lsqgames.latin import (
    SUPPORTED_PRIME_POWERS,
    LatinSquare,
    MolsSet,
    are_orthogonal,
    cover_from_partial_transversal,
    dumps,
    find_orthogonal_mate,
    is_cover,
    is_partial_transversal,
    latin_violations,
    make_back_circulant,
    make_cayley_table,
    make_cyclic,
    make_mols_prime_power,
    max_partial_transversal,
    min_cover,
    mols_from_json_dict,
    mols_to_json_dict,
    mols_to_oa,
    oa_to_mols,
    validate_latin,
)


# ---------------------------------------------------------------------------
# independent oracles


def oracle_orthogonal(a, b):
    n = a.n
    pairs = set()
    for r in range(1, n + 1):
        for c in range(1, n + 1):
            pairs.add((a.symbol(r, c), b.symbol(r, c)))
    return len(pairs) == n * n


def oracle_max_partial_transversal_size(L):
    """Brute force over row subsets and injective column assignments."""
    n = L.n
    best = 0
    for size in range(n, 0, -1):
        for rows in combinations(range(1, n + 1), size):
            for cols in permutations(range(1, n + 1), size):
                syms = [L.symbol(r, c) for r, c in zip(rows, cols)]
                if len(set(syms)) == size:
                    return size
        best = 0
    return best


def oracle_min_cover_size(L):
    """Brute force over entry subsets (tiny orders only)."""
    entries = list(L.entries())
    for size in range(1, len(entries) + 1):
        for chosen in combinations(entries, size):
            if is_cover(L, chosen):
                return size
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# generators and validation


def test_back_circulant_5_matches_expected_grid():
    assert make_back_circulant(5).grid == (
        (1, 2, 3, 4, 5),
        (2, 3, 4, 5, 1),
        (3, 4, 5, 1, 2),
        (4, 5, 1, 2, 3),
        (5, 1, 2, 3, 4),
    )


def test_back_circulant_trivial_cases():
    assert make_back_circulant(1).grid == ((1,),)
    assert make_back_circulant(4).symbol(2, 3) == 4  # 2+3-1


def test_back_circulant_is_latin():
    for n in range(1, 10):
        assert latin_violations(make_back_circulant(n).grid) == []


def test_validate_latin_accepts_order3():
    L = validate_latin([(1, 2, 3), (2, 3, 1), (3, 1, 2)])
    assert L.n == 3


def test_validate_latin_reports_column_duplicates():
    with pytest.raises(InvalidSquareError) as err:
        validate_latin([(1, 2), (1, 2)])
    assert ("column", 1, 1) in err.value.violations
    assert ("column", 2, 2) in err.value.violations


def test_validate_latin_reports_row_duplicates():
    violations = latin_violations([(1, 1), (2, 2)])
    assert ("row", 1, 1) in violations
    assert ("row", 2, 2) in violations


def test_validate_latin_malformed_input():
    with pytest.raises(ValueError, match="not square"):
        latin_violations([(1, 2, 3), (2, 3, 1)])
    with pytest.raises(ValueError, match="out of range"):
        latin_violations([(1, 7), (2, 1)])


def test_cayley_z2z2_structure():
    L = make_cayley_table([2, 2])
    assert L.grid == ((1, 2, 3, 4), (2, 1, 4, 3), (3, 4, 1, 2), (4, 3, 2, 1))


def test_cyclic_multiplier_must_be_coprime():
    with pytest.raises(ValueError):
        make_cyclic(6, 2)
    assert make_cyclic(5, 2).n == 5


# ---------------------------------------------------------------------------
# orthogonality


def test_orthogonal_self_fails():
    L = make_back_circulant(3)
    assert not are_orthogonal(L, L)


def test_orthogonal_cyclic_order3():
    a, b = make_cyclic(3, 1), make_cyclic(3, 2)
    assert are_orthogonal(a, b)
    assert oracle_orthogonal(a, b)


def test_no_orthogonal_pair_of_order2():
    squares = [LatinSquare(((1, 2), (2, 1))), LatinSquare(((2, 1), (1, 2)))]
    for a in squares:
        for b in squares:
            assert not are_orthogonal(a, b)


def test_orthogonality_symmetric(squares):
    a, b = make_cyclic(5, 1), make_cyclic(5, 2)
    assert are_orthogonal(a, b) == are_orthogonal(b, a)


def test_orthogonal_order_mismatch():
    with pytest.raises(ValueError):
        are_orthogonal(make_back_circulant(3), make_back_circulant(4))


def test_mols_set_rejects_non_orthogonal():
    L = make_back_circulant(3)
    with pytest.raises(NotOrthogonalError):
        MolsSet.of([L, L])


@pytest.mark.parametrize("q", SUPPORTED_PRIME_POWERS)
def test_mols_prime_power_complete_sets(q):
    M = make_mols_prime_power(q, q - 1)  # construction self-checks invariants
    assert M.k == q - 1
    for a, b in combinations(M.squares, 2):
        assert oracle_orthogonal(a, b)


@pytest.mark.parametrize("q", [3, 4, 5, 8, 9])
def test_mols_prime_power_every_k(q):
    for k in range(1, q):
        M = make_mols_prime_power(q, k)
        assert (M.n, M.k) == (q, k)


def test_mols_prime_power_rejects_bad_input():
    with pytest.raises(ValueError):
        make_mols_prime_power(6, 1)
    with pytest.raises(ValueError):
        make_mols_prime_power(5, 5)
    with pytest.raises(ValueError):
        make_mols_prime_power(17, 1)


# ---------------------------------------------------------------------------
# orthogonal arrays


def test_mols_to_oa_l3():
    O = mols_to_oa(make_back_circulant(3))
    assert (O.n, O.m) == (3, 3)
    assert O.rows[0] == (1, 1, 1)
    assert O.rows[(2 - 1) * 3 + 3 - 1] == (2, 3, 1)


def test_mols_to_oa_trivial():
    O = mols_to_oa(make_back_circulant(1))
    assert O.rows == ((1, 1, 1),)


def test_oa_round_trip(mols_sets):
    for name, M in mols_sets.items():
        back = oa_to_mols(mols_to_oa(M), (1, 2))
        assert back == M, name


def test_oa_conjugate_is_latin():
    O = mols_to_oa(make_back_circulant(3))
    conj = oa_to_mols(O, (1, 3))
    assert conj.k == 1
    assert latin_violations(conj.squares[0].grid) == []


def test_oa_complete_set_coverage():
    O = mols_to_oa(make_mols_prime_power(5, 4))
    assert O.m == 6
    assert O.coverage_violation() is None


def test_oa_to_mols_invalid_columns():
    O = mols_to_oa(make_back_circulant(3))
    with pytest.raises(ValueError):
        oa_to_mols(O, (1, 1))
    with pytest.raises(ValueError):
        oa_to_mols(O, (0, 2))


# ---------------------------------------------------------------------------
# transversals


def test_transversal_b5_has_deficit_0():
    T = max_partial_transversal(make_back_circulant(5))
    assert T.deficit == 0 and T.exact
    assert is_partial_transversal(make_back_circulant(5), T.entries)


def test_transversal_b2_deficit_1():
    T = max_partial_transversal(make_back_circulant(2))
    assert len(T.entries) == 1 and T.deficit == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_transversal_matches_bruteforce(n):
    L = make_back_circulant(n)
    assert len(max_partial_transversal(L).entries) == oracle_max_partial_transversal_size(L)


def test_transversal_b4_has_deficit_1():
    assert max_partial_transversal(make_back_circulant(4)).deficit == 1


def test_transversal_budget():
    with pytest.raises(BudgetExceededError):
        max_partial_transversal(make_back_circulant(13), allow_heuristic=False)
    T = max_partial_transversal(make_back_circulant(13))
    assert not T.exact
    assert is_partial_transversal(make_back_circulant(13), T.entries)


# ---------------------------------------------------------------------------
# covers


def test_min_cover_b5_is_5():
    C = min_cover(make_back_circulant(5))
    assert len(C.entries) == 5
    assert is_cover(make_back_circulant(5), C.entries)


def test_min_cover_b2_is_3_bruteforce():
    L = make_back_circulant(2)
    C = min_cover(L)
    assert len(C.entries) == 3 == oracle_min_cover_size(L)


def test_min_cover_order1():
    C = min_cover(make_back_circulant(1))
    assert C.entries == frozenset({(1, 1, 1)})


def test_min_cover_at_least_n():
    for n in range(1, 8):
        assert len(min_cover(make_back_circulant(n)).entries) >= n


def test_mc_back_circulant_odd_equals_n():
    for n in (3, 5, 7, 9):
        assert len(min_cover(make_back_circulant(n)).entries) == n


def test_cover_from_transversal_is_transversal_itself():
    L = make_back_circulant(5)
    T = max_partial_transversal(L)
    C = cover_from_partial_transversal(L, T)
    assert C.entries == T.entries


@pytest.mark.parametrize("n", [2, 4, 6])
def test_cover_completion_bound(n):
    L = make_back_circulant(n)
    T = max_partial_transversal(L)
    C = cover_from_partial_transversal(L, T)
    assert is_cover(L, C.entries)
    assert len(C.entries) <= n + 2 * T.deficit
    assert len(C.entries) >= len(min_cover(L).entries)


def test_cover_rejects_foreign_entries():
    L = make_back_circulant(3)
    from lsqgames.latin import PartialTransversal

    bogus = PartialTransversal(3, frozenset({(1, 1, 2)}))
    with pytest.raises(ValueError):
        cover_from_partial_transversal(L, bogus)


# ---------------------------------------------------------------------------
# orthogonal mates


def test_mate_of_cyclic3_is_other_cyclic():
    mate = find_orthogonal_mate(make_cyclic(3, 1))
    assert mate is not None
    assert are_orthogonal(mate, make_cyclic(3, 1))


def test_mate_of_b2_none():
    assert find_orthogonal_mate(make_back_circulant(2)) is None


def test_mate_extends_2mols4_to_3mols4():
    M = MolsSet.of(make_mols_prime_power(4, 3).squares[:2])
    mate = find_orthogonal_mate(M)
    assert mate is not None
    MolsSet.of(M.squares + (mate,))  # passes invariants


def test_mate_budget():
    with pytest.raises(BudgetExceededError):
        find_orthogonal_mate(make_back_circulant(9))


# ---------------------------------------------------------------------------
# JSON round trips


def test_square_json_round_trip(mols_sets):
    for M in mols_sets.values():
        d = mols_to_json_dict(M)
        assert mols_from_json_dict(d) == M


def test_json_byte_determinism():
    M = make_mols_prime_power(4, 3)
    assert dumps(mols_to_json_dict(M)) == dumps(mols_to_json_dict(M))


def test_json_rejects_corrupt_grid():
    d = mols_to_json_dict(make_back_circulant(3))
    d["squares"][0][0][0] = 2
    with pytest.raises(InvalidSquareError):
        mols_from_json_dict(d)


# ---------------------------------------------------------------------------
# property: isotopies preserve the latin property


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 6), st.randoms(use_true_random=False))
def test_row_column_symbol_shuffles_stay_latin(n, rand):
    base = make_back_circulant(n)
    rows = list(range(n))
    cols = list(range(n))
    sym = list(range(1, n + 1))
    rand.shuffle(rows)
    rand.shuffle(cols)
    rand.shuffle(sym)
    grid = [[sym[base.grid[r][c] - 1] for c in cols] for r in rows]
    assert latin_violations(grid) == []
