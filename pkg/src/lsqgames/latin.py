"""Latin squares, MOLS sets, orthogonal arrays, transversals, and covers.

Indices are 1-based in every public value: rows, columns, and symbols all
range over [n] = {1, ..., n}. Grids are stored as tuples of tuples so all
objects are immutable and hashable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BudgetExceededError, InvalidSquareError, NotOrthogonalError

Triple = tuple[int, int, int]

# Exact-search budgets (orders). Overridable per call; exceeding a budget
# raises BudgetExceededError unless the caller opted into a heuristic.
EXACT_TRANSVERSAL_LIMIT = 12
EXACT_COVER_LIMIT = 10
MATE_SEARCH_LIMIT = 8

SUPPORTED_PRIME_POWERS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)


@dataclass(frozen=True)
class LatinSquare:
    """An order-n latin square with symbols 1..n."""

    grid: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.grid)

    def symbol(self, r: int, c: int) -> int:
        """Symbol in row r and column c (1-based)."""
        return self.grid[r - 1][c - 1]

    def entries(self) -> Iterator[Triple]:
        """All (row, col, symbol) triples in row-major order."""
        for r, row in enumerate(self.grid, start=1):
            for c, s in enumerate(row, start=1):
                yield (r, c, s)

    def symbol_position(self, r: int, s: int) -> int:
        """Column holding symbol s in row r."""
        return self.grid[r - 1].index(s) + 1

    def __str__(self) -> str:
        return "\n".join(" ".join(str(s) for s in row) for row in self.grid)


def latin_violations(grid: Sequence[Sequence[int]]) -> list[tuple[str, int, int]]:
    """Duplicate-symbol violations of the latin property.

    Returns (kind, line-index, symbol) for every symbol repeated on a row
    or column. Raises ValueError for a non-square grid or out-of-range
    symbols, which are malformed input rather than latin violations.
    """
    n = len(grid)
    if any(len(row) != n for row in grid):
        raise ValueError("grid is not square")
    for row in grid:
        for s in row:
            if not isinstance(s, int) or not 1 <= s <= n:
                raise ValueError(f"symbol {s!r} out of range 1..{n}")
    violations = []
    for i, row in enumerate(grid, start=1):
        seen = set()
        for s in row:
            if s in seen:
                violations.append(("row", i, s))
            seen.add(s)
    for j in range(n):
        seen = set()
        for i in range(n):
            s = grid[i][j]
            if s in seen:
                violations.append(("column", j + 1, s))
            seen.add(s)
    return violations


def validate_latin(grid: Sequence[Sequence[int]]) -> LatinSquare:
    """Validate a grid and wrap it, raising InvalidSquareError on failure."""
    violations = latin_violations(grid)
    if violations:
        raise InvalidSquareError(violations)
    return LatinSquare(tuple(tuple(row) for row in grid))


def are_orthogonal(a: LatinSquare, b: LatinSquare) -> bool:
    """True iff superposing a and b yields n^2 distinct ordered pairs."""
    if a.n != b.n:
        raise ValueError(f"order mismatch: {a.n} vs {b.n}")
    n = a.n
    pairs = {
        (a.grid[i][j], b.grid[i][j]) for i in range(n) for j in range(n)
    }
    return len(pairs) == n * n


@dataclass(frozen=True)
class MolsSet:
    """k mutually orthogonal latin squares of a common order n."""

    squares: tuple[LatinSquare, ...]

    @classmethod
    def of(cls, squares: Sequence[LatinSquare]) -> "MolsSet":
        squares = tuple(squares)
        if not squares:
            raise ValueError("empty MOLS set")
        n = squares[0].n
        if any(sq.n != n for sq in squares):
            raise ValueError("squares have mixed orders")
        for i in range(len(squares)):
            for j in range(i + 1, len(squares)):
                if not are_orthogonal(squares[i], squares[j]):
                    raise NotOrthogonalError(i + 1, j + 1)
        return cls(squares)

    @classmethod
    def single(cls, square: LatinSquare) -> "MolsSet":
        return cls((square,))

    @property
    def n(self) -> int:
        return self.squares[0].n

    @property
    def k(self) -> int:
        return len(self.squares)

    def entry(self, r: int, c: int) -> tuple[int, int, tuple[int, ...]]:
        """The entry (r, c, s_1, ..., s_k) at a cell."""
        return (r, c, tuple(sq.symbol(r, c) for sq in self.squares))


def as_mols(obj: LatinSquare | MolsSet) -> MolsSet:
    """Coerce a single square to a 1-square MOLS set."""
    if isinstance(obj, LatinSquare):
        return MolsSet.single(obj)
    return obj


# ---------------------------------------------------------------------------
# Generators


def make_back_circulant(n: int) -> LatinSquare:
    """The back-circulant square B_n with B_n[i,j] = i+j-1 (mod n, 0 -> n)."""
    if n < 1:
        raise ValueError("order must be positive")
    grid = tuple(
        tuple((i + j - 2) % n + 1 for j in range(1, n + 1))
        for i in range(1, n + 1)
    )
    return LatinSquare(grid)


def make_cyclic(n: int, multiplier: int = 1) -> LatinSquare:
    """The cyclic square L[i,j] = a*(i-1) + (j-1) mod n, shifted to 1..n.

    Requires gcd(a, n) = 1 so columns stay latin. multiplier=1 gives B_n.
    """
    import math

    if n < 1:
        raise ValueError("order must be positive")
    a = multiplier % n
    if math.gcd(a, n) != 1 and n > 1:
        raise ValueError(f"multiplier {multiplier} not coprime to {n}")
    grid = tuple(
        tuple((a * i + j) % n + 1 for j in range(n)) for i in range(n)
    )
    return LatinSquare(grid)


def make_cayley_table(orders: Sequence[int]) -> LatinSquare:
    """Cayley table of a direct product of cyclic groups Z_{d1} x ... x Z_{dm}.

    Elements are enumerated in mixed-radix order; make_cayley_table([2, 2])
    is the addition table of Z_2 x Z_2.
    """
    orders = list(orders)
    if not orders or any(d < 1 for d in orders):
        raise ValueError("group orders must be positive")
    n = 1
    for d in orders:
        n *= d

    def digits(x: int) -> tuple[int, ...]:
        out = []
        for d in reversed(orders):
            out.append(x % d)
            x //= d
        return tuple(reversed(out))

    def index(ds: tuple[int, ...]) -> int:
        x = 0
        for d, v in zip(orders, ds):
            x = x * d + v
        return x

    elements = [digits(x) for x in range(n)]
    grid = tuple(
        tuple(
            index(tuple((a + b) % d for a, b, d in zip(ea, eb, orders))) + 1
            for eb in elements
        )
        for ea in elements
    )
    return LatinSquare(grid)


# ---------------------------------------------------------------------------
# Small finite fields, from fixed irreducible polynomials

# q -> (p, e, reduction of x^e as low-to-high coefficients)
_FIELD_POLY = {
    4: (2, 2, (1, 1)),        # x^2 = x + 1
    8: (2, 3, (1, 1, 0)),     # x^3 = x + 1
    9: (3, 2, (1, 2)),        # x^2 = 2x + 1   (from x^2 + x + 2 over GF(3))
    16: (2, 4, (1, 1, 0, 0)),  # x^4 = x + 1
}

_FIELD_CACHE: dict[int, tuple[list[list[int]], list[list[int]]]] = {}


def _field_tables(q: int) -> tuple[list[list[int]], list[list[int]]]:
    """(add, mul) tables for GF(q), elements encoded as base-p digit ints."""
    if q in _FIELD_CACHE:
        return _FIELD_CACHE[q]
    p, e, red = _FIELD_POLY[q]

    def to_digits(x: int) -> list[int]:
        ds = []
        for _ in range(e):
            ds.append(x % p)
            x //= p
        return ds

    def from_digits(ds: Sequence[int]) -> int:
        x = 0
        for d in reversed(ds):
            x = x * p + d
        return x

    def poly_mul(a: list[int], b: list[int]) -> list[int]:
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        # fold degrees >= e down using x^e = red
        for d in range(2 * e - 2, e - 1, -1):
            coef = prod[d]
            if coef:
                prod[d] = 0
                for t, rt in enumerate(red):
                    prod[d - e + t] = (prod[d - e + t] + coef * rt) % p
        return prod[:e]

    add = [[0] * q for _ in range(q)]
    mul = [[0] * q for _ in range(q)]
    for x in range(q):
        dx = to_digits(x)
        for y in range(q):
            dy = to_digits(y)
            add[x][y] = from_digits([(a + b) % p for a, b in zip(dx, dy)])
            mul[x][y] = from_digits(poly_mul(dx, dy))
    _FIELD_CACHE[q] = (add, mul)
    return add, mul


def make_mols_prime_power(q: int, k: int) -> MolsSet:
    """k mutually orthogonal squares of prime-power order q <= 16.

    Square a (a a nonzero field element) is L_a[i,j] = a*i + j evaluated in
    GF(q); any k distinct nonzero multipliers give a k-MOLS(q). k = q-1
    yields a complete set.
    """
    if q not in SUPPORTED_PRIME_POWERS:
        raise ValueError(f"unsupported order {q}; supported: {SUPPORTED_PRIME_POWERS}")
    if not 1 <= k <= q - 1:
        raise ValueError(f"k must be in 1..{q - 1}, got {k}")
    if q in _FIELD_POLY:
        add, mul = _field_tables(q)
    else:
        add = [[(x + y) % q for y in range(q)] for x in range(q)]
        mul = [[(x * y) % q for y in range(q)] for x in range(q)]
    squares = []
    for a in range(1, k + 1):
        grid = tuple(
            tuple(add[mul[a][i]][j] + 1 for j in range(q)) for i in range(q)
        )
        squares.append(LatinSquare(grid))
    return MolsSet.of(squares)


# ---------------------------------------------------------------------------
# Orthogonal arrays


@dataclass(frozen=True)
class OrthogonalArray:
    """An OA(m, n): n^2 rows of length m with every column pair covering
    [n] x [n] exactly once."""

    n: int
    m: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, n: int, m: int, rows: Sequence[Sequence[int]]) -> "OrthogonalArray":
        rows = tuple(tuple(r) for r in rows)
        oa = cls(n, m, rows)
        bad = oa.coverage_violation()
        if bad is not None:
            raise ValueError(f"not an orthogonal array: {bad}")
        return oa

    def coverage_violation(self):
        """None if valid, else a description of the first failed check."""
        if len(self.rows) != self.n * self.n:
            return f"expected {self.n * self.n} rows, got {len(self.rows)}"
        for r in self.rows:
            if len(r) != self.m:
                return f"row {r} has length {len(r)} != {self.m}"
            if any(not 1 <= x <= self.n for x in r):
                return f"row {r} has out-of-range symbol"
        for a in range(self.m):
            for b in range(a + 1, self.m):
                pairs = {(r[a], r[b]) for r in self.rows}
                if len(pairs) != self.n * self.n:
                    return f"columns {a + 1},{b + 1} miss some pair"
        return None


def mols_to_oa(M: LatinSquare | MolsSet) -> OrthogonalArray:
    """OA(k+2, n) of a MOLS set: row, column, then one symbol per square.

    Rows are emitted in cell order (r-1)*n + c ascending.
    """
    M = as_mols(M)
    n = M.n
    rows = []
    for r in range(1, n + 1):
        for c in range(1, n + 1):
            rows.append((r, c) + tuple(sq.symbol(r, c) for sq in M.squares))
    return OrthogonalArray.of(n, M.k + 2, rows)


def oa_to_mols(O: OrthogonalArray, row_col: tuple[int, int] = (1, 2)) -> MolsSet:
    """Read a MOLS set back out of an OA, using two columns as coordinates.

    Any two distinct columns may serve as the row and column coordinates;
    the remaining m-2 columns become the squares, in their original order.
    Round-trips with mols_to_oa when row_col = (1, 2).
    """
    if O.m < 3:
        raise ValueError("need at least 3 columns")
    a, b = row_col
    if a == b or not (1 <= a <= O.m) or not (1 <= b <= O.m):
        raise ValueError(f"invalid coordinate columns {row_col}")
    n = O.n
    others = [t for t in range(O.m) if t not in (a - 1, b - 1)]
    grids = [[[0] * n for _ in range(n)] for _ in others]
    for row in O.rows:
        r, c = row[a - 1], row[b - 1]
        for gi, t in enumerate(others):
            grids[gi][r - 1][c - 1] = row[t]
    return MolsSet.of([validate_latin(g) for g in grids])


# ---------------------------------------------------------------------------
# Transversals


@dataclass(frozen=True)
class PartialTransversal:
    """Entries with pairwise-distinct rows, columns, and symbols."""

    n: int
    entries: frozenset[Triple]
    exact: bool = True

    @property
    def deficit(self) -> int:
        return self.n - len(self.entries)


def is_partial_transversal(L: LatinSquare, entries) -> bool:
    entries = list(entries)
    if any(L.symbol(r, c) != s for (r, c, s) in entries):
        return False
    rows = {e[0] for e in entries}
    cols = {e[1] for e in entries}
    syms = {e[2] for e in entries}
    return len(rows) == len(cols) == len(syms) == len(entries)


def max_partial_transversal(
    L: LatinSquare,
    exact_limit: int = EXACT_TRANSVERSAL_LIMIT,
    allow_heuristic: bool = True,
) -> PartialTransversal:
    """A maximum partial transversal, exact for n <= exact_limit.

    Beyond the budget a deterministic greedy heuristic is used and the
    result is flagged exact=False; pass allow_heuristic=False to get a
    BudgetExceededError instead.
    """
    n = L.n
    if n > exact_limit:
        if not allow_heuristic:
            raise BudgetExceededError("max_partial_transversal order", n, exact_limit)
        return _greedy_partial_transversal(L)

    best: list[Triple] = []
    chosen: list[Triple] = []

    def dfs(row: int, used_cols: int, used_syms: int):
        nonlocal best
        remaining = n - row + 1
        if len(chosen) + remaining <= len(best):
            return
        if row > n:
            if len(chosen) > len(best):
                best = list(chosen)
            return
        for c in range(1, n + 1):
            s = L.symbol(row, c)
            if not (used_cols >> c) & 1 and not (used_syms >> s) & 1:
                chosen.append((row, c, s))
                dfs(row + 1, used_cols | (1 << c), used_syms | (1 << s))
                chosen.pop()
        dfs(row + 1, used_cols, used_syms)  # leave this row empty

    dfs(1, 0, 0)
    return PartialTransversal(n, frozenset(best), exact=True)


def _greedy_partial_transversal(L: LatinSquare) -> PartialTransversal:
    n = L.n
    best: list[Triple] = []
    # deterministic restarts over rotated row orders
    for shift in range(n):
        chosen = []
        used_cols = used_syms = 0
        for i in range(n):
            row = (i + shift) % n + 1
            for c in range(1, n + 1):
                s = L.symbol(row, c)
                if not (used_cols >> c) & 1 and not (used_syms >> s) & 1:
                    chosen.append((row, c, s))
                    used_cols |= 1 << c
                    used_syms |= 1 << s
                    break
        if len(chosen) > len(best):
            best = chosen
    return PartialTransversal(n, frozenset(best), exact=False)


# ---------------------------------------------------------------------------
# Covers


@dataclass(frozen=True)
class Cover:
    """Entries hitting every row, column, and symbol at least once."""

    n: int
    entries: frozenset[Triple]
    exact: bool = True


def is_cover(L: LatinSquare, entries) -> bool:
    entries = list(entries)
    if any(L.symbol(r, c) != s for (r, c, s) in entries):
        return False
    n = L.n
    rows = {e[0] for e in entries}
    cols = {e[1] for e in entries}
    syms = {e[2] for e in entries}
    full = set(range(1, n + 1))
    return rows == full and cols == full and syms == full


def _greedy_cover(L: LatinSquare) -> list[Triple]:
    n = L.n
    uncovered_rows = set(range(1, n + 1))
    uncovered_cols = set(range(1, n + 1))
    uncovered_syms = set(range(1, n + 1))
    chosen = []
    entries = list(L.entries())
    while uncovered_rows or uncovered_cols or uncovered_syms:
        def gain(e):
            r, c, s = e
            return (r in uncovered_rows) + (c in uncovered_cols) + (s in uncovered_syms)
        e = max(entries, key=lambda e: (gain(e), (-e[0], -e[1], -e[2])))
        chosen.append(e)
        uncovered_rows.discard(e[0])
        uncovered_cols.discard(e[1])
        uncovered_syms.discard(e[2])
    return chosen


def min_cover(
    L: LatinSquare,
    exact_limit: int = EXACT_COVER_LIMIT,
    allow_heuristic: bool = True,
) -> Cover:
    """A minimum-cardinality cover, exact for n <= exact_limit.

    Branch and bound over entries, seeded with a greedy cover; the lower
    bound at a node is the largest count of uncovered rows, columns, or
    symbols, since one entry covers at most one of each.
    """
    n = L.n
    if n > exact_limit:
        if not allow_heuristic:
            raise BudgetExceededError("min_cover order", n, exact_limit)
        return Cover(n, frozenset(_greedy_cover(L)), exact=False)

    greedy = _greedy_cover(L)
    best = list(greedy)

    by_row = [[] for _ in range(n + 1)]
    by_col = [[] for _ in range(n + 1)]
    by_sym = [[] for _ in range(n + 1)]
    for e in L.entries():
        by_row[e[0]].append(e)
        by_col[e[1]].append(e)
        by_sym[e[2]].append(e)

    chosen: list[Triple] = []

    def dfs(rows_left: frozenset, cols_left: frozenset, syms_left: frozenset):
        nonlocal best
        need = max(len(rows_left), len(cols_left), len(syms_left))
        if len(chosen) + need >= len(best):
            return
        if need == 0:
            best = list(chosen)
            return
        # branch on the scarcest uncovered index
        if len(rows_left) == need:
            target = by_row[min(rows_left)]
        elif len(cols_left) == need:
            target = by_col[min(cols_left)]
        else:
            target = by_sym[min(syms_left)]
        for e in target:
            chosen.append(e)
            dfs(rows_left - {e[0]}, cols_left - {e[1]}, syms_left - {e[2]})
            chosen.pop()

    full = frozenset(range(1, n + 1))
    dfs(full, full, full)
    return Cover(n, frozenset(best), exact=True)


def cover_from_partial_transversal(L: LatinSquare, T: PartialTransversal) -> Cover:
    """Complete a partial transversal to a cover of size at most n + 2d.

    Greedy: one entry per uncovered row (preferring entries that also hit
    uncovered columns and symbols), then per remaining column, then per
    remaining symbol. The transversal contributes n-d entries and each of
    the <= 3d additions fixes at least one uncovered index.
    """
    if not is_partial_transversal(L, T.entries):
        raise ValueError("entries are not a partial transversal of this square")
    n = L.n
    entries = set(T.entries)
    rows_left = set(range(1, n + 1)) - {e[0] for e in entries}
    cols_left = set(range(1, n + 1)) - {e[1] for e in entries}
    syms_left = set(range(1, n + 1)) - {e[2] for e in entries}

    def pick(candidates):
        return max(
            candidates,
            key=lambda e: (
                (e[0] in rows_left) + (e[1] in cols_left) + (e[2] in syms_left),
                (-e[0], -e[1], -e[2]),
            ),
        )

    def take(e):
        entries.add(e)
        rows_left.discard(e[0])
        cols_left.discard(e[1])
        syms_left.discard(e[2])

    for r in sorted(rows_left):
        take(pick([(r, c, L.symbol(r, c)) for c in range(1, n + 1)]))
    for c in sorted(cols_left):
        take(pick([(r, c, L.symbol(r, c)) for r in range(1, n + 1)]))
    for s in sorted(syms_left):
        candidates = [e for e in L.entries() if e[2] == s]
        take(pick(candidates))

    cover = Cover(n, frozenset(entries), exact=False)
    assert is_cover(L, cover.entries)
    assert len(cover.entries) <= n + 2 * T.deficit
    return cover


# ---------------------------------------------------------------------------
# Orthogonal mates


def find_orthogonal_mate(
    M: LatinSquare | MolsSet, order_limit: int = MATE_SEARCH_LIMIT
) -> LatinSquare | None:
    """A latin square orthogonal to every square of M, or None.

    Exhaustive backtracking over cells in row-major order, symbols tried
    ascending, so the lexicographically least mate is returned. The search
    is complete for n <= order_limit; beyond that a BudgetExceededError is
    raised rather than returning an inconclusive None.
    """
    M = as_mols(M)
    n = M.n
    if n > order_limit:
        raise BudgetExceededError("find_orthogonal_mate order", n, order_limit)
    grid = [[0] * n for _ in range(n)]
    row_used = [0] * n
    col_used = [0] * n
    # pair_used[i] marks (symbol of square i, candidate symbol) superpositions
    pair_used = [[0] * (n + 1) for _ in range(M.k)]

    def backtrack(cell: int) -> bool:
        if cell == n * n:
            return True
        r, c = divmod(cell, n)
        for s in range(1, n + 1):
            if (row_used[r] >> s) & 1 or (col_used[c] >> s) & 1:
                continue
            existing = [sq.grid[r][c] for sq in M.squares]
            if any((pair_used[i][e] >> s) & 1 for i, e in enumerate(existing)):
                continue
            grid[r][c] = s
            row_used[r] |= 1 << s
            col_used[c] |= 1 << s
            for i, e in enumerate(existing):
                pair_used[i][e] |= 1 << s
            if backtrack(cell + 1):
                return True
            grid[r][c] = 0
            row_used[r] &= ~(1 << s)
            col_used[c] &= ~(1 << s)
            for i, e in enumerate(existing):
                pair_used[i][e] &= ~(1 << s)
        return False

    if backtrack(0):
        return LatinSquare(tuple(tuple(row) for row in grid))
    return None


# ---------------------------------------------------------------------------
# JSON formats


def mols_to_json_dict(M: LatinSquare | MolsSet) -> dict:
    M = as_mols(M)
    return {
        "n": M.n,
        "k": M.k,
        "squares": [[list(row) for row in sq.grid] for sq in M.squares],
    }


def mols_from_json_dict(d: dict) -> MolsSet:
    squares = [validate_latin(g) for g in d["squares"]]
    M = MolsSet.of(squares)
    if M.n != d["n"] or M.k != d["k"]:
        raise ValueError("header does not match squares")
    return M


def oa_to_json_dict(O: OrthogonalArray) -> dict:
    return {"n": O.n, "m": O.m, "rows": [list(r) for r in O.rows]}


def oa_from_json_dict(d: dict) -> OrthogonalArray:
    return OrthogonalArray.of(d["n"], d["m"], d["rows"])


def dumps(d: dict) -> str:
    """Canonical JSON emission: insertion key order, leaf lists inlined."""
    return _fmt(d, "") + "\n"


def _fmt(obj, pad: str) -> str:
    inner = pad + "  "
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}{json.dumps(str(k))}: {_fmt(v, inner)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(x, (dict, list, tuple)) for x in obj):
            return "[" + ", ".join(_fmt(x, inner) for x in obj) + "]"
        items = [inner + _fmt(x, inner) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj)
