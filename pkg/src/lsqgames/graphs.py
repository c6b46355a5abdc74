"""Latin square graphs: one vertex per cell, edges between cells sharing a line.

Vertex ids are 1-based and fixed by the external contract: cell (r, c) gets
id (r-1)*n + c. Adjacency is kept as one packed bit row per vertex (python
ints), giving O(1) adjacency tests and fast neighborhood intersection; bit
i corresponds to vertex id i+1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .latin import LatinSquare, MolsSet, OrthogonalArray, as_mols


class Entry(NamedTuple):
    row: int
    col: int
    symbols: tuple[int, ...]


@dataclass(frozen=True)
class Line:
    kind: str              # "row" | "column" | "symbol"
    index: int             # element of [n]
    square: int | None     # 1-based square index for symbol lines
    vertices: tuple[int, ...]


class LsqGraph:
    """Graph on n^2 cells; built from a MOLS set or an OA agreement relation.

    ``entries`` maps vertex id -> Entry for latin-built graphs and is None
    for agreement graphs, whose vertices are OA rows (kept in ``oa_rows``).
    """

    def __init__(self, n, k, masks, entries=None, lines=None, oa_rows=None):
        self.n = n
        self.k = k
        self.vertex_count = n * n
        self._masks = masks
        self._entries = entries
        self._lines = lines
        self.oa_rows = oa_rows

    # -- vertex/cell mapping -------------------------------------------------

    def id_of(self, r: int, c: int) -> int:
        return (r - 1) * self.n + c

    def cell_of(self, v: int) -> tuple[int, int]:
        r, c = divmod(v - 1, self.n)
        return (r + 1, c + 1)

    def entry_of(self, v: int) -> Entry:
        if self._entries is None:
            raise ValueError("graph has no entry labels")
        return self._entries[v - 1]

    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    # -- adjacency -----------------------------------------------------------

    def open_mask(self, v: int) -> int:
        """Bit row of neighbors of v (bit i <-> vertex i+1)."""
        return self._masks[v - 1]

    def closed_mask(self, v: int) -> int:
        return self._masks[v - 1] | (1 << (v - 1))

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self._masks[u - 1] >> (v - 1)) & 1)

    def degree(self, v: int) -> int:
        return self._masks[v - 1].bit_count()

    def neighbors(self, v: int) -> list[int]:
        m = self._masks[v - 1]
        out = []
        while m:
            low = m & -m
            out.append(low.bit_length())
            m ^= low
        return out

    def closed_neighbors(self, v: int) -> list[int]:
        out = self.neighbors(v)
        out.append(v)
        out.sort()
        return out

    def distance(self, u: int, v: int) -> int | float:
        """Graph distance; 0, 1, 2, or math.inf (never more on these graphs)."""
        if u == v:
            return 0
        if self.adjacent(u, v):
            return 1
        if self._masks[u - 1] & self._masks[v - 1]:
            return 2
        return math.inf

    # -- lines ----------------------------------------------------------------

    def lines(self) -> list[Line]:
        if self._lines is None:
            raise ValueError("graph has no line structure")
        return list(self._lines.values())

    def line(self, kind: str, index: int, square: int | None = None) -> Line:
        if self._lines is None:
            raise ValueError("graph has no line structure")
        return self._lines[(kind, index, square)]

    def lines_through(self, v: int) -> list[Line]:
        """The k+2 lines incident to v: row, column, then symbol lines."""
        e = self.entry_of(v)
        out = [self.line("row", e.row), self.line("column", e.col)]
        for i, s in enumerate(e.symbols, start=1):
            out.append(self.line("symbol", s, i))
        return out


def build_graph(M: LatinSquare | MolsSet) -> LsqGraph:
    """The latin square graph of a square or MOLS set.

    Cells are adjacent iff they share a row, a column, or the symbol of the
    same square; the result is checked to be (k+2)(n-1)-regular.
    """
    M = as_mols(M)
    n, k = M.n, M.k
    V = n * n
    entries = []
    for r in range(1, n + 1):
        for c in range(1, n + 1):
            entries.append(Entry(r, c, tuple(sq.symbol(r, c) for sq in M.squares)))

    line_members: dict[tuple, list[int]] = {}
    for v, e in enumerate(entries, start=1):
        line_members.setdefault(("row", e.row, None), []).append(v)
        line_members.setdefault(("column", e.col, None), []).append(v)
        for i, s in enumerate(e.symbols, start=1):
            line_members.setdefault(("symbol", s, i), []).append(v)

    masks = [0] * V
    for members in line_members.values():
        line_mask = 0
        for v in members:
            line_mask |= 1 << (v - 1)
        for v in members:
            masks[v - 1] |= line_mask
    for v in range(V):
        masks[v] &= ~(1 << v)

    expected = (k + 2) * (n - 1)
    for v in range(V):
        if masks[v].bit_count() != expected:
            raise AssertionError(
                f"vertex {v + 1} has degree {masks[v].bit_count()}, expected {expected}"
            )

    lines = {
        key: Line(key[0], key[1], key[2], tuple(sorted(vs)))
        for key, vs in line_members.items()
    }
    return LsqGraph(n, k, masks, entries=tuple(entries), lines=lines)


def lines_through(G: LsqGraph, v: int) -> list[Line]:
    return G.lines_through(v)


def distance(G: LsqGraph, u: int, v: int) -> int | float:
    return G.distance(u, v)


def agreement_graph(O: OrthogonalArray, cols: Iterable[int]) -> LsqGraph:
    """Graph on the n^2 OA rows; rows adjacent iff they agree in some column
    of ``cols`` (1-based column indices)."""
    cols = sorted(set(cols))
    if not cols:
        raise ValueError("empty column set")
    if any(not 1 <= c <= O.m for c in cols):
        raise ValueError(f"column out of range 1..{O.m}")
    V = O.n * O.n
    masks = [0] * V
    for c in cols:
        classes: dict[int, list[int]] = {}
        for v, row in enumerate(O.rows, start=1):
            classes.setdefault(row[c - 1], []).append(v)
        for members in classes.values():
            class_mask = 0
            for v in members:
                class_mask |= 1 << (v - 1)
            for v in members:
                masks[v - 1] |= class_mask
    for v in range(V):
        masks[v] &= ~(1 << v)
    return LsqGraph(O.n, len(cols) - 2, masks, oa_rows=O.rows)


def check_regularity(G: LsqGraph) -> bool:
    """True iff every vertex has degree exactly (k+2)(n-1)."""
    expected = (G.k + 2) * (G.n - 1)
    return all(G.degree(v) == expected for v in G.vertices())


def graph_to_json_dict(G: LsqGraph) -> dict:
    edges = []
    for u in G.vertices():
        m = G.open_mask(u) >> u  # neighbors v with v > u
        v = u + 1
        while m:
            if m & 1:
                edges.append([u, v])
            m >>= 1
            v += 1
    return {"n": G.n, "k": G.k, "edges": edges}


def graph_from_json_dict(d: dict) -> LsqGraph:
    n, k = d["n"], d["k"]
    V = n * n
    masks = [0] * V
    for u, v in d["edges"]:
        if not (1 <= u <= V and 1 <= v <= V) or u == v:
            raise ValueError(f"bad edge [{u}, {v}]")
        masks[u - 1] |= 1 << (v - 1)
        masks[v - 1] |= 1 << (u - 1)
    return LsqGraph(n, k, masks)
