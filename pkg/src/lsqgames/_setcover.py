"""Exact minimum set cover over bitmask universes (branch and bound).

Small and deterministic: candidates are branched in ascending index order
and the incumbent is only replaced by strictly smaller covers, so results
are reproducible. Used for resolving-set sizes and probe minimization.
"""

from __future__ import annotations


def greedy_cover(masks: list[int], universe: int) -> list[int]:
    """Indices of a greedy cover (largest new coverage, ties by index)."""
    chosen = []
    uncovered = universe
    while uncovered:
        best_i, best_gain = -1, 0
        for i, m in enumerate(masks):
            gain = (m & uncovered).bit_count()
            if gain > best_gain:
                best_i, best_gain = i, gain
        if best_i < 0:
            raise ValueError("universe not coverable")
        chosen.append(best_i)
        uncovered &= ~masks[best_i]
    return chosen


def min_set_cover(masks: list[int], universe: int) -> list[int]:
    """A minimum-cardinality selection of masks covering the universe."""
    if universe == 0:
        return []
    element_candidates: dict[int, list[int]] = {}
    u = universe
    while u:
        low = u & -u
        b = low.bit_length() - 1
        element_candidates[b] = [i for i, m in enumerate(masks) if (m >> b) & 1]
        if not element_candidates[b]:
            raise ValueError(f"element {b} not coverable")
        u ^= low

    max_gain = max(m.bit_count() for m in masks)
    best = greedy_cover(masks, universe)
    chosen: list[int] = []

    def dfs(uncovered: int):
        nonlocal best
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        need = -(-uncovered.bit_count() // max_gain)  # ceil division
        if len(chosen) + need >= len(best):
            return
        # branch on the uncovered element with fewest candidates
        target, fewest = -1, None
        u = uncovered
        while u:
            low = u & -u
            b = low.bit_length() - 1
            cands = element_candidates[b]
            if fewest is None or len(cands) < fewest:
                target, fewest = b, len(cands)
            u ^= low
        for i in element_candidates[target]:
            chosen.append(i)
            dfs(uncovered & ~masks[i])
            chosen.pop()

    dfs(universe)
    return sorted(best)


def lexicographic_min_cover(masks: list[int], universe: int, size: int) -> list[int] | None:
    """Lexicographically least selection of exactly ``size`` masks covering
    the universe, or None if no such selection exists."""
    n = len(masks)
    max_gain = max((m.bit_count() for m in masks), default=0)
    chosen: list[int] = []

    def dfs(start: int, uncovered: int) -> bool:
        if not uncovered:
            return len(chosen) <= size  # pad-free covers of smaller size also fine
        slots = size - len(chosen)
        if slots <= 0:
            return False
        if uncovered.bit_count() > slots * max_gain:
            return False
        for i in range(start, n - slots + 1):
            chosen.append(i)
            if dfs(i + 1, uncovered & ~masks[i]):
                return True
            chosen.pop()
        return False

    if dfs(0, universe):
        return list(chosen)
    return None
