"""The stock of squares and MOLS sets the test and verify suites run on."""

from __future__ import annotations

from .latin import (
    LatinSquare,
    MolsSet,
    make_back_circulant,
    make_cayley_table,
    make_cyclic,
    make_mols_prime_power,
)


def corpus_squares() -> dict[str, LatinSquare]:
    """Named single squares, orders 1 through 7."""
    return {
        "B1": make_back_circulant(1),
        "B2": make_back_circulant(2),
        "L3": make_back_circulant(3),
        "B4": make_back_circulant(4),
        "Z2Z2": make_cayley_table([2, 2]),
        "B5": make_back_circulant(5),
        "Cyc5x2": make_cyclic(5, 2),
        "B6": make_back_circulant(6),
        "B7": make_back_circulant(7),
    }


def corpus_mols() -> dict[str, MolsSet]:
    """Named multi-square sets used by the game checks."""
    gf4 = make_mols_prime_power(4, 3)
    gf5 = make_mols_prime_power(5, 4)
    return {
        "1-MOLS(3)": MolsSet.single(make_back_circulant(3)),
        "2-MOLS(3)": make_mols_prime_power(3, 2),
        "2-MOLS(4)": MolsSet.of(gf4.squares[:2]),
        "3-MOLS(4)": gf4,
        "2-MOLS(5)": MolsSet.of(gf5.squares[:2]),
        "3-MOLS(5)": MolsSet.of(gf5.squares[:3]),
        "4-MOLS(5)": gf5,
        "6-MOLS(7)": make_mols_prime_power(7, 6),
    }
