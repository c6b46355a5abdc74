import pytest

from lsqgames.corpus import corpus_mols, corpus_squares
from lsqgames.graphs import build_graph


@pytest.fixture(scope="session")
def squares():
    return corpus_squares()


@pytest.fixture(scope="session")
def mols_sets():
    return corpus_mols()


@pytest.fixture(scope="session")
def graphs(squares):
    return {name: build_graph(L) for name, L in squares.items()}
