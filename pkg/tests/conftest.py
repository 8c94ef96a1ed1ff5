"""Shared fixtures: small underlying graphs and their token graphs."""

import pytest

from tokengraph.services import graph_core, kpg


@pytest.fixture
def c4():
    return graph_core.generate("cycle", [4])


@pytest.fixture
def k4():
    return graph_core.generate("complete", [4])


@pytest.fixture
def star3():
    return graph_core.generate("star", [3])


@pytest.fixture
def petersen():
    return graph_core.generate("petersen")


@pytest.fixture
def c4_k2(c4):
    return kpg.build(c4, 2)


@pytest.fixture
def octahedron(k4):
    return kpg.build(k4, 2)


@pytest.fixture
def star3_k2(star3):
    return kpg.build(star3, 2)
