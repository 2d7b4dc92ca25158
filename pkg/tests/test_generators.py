import logging

import pytest

from pynambugraphs import (
    GraphFamilyFactory,
    generate_2d_vector_graphs,
    generate_hamiltonian_micrographs
)
from pynambugraphs.graphs import canonical_key
from pynambugraphs.py_ng_exceptions import NGUnsupportedDimensionException


def test_generate_2d_01(expected_count_data, fixture_directory):
    # the 2D vector graphs are exactly the packaged ones
    graphs = generate_2d_vector_graphs()
    assert len(graphs) == expected_count_data.vector_graphs(2)
    generated = {canonical_key(g) for g in graphs}
    packaged = {canonical_key(g) for g in fixture_directory.vector_graphs(2).values()}
    assert generated == packaged


def test_generate_2d_02():
    # one sink in-edge, connected, no vertex hit twice by the same source
    for graph in generate_2d_vector_graphs():
        assert graph.sink_in_degree() == 1
        assert graph.is_connected()
        for targets in graph.edges:
            assert len(set(targets)) == len(targets)


@pytest.mark.parametrize("dimension", [2, 3, 4])
def test_generate_hamiltonian_01(dimension, expected_count_data, fixture_directory):
    graphs = generate_hamiltonian_micrographs(dimension)
    assert len(graphs) == expected_count_data.hamiltonian_graphs(dimension)
    packaged = {canonical_key(g) for g in fixture_directory.hamiltonians(dimension).values()}
    assert {canonical_key(g) for g in graphs} == packaged


def test_generate_invalid_01():
    try:
        generate_hamiltonian_micrographs(5)
        assert False, "We should have caught an exception"
    except NGUnsupportedDimensionException as e:
        assert e.dimension == 5


def test_hamiltonian_family_01(caplog, fixture_directory):
    # the generated Hamiltonians cover every packaged class, so nothing is reported
    caplog.set_level(logging.WARNING, logger="pynambugraphs.graphs._family_registry")
    family = GraphFamilyFactory.family("hamiltonian-micrographs", 3, fixtures=fixture_directory)
    assert set(fixture_directory.hamiltonians(3)) & set(family)
    assert not [r for r in caplog.records if r.levelno == logging.WARNING]


def test_hamiltonian_family_02(caplog, monkeypatch, fixture_directory):
    # a generator that misses a packaged class is reported
    import pynambugraphs.graphs._family_registry as registry

    first = next(iter(fixture_directory.hamiltonians(2).values()))
    generated = [g for g in generate_hamiltonian_micrographs(2)
                 if canonical_key(g) != canonical_key(first)]
    monkeypatch.setattr(registry, "generate_hamiltonian_micrographs", lambda dimension: generated)
    caplog.set_level(logging.WARNING, logger="pynambugraphs.graphs._family_registry")
    GraphFamilyFactory.family("hamiltonian-micrographs", 2, fixtures=fixture_directory)
    messages = [r.getMessage() for r in caplog.records if r.levelno == logging.WARNING]
    assert any("published classes" in m for m in messages)
