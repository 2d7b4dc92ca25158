import logging

from pynambugraphs import (
    GraphFamilyFactory,
    descendant_union,
    descendants,
    embed,
    parse_encoding
)
from pynambugraphs.graphs import is_isomorphic, iter_raw_descendants, swap_casimirs
from pynambugraphs.py_ng_exceptions import (
    NGDimensionMismatchException,
    NGUnsupportedDimensionException
)


def test_descendants_01(expected_data):
    # every redirection of the free edges, in order
    expected = expected_data.lookup_descendants("[1,2;1,2]")
    parent = parse_encoding("[1,2;1,2]", 2)
    raw = list(iter_raw_descendants(parent, expected["dimension"]))
    assert [g.encoding() for g in raw] == expected["raw"]
    assert len(descendants(parent, expected["dimension"])) == expected["deduplicated"]


def test_descendants_02(expected_count_data, fixture_directory):
    # the descendants of the two graphs carrying the 2D trivializing field
    sources = list(fixture_directory.descendant_sources().values())
    union = descendant_union(sources, 3)
    assert len(union) == expected_count_data.descendant_union(3)
    for graph in union:
        assert graph.dimension == 3
        assert graph.sink_in_degree() == 1


def test_descendants_03(fixture_directory):
    # every packaged 3D vector graph descends from a 2D fixture
    sources = list(fixture_directory.vector_graphs(2).values())
    union = descendant_union(sources, 3)
    for name, graph in fixture_directory.vector_graphs(3).items():
        assert any(is_isomorphic(graph, d) for d in union), name


def test_descendants_04():
    # lifting to 2D changes nothing
    parent = parse_encoding("[0,3;2,3;2,3]", 2)
    assert list(iter_raw_descendants(parent, 2)) == [parent]


def test_descendants_invalid_01():
    # only 2D graphs have descendants
    graph = parse_encoding("[1,2,3;1,2,4]", 3)
    try:
        descendants(graph, 4)
        assert False, "We should have caught an exception"
    except NGDimensionMismatchException as e:
        print(e)


def test_embed_01(expected_data):
    for encoding, expected in expected_data.embedding_data.items():
        graph = parse_encoding(encoding, expected["dimension"])
        embedded = embed(graph)
        assert embedded.dimension == expected["dimension"] + 1
        assert embedded.encoding() == expected["embedded"]


def test_embed_02(fixture_directory):
    # the 2D Hamiltonian embeds onto packaged Hamiltonians of 3D and 4D
    h_3d = embed(fixture_directory.hamiltonian(2, 1))
    assert is_isomorphic(h_3d, fixture_directory.hamiltonian(3, 6))
    assert is_isomorphic(embed(h_3d), fixture_directory.hamiltonian(4, 1))


def test_embed_invalid_01():
    graph = parse_encoding("[1,2,3,5;1,2,4,6]", 4)
    try:
        embed(graph)
        assert False, "We should have caught an exception"
    except NGUnsupportedDimensionException as e:
        assert e.dimension == 5


def test_swap_casimirs_01(fixture_directory):
    # the swap is an involution
    for graph in fixture_directory.hamiltonians(4).values():
        assert swap_casimirs(swap_casimirs(graph)) == graph


def test_swap_casimirs_02():
    graph = parse_encoding("[1,2,3;1,2,4]", 3)
    try:
        swap_casimirs(graph)
        assert False, "We should have caught an exception"
    except NGDimensionMismatchException as e:
        assert e.dimensions == (3, 4)


def test_descendant_family_01(caplog, fixture_directory):
    # a union size that disagrees with the published count is reported
    caplog.set_level(logging.WARNING, logger="pynambugraphs.graphs._family_registry")
    family = GraphFamilyFactory.family("descendants", 3, fixtures=fixture_directory)
    published = fixture_directory.descendant_count(3)
    assert len(family) != published
    messages = [r.getMessage() for r in caplog.records if r.levelno == logging.WARNING]
    assert any(f"published count is {published}" in m for m in messages)


def test_descendant_family_02(caplog, fixture_directory):
    # explicit sources have no published count to compare against
    caplog.set_level(logging.WARNING, logger="pynambugraphs.graphs._family_registry")
    GraphFamilyFactory.family("descendants", 3, fixtures=fixture_directory, sources=["11"])
    assert not [r for r in caplog.records if r.levelno == logging.WARNING]
    assert fixture_directory.descendant_count(4) is None
