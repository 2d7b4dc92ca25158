from pynambugraphs import MicroGraph, parse_encoding, serialize
from pynambugraphs.py_ng_exceptions import (
    NGGraphEncodingException,
    NGParseException,
    NGStructureException,
    NGUnsupportedDimensionException
)


def test_parse_encoding_01():
    # a 2D vector graph
    graph = parse_encoding("[0,3;2,3;2,3]", 2)
    assert graph.has_sink
    assert graph.n_lc == 3
    assert graph.edges == ((0, 3), (2, 3), (2, 3))
    assert serialize(graph) == "[0,3;2,3;2,3]"


def test_parse_encoding_02():
    # parentheses and spaces after separators
    graph = parse_encoding("(0,1,4; 1,3,5; 1,2,6)", 3)
    assert graph.encoding() == "[0,1,4;1,3,5;1,2,6]"
    assert graph.casimir_vertex(2, 1) == 5
    assert graph.own_casimirs(3) == [6]


def test_parse_encoding_03():
    # Hamiltonian graphs have no sink
    graph = parse_encoding("[1,2,3,5;1,2,4,6]", 4)
    assert not graph.has_sink
    assert graph.vertices() == [1, 2, 3, 4, 5, 6]
    assert graph.role(5) == "casimir"
    assert graph.owner(5) == 1
    assert graph.species(5) == 2


def test_parse_encoding_04():
    # in-degrees count every edge, loops included
    graph = parse_encoding("[0,3;2,3;2,3]", 2)
    assert graph.sink_in_degree() == 1
    assert graph.in_degrees()[3] == 3
    assert graph.max_in_degree() == 3
    assert graph.is_connected()


def test_parse_errors_01(expected_data):
    # malformed text reports the offending position
    for text, expected in expected_data.parse_error_data.items():
        try:
            parse_encoding(text, expected["dimension"])
            assert False, f"We should have caught an exception for {text}"
        except NGParseException as e:
            print(e.diagnostic())
            assert e.position == expected["position"], text
            assert e.diagnostic().splitlines()[-1] == "  " + " " * e.position + "^"


def test_structure_errors_01(expected_data):
    # well-formed text that breaks the micro-graph rules
    for text, expected in expected_data.structure_error_data.items():
        try:
            parse_encoding(text, expected["dimension"])
            assert False, f"We should have caught an exception for {text}"
        except NGStructureException as e:
            print(e)
            assert e.text == text


def test_structure_errors_02():
    # a sinkless graph may not point at vertex 0
    try:
        parse_encoding("[0,2;1,2]", 2, has_sink=False)
        assert False, "We should have caught an exception"
    except NGGraphEncodingException as e:
        print(e)


def test_structure_errors_03():
    try:
        MicroGraph(5, True, ((0, 1, 2, 3, 4),))
        assert False, "We should have caught an exception"
    except NGUnsupportedDimensionException as e:
        assert e.dimension == 5
