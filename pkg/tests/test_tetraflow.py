import pytest

from pynambugraphs import (
    JetRing,
    Multivector,
    graph_operation,
    nambu_bivector,
    tetrahedral_flow
)
from pynambugraphs.ng_tetraflow import (
    ORIENTATION_NORMALIZATION,
    DirectedOperationGraph,
    calibrate_flow,
    flow_calibration,
    orient_and_apply,
    orientations,
    tetrahedron
)
from pynambugraphs.py_ng_exceptions import (
    NGDimensionMismatchException,
    NGShapeMismatchException
)


def test_orientations_01(expected_count_data):
    # orientations of K4 with out-degree at most two
    n_vertices, edges = tetrahedron()
    assert len(edges) == 6
    oriented = list(orientations(n_vertices, edges))
    assert len(oriented) == expected_count_data.orientations
    for graph in oriented:
        assert graph.max_out_degree() <= 2
        assert sum(graph.out_degrees()) == 6


def test_orientations_02():
    # without the bound every one of the 2^6 orientations appears
    n_vertices, edges = tetrahedron()
    assert len(list(orientations(n_vertices, edges, max_out_degree=3))) == 64


def test_graph_operation_01():
    # one edge contracts d/dxi on the source with d/dx on the target
    ring = JetRing(2)
    graph = DirectedOperationGraph(2, [(0, 1)])
    source = Multivector.xi(2, 0) * ring.rho()
    target = Multivector.function(ring.rho())
    expected = Multivector.function(ring.rho() * ring.rho([1, 0]))
    assert graph_operation(graph, [source, target]) == expected
    assert graph_operation(graph, [target, source]).is_zero()


def test_graph_operation_02():
    # without edges the operation is the product
    ring = JetRing(3)
    first = Multivector.xi(3, 0, 2) * ring.casimir(1, [0, 1, 0])
    second = Multivector.xi(3, 1) * ring.rho()
    graph = DirectedOperationGraph(2, [])
    assert graph_operation(graph, [first, second]) == first * second


def test_graph_operation_03():
    ring = JetRing(2)
    graph = DirectedOperationGraph(2, [(0, 1)])
    try:
        graph_operation(graph, [Multivector.function(ring.rho())])
        assert False, "We should have caught an exception"
    except NGShapeMismatchException as e:
        print(e)


def test_graph_operation_04():
    graph = DirectedOperationGraph(2, [(0, 1)])
    try:
        graph_operation(graph, [Multivector.xi(2, 0), Multivector.xi(3, 0)])
        assert False, "We should have caught an exception"
    except NGDimensionMismatchException as e:
        print(e)


def test_graph_operation_05():
    try:
        DirectedOperationGraph(2, [(0, 2)])
        assert False, "We should have caught an exception"
    except ValueError as e:
        print(e)


def test_calibration_01(fixture_directory):
    # the calibrated 2D flow is the reference flow
    constant = calibrate_flow(fixture_directory)
    assert constant
    flow = tetrahedral_flow(nambu_bivector(2), constant)
    assert flow == fixture_directory.reference_flow(flow.ring)
    assert flow_calibration() == constant


def test_calibration_02():
    # the raw flow is the normalized orientation sum
    poisson = nambu_bivector(2)
    raw = orient_and_apply(poisson)
    assert raw.degree() == 2
    assert not raw.is_zero()
    assert ORIENTATION_NORMALIZATION * 8 == 1


@pytest.mark.slow
def test_flow_cocycle_01():
    # Q(P) is closed under d_P in 3D
    poisson = nambu_bivector(3, JetRing(3, max_order=6))
    flow = tetrahedral_flow(poisson)
    assert flow.degree() == 2
    assert poisson.differential(flow).is_zero()
