"""
The tetrahedral flow Q(P): the tetrahedron graph, oriented every possible
way, acting on four copies of a Poisson bivector.
"""
import logging
from collections import defaultdict
from itertools import product
from typing import Dict, List, Sequence, Tuple

from sympy import QQ

from .graphs.fixtures import FixtureDirectory
from .ng_multivector import Multivector, multivector_sum, rational_multiple_of
from .ng_nambu import NambuBivector, nambu_bivector
from .py_ng_exceptions import (
    NGCalibrationException,
    NGDimensionMismatchException,
    NGShapeMismatchException
)

logger = logging.getLogger(__name__)

# Sum over orientations is divided by this
ORIENTATION_NORMALIZATION = QQ(1, 8)

Edge = Tuple[int, int]


class DirectedOperationGraph:
    """
    Vertices 0..n-1 and an ordered list of directed edges (source, target).

    As an operation on n multivectors, edge (a, b) contracts d/dxi_i on
    argument a with d/dx^i on argument b, summed over i.
    """

    def __init__(self, n_vertices: int, edges: Sequence[Edge]):
        for source, target in edges:
            if not (0 <= source < n_vertices and 0 <= target < n_vertices):
                raise ValueError(f"Edge ({source}, {target}) leaves vertices 0..{n_vertices - 1}")
        self.n_vertices = n_vertices
        self.edges: Tuple[Edge, ...] = tuple(tuple(e) for e in edges)

    def out_degrees(self) -> List[int]:
        degrees = [0] * self.n_vertices
        for source, _ in self.edges:
            degrees[source] += 1
        return degrees

    def max_out_degree(self) -> int:
        return max(self.out_degrees()) if self.n_vertices else 0

    def __repr__(self):
        return f"DirectedOperationGraph({self.n_vertices}, {list(self.edges)})"


def tetrahedron() -> Tuple[int, Tuple[Edge, ...]]:
    """
    K4 on vertices 0..3 with its six edges in lexicographic order
    """
    edges = tuple((a, b) for a in range(4) for b in range(a + 1, 4))
    return 4, edges


def orientations(n_vertices: int, edges: Sequence[Edge], max_out_degree: int = 2):
    """
    Every direction assignment of the undirected edges, keeping edge order,
    without those whose out-degree exceeds max_out_degree
    """
    for flips in product((False, True), repeat=len(edges)):
        directed = [(b, a) if flip else (a, b) for (a, b), flip in zip(edges, flips)]
        graph = DirectedOperationGraph(n_vertices, directed)
        if graph.max_out_degree() <= max_out_degree:
            yield graph


class _SlotMemo:
    """
    Memoized partial derivatives of one argument: the odd derivatives in the
    order applied, then the total derivatives in any order
    """

    def __init__(self, argument: Multivector):
        self._argument = argument
        self._memo: Dict[Tuple[tuple, tuple], Multivector] = {}

    def derived(self, odd: tuple, even: tuple) -> Multivector:
        key = (odd, even)
        value = self._memo.get(key)
        if value is None:
            value = self._argument
            for index in odd:
                value = value.odd_derivative(index, side="left")
                if not value:
                    break
            else:
                for coord in even:
                    value = value.total_derivative(coord)
                    if not value:
                        break
            self._memo[key] = value
        return value


def _slot_degree(argument: Multivector) -> int:
    degree = argument.degree()
    return 0 if degree is None else degree


def _operation_terms(graph: DirectedOperationGraph, degrees: List[int], dimension: int,
                     into: Dict[tuple, int], weight: int = 1):
    """
    Accumulate sign-weighted slot derivative patterns for every index map
    """
    for indices in product(range(dimension), repeat=len(graph.edges)):
        current = list(degrees)
        sign = weight
        odd = [[] for _ in range(graph.n_vertices)]
        even = [[] for _ in range(graph.n_vertices)]
        vanished = False
        for (source, target), index in zip(graph.edges, indices):
            if current[source] == 0:
                vanished = True
                break
            if sum(current[:source]) % 2:
                sign = -sign
            current[source] -= 1
            odd[source].append(index)
            even[target].append(index)
        if vanished:
            continue
        pattern = tuple((tuple(o), tuple(sorted(e))) for o, e in zip(odd, even))
        into[pattern] += sign


def _contract(pattern_weights: Dict[tuple, int], arguments: Sequence[Multivector]) -> Multivector:
    dimension = arguments[0].dimension
    slots = [_SlotMemo(argument) for argument in arguments]
    parts = []
    for pattern, weight in pattern_weights.items():
        if not weight:
            continue
        product_value = None
        for slot, (odd, even) in zip(slots, pattern):
            value = slot.derived(odd, even)
            if not value:
                product_value = None
                break
            product_value = value if product_value is None else product_value.wedge(value)
        if product_value is not None:
            parts.append(product_value.scale(weight))
    return multivector_sum(dimension, parts, ring=arguments[0].ring)


def graph_operation(graph: DirectedOperationGraph, arguments: Sequence[Multivector]) -> Multivector:
    """
    Apply a directed graph to one multivector per vertex

    For each map of edges to base indices the edges act in order: the left
    odd derivative on the source argument, signed by the degrees of the
    arguments before it, and the total derivative on the target argument.
    The arguments are then multiplied in vertex order.

    Raises
    ------
    NGShapeMismatchException
        If the number of arguments differs from the number of vertices
    """
    arguments = list(arguments)
    if len(arguments) != graph.n_vertices:
        raise NGShapeMismatchException(
            f"{len(arguments)} arguments for a {graph.n_vertices}-vertex graph")
    if not arguments:
        raise NGShapeMismatchException("an operation needs at least one argument")
    dimension = arguments[0].dimension
    for argument in arguments[1:]:
        if argument.dimension != dimension:
            raise NGDimensionMismatchException(dimension, argument.dimension)
    weights: Dict[tuple, int] = defaultdict(int)
    _operation_terms(graph, [_slot_degree(a) for a in arguments], dimension, weights)
    return _contract(weights, arguments)


def orient_and_apply(poisson) -> Multivector:
    """
    (1/8) * sum over admissible orientations of the tetrahedron acting on
    (P, P, P, P), before calibration
    """
    if isinstance(poisson, NambuBivector):
        poisson = poisson.multivector
    n_vertices, edges = tetrahedron()
    arguments = [poisson] * n_vertices
    degrees = [_slot_degree(poisson)] * n_vertices
    weights: Dict[tuple, int] = defaultdict(int)
    count = 0
    for graph in orientations(n_vertices, edges, max_out_degree=2):
        _operation_terms(graph, degrees, poisson.dimension, weights)
        count += 1
    logger.debug(f"{count} orientations, {sum(1 for w in weights.values() if w)} derivative patterns")
    return _contract(weights, arguments).scale(ORIENTATION_NORMALIZATION)


def calibrate_flow(fixtures: FixtureDirectory = None) -> object:
    """
    The rational c with reference = c * orient_and_apply(P) in two dimensions

    Raises
    ------
    NGCalibrationException
        If the computed flow is zero or not proportional to the reference
    """
    if fixtures is None:
        fixtures = FixtureDirectory()
    raw = orient_and_apply(nambu_bivector(2))
    reference = fixtures.reference_flow()
    if raw.is_zero():
        raise NGCalibrationException("computed 2D flow vanishes")
    constant = rational_multiple_of(reference, raw)
    if constant is None or not constant:
        raise NGCalibrationException(f"computed {raw} against reference {reference}")
    logger.info(f"tetrahedral flow calibration constant: {constant}")
    return constant


_calibration = {}


def flow_calibration() -> object:
    """
    calibrate_flow(), computed once per process
    """
    if "constant" not in _calibration:
        _calibration["constant"] = calibrate_flow()
    return _calibration["constant"]


def tetrahedral_flow(poisson, calibration=None) -> Multivector:
    """
    Q(P) in the normalization of the reference 2D flow
    """
    if calibration is None:
        calibration = flow_calibration()
    return orient_and_apply(poisson).scale(calibration)
