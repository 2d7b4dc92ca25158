"""
The morphism phi from micro-graphs to multivectors.

Every Levi-Civita vertex carries rho and sums over permutations of the base
indices with the permutation's sign; its j-th edge differentiates the target's
content by the j-th permuted index. Casimir vertices carry a^k and the sink
carries the Euler field, so its single in-edge picks out one xi component.
"""
import logging
from collections import defaultdict
from functools import lru_cache
from itertools import permutations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.combinatorics import Permutation

from .graphs.canonical import canonical_graph
from .graphs.descendants import swap_casimirs
from .graphs.micro_graph import SINK, MicroGraph
from .ng_jetring import (
    DiffPolynomial,
    JetRing,
    JetVariable,
    Monomial,
    to_rational
)
from .ng_multivector import Multivector, multivector_sum
from .py_ng_exceptions import (
    NGDimensionMismatchException,
    NGMaxOrderExceededException,
    NGShapeMismatchException
)

MODE_PLAIN = "plain"
MODE_SKEW = "skew"
MODE_SYM = "sym"
MODES = (MODE_PLAIN, MODE_SKEW, MODE_SYM)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def levi_civita_terms(dimension: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """
    (sigma, sign(sigma)) for every permutation of 0..d-1
    """
    return tuple((perm, Permutation(list(perm)).signature())
                 for perm in permutations(range(dimension)))


def ring_for_graphs(graphs: Iterable[MicroGraph], extra: int = 2) -> JetRing:
    """
    A ring deep enough for the graphs' contents plus `extra` later derivatives,
    one for d_P and one more for d_P applied twice
    """
    graphs = list(graphs)
    if not graphs:
        raise ValueError("Cannot size a ring for an empty graph list")
    dimension = graphs[0].dimension
    deepest = 0
    for graph in graphs:
        if graph.dimension != dimension:
            raise NGDimensionMismatchException(dimension, graph.dimension)
        deepest = max(deepest, graph.max_in_degree())
    return JetRing.for_in_degree(dimension, deepest, extra=max(extra, 2))


def evaluate(graph: MicroGraph, ring: JetRing = None) -> Multivector:
    """
    phi(graph), exactly

    Parameters
    ----------
    graph : MicroGraph
        A validated micro-graph; the result is a function when it has no sink
        and a 1-vector otherwise
    ring : JetRing, optional
        Ring for the result; sized from the graph's in-degrees when omitted

    Raises
    ------
    NGMaxOrderExceededException
        If a content would be differentiated beyond ring.max_order
    """
    dimension = graph.dimension
    if ring is None:
        ring = ring_for_graphs([graph])
    elif ring.dimension != dimension:
        raise NGDimensionMismatchException(dimension, ring.dimension)

    contents = graph.content_vertices()
    fields = {v: graph.content_field(v) for v in contents}
    terms_by_lc = levi_civita_terms(dimension)
    accumulated: Dict[Tuple[tuple, Monomial], int] = defaultdict(int)

    for choice in product(terms_by_lc, repeat=graph.n_lc):
        sign = 1
        derivatives = {v: [0] * dimension for v in contents}
        sink_indices = []
        for targets, (sigma, perm_sign) in zip(graph.edges, choice):
            sign *= perm_sign
            for position, target in enumerate(targets):
                index = sigma[position]
                if target == SINK and graph.has_sink:
                    sink_indices.append(index)
                else:
                    derivatives[target][index] += 1
        # the Euler field is linear in x
        if len(sink_indices) > 1:
            continue
        factors = []
        for v in contents:
            multi_index = tuple(derivatives[v])
            if sum(multi_index) > ring.max_order:
                raise NGMaxOrderExceededException(
                    JetVariable(fields[v], multi_index).name, ring.max_order)
            factors.append(JetVariable(fields[v], multi_index))
        factors = tuple(sorted(factors))
        if not graph.has_sink:
            accumulated[((), Monomial(factors, ()))] += sign
        elif sink_indices:
            accumulated[((sink_indices[0],), Monomial(factors, ()))] += sign
        else:
            for i in range(dimension):
                accumulated[((i,), Monomial(factors, (i,)))] += sign

    by_key: Dict[tuple, Dict[Monomial, object]] = defaultdict(dict)
    for (key, monomial), coeff in accumulated.items():
        if coeff:
            by_key[key][monomial] = QQ(coeff)
    components = {key: DiffPolynomial(ring, terms) for key, terms in by_key.items()}
    return Multivector(dimension, components, ring=ring)


def _check_four_dimensional(graph: MicroGraph):
    if graph.dimension != 4:
        raise NGDimensionMismatchException(graph.dimension, 4)


def evaluate_skew(graph: MicroGraph, ring: JetRing = None) -> Multivector:
    """
    phi^-(g) = 1/2 (phi(g) - phi(g with a^1 and a^2 exchanged))
    """
    _check_four_dimensional(graph)
    if ring is None:
        ring = ring_for_graphs([graph])
    half = QQ(1, 2)
    return (evaluate(graph, ring) - evaluate(swap_casimirs(graph), ring)).scale(half)


def evaluate_sym(graph: MicroGraph, ring: JetRing = None) -> Multivector:
    _check_four_dimensional(graph)
    if ring is None:
        ring = ring_for_graphs([graph])
    half = QQ(1, 2)
    return (evaluate(graph, ring) + evaluate(swap_casimirs(graph), ring)).scale(half)


_MODE_FUNCTIONS = {
    MODE_PLAIN: evaluate,
    MODE_SKEW: evaluate_skew,
    MODE_SYM: evaluate_sym,
}


def evaluate_mode(graph: MicroGraph, mode: str = MODE_PLAIN, ring: JetRing = None) -> Multivector:
    try:
        function = _MODE_FUNCTIONS[mode]
    except KeyError as e:
        raise ValueError(f"Unknown evaluation mode '{mode}', expected one of {MODES}") from e
    return function(graph, ring)


class GraphEvaluator:
    """
    Evaluates graphs through their canonical representative, memoizing in
    memory and, when given, in an EvaluationCache on disk.

    phi(g) = s * phi(canonical(g)), so only one evaluation per isomorphism
    class and mode is ever computed.
    """

    def __init__(self, cache=None, ring: JetRing = None, logger=None):
        self._cache = cache
        self._ring = ring
        self._memo: Dict[Tuple[str, int, str], Multivector] = {}
        if logger is None:
            logger = logging.getLogger(__name__)
        self.logger = logger
        self.computed = 0

    def _ring_for(self, graph: MicroGraph) -> JetRing:
        ring = ring_for_graphs([graph])
        if self._ring is not None and self._ring.dimension == graph.dimension:
            ring = ring.widened(self._ring)
        return ring

    def evaluate(self, graph: MicroGraph, mode: str = MODE_PLAIN) -> Multivector:
        representative, sign = canonical_graph(graph)
        encoding = representative.encoding()
        memo_key = (encoding, graph.dimension, mode)
        value = self._memo.get(memo_key)
        if value is None and self._cache is not None:
            value = self._cache.get(encoding, graph.dimension, mode, ring=self._ring_for(graph))
        if value is None:
            value = evaluate_mode(representative, mode, self._ring_for(graph))
            self.computed += 1
            if self._cache is not None:
                self._cache.put(encoding, graph.dimension, mode, value)
        self._memo[memo_key] = value
        return value if sign == 1 else -value

    def evaluate_all(self, graphs: Sequence[MicroGraph], mode: str = MODE_PLAIN) -> List[Multivector]:
        values = []
        for count, graph in enumerate(graphs, start=1):
            values.append(self.evaluate(graph, mode))
            if count % 50 == 0:
                self.logger.info(f"evaluated {count}/{len(graphs)} graphs")
        return values


def evaluate_combination(coeffs: Sequence, graphs: Sequence[MicroGraph],
                         mode: str = MODE_PLAIN, dimension: Optional[int] = None,
                         evaluator: GraphEvaluator = None) -> Multivector:
    """
    sum_i coeffs[i] * phi(graphs[i]); the empty combination is the zero
    multivector of `dimension` (2 when unspecified)

    Raises
    ------
    NGShapeMismatchException
        If the two lists differ in length
    """
    coeffs = list(coeffs)
    graphs = list(graphs)
    if len(coeffs) != len(graphs):
        raise NGShapeMismatchException(
            f"{len(coeffs)} coefficients for {len(graphs)} graphs")
    if not graphs:
        return Multivector.zero(dimension or 2)
    if evaluator is None:
        evaluator = GraphEvaluator()
    dimension = graphs[0].dimension
    parts = []
    for coeff, graph in zip(coeffs, graphs):
        coeff = to_rational(coeff)
        if coeff:
            parts.append(evaluator.evaluate(graph, mode).scale(coeff))
    return multivector_sum(dimension, parts)
