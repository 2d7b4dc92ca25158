import logging
from itertools import combinations, product
from typing import List

from ..ng_jetring import SUPPORTED_DIMENSIONS
from ..py_ng_exceptions import NGUnsupportedDimensionException
from .canonical import deduplicate
from .micro_graph import SINK, MicroGraph

logger = logging.getLogger(__name__)


def _free_pairs(dimension: int, n_lc: int, lc: int, with_sink: bool):
    top = n_lc * (dimension - 1)
    own = {k * n_lc + lc for k in range(1, dimension - 1)}
    targets = [v for v in range(0 if with_sink else 1, top + 1) if v not in own]
    return list(combinations(targets, 2))


def _enumerate(dimension: int, n_lc: int, with_sink: bool) -> List[MicroGraph]:
    if dimension not in SUPPORTED_DIMENSIONS:
        raise NGUnsupportedDimensionException(dimension)
    if n_lc < 1:
        raise ValueError(f"Need at least one Levi-Civita vertex: {n_lc}")
    options = [_free_pairs(dimension, n_lc, lc, with_sink) for lc in range(1, n_lc + 1)]
    raw = []
    for choice in product(*options):
        if with_sink and sum(pair.count(SINK) for pair in choice) != 1:
            continue
        edges = []
        for lc, pair in enumerate(choice, start=1):
            own = [k * n_lc + lc for k in range(1, dimension - 1)]
            edges.append(tuple(pair) + tuple(own))
        graph = MicroGraph(dimension, with_sink, tuple(edges))
        # disconnected graphs are products of smaller ones
        if graph.is_connected():
            raw.append(graph)
    unique = deduplicate(raw)
    logger.debug(f"{len(raw)} raw graphs, {len(unique)} up to isomorphism "
                 f"(d={dimension}, n_lc={n_lc}, sink={with_sink})")
    return unique


def generate_vector_micrographs(dimension: int, n_lc: int = 3) -> List[MicroGraph]:
    """
    All connected 1-vector micro-graphs with one sink in-edge, free edges over
    all vertices, no repeated target from one vertex, up to isomorphism
    """
    return _enumerate(dimension, n_lc, with_sink=True)


def generate_2d_vector_graphs(n_lc: int = 3) -> List[MicroGraph]:
    return generate_vector_micrographs(2, n_lc)


def generate_hamiltonian_micrographs(dimension: int) -> List[MicroGraph]:
    """
    Sinkless micro-graphs on two LC vertices, up to isomorphism
    """
    return _enumerate(dimension, 2, with_sink=False)
