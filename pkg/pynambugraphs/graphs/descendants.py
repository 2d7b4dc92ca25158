"""
Lifting 2D Kontsevich graphs to Nambu micro-graphs in dimensions 3 and 4.
"""
from itertools import product
from typing import Iterable, Iterator, List

from ..ng_jetring import SUPPORTED_DIMENSIONS
from ..py_ng_exceptions import (
    NGDimensionMismatchException,
    NGUnsupportedDimensionException
)
from .canonical import deduplicate
from .micro_graph import SINK, MicroGraph


def iter_raw_descendants(graph: MicroGraph, dimension: int) -> Iterator[MicroGraph]:
    """
    Every Leibniz redirection of the free edges, before deduplication.

    Each LC vertex gains d-2 Casimirs with fixed edges ordered after the two
    original edges. An original edge to LC vertex j may land on any vertex of
    structure j; an edge to the sink stays. A loop may not land on the
    source's own Casimir, which already receives a fixed edge.
    """
    if graph.dimension != 2:
        raise NGDimensionMismatchException(graph.dimension, 2)
    if dimension not in SUPPORTED_DIMENSIONS:
        raise NGUnsupportedDimensionException(dimension)
    n = graph.n_lc
    options = []
    for lc, targets in enumerate(graph.edges, start=1):
        for target in targets:
            if target == SINK and graph.has_sink:
                options.append((SINK,))
            elif target == lc:
                options.append((lc,))
            else:
                options.append(tuple([target] + [k * n + target for k in range(1, dimension - 1)]))
    for choice in product(*options):
        edges = []
        for lc in range(1, n + 1):
            free = choice[2 * (lc - 1): 2 * lc]
            own = tuple(k * n + lc for k in range(1, dimension - 1))
            edges.append(tuple(free) + own)
        yield MicroGraph(dimension, graph.has_sink, tuple(edges))


def descendants(graph: MicroGraph, dimension: int) -> List[MicroGraph]:
    return deduplicate(iter_raw_descendants(graph, dimension))


def descendant_union(graphs: Iterable[MicroGraph], dimension: int) -> List[MicroGraph]:
    """
    Deduplicated union of the descendants of several 2D graphs, in input order
    """
    def _chain():
        for graph in graphs:
            yield from iter_raw_descendants(graph, dimension)
    return deduplicate(_chain())


def embed(graph: MicroGraph) -> MicroGraph:
    """
    Add one Casimir of the next species per structure; the new edge goes last
    """
    new_dimension = graph.dimension + 1
    if new_dimension not in SUPPORTED_DIMENSIONS:
        raise NGUnsupportedDimensionException(new_dimension)
    n = graph.n_lc
    species = new_dimension - 2
    edges = tuple(targets + (species * n + lc,)
                  for lc, targets in enumerate(graph.edges, start=1))
    return MicroGraph(new_dimension, graph.has_sink, edges)


def swap_casimirs(graph: MicroGraph) -> MicroGraph:
    """
    Exchange the a^1 and a^2 Casimirs of every structure in place
    """
    if graph.dimension != 4:
        raise NGDimensionMismatchException(graph.dimension, 4)
    n = graph.n_lc

    def image(vertex):
        if vertex == SINK and graph.has_sink:
            return vertex
        species = graph.species(vertex)
        if species == 0:
            return vertex
        return (3 - species) * n + graph.owner(vertex)

    edges = tuple(tuple(image(t) for t in targets) for targets in graph.edges)
    return MicroGraph(graph.dimension, graph.has_sink, edges)
