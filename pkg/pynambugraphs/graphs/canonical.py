"""
Canonical forms of micro-graphs up to isomorphism.

Two micro-graphs are isomorphic when a relabeling of the LC vertices (each
Casimir following its owner, species kept) and a reordering of each LC
vertex's edges turn one into the other. Reordering edges permutes the
Levi-Civita slots, so it costs the sign of the permutation.
"""
from itertools import permutations
from typing import Dict, Iterable, List, Tuple

from .micro_graph import SINK, MicroGraph

CanonicalKey = Tuple[int, bool, Tuple[Tuple[int, ...], ...]]


def permutation_parity(order: List[int]) -> int:
    inversions = 0
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def normalize_edges(graph: MicroGraph, lc: int, targets: Tuple[int, ...]) -> Tuple[Tuple[int, ...], int]:
    """
    Free edges sorted ascending, then own Casimirs by species; with the sign
    of the reordering
    """
    own = graph.own_casimirs(lc)
    free = sorted((t, p) for p, t in enumerate(targets) if t not in own)
    fixed = [(t, targets.index(t)) for t in own]
    ordered = free + fixed
    order = [p for _, p in ordered]
    return tuple(t for t, _ in ordered), permutation_parity(order)


def relabel(graph: MicroGraph, mapping: Dict[int, int]) -> MicroGraph:
    """
    Apply an LC relabeling (old LC -> new LC), moving Casimirs with owners
    """
    n = graph.n_lc

    def image(vertex):
        if vertex == SINK and graph.has_sink:
            return SINK
        species = graph.species(vertex)
        return species * n + mapping[graph.owner(vertex)]

    new_edges = [None] * n
    for lc, targets in enumerate(graph.edges, start=1):
        new_edges[mapping[lc] - 1] = tuple(image(t) for t in targets)
    return MicroGraph(graph.dimension, graph.has_sink, tuple(new_edges))


def canonical_graph(graph: MicroGraph) -> Tuple[MicroGraph, int]:
    """
    The canonical representative and the sign s with phi(graph) = s * phi(representative)
    """
    n = graph.n_lc
    best = None
    best_sign = 1
    for perm in permutations(range(1, n + 1)):
        mapping = dict(zip(range(1, n + 1), perm))
        candidate = relabel(graph, mapping)
        sign = 1
        edges = []
        for lc, targets in enumerate(candidate.edges, start=1):
            normalized, parity = normalize_edges(candidate, lc, targets)
            edges.append(normalized)
            sign *= parity
        edges = tuple(edges)
        if best is None or edges < best:
            best = edges
            best_sign = sign
    return MicroGraph(graph.dimension, graph.has_sink, best), best_sign


def canonical_form(graph: MicroGraph) -> Tuple[str, int]:
    representative, sign = canonical_graph(graph)
    return representative.encoding(), sign


def canonical_key(graph: MicroGraph) -> CanonicalKey:
    representative, _ = canonical_graph(graph)
    return (graph.dimension, graph.has_sink, representative.edges)


def is_isomorphic(first: MicroGraph, second: MicroGraph) -> bool:
    return canonical_key(first) == canonical_key(second)


def deduplicate(graphs: Iterable[MicroGraph]) -> List[MicroGraph]:
    """
    First member of every isomorphism class, in input order
    """
    seen = set()
    unique = []
    for graph in graphs:
        key = canonical_key(graph)
        if key in seen:
            continue
        seen.add(key)
        unique.append(graph)
    return unique
