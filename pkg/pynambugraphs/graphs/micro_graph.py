from dataclasses import dataclass
from typing import Dict, List, Tuple

from ..ng_jetring import RHO, SUPPORTED_DIMENSIONS
from ..py_ng_exceptions import (
    NGStructureException,
    NGUnsupportedDimensionException
)

SINK = 0

ROLE_SINK = "sink"
ROLE_LC = "levi-civita"
ROLE_CASIMIR = "casimir"


@dataclass(frozen=True)
class MicroGraph:
    """
    A Nambu micro-graph.

    Vertex ids follow the bracket encodings: 0 is the sink (when present),
    1..n are the Levi-Civita vertices, and the Casimir of species k
    (1 <= k <= d-2) owned by LC vertex j is k*n + j. Only LC vertices emit
    edges, d of them each, stored in order. Each LC vertex has exactly one
    edge to each of its own Casimirs; the remaining two edges are free.

    Parameters
    ----------
    dimension : int
        Base dimension d, one of 2, 3, 4
    has_sink : bool
        True for 1-vector graphs, False for Hamiltonian (function) graphs
    edges : Tuple[Tuple[int, ...], ...]
        Per LC vertex, the ordered list of edge targets

    Raises
    ------
    NGStructureException
        If arity, vertex ranges or the Casimir edge rule are violated
    """
    dimension: int
    has_sink: bool
    edges: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.dimension not in SUPPORTED_DIMENSIONS:
            raise NGUnsupportedDimensionException(self.dimension)
        object.__setattr__(self, "edges", tuple(tuple(targets) for targets in self.edges))
        self._validate()

    def _validate(self):
        n = self.n_lc
        if n == 0:
            raise NGStructureException("a graph needs at least one Levi-Civita vertex",
                                       text=self.encoding())
        top = n * (self.dimension - 1)
        for lc, targets in enumerate(self.edges, start=1):
            if len(targets) != self.dimension:
                raise NGStructureException(
                    f"vertex {lc} emits {len(targets)} edges, expected {self.dimension}",
                    text=self.encoding())
            for target in targets:
                if target == SINK and not self.has_sink:
                    raise NGStructureException(
                        f"vertex {lc} targets the sink of a sinkless graph", text=self.encoding())
                if not 0 <= target <= top:
                    raise NGStructureException(
                        f"vertex {lc} targets unknown vertex {target}", text=self.encoding())
            for species in range(1, self.dimension - 1):
                own = self.casimir_vertex(lc, species)
                if targets.count(own) != 1:
                    raise NGStructureException(
                        f"vertex {lc} must reach its own Casimir {own} exactly once",
                        text=self.encoding())

    @property
    def n_lc(self) -> int:
        return len(self.edges)

    @property
    def n_species(self) -> int:
        return self.dimension - 2

    def lc_vertices(self) -> List[int]:
        return list(range(1, self.n_lc + 1))

    def casimir_vertex(self, lc: int, species: int) -> int:
        return species * self.n_lc + lc

    def content_vertices(self) -> List[int]:
        return list(range(1, self.n_lc * (self.dimension - 1) + 1))

    def vertices(self) -> List[int]:
        head = [SINK] if self.has_sink else []
        return head + self.content_vertices()

    def role(self, vertex: int) -> str:
        if vertex == SINK and self.has_sink:
            return ROLE_SINK
        if 1 <= vertex <= self.n_lc:
            return ROLE_LC
        if self.n_lc < vertex <= self.n_lc * (self.dimension - 1):
            return ROLE_CASIMIR
        raise ValueError(f"No vertex {vertex} in {self.encoding()}")

    def owner(self, vertex: int) -> int:
        """
        The LC vertex whose structure the vertex belongs to
        """
        if self.role(vertex) == ROLE_SINK:
            raise ValueError("The sink belongs to no structure")
        return (vertex - 1) % self.n_lc + 1

    def species(self, vertex: int) -> int:
        """
        0 for LC vertices, k for Casimirs of species k
        """
        if self.role(vertex) == ROLE_SINK:
            raise ValueError("The sink carries no field")
        return (vertex - 1) // self.n_lc

    def content_field(self, vertex: int) -> int:
        species = self.species(vertex)
        return RHO if species == 0 else species

    def structure(self, lc: int) -> List[int]:
        return [lc] + [self.casimir_vertex(lc, k) for k in range(1, self.dimension - 1)]

    def own_casimirs(self, lc: int) -> List[int]:
        return self.structure(lc)[1:]

    def free_positions(self, lc: int) -> List[int]:
        own = set(self.own_casimirs(lc))
        return [p for p, target in enumerate(self.edges[lc - 1]) if target not in own]

    def in_degrees(self) -> Dict[int, int]:
        degrees = {v: 0 for v in self.vertices()}
        for targets in self.edges:
            for target in targets:
                degrees[target] += 1
        return degrees

    def max_in_degree(self) -> int:
        degrees = self.in_degrees()
        return max(degrees[v] for v in self.content_vertices())

    def sink_in_degree(self) -> int:
        return sum(targets.count(SINK) for targets in self.edges)

    def is_connected(self) -> bool:
        neighbours = {v: set() for v in self.vertices()}
        for lc, targets in enumerate(self.edges, start=1):
            for target in targets:
                neighbours[lc].add(target)
                neighbours[target].add(lc)
        start = self.vertices()[0]
        seen = {start}
        frontier = [start]
        while frontier:
            vertex = frontier.pop()
            for other in neighbours[vertex] - seen:
                seen.add(other)
                frontier.append(other)
        return len(seen) == len(neighbours)

    def encoding(self) -> str:
        groups = ";".join(",".join(str(t) for t in targets) for targets in self.edges)
        return f"[{groups}]"

    def edge_list(self) -> List[Tuple[int, int]]:
        return [(lc, target) for lc, targets in enumerate(self.edges, start=1) for target in targets]

    def __str__(self):
        return self.encoding()
