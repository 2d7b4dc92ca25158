from typing import Dict, List, Optional

from .._ng_resources import load_data_json
from ..ng_format_version import FIXTURE_FORMAT_VERSION, NGFormatVersion
from ..ng_jetring import JetRing, to_rational
from ..ng_multivector import Multivector
from ..py_ng_exceptions import (
    NGCacheCorruptionException,
    NGFixtureNotFoundException
)
from .graph_encoding import parse_encoding
from .micro_graph import MicroGraph

Coefficients = Dict[str, object]


def _by_number(table: Dict[str, object]) -> List[str]:
    return sorted(table, key=int)


def _rational_dict(table: Dict[str, str]) -> Coefficients:
    return {name: to_rational(value) for name, value in table.items()}


class GraphRelations:
    """
    Linear relations between named graph evaluations.

    Each class maps names to rationals c with phi(name) = c * phi(first name).
    """

    def __init__(self, relation_dict):
        self._classes = [_rational_dict(c) for c in relation_dict["classes"]]
        self._zero = list(relation_dict.get("zero", []))

    @property
    def classes(self) -> List[Coefficients]:
        return [dict(c) for c in self._classes]

    @property
    def zero(self) -> List[str]:
        return list(self._zero)

    def representatives(self) -> List[str]:
        return [next(iter(c)) for c in self._classes]


class FixtureDirectory:
    """
    The packaged graph tables: named vector graphs per dimension, Hamiltonian
    graphs, their linear relations and the published coefficient lists.
    """
    GRAPH_TABLE = "published-graphs.json"
    FLOW_TABLE = "flow-2d.json"

    def __init__(self):
        self._graphs = self._load_from_json(self.GRAPH_TABLE)
        self._flow = self._load_from_json(self.FLOW_TABLE)

    def _load_from_json(self, fname):
        loaded = load_data_json(fname)
        version = NGFormatVersion(loaded.get("format_version", "0"))
        if not version.is_compatible(FIXTURE_FORMAT_VERSION):
            raise NGCacheCorruptionException(
                f"fixture format {version} unsupported, expected {FIXTURE_FORMAT_VERSION}", path=fname)
        return loaded

    @property
    def format_version(self) -> str:
        return self._graphs["format_version"]

    def _table(self, section: str, dimension: int) -> Dict[str, str]:
        try:
            return self._graphs[section][str(dimension)]
        except KeyError as e:
            raise NGFixtureNotFoundException(section, f"d={dimension}") from e

    def vector_graph(self, dimension: int, name) -> MicroGraph:
        table = self._table("vector_graphs", dimension)
        try:
            encoding = table[str(name)]
        except KeyError as e:
            raise NGFixtureNotFoundException(f"vector graph d={dimension}", name) from e
        return parse_encoding(encoding, dimension, has_sink=True)

    def vector_graphs(self, dimension: int) -> Dict[str, MicroGraph]:
        table = self._table("vector_graphs", dimension)
        return {name: parse_encoding(table[name], dimension, has_sink=True)
                for name in _by_number(table)}

    def hamiltonian(self, dimension: int, name) -> MicroGraph:
        table = self._table("hamiltonians", dimension)
        try:
            encoding = table[str(name)]
        except KeyError as e:
            raise NGFixtureNotFoundException(f"hamiltonian d={dimension}", name) from e
        return parse_encoding(encoding, dimension, has_sink=False)

    def hamiltonians(self, dimension: int) -> Dict[str, MicroGraph]:
        table = self._table("hamiltonians", dimension)
        return {name: parse_encoding(table[name], dimension, has_sink=False)
                for name in _by_number(table)}

    def relations(self, kind: str) -> GraphRelations:
        """
        kind is one of "vector-2", "hamiltonian-3", "hamiltonian-4"
        """
        try:
            relation_dict = self._graphs["relations"][kind]
        except KeyError as e:
            raise NGFixtureNotFoundException("relations", kind) from e
        return GraphRelations(relation_dict)

    def descendant_sources(self) -> Dict[str, MicroGraph]:
        return {name: self.vector_graph(2, name) for name in self._graphs["descendant_sources"]}

    def pair_search_rows(self) -> List[str]:
        return list(self._graphs["pair_search"]["rows"])

    def pair_search_columns(self) -> List[str]:
        return list(self._graphs["pair_search"]["columns"])

    def trivializing_field(self, dimension: int) -> Coefficients:
        return _rational_dict(self._table("trivializing_fields", dimension))

    def kernel_fields(self, dimension: int) -> List[Coefficients]:
        return [_rational_dict(c) for c in self._table("kernel_fields", dimension)]

    def hamiltonian_expressions(self, dimension: int) -> List[Coefficients]:
        return [_rational_dict(c) for c in self._table("hamiltonian_expressions", dimension)]

    def symmetric_independent_hamiltonians(self) -> List[str]:
        return list(self._graphs["symmetric_independent_hamiltonians"])

    def kernel_dimension(self, dimension: int) -> int:
        return self._graphs["assertions"]["kernel_dimension"][str(dimension)]

    def trivialization_solvable(self, dimension: int) -> bool:
        return self._graphs["assertions"]["trivialization_solvable"][str(dimension)]

    def descendant_count(self, dimension: int) -> Optional[int]:
        """
        Published size of the default descendant union, or None if no count was published
        """
        return self._graphs["assertions"]["descendant_count"].get(str(dimension))

    def table_yes_cells(self, dimension: int) -> List[tuple]:
        cells = self._graphs["assertions"]["table_yes"][str(dimension)]
        return [tuple(cell) for cell in cells]

    def reference_flow(self, ring: JetRing = None) -> Multivector:
        """
        The published tetrahedral flow in two dimensions
        """
        if ring is None:
            ring = JetRing(self._flow["dimension"])
        return Multivector.from_text(ring, self._flow["multivector"])
