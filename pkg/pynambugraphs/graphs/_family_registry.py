import logging
from typing import Dict, Iterable, List, Optional

from ..py_ng_exceptions import (
    NGFixtureNotFoundException,
    NGUnknownFamilyException
)
from .canonical import canonical_key
from .descendants import descendant_union
from .fixtures import FixtureDirectory
from .generators import (
    generate_hamiltonian_micrographs,
    generate_vector_micrographs
)
from .micro_graph import MicroGraph

logger = logging.getLogger(__name__)


class GraphFamily:
    """
    An ordered, named list of micro-graphs in one dimension

    Parameters
    ----------
    family_id : str
        Registry name of the family this list was built from
    dimension : int
        Base dimension shared by every member
    members : Dict[str, MicroGraph]
        Member name to graph, in column order
    """

    def __init__(self, family_id: str, dimension: int, members: Dict[str, MicroGraph]):
        self.family_id = family_id
        self.dimension = dimension
        self._members = dict(members)

    def names(self) -> List[str]:
        return list(self._members)

    def graphs(self) -> List[MicroGraph]:
        return list(self._members.values())

    def items(self):
        return list(self._members.items())

    def graph(self, name: str) -> MicroGraph:
        return self._members[name]

    def subset(self, names: Iterable[str]) -> "GraphFamily":
        return GraphFamily(self.family_id, self.dimension,
                           {name: self._members[name] for name in names})

    def __len__(self):
        return len(self._members)

    def __contains__(self, name):
        return name in self._members

    def __iter__(self):
        return iter(self._members)


class GraphFamilyFactory:
    _FAMILY_REGISTRY = {}

    @classmethod
    def register_family(cls, family_id, builder_class):
        cls._FAMILY_REGISTRY[family_id] = builder_class

    @classmethod
    def family_ids(cls) -> List[str]:
        return sorted(cls._FAMILY_REGISTRY)

    @classmethod
    def family(cls, family_id: str, dimension: int,
               fixtures: FixtureDirectory = None,
               sources: Optional[List[str]] = None) -> GraphFamily:
        try:
            builder_class = cls._FAMILY_REGISTRY[family_id]
        except KeyError as ke:
            raise NGUnknownFamilyException(family_id, known=cls._FAMILY_REGISTRY) from ke
        if fixtures is None:
            fixtures = FixtureDirectory()
        members = builder_class.build(dimension, fixtures, sources)
        logger.debug(f"family {family_id} (d={dimension}): {len(members)} graphs")
        return GraphFamily(family_id, dimension, members)


def ng_register_family(builder_class):
    family_id = builder_class.FAMILY_ID
    GraphFamilyFactory.register_family(family_id, builder_class)
    return builder_class


def _named_by_fixtures(graphs: List[MicroGraph], published: Dict[str, MicroGraph],
                       prefix: str) -> Dict[str, MicroGraph]:
    """
    Name graphs after the published fixture of their class where one exists,
    using the fixture's own encoding; the rest get prefix + position
    """
    published_keys = {}
    for name, graph in published.items():
        published_keys.setdefault(canonical_key(graph), (name, graph))
    members = {}
    for position, graph in enumerate(graphs, start=1):
        match = published_keys.get(canonical_key(graph))
        if match is None:
            members[f"{prefix}{position}"] = graph
        else:
            name, fixture_graph = match
            members[name] = fixture_graph
    return members


@ng_register_family
class FixtureFamily:
    FAMILY_ID = "fixtures"

    @classmethod
    def build(cls, dimension, fixtures: FixtureDirectory, sources=None):
        members = fixtures.vector_graphs(dimension)
        if sources:
            members = {name: members[name] for name in sources}
        return members


@ng_register_family
class DescendantFamily:
    """
    Deduplicated descendants of 2D fixture graphs (by default the two
    graphs that carry the 2D trivializing field)
    """
    FAMILY_ID = "descendants"

    @classmethod
    def build(cls, dimension, fixtures: FixtureDirectory, sources=None):
        if sources is None:
            parents = list(fixtures.descendant_sources().values())
        else:
            parents = [fixtures.vector_graph(2, name) for name in sources]
        union = descendant_union(parents, dimension)
        if sources is None:
            published_count = fixtures.descendant_count(dimension)
            if published_count is not None and len(union) != published_count:
                logger.warning(f"descendant union d={dimension} has {len(union)} classes, "
                               f"published count is {published_count}")
        try:
            published = fixtures.vector_graphs(dimension)
        except NGFixtureNotFoundException:
            published = {}
        return _named_by_fixtures(union, published, "D")


@ng_register_family
class HamiltonianFamily:
    FAMILY_ID = "hamiltonians"

    @classmethod
    def build(cls, dimension, fixtures: FixtureDirectory, sources=None):
        members = fixtures.hamiltonians(dimension)
        if sources:
            members = {name: members[name] for name in sources}
        return members


@ng_register_family
class MicrographFamily:
    """
    Every connected 1-vector micro-graph on three structures
    """
    FAMILY_ID = "micrographs"

    @classmethod
    def build(cls, dimension, fixtures: FixtureDirectory, sources=None):
        graphs = generate_vector_micrographs(dimension)
        try:
            published = fixtures.vector_graphs(dimension)
        except NGFixtureNotFoundException:
            published = {}
        return _named_by_fixtures(graphs, published, "M")


@ng_register_family
class HamiltonianMicrographFamily:
    FAMILY_ID = "hamiltonian-micrographs"

    @classmethod
    def build(cls, dimension, fixtures: FixtureDirectory, sources=None):
        graphs = generate_hamiltonian_micrographs(dimension)
        published = fixtures.hamiltonians(dimension)
        members = _named_by_fixtures(graphs, published, "G")
        published_classes = {canonical_key(graph) for graph in published.values()}
        found = sum(1 for name in members if name in published)
        if found != len(published_classes):
            logger.warning(f"generated Hamiltonian micro-graphs d={dimension} match {found} "
                           f"of {len(published_classes)} published classes")
        return members
