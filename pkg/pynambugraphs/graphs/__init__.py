from ._family_registry import (  # noqa: F401
    GraphFamily,
    GraphFamilyFactory,
    ng_register_family
)
from .canonical import (  # noqa: F401
    canonical_form,
    canonical_graph,
    canonical_key,
    deduplicate,
    is_isomorphic
)
from .descendants import (  # noqa: F401
    descendant_union,
    descendants,
    embed,
    iter_raw_descendants,
    swap_casimirs
)
from .fixtures import FixtureDirectory, GraphRelations  # noqa: F401
from .generators import (  # noqa: F401
    generate_2d_vector_graphs,
    generate_hamiltonian_micrographs,
    generate_vector_micrographs
)
from .graph_encoding import parse_encoding, serialize  # noqa: F401
from .micro_graph import SINK, MicroGraph  # noqa: F401
