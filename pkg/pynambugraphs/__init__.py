from .__about__ import (
    __version__,
    __title__,
    __summary__
)
from ._ng_eval_cache import EvaluationCache
from .graphs import (
    FixtureDirectory,
    GraphFamily,
    GraphFamilyFactory,
    MicroGraph,
    canonical_form,
    descendant_union,
    descendants,
    embed,
    generate_2d_vector_graphs,
    generate_hamiltonian_micrographs,
    generate_vector_micrographs,
    parse_encoding,
    serialize
)
from .ng_jetring import DiffPolynomial, JetRing, Monomial
from .ng_linsolve import (
    NO_SOLUTION,
    SparseRationalMatrix,
    evaluation_matrix,
    kernel_basis,
    quotient_basis,
    rank,
    solve_particular
)
from .ng_morphism import GraphEvaluator, evaluate, evaluate_combination, evaluate_mode
from .ng_multivector import Multivector, schouten_bracket
from .ng_nambu import NambuBivector, lichnerowicz_differential, nambu_bivector
from .ng_pair_search import PairSearch, PairTable, pair_search_table
from .ng_pipelines import CohomologyPipeline, published_field_mismatches, trivializing_pairs_2d
from .ng_results import PipelineResult
from .ng_run_config import RunConfig
from .ng_tetraflow import graph_operation, tetrahedral_flow

from .py_ng_exceptions import (
    NGBudgetExceededException,
    NGCacheCorruptionException,
    NGCacheException,
    NGCalibrationException,
    NGConfigException,
    NGDimensionMismatchException,
    NGGraphEncodingException,
    NGMaxOrderExceededException,
    NGNotASubspaceException,
    NGParseException,
    NGShapeMismatchException,
    NGSolutionCheckException,
    NGStructureException,
    NGUnsupportedDimensionException
)
