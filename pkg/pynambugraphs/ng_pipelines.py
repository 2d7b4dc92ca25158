"""
End-to-end computations in the graph complex of a Nambu Poisson structure:
the trivialization of the tetrahedral flow, the homogeneous kernel of d_P on
graph vector fields and its expression through Hamiltonian vector fields.
"""
import logging
import time
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ

from ._datetime import utcnow_z
from .graphs._family_registry import GraphFamily, GraphFamilyFactory
from .graphs.fixtures import FixtureDirectory, GraphRelations
from .ng_linsolve import (
    NO_SOLUTION,
    Column,
    build_index,
    coefficients_from_column,
    evaluation_matrix,
    independent_columns,
    kernel_basis,
    quotient_basis,
    rank,
    solve_particular,
    vectorize
)
from .ng_morphism import MODE_PLAIN, MODE_SKEW, MODE_SYM, GraphEvaluator
from .ng_multivector import Multivector, multivector_sum, rational_multiple_of
from .ng_nambu import nambu_bivector
from .ng_results import (
    KIND_HAMILTONIAN,
    KIND_KERNEL,
    KIND_SYNONYMS,
    KIND_TRIVIALIZATION,
    PipelineResult
)
from .ng_tetraflow import flow_calibration, tetrahedral_flow
from .py_ng_exceptions import (
    NGBudgetExceededException,
    NGFixtureNotFoundException,
    NGShapeMismatchException,
    NGSolutionCheckException
)


def default_mode(dimension: int) -> str:
    return MODE_SKEW if dimension == 4 else MODE_PLAIN


def hamiltonian_mode(dimension: int) -> str:
    return MODE_SYM if dimension == 4 else MODE_PLAIN


class CohomologyPipeline:
    """
    Pipelines over one dimension, sharing P, the calibrated flow and an
    evaluator (and through it, the evaluation cache)

    Parameters
    ----------
    dimension : int
        2, 3 or 4
    evaluator : GraphEvaluator, optional
        Evaluator to share; a fresh in-memory one by default
    calibration : QQ, optional
        Flow calibration constant; computed from the 2D reference when omitted
    flow : Multivector, optional
        Precomputed calibrated flow Q(P) of this dimension
    budget : float, optional
        Seconds allowed for each pipeline call before NGBudgetExceededException
    logger : logging.Logger, optional
    """
    logger = logging.getLogger(__name__)

    def __init__(self, dimension: int, evaluator: GraphEvaluator = None,
                 calibration=None, budget: Optional[float] = None, logger=None,
                 flow: Multivector = None):
        if logger:
            self.logger = logger
        if flow is not None and flow.dimension != dimension:
            raise NGShapeMismatchException(f"{flow.dimension}D flow for a {dimension}D pipeline")
        self.dimension = dimension
        self.poisson = nambu_bivector(dimension)
        if evaluator is None:
            evaluator = GraphEvaluator(logger=self.logger)
        self.evaluator = evaluator
        self._calibration = calibration
        self._flow = flow
        self.budget = budget
        self._deadline = None
        self._t0 = None

    @property
    def calibration(self):
        if self._calibration is None:
            self._calibration = flow_calibration()
        return self._calibration

    def flow(self) -> Multivector:
        if self._flow is None:
            self.logger.info(f"computing the tetrahedral flow in dimension {self.dimension}")
            self._flow = tetrahedral_flow(self.poisson, self.calibration)
        return self._flow

    def _start(self, result: PipelineResult):
        self._deadline = None if self.budget is None else time.monotonic() + self.budget
        result["started"] = utcnow_z()
        self._t0 = time.monotonic()

    def _finish(self, result: PipelineResult) -> PipelineResult:
        result["finished"] = utcnow_z()
        result["seconds"] = round(time.monotonic() - self._t0, 3)
        self._deadline = None
        return result

    def check_budget(self, what: str):
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise NGBudgetExceededException(what, self.budget)

    def _check_family(self, family: GraphFamily):
        if family.dimension != self.dimension:
            raise NGShapeMismatchException(
                f"family {family.family_id} is {family.dimension}D, pipeline is {self.dimension}D")

    def fields(self, family: GraphFamily, mode: str) -> List[Multivector]:
        values = []
        for name, graph in family.items():
            values.append(self.evaluator.evaluate(graph, mode))
            self.check_budget(f"evaluating {name}")
        return values

    def differentials(self, values: Sequence[Multivector]) -> List[Multivector]:
        brackets = []
        for value in values:
            brackets.append(self.poisson.differential(value))
            self.check_budget("computing d_P")
        return brackets

    def combination(self, coefficients: Dict[str, object], family: GraphFamily,
                    mode: str = None) -> Multivector:
        if mode is None:
            mode = default_mode(self.dimension)
        parts = [self.evaluator.evaluate(family.graph(name), mode).scale(coeff)
                 for name, coeff in coefficients.items() if coeff]
        return multivector_sum(self.dimension, parts)

    def solve_trivialization(self, family: GraphFamily, mode: str = None) -> PipelineResult:
        """
        Solve [[P, sum_i c_i phi(g_i)]] = Q(P) for the c_i

        The result's solution maps member names to coefficients with free
        variables at zero; "solvable" is False when no combination works.
        """
        self._check_family(family)
        if mode is None:
            mode = default_mode(self.dimension)
        result = PipelineResult.new(KIND_TRIVIALIZATION, self.dimension,
                                    family.family_id, mode, family.names())
        self._start(result)
        flow = self.flow()
        brackets = self.differentials(self.fields(family, mode))
        index = build_index(brackets + [flow])
        matrix, _ = evaluation_matrix(brackets, index)
        rhs = vectorize(flow, index)
        self.check_budget("solving")
        solution = solve_particular(matrix, rhs)
        if solution is NO_SOLUTION:
            self.logger.info(f"{family.family_id} d={self.dimension}: no trivializing field")
            result.set_solution(None)
        else:
            check_combination(brackets, solution, flow,
                              f"trivializing field over {family.family_id} d={self.dimension}")
            result.set_solution(coefficients_from_column(solution, family.names()))
        return self._finish(result)

    def homogeneous_kernel(self, family: GraphFamily, mode: str = None) -> PipelineResult:
        """
        Representatives of ker(d_P on span phi(family)) modulo the relations
        among the phi(g) themselves
        """
        self._check_family(family)
        if mode is None:
            mode = default_mode(self.dimension)
        result = PipelineResult.new(KIND_KERNEL, self.dimension,
                                    family.family_id, mode, family.names())
        self._start(result)
        values = self.fields(family, mode)
        brackets = self.differentials(values)
        evaluation, _ = evaluation_matrix(values)
        bracket_matrix, _ = evaluation_matrix(brackets)
        self.check_budget("kernels")
        small = kernel_basis(evaluation)
        big = kernel_basis(bracket_matrix)
        representatives = quotient_basis(big, small, len(family))
        zero = Multivector.zero(self.dimension, self.poisson.ring)
        for n, representative in enumerate(representatives, start=1):
            what = f"kernel field {n} over {family.family_id} d={self.dimension}"
            check_combination(brackets, representative, zero, what)
            if _combine(values, representative).is_zero():
                raise NGSolutionCheckException(f"{what} evaluates to zero")
        result.set_kernel([coefficients_from_column(r, family.names()) for r in representatives])
        self.logger.info(f"{family.family_id} d={self.dimension}: "
                         f"homogeneous kernel of dimension {len(representatives)}")
        return self._finish(result)

    def express_in_hamiltonians(self, kernel: PipelineResult, family: GraphFamily,
                                hamiltonians: GraphFamily) -> PipelineResult:
        """
        Solve Y = sum_j c_j d_P(H_j) for every kernel representative Y.
        Hamiltonians are symmetrized under the Casimir swap in 4D.
        """
        self._check_family(family)
        self._check_family(hamiltonians)
        mode = hamiltonian_mode(self.dimension)
        result = PipelineResult.new(KIND_HAMILTONIAN, self.dimension,
                                    hamiltonians.family_id, mode, hamiltonians.names())
        self._start(result)
        hamiltonian_fields = self.differentials(self.fields(hamiltonians, mode))
        targets = [self.combination(c, family, kernel.mode) for c in kernel.kernel]
        index = build_index(hamiltonian_fields + targets)
        matrix, _ = evaluation_matrix(hamiltonian_fields, index)
        expressions = []
        for n, target in enumerate(targets, start=1):
            solution = solve_particular(matrix, vectorize(target, index))
            if solution is NO_SOLUTION:
                self.logger.error(
                    f"kernel field {n} in d={self.dimension} is not a combination "
                    f"of Hamiltonian vector fields")
                expressions.append(None)
            else:
                check_combination(hamiltonian_fields, solution, target,
                                  f"Hamiltonian expression of kernel field {n} d={self.dimension}")
                expressions.append(coefficients_from_column(solution, hamiltonians.names()))
        result.set_expressions(expressions)
        return self._finish(result)

    def detect_synonyms(self, family: GraphFamily, mode: str = None) -> PipelineResult:
        """
        Partition the family by phi(g1) = c * phi(g2); graphs evaluating to
        zero are listed separately
        """
        self._check_family(family)
        if mode is None:
            mode = default_mode(self.dimension)
        result = PipelineResult.new(KIND_SYNONYMS, self.dimension,
                                    family.family_id, mode, family.names())
        self._start(result)
        classes, zero = synonym_classes(dict(zip(family.names(), self.fields(family, mode))))
        result.set_classes(classes)
        result["zero"] = zero
        return self._finish(result)

    def independent_members(self, family: GraphFamily, mode: str = None,
                            differential: bool = False) -> List[str]:
        """
        First maximal linearly independent subset of phi(family), in family
        order; of d_P(phi(family)) when differential is set
        """
        self._check_family(family)
        if mode is None:
            mode = default_mode(self.dimension)
        values = self.fields(family, mode)
        if differential:
            values = self.differentials(values)
        matrix, _ = evaluation_matrix(values)
        names = family.names()
        return [names[c] for c in independent_columns(matrix)]


def _combine(values: Sequence[Multivector], column: Column) -> Multivector:
    parts = [values[i].scale(c) for i, c in column.items() if c]
    return multivector_sum(values[0].dimension, parts)


def check_combination(values: Sequence[Multivector], column: Column, target: Multivector,
                      what: str):
    """
    Re-evaluate sum_i column[i] * values[i]; raises NGSolutionCheckException
    unless it equals target
    """
    if _combine(values, column) != target:
        raise NGSolutionCheckException(what)


def synonym_classes(values: Dict[str, Multivector]) -> Tuple[List[Dict[str, object]], List[str]]:
    classes: List[Dict[str, object]] = []
    representatives: List[Multivector] = []
    zero: List[str] = []
    for name, value in values.items():
        if value.is_zero():
            zero.append(name)
            continue
        for members, representative in zip(classes, representatives):
            ratio = rational_multiple_of(value, representative)
            if ratio is not None:
                members[name] = ratio
                break
        else:
            classes.append({name: QQ(1)})
            representatives.append(value)
    return classes, zero


def check_relations(values: Dict[str, Multivector], relations: GraphRelations) -> List[str]:
    """
    Names whose values break the given relations; empty when all hold
    """
    violations = []
    for relation_class in relations.classes:
        names = list(relation_class)
        first = values[names[0]]
        for name in names[1:]:
            if values[name] != first.scale(relation_class[name]):
                violations.append(name)
    for name in relations.zero:
        if not values[name].is_zero():
            violations.append(name)
    return violations


def trivializing_pairs_2d(pipeline: CohomologyPipeline = None,
                          fixtures: FixtureDirectory = None) -> List[Tuple[str, str, Dict[str, object]]]:
    """
    Every (i, j), i from the class of Gamma_2 and j from the class of Gamma_1,
    for which a combination of the two fields trivializes the 2D flow
    """
    if fixtures is None:
        fixtures = FixtureDirectory()
    if pipeline is None:
        pipeline = CohomologyPipeline(2)
    family = GraphFamilyFactory.family("fixtures", 2, fixtures=fixtures)
    pairs = []
    for row in fixtures.pair_search_rows():
        for column in fixtures.pair_search_columns():
            result = pipeline.solve_trivialization(family.subset([row, column]))
            if result.solvable:
                pairs.append((row, column, result.solution))
    pipeline.logger.info(f"{len(pairs)} trivializing pairs in two dimensions")
    return pairs


def published_field_mismatches(pipeline: CohomologyPipeline, family: GraphFamily,
                               fixtures: FixtureDirectory,
                               trivialization: PipelineResult = None,
                               kernel: PipelineResult = None) -> List[str]:
    """
    Compare computed results with the packaged fields of the pipeline's dimension

    The packaged trivializing field must bracket to a nonzero multiple of the
    flow, and every packaged kernel field must lie in the span of the computed
    kernel representatives.
    """
    problems = []
    d = pipeline.dimension
    published = GraphFamilyFactory.family("fixtures", d, fixtures=fixtures)
    if trivialization is not None and trivialization.solvable:
        try:
            coefficients = fixtures.trivializing_field(d)
        except NGFixtureNotFoundException:
            coefficients = None
        if coefficients is not None:
            field = pipeline.combination(coefficients, published, trivialization.mode)
            ratio = rational_multiple_of(pipeline.poisson.differential(field), pipeline.flow())
            if not ratio:
                problems.append("packaged trivializing field does not bracket to a multiple of the flow")
    if kernel is not None:
        computed = [pipeline.combination(c, family, kernel.mode) for c in kernel.kernel]
        expected = [pipeline.combination(c, published, kernel.mode) for c in fixtures.kernel_fields(d)]
        if expected:
            matrix, _ = evaluation_matrix(computed + expected)
            if rank(matrix) != len(computed):
                problems.append("packaged kernel fields lie outside the computed kernel")
    return problems
