"""
Pair searches: does a trivializing field exist over the descendants of one
graph from each of the two 2D synonym classes?
"""
import csv
import io
import logging
import subprocess
import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

from .graphs._family_registry import GraphFamily, GraphFamilyFactory
from .graphs.fixtures import FixtureDirectory
from .ng_jetring import to_rational
from .ng_morphism import GraphEvaluator
from .ng_multivector import Multivector
from .ng_nambu import nambu_bivector
from .ng_pipelines import CohomologyPipeline
from .ng_results import rational_text
from .ng_tetraflow import tetrahedral_flow
from .py_ng_exceptions import NGBudgetExceededException

OUTCOME_YES = "yes"
OUTCOME_NO = "no"
OUTCOME_TIMEOUT = "timeout"
OUTCOME_ERROR = "error"

DEFAULT_CELL_BUDGETS = {2: 600, 3: 3600, 4: 86400}


class PairTable(dict):
    """
    A dictionary of yes/no/timeout outcomes, keyed "row,column", with the
    row and column graph names in table order
    """

    def __init__(self, dimension: int, rows: List[str], columns: List[str],
                 cells: Dict[str, str] = None):
        super().__init__({
            "dimension": dimension,
            "rows": list(rows),
            "columns": list(columns),
            "cells": dict(cells or {}),
        })

    @property
    def dimension(self) -> int:
        return self["dimension"]

    @property
    def rows(self) -> List[str]:
        return self["rows"]

    @property
    def columns(self) -> List[str]:
        return self["columns"]

    def outcome(self, row: str, column: str) -> Optional[str]:
        return self["cells"].get(f"{row},{column}")

    def set_outcome(self, row: str, column: str, outcome: str):
        self["cells"][f"{row},{column}"] = outcome

    def yes_cells(self) -> List[Tuple[str, str]]:
        return [(row, column) for row in self.rows for column in self.columns
                if self.outcome(row, column) == OUTCOME_YES]

    def to_csv(self) -> str:
        """
        One header line of column graphs, then one line per row graph
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow([""] + [f"Gamma_{c}" for c in self.columns])
        for row in self.rows:
            writer.writerow([f"Gamma_{row}"] + [self.outcome(row, c) or "" for c in self.columns])
        return buffer.getvalue()


class _CellArgv(list):
    """
    argv for running one table cell in a child interpreter
    """

    def __init__(self, dimension: int, row: str, column: str, calibration,
                 cache_dir: Optional[str] = None, python: str = None):
        argv = [python or sys.executable, "-m", "pynambugraphs.ngc_main", "cell",
                "--dim", str(dimension), "--row", str(row), "--col", str(column),
                "--calibration", rational_text(calibration)]
        if cache_dir:
            argv.extend(["--cache-dir", str(cache_dir)])
        super().__init__(argv)


class PairSearch:
    """
    Runs the pair-search table for one dimension

    Parameters
    ----------
    dimension : int
        3 or 4 for the published tables; 2 also works
    budget : float, optional
        Seconds per cell; DEFAULT_CELL_BUDGETS by default
    jobs : int
        Cells run concurrently on this many threads
    isolate : bool
        Run each cell in a child process that is killed at the budget
    """
    logger = logging.getLogger(__name__)

    def __init__(self, dimension: int, fixtures: FixtureDirectory = None,
                 evaluator: GraphEvaluator = None, budget: Optional[float] = None,
                 jobs: int = 1, isolate: bool = False, cache_dir=None,
                 calibration=None, logger=None):
        if logger:
            self.logger = logger
        if fixtures is None:
            fixtures = FixtureDirectory()
        if evaluator is None:
            evaluator = GraphEvaluator(logger=self.logger)
        if budget is None:
            budget = DEFAULT_CELL_BUDGETS[dimension]
        self.dimension = dimension
        self.fixtures = fixtures
        self.evaluator = evaluator
        self.budget = budget
        self.jobs = max(1, jobs)
        self.isolate = isolate
        self.cache_dir = cache_dir
        self._calibration = calibration
        self._flow = None
        self._flow_lock = threading.Lock()

    @property
    def calibration(self):
        if self._calibration is None:
            self._calibration = CohomologyPipeline(2, self.evaluator).calibration
        return self._calibration

    def flow(self) -> Multivector:
        """
        The calibrated flow, computed by the first cell that needs it
        """
        with self._flow_lock:
            if self._flow is None:
                self.logger.info(f"computing the tetrahedral flow in dimension {self.dimension}")
                self._flow = tetrahedral_flow(nambu_bivector(self.dimension), self.calibration)
        return self._flow

    def cell_family(self, row: str, column: str) -> GraphFamily:
        return GraphFamilyFactory.family("descendants", self.dimension,
                                         fixtures=self.fixtures, sources=[row, column])

    def run_cell(self, row: str, column: str) -> str:
        pipeline = CohomologyPipeline(self.dimension, evaluator=self.evaluator,
                                      calibration=self.calibration, budget=self.budget,
                                      logger=self.logger, flow=self.flow())
        try:
            result = pipeline.solve_trivialization(self.cell_family(row, column))
        except NGBudgetExceededException as e:
            self.logger.warning(f"cell ({row}, {column}): {e}")
            return OUTCOME_TIMEOUT
        return OUTCOME_YES if result.solvable else OUTCOME_NO

    def _run_isolated(self, row: str, column: str) -> str:
        argv = _CellArgv(self.dimension, row, column, self.calibration, self.cache_dir)
        try:
            _ran = subprocess.run(argv, stdout=subprocess.PIPE, stderr=subprocess.PIPE,
                                  timeout=self.budget)
        except subprocess.TimeoutExpired:
            self.logger.warning(f"cell ({row}, {column}) exceeded {self.budget} s")
            return OUTCOME_TIMEOUT
        try:
            _ran.check_returncode()
        except subprocess.CalledProcessError:
            self.logger.error(f"cell ({row}, {column}) failed: "
                              f"{_ran.stderr.decode('utf-8').rstrip()}")
            return OUTCOME_ERROR
        outcome = _ran.stdout.decode("utf-8").strip()
        if outcome not in (OUTCOME_YES, OUTCOME_NO, OUTCOME_TIMEOUT):
            self.logger.error(f"cell ({row}, {column}) printed {outcome!r}")
            return OUTCOME_ERROR
        return outcome

    def _cell(self, cell: Tuple[str, str]) -> str:
        row, column = cell
        self.logger.info(f"d={self.dimension} cell ({row}, {column})")
        if self.isolate:
            return self._run_isolated(row, column)
        return self.run_cell(row, column)

    def run(self, rows: List[str] = None, columns: List[str] = None) -> PairTable:
        if rows is None:
            rows = self.fixtures.pair_search_rows()
        if columns is None:
            columns = self.fixtures.pair_search_columns()
        # resolve before the workers start so they share one constant
        to_rational(self.calibration)
        cells = [(row, column) for row in rows for column in columns]
        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            outcomes = list(pool.map(self._cell, cells))
        table = PairTable(self.dimension, rows, columns)
        for (row, column), outcome in zip(cells, outcomes):
            table.set_outcome(row, column, outcome)
        return table


def pair_search_table(dimension: int, **kwargs) -> PairTable:
    return PairSearch(dimension, **kwargs).run()
