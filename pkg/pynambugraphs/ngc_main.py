"""
ngc: batch front end for graph evaluation, the cohomology pipelines, the
pair-search tables and the evaluation cache.

Exit status: 0 ok, 2 bad input, 3 a result disagrees with the packaged
tables (or a cache entry with its recomputation), 4 time budget exceeded.
"""
import json
import logging
import pathlib
import sys
from argparse import ArgumentParser
from typing import Dict, List, Optional

from .__about__ import __title__, __version__
from ._datetime import utcnow_z
from ._ng_eval_cache import STATUS_OK, EvaluationCache
from .graphs import (
    FixtureDirectory,
    GraphFamily,
    GraphFamilyFactory,
    canonical_form,
    descendant_union,
    embed,
    generate_hamiltonian_micrographs,
    generate_vector_micrographs,
    iter_raw_descendants,
    parse_encoding
)
from .ng_jetring import SUPPORTED_DIMENSIONS, to_rational
from .ng_morphism import MODES, GraphEvaluator, evaluate_mode, ring_for_graphs
from .ng_nambu import nambu_bivector
from .ng_pair_search import OUTCOME_TIMEOUT, PairSearch
from .ng_pipelines import CohomologyPipeline, default_mode, published_field_mismatches
from .ng_results import KIND_KERNEL, PipelineResult, rational_text
from .ng_run_config import (
    FORMATS,
    STEP_HAMILTONIANS,
    STEP_KERNEL,
    STEP_SYNONYMS,
    STEP_TRIVIALIZE,
    STEPS,
    RunConfig
)
from .ng_tetraflow import orient_and_apply, tetrahedral_flow
from .py_ng_exceptions import (
    NGBudgetExceededException,
    NGConfigException,
    NGDimensionMismatchException,
    NGFixtureNotFoundException,
    NGGraphEncodingException,
    NGParseException,
    NGUnknownFamilyException,
    NGUnsupportedDimensionException
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_MISMATCH = 3
EXIT_BUDGET = 4

MANIFEST_NAME = "manifest.json"

_INPUT_ERRORS = (
    NGConfigException,
    NGDimensionMismatchException,
    NGFixtureNotFoundException,
    NGUnknownFamilyException,
    NGUnsupportedDimensionException
)

logger = logging.getLogger("ngc")


def _add_run_options(parser: ArgumentParser, formats=FORMATS):
    parser.add_argument("--dim", dest="dimension", type=int,
                        choices=SUPPORTED_DIMENSIONS, help="Base dimension d")
    parser.add_argument("--mode", choices=MODES,
                        help="Casimir-swap projection; skew and sym need d=4")
    parser.add_argument("--cache-dir", help="Evaluation cache location (default $NGC_CACHE_DIR)")
    parser.add_argument("--no-cache", dest="use_cache", action="store_const", const=False,
                        help="Don't read or write the evaluation cache")
    parser.add_argument("--format", choices=formats, help="Output format (default text)")
    parser.add_argument("--out", help="Write output here instead of stdout")


def _add_batch_options(parser: ArgumentParser):
    parser.add_argument("--config", help="JSON run configuration; flags override it")
    parser.add_argument("--family", help="Graph family: "
                        f"{', '.join(GraphFamilyFactory.family_ids())}")
    parser.add_argument("--sources", nargs="+",
                        help="Fixture names the family is built from")
    parser.add_argument("--budget", type=float, help="Time budget in seconds")
    parser.add_argument("--jobs", type=int, help="Concurrent table cells")


def ngc_parse_args(argv: Optional[List[str]] = None):
    parser = ArgumentParser(prog="ngc", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")
    parser.add_argument("--version", action="version", version=f"{__title__} {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    eval_parser = subparsers.add_parser("eval", help="Evaluate one graph")
    eval_parser.add_argument("encoding", help='Bracket encoding, e.g. "[0,3;2,3;2,3]"')
    _add_run_options(eval_parser, formats=("text", "json"))

    generate_parser = subparsers.add_parser(
        "generate", help="Enumerate connected micro-graphs up to isomorphism")
    generate_parser.add_argument("--hamiltonian", action="store_true",
                                 help="Sinkless graphs on two structures")
    generate_parser.add_argument("--lc", type=int, default=3,
                                 help="Number of structures for vector graphs")
    _add_run_options(generate_parser, formats=("text", "json"))

    descendants_parser = subparsers.add_parser(
        "descendants", help="Lift 2D graphs to dimension --dim")
    descendants_parser.add_argument("encodings", nargs="+", help="2D encodings")
    descendants_parser.add_argument("--raw", action="store_true",
                                    help="List every redirection before deduplication")
    _add_run_options(descendants_parser, formats=("text", "json"))

    embed_parser = subparsers.add_parser("embed", help="Add one Casimir per structure")
    embed_parser.add_argument("encoding", help="Encoding in dimension --dim")
    _add_run_options(embed_parser, formats=("text", "json"))

    tetra_parser = subparsers.add_parser("tetra", help="Tetrahedral flow of the Nambu bracket")
    tetra_parser.add_argument("--raw", action="store_true", help="Skip the calibration constant")
    _add_run_options(tetra_parser, formats=("text", "json"))

    pipeline_parser = subparsers.add_parser("pipeline", help="Run cohomology pipelines")
    pipeline_parser.add_argument("--steps", nargs="+", choices=STEPS,
                                 help=f"Steps to run (default {' '.join(STEPS[:3])})")
    _add_run_options(pipeline_parser, formats=("text", "json"))
    _add_batch_options(pipeline_parser)

    table_parser = subparsers.add_parser("table", help="Pair-search table")
    table_parser.add_argument("--isolate", action="store_const", const=True,
                              help="Run each cell in a child process")
    _add_run_options(table_parser)
    _add_batch_options(table_parser)

    cell_parser = subparsers.add_parser("cell", help="One pair-search cell (used by --isolate)")
    cell_parser.add_argument("--dim", dest="dimension", type=int, required=True,
                             choices=SUPPORTED_DIMENSIONS)
    cell_parser.add_argument("--row", required=True)
    cell_parser.add_argument("--col", dest="column", required=True)
    cell_parser.add_argument("--calibration", required=True)
    cell_parser.add_argument("--cache-dir")

    cache_parser = subparsers.add_parser("cache", help="Inspect the evaluation cache")
    cache_parser.add_argument("action", choices=("list", "clear", "verify"))
    cache_parser.add_argument("--sample", type=int, help="verify: check only this many entries")
    cache_parser.add_argument("--cache-dir")
    cache_parser.add_argument("--format", choices=("text", "json"))

    return parser.parse_args(argv)


def _config(options) -> RunConfig:
    base = None
    if getattr(options, "config", None):
        base = RunConfig.from_file(options.config)
    return RunConfig.from_args(options, base=base).validate()


def _evaluator(config: RunConfig) -> GraphEvaluator:
    cache = EvaluationCache(config.cache_dir) if config.use_cache else None
    return GraphEvaluator(cache=cache, logger=logger)


def _emit(text: str, out: Optional[pathlib.Path] = None):
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        sys.stdout.flush()
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text if text.endswith("\n") else text + "\n")


def _encodings_output(graphs, fmt: str) -> str:
    encodings = [graph.encoding() for graph in graphs]
    if fmt == "json":
        return json.dumps(encodings, indent=2)
    return "\n".join(encodings)


def cmd_eval(options) -> int:
    config = _config(options)
    graph = parse_encoding(options.encoding, config.dimension)
    value = _evaluator(config).evaluate(graph, config.mode)
    if config.format == "json":
        canonical, sign = canonical_form(graph)
        text = json.dumps({
            "encoding": graph.encoding(),
            "canonical": canonical,
            "sign": sign,
            "dimension": config.dimension,
            "mode": config.mode,
            "multivector": value.to_json(),
        }, indent=2, sort_keys=True)
    else:
        text = str(value)
    _emit(text, config.out)
    return EXIT_OK


def cmd_generate(options) -> int:
    config = _config(options)
    if options.hamiltonian:
        graphs = generate_hamiltonian_micrographs(config.dimension)
    else:
        graphs = generate_vector_micrographs(config.dimension, options.lc)
    logger.info(f"{len(graphs)} graphs")
    _emit(_encodings_output(graphs, config.format), config.out)
    return EXIT_OK


def cmd_descendants(options) -> int:
    config = _config(options)
    parents = [parse_encoding(text, 2) for text in options.encodings]
    if options.raw:
        graphs = [g for parent in parents for g in iter_raw_descendants(parent, config.dimension)]
    else:
        graphs = descendant_union(parents, config.dimension)
    logger.info(f"{len(graphs)} descendants in dimension {config.dimension}")
    _emit(_encodings_output(graphs, config.format), config.out)
    return EXIT_OK


def cmd_embed(options) -> int:
    config = _config(options)
    graph = embed(parse_encoding(options.encoding, config.dimension))
    _emit(_encodings_output([graph], config.format), config.out)
    return EXIT_OK


def cmd_tetra(options) -> int:
    config = _config(options)
    poisson = nambu_bivector(config.dimension)
    if options.raw:
        flow = orient_and_apply(poisson)
    else:
        flow = tetrahedral_flow(poisson)
    if config.format == "json":
        text = json.dumps({"dimension": config.dimension, "calibrated": not options.raw,
                           "multivector": flow.to_json()}, indent=2, sort_keys=True)
    else:
        text = str(flow)
    _emit(text, config.out)
    return EXIT_OK


def _combination_text(coefficients: Optional[Dict[str, object]], symbol: str) -> str:
    if coefficients is None:
        return "no solution"
    if not coefficients:
        return "0"
    return " + ".join(f"({rational_text(c)})*{symbol}_{name}" for name, c in coefficients.items())


def result_text(result: PipelineResult) -> str:
    """
    Human-readable summary of a pipeline result
    """
    lines = [f"{result.kind} d={result.dimension} family={result.family} mode={result.mode}"]
    if "solvable" in result:
        lines.append(f"  X = {_combination_text(result.solution, 'Gamma')}")
    if result.kind == KIND_KERNEL:
        lines.append(f"  kernel dimension {result.kernel_dimension}")
        for n, coefficients in enumerate(result.kernel, start=1):
            lines.append(f"  Y{n} = {_combination_text(coefficients, 'Gamma')}")
    if "expressions" in result:
        for n, coefficients in enumerate(result.expressions, start=1):
            lines.append(f"  Y{n} = d_P({_combination_text(coefficients, 'H')})")
    if "classes" in result:
        for coefficients in result.classes:
            lines.append(f"  {_combination_text(coefficients, 'Gamma')}")
        if result.get("zero"):
            lines.append(f"  zero: {', '.join(result['zero'])}")
    return "\n".join(lines)


def _is_published_run(config: RunConfig) -> bool:
    default_family = "fixtures" if config.dimension == 2 else "descendants"
    return (config.family == default_family and config.sources is None
            and config.mode == default_mode(config.dimension))


def _write_manifest(config: RunConfig, calibration, started: str, status: str,
                    outputs: List[str]):
    manifest = {
        "tool": __title__,
        "version": __version__,
        "fixture_format": FixtureDirectory().format_version,
        "calibration": None if calibration is None else rational_text(calibration),
        "config": config.manifest_dict(),
        "started": started,
        "finished": utcnow_z(),
        "status": status,
        "outputs": outputs,
    }
    _emit(json.dumps(manifest, indent=2, sort_keys=True), config.out / MANIFEST_NAME)


def _publish(results: List[PipelineResult], config: RunConfig) -> List[str]:
    if config.out is None:
        if config.format == "json":
            _emit(json.dumps(results, indent=2, sort_keys=True))
        else:
            _emit("\n".join(result_text(r) for r in results))
        return []
    names = []
    for result in results:
        name = f"{result.kind}-{result.dimension}d.json"
        _emit(result.to_json(), config.out / name)
        names.append(name)
    return names


def _pipeline_mismatches(results: Dict[str, PipelineResult], config: RunConfig,
                         fixtures: FixtureDirectory, pipeline: CohomologyPipeline,
                         family: GraphFamily) -> List[str]:
    """
    Disagreements between the results and the packaged assertions
    """
    problems = []
    d = config.dimension
    if not _is_published_run(config):
        return problems
    trivialization = results.get(STEP_TRIVIALIZE)
    if trivialization is not None and trivialization.solvable != fixtures.trivialization_solvable(d):
        problems.append(f"trivialization solvable={trivialization.solvable}")
    kernel = results.get(STEP_KERNEL)
    if kernel is not None and kernel.kernel_dimension != fixtures.kernel_dimension(d):
        problems.append(f"kernel dimension {kernel.kernel_dimension}, "
                        f"expected {fixtures.kernel_dimension(d)}")
    expressions = results.get(STEP_HAMILTONIANS)
    if expressions is not None and None in expressions.expressions:
        problems.append("kernel field without Hamiltonian expression")
    problems.extend(published_field_mismatches(pipeline, family, fixtures,
                                               trivialization=trivialization, kernel=kernel))
    return problems


def cmd_pipeline(options) -> int:
    config = _config(options)
    if config.format == "csv":
        raise NGConfigException("csv output is only available for tables")
    started = utcnow_z()
    fixtures = FixtureDirectory()
    pipeline = CohomologyPipeline(config.dimension, evaluator=_evaluator(config),
                                  budget=config.budget, logger=logger)
    family = GraphFamilyFactory.family(config.family, config.dimension,
                                       fixtures=fixtures, sources=config.sources)
    logger.info(f"family {config.family} d={config.dimension}: {len(family)} graphs")
    steps = config.steps
    if STEP_HAMILTONIANS in steps and STEP_KERNEL not in steps:
        steps.insert(steps.index(STEP_HAMILTONIANS), STEP_KERNEL)
    results: Dict[str, PipelineResult] = {}
    status = "ok"
    exit_status = EXIT_OK
    try:
        for step in STEPS:
            if step not in steps:
                continue
            logger.info(f"running {step}")
            if step == STEP_TRIVIALIZE:
                results[step] = pipeline.solve_trivialization(family, config.mode)
            elif step == STEP_KERNEL:
                results[step] = pipeline.homogeneous_kernel(family, config.mode)
            elif step == STEP_HAMILTONIANS:
                hamiltonians = GraphFamilyFactory.family("hamiltonians", config.dimension,
                                                         fixtures=fixtures)
                results[step] = pipeline.express_in_hamiltonians(
                    results[STEP_KERNEL], family, hamiltonians)
            elif step == STEP_SYNONYMS:
                results[step] = pipeline.detect_synonyms(family, config.mode)
    except NGBudgetExceededException as e:
        logger.error(str(e))
        status = "budget-exceeded"
        exit_status = EXIT_BUDGET
    if exit_status == EXIT_OK:
        problems = _pipeline_mismatches(results, config, fixtures, pipeline, family)
        for problem in problems:
            logger.error(f"mismatch against packaged tables: {problem}")
        if problems:
            status = "mismatch"
            exit_status = EXIT_MISMATCH
    outputs = _publish(list(results.values()), config)
    if config.out is not None:
        calibration = pipeline.calibration if STEP_TRIVIALIZE in results else None
        _write_manifest(config, calibration, started, status, outputs)
    return exit_status


def cmd_table(options) -> int:
    config = _config(options)
    started = utcnow_z()
    fixtures = FixtureDirectory()
    cache_dir = str(config.cache_dir) if config.use_cache else None
    search = PairSearch(config.dimension, fixtures=fixtures, evaluator=_evaluator(config),
                        budget=config.cell_budget, jobs=config.jobs, isolate=config.isolate,
                        cache_dir=cache_dir, logger=logger)
    table = search.run()
    if config.format == "json":
        text = json.dumps(table, indent=2, sort_keys=True)
    else:
        text = table.to_csv()
    status = "ok"
    exit_status = EXIT_OK
    outcomes = [table.outcome(r, c) for r in table.rows for c in table.columns]
    if OUTCOME_TIMEOUT in outcomes:
        status = "budget-exceeded"
        exit_status = EXIT_BUDGET
    elif config.dimension in (3, 4):
        expected = set(fixtures.table_yes_cells(config.dimension))
        if set(table.yes_cells()) != expected:
            logger.error(f"yes cells {table.yes_cells()}, expected {sorted(expected)}")
            status = "mismatch"
            exit_status = EXIT_MISMATCH
    if config.out is None:
        _emit(text)
    else:
        name = f"table-{config.dimension}d.{'json' if config.format == 'json' else 'csv'}"
        _emit(text, config.out / name)
        _write_manifest(config, search.calibration, started, status, [name])
    return exit_status


def cmd_cell(options) -> int:
    cache = EvaluationCache(options.cache_dir) if options.cache_dir else None
    search = PairSearch(options.dimension, evaluator=GraphEvaluator(cache=cache, logger=logger),
                        calibration=to_rational(options.calibration), logger=logger)
    _emit(search.run_cell(options.row, options.column))
    return EXIT_OK


def _recompute(encoding: str, dimension: int, mode: str):
    graph = parse_encoding(encoding, dimension)
    return evaluate_mode(graph, mode, ring_for_graphs([graph]))


def cmd_cache(options) -> int:
    config = RunConfig({"cache_dir": options.cache_dir, "format": options.format or "text"})
    if options.action in ("list", "verify") and not config.cache_dir.is_dir():
        raise NGConfigException(f"no cache at {config.cache_dir}")
    cache = EvaluationCache(config.cache_dir, logger=logger)
    if options.action == "clear":
        cache.clear()
        return EXIT_OK
    if options.action == "list":
        records = cache.entries()
        if config.format == "json":
            _emit(json.dumps(records, indent=2, sort_keys=True))
        else:
            lines = []
            for record in records:
                if "status" in record:
                    lines.append(f"{record['digest']} {record['status']}")
                else:
                    lines.append(f"{record['digest']} d={record['dimension']} "
                                 f"{record['mode']} {record['encoding']}")
            _emit("\n".join(lines))
        return EXIT_OK
    report = cache.verify(_recompute, sample=options.sample)
    if config.format == "json":
        _emit(json.dumps(report, indent=2, sort_keys=True))
    else:
        _emit("\n".join(f"{digest} {status}" for digest, status in report.items()))
    failed = [digest for digest, status in report.items() if status != STATUS_OK]
    logger.info(f"{len(report) - len(failed)}/{len(report)} cache entries verified")
    return EXIT_MISMATCH if failed else EXIT_OK


_COMMANDS = {
    "eval": cmd_eval,
    "generate": cmd_generate,
    "descendants": cmd_descendants,
    "embed": cmd_embed,
    "tetra": cmd_tetra,
    "pipeline": cmd_pipeline,
    "table": cmd_table,
    "cell": cmd_cell,
    "cache": cmd_cache,
}


def ngc_main(argv: Optional[List[str]] = None) -> int:
    options = ngc_parse_args(argv)
    level = logging.DEBUG if options.debug else logging.INFO
    logging.basicConfig(format="%(message)s", level=level)
    try:
        return _COMMANDS[options.command](options)
    except NGParseException as e:
        print(e.diagnostic(), file=sys.stderr)
        return EXIT_INPUT
    except NGGraphEncodingException as e:
        print(f"{e}\n  {e.text}" if e.text else str(e), file=sys.stderr)
        return EXIT_INPUT
    except _INPUT_ERRORS as e:
        print(str(e), file=sys.stderr)
        return EXIT_INPUT
    except NGBudgetExceededException as e:
        print(str(e), file=sys.stderr)
        return EXIT_BUDGET


def main():
    sys.exit(ngc_main())


if __name__ == "__main__":
    main()
