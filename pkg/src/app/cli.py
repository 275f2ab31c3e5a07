import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from src.app.exporters import export, export_dot, export_trace_csv
from src.app.problem_repo.base import BaseProblemRepo
from src.app.problem_repo.file_problem_repo import FileProblemRepo, load_problem
from src.engine.catalog import ProblemCatalog
from src.engine.compiler import Compiler
from src.engine.report import ResourceReporter
from src.engine.verifier import DenseSimulator
from src.models.compilation_result import CompilationResult
from src.models.dense import MAX_DENSE_QUBITS
from src.models.errors import (
    ExtrapolationError,
    NoFeasibleSolutionError,
    ProblemValidationError,
    VerificationError,
)
from src.models.pattern import MeasurementPattern
from src.models.pauli import PauliString
from src.models.problem import CompileSettings, Method, ProblemSpec
from src.tools.serialization import SimpleDict

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFICATION = 2
EXIT_NO_FEASIBLE = 3

# All 2^M branches are simulated on N + M qubits
MAX_BRANCH_AUX = 8


def resolve_problem(ref: str, repo: BaseProblemRepo) -> ProblemSpec:
    """
    :param ref: A path to a problem document, the name of a saved problem or a catalog name
    :raises ProblemValidationError: If nothing matches
    """
    path = Path(ref)
    if path.suffix == ".json" or path.exists():
        if not path.is_file():
            raise ProblemValidationError(f"No problem file {ref}", "problem")
        return load_problem(path)
    if ref in repo.list_problem_names():
        return repo.get_problem(ref)
    try:
        return ProblemCatalog.by_name(ref)
    except KeyError as e:
        raise ProblemValidationError(e.args[0], "problem") from e


def apply_overrides(problem: ProblemSpec, args: argparse.Namespace) -> ProblemSpec:
    anneal = problem.anneal.with_overrides(
        cooling_rate=args.cooling_rate,
        target_memory=args.target_memory,
        runs=args.runs,
        rng_seed=args.seed,
        main_edge_override=True if args.main_edge_override else None,
    )
    method = None if args.method is None else Method(args.method)
    return problem.with_settings(method=method, trotter_steps=args.steps, anneal=anneal)


def random_values(pattern: MeasurementPattern, rng: np.random.Generator) -> dict[str, float]:
    symbols = sorted({a.symbol for a in pattern.base_angles if a.is_symbolic})
    return dict(zip(symbols, rng.uniform(-np.pi, np.pi, len(symbols)).tolist()))


def _write_text(path: Optional[Path], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _compile(args: argparse.Namespace, anneal: bool = False) -> tuple[ProblemSpec, CompilationResult]:
    problem = apply_overrides(resolve_problem(args.problem, FileProblemRepo()), args)
    settings = CompileSettings(method=problem.method, anneal=anneal or args.anneal)
    return problem, Compiler.compile(problem, settings)


# VERBS
def run_examples(args: argparse.Namespace) -> int:
    repo = FileProblemRepo() if args.save_dir is None else FileProblemRepo(cache_dir=args.save_dir)
    for problem in ProblemCatalog.catalog():
        if args.save or args.save_dir is not None:
            if problem.name in repo.list_problem_names():
                repo.update_problem(problem)
            else:
                repo.add_problem(problem)
        print(f"{problem.name}\tN={problem.num_qubits}\tL={problem.period_length}\tK={problem.trotter_steps}")
    return EXIT_OK


def run_compile(args: argparse.Namespace) -> int:
    _, result = _compile(args)
    _write_text(args.out, export(result.resource, result.pattern, "json"))
    if args.dot is not None:
        _write_text(args.dot, export_dot(result.resource))
    return EXIT_OK


def run_anneal(args: argparse.Namespace) -> int:
    args.method = Method.LC.value
    _, result = _compile(args, anneal=True)
    for k, trace in enumerate(result.traces):
        logger.info(f"Run {k}: {trace}")
    _write_text(args.out, export_trace_csv(result.traces_frame))
    if args.dot is not None:
        _write_text(args.dot, export_dot(result.resource))
    return EXIT_OK


def run_verify(args: argparse.Namespace) -> int:
    """
    Checks the prepared resource against its stabilizer group and, when small enough for the dense
    oracle, every pattern branch and the hybrid estimate of each observable.
    """
    problem, result = _compile(args)
    resource, pattern = result.resource, result.pattern
    DenseSimulator.check_preparation(resource, result.resource_tableau)
    summary: SimpleDict = {"problem": problem.name, "method": result.method.value, "preparation": "ok"}

    rng = np.random.default_rng(args.seed)
    values = random_values(pattern, rng)
    if resource.n <= MAX_DENSE_QUBITS and resource.m <= MAX_BRANCH_AUX:
        init = problem.initial_tableau()
        summary["worst_fidelity"] = DenseSimulator.check_pattern(resource, pattern, result.sequence, init, values)
    else:
        logger.warning(f"{problem.name}: {resource.n} qubits is too large for the branch oracle, skipped")

    observables = [PauliString.from_string(o) for o in args.observable] if args.observable else problem.observables
    estimates = []
    for observable in observables:
        if resource.m > MAX_DENSE_QUBITS:
            logger.warning(f"Skipping hybrid check of {observable.to_string()}: {resource.m} auxiliaries")
            continue
        angles = [a.bind(values) for a in pattern.base_angles]
        reference = DenseSimulator.simulate_circuit(result.sequence, angles, problem.initial_tableau())
        exact = DenseSimulator.expectation(reference, observable)
        mean, stderr = DenseSimulator.sample_hybrid_expectation(resource, pattern, angles, observable, args.shots, rng)
        estimates.append({"observable": observable.to_string(), "exact": exact, "mean": mean, "stderr": stderr})
        if abs(mean - exact) > 3 * stderr + 1e-9:
            raise VerificationError(
                f"Hybrid estimate {mean:.4f} +- {stderr:.4f} misses <{observable.to_string()}> = {exact:.4f}"
            )
    if estimates:
        summary["hybrid"] = estimates

    _write_text(args.out, json.dumps(summary, indent=2) + "\n")
    return EXIT_OK


def run_report(args: argparse.Namespace) -> int:
    problem, result = _compile(args)
    d = Compiler.distance_matrix(problem, result.resource.trotter_steps)
    report = ResourceReporter.report(result, d)
    _write_text(args.out, json.dumps({"problem": problem.name, **report.to_simple_dict()}, indent=2) + "\n")
    return EXIT_OK


def _parse_args(argv: Optional[list[str]] = None) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("problem", help="Problem document path, saved problem name or catalog name")
    common.add_argument("--method", choices=[m.value for m in Method])
    common.add_argument("--steps", type=int, help="Number of Trotter steps K")
    common.add_argument("--seed", type=int)
    common.add_argument("--cooling-rate", dest="cooling_rate", type=float)
    common.add_argument("--target-memory", dest="target_memory", type=int)
    common.add_argument("--runs", type=int)
    common.add_argument("--main-edge-override", dest="main_edge_override", action="store_true")
    common.add_argument("--anneal", action="store_true", help="Anneal the LC resource before using it")
    common.add_argument("--out", type=Path, help="Output file; stdout otherwise")
    common.add_argument("--dot", type=Path, help="Also write the resource graph as DOT")

    parser = argparse.ArgumentParser(
        prog="mbqc-compile",
        description="Compile periodic Pauli rotation sequences into measurement-based resource states.",
    )
    parser.add_argument("--verbose", action="store_true")
    verbs = parser.add_subparsers(dest="verb", required=True)

    examples = verbs.add_parser("examples", help="List the bundled problems")
    examples.add_argument("--save", action="store_true", help="Write them to the problem cache")
    examples.add_argument("--save-dir", dest="save_dir", type=Path)
    examples.set_defaults(handler=run_examples)

    verbs.add_parser("compile", parents=[common], help="Write resource and pattern JSON").set_defaults(
        handler=run_compile
    )
    verbs.add_parser("anneal", parents=[common], help="Anneal an LC resource, write the CSV trace").set_defaults(
        handler=run_anneal
    )
    verify = verbs.add_parser("verify", parents=[common], help="Run the oracle checks")
    verify.add_argument("--observable", action="append", help="Pauli string for a hybrid estimate")
    verify.add_argument("--shots", type=int, default=2000)
    verify.set_defaults(handler=run_verify)
    verbs.add_parser("report", parents=[common], help="Print resource counts").set_defaults(handler=run_report)
    return parser.parse_args(argv)


def main(argv: Optional[list[str]] = None) -> int:
    args = _parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except ProblemValidationError as e:
        logger.error(f"Invalid problem: {e}")
        return EXIT_VALIDATION
    except VerificationError as e:
        logger.error(f"Verification failed: {e}")
        return EXIT_VERIFICATION
    except (NoFeasibleSolutionError, ExtrapolationError) as e:
        logger.error(f"No usable periodic resource: {e}")
        return EXIT_NO_FEASIBLE


if __name__ == "__main__":
    raise SystemExit(main())
