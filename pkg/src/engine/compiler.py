import logging
from typing import Optional

from src.engine.ac_ladder import AcLadderCompiler
from src.engine.lc_annealer import DistanceMatrixBuilder, LcAnnealer
from src.engine.pattern_runtime import PatternBuilder
from src.engine.resource_compiler import ResourceCompiler
from src.models.anneal import AnnealTrace, DistanceMatrix
from src.models.compilation_result import CompilationResult
from src.models.problem import AnnealConfig, CompileSettings, Method, ProblemSpec
from src.models.resource import CompiledResource

logger = logging.getLogger(__name__)


class Compiler:
    @classmethod
    def compile(cls, problem: ProblemSpec, settings: Optional[CompileSettings] = None) -> CompilationResult:
        """
        Compiles a problem into a resource state and its measurement pattern.
        LC: the closed-form periodic graph, optionally annealed (at k_anneal steps, then extrapolated).
        AC: the ladder-absorbed graph with the forward CNOT ladder.
        :param problem: The problem document
        :param settings: Method and step overrides; the problem's own values otherwise
        :return: The compilation result
        """
        settings = CompileSettings(method=problem.method) if settings is None else settings
        steps = problem.trotter_steps if settings.trotter_steps is None else settings.trotter_steps
        seq = problem.rotation_sequence(steps)
        g0, c0, conjugated, r = ResourceCompiler.conjugate_through_initial_lc(seq, problem.initial_tableau())
        anticommutation = ResourceCompiler.anticommutation_matrices(conjugated, g0)
        expected = ResourceCompiler.resource_tableau(conjugated, g0, r, main_vops=c0)

        traces: list[AnnealTrace] = []
        if settings.method is Method.AC:
            resource = AcLadderCompiler.ac_graph(conjugated, g0, r, steps, main_vops=c0)
        elif settings.anneal:
            resource, traces = cls.anneal(problem, steps)
        else:
            resource = ResourceCompiler.periodic_graph(conjugated, g0, r, steps, main_vops=c0)

        pattern = PatternBuilder.build_pattern(seq)
        logger.info(f"Compiled {problem.name} ({settings.method.value}, K={steps}): {resource.graph.n_edges} edges")
        return CompilationResult(
            problem=problem,
            method=settings.method,
            sequence=seq,
            resource=resource,
            pattern=pattern,
            anticommutation=anticommutation,
            resource_tableau=expected,
            traces=traces,
        )

    @classmethod
    def distance_matrix(cls, problem: ProblemSpec, trotter_steps: int) -> DistanceMatrix:
        config = problem.anneal
        target = config.target_memory if config.target_memory is not None else max(1, problem.num_qubits - 1)
        groups = DistanceMatrixBuilder.commuting_groups(problem.rotation_sequence(trotter_steps), problem.groups)
        return DistanceMatrixBuilder.build_distance_matrix(
            groups, problem.num_qubits, target, config.main_edge_override
        )

    @classmethod
    def anneal(cls, problem: ProblemSpec, trotter_steps: int) -> tuple[CompiledResource, list[AnnealTrace]]:
        """
        Anneals the closed-form resource and keeps the best periodic result.
        :raises NoFeasibleSolutionError: If no run reached a periodic graph
        """
        config: AnnealConfig = problem.anneal
        k_anneal = trotter_steps if config.k_anneal is None else min(config.k_anneal, trotter_steps)
        seq = problem.rotation_sequence(k_anneal)
        start = ResourceCompiler.compile_closed_form(seq, problem.initial_tableau(), k_anneal)
        d = cls.distance_matrix(problem, k_anneal)
        traces = LcAnnealer.anneal_many(start, d, config)
        best = LcAnnealer.best_feasible(traces)
        resource = LcAnnealer.annealed_resource(start, best)
        if trotter_steps > k_anneal:
            resource = LcAnnealer.extrapolate(resource, trotter_steps)
        return resource, traces
