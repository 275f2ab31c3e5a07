from typing import Optional

import numpy as np

from src.engine.ac_ladder import AcLadderCompiler
from src.engine.graph_state import GraphStateCalculator
from src.engine.lc_annealer import LcCostFunction
from src.engine.pattern_runtime import PatternBuilder
from src.models.anneal import DistanceMatrix
from src.models.compilation_result import CompilationResult
from src.models.graph import GraphAdjacency
from src.models.report import ResourceReport
from src.models.resource import CompiledResource


class ResourceReporter:
    @classmethod
    def report(cls, result: CompilationResult, d: Optional[DistanceMatrix] = None) -> ResourceReport:
        """
        Resource counts of a compiled pattern. Active qubits of AC resources count the ladder CNOTs as
        edges and keep the main qubits active until the end.
        :param result: Compilation result
        :param d: Distance matrix; the weight W is only reported when it is given
        :return: The report
        """
        resource, pattern = result.resource, result.pattern
        order = PatternBuilder.measurement_order(resource, pattern)
        if resource.is_ac:
            graph = cls.entangling_graph(resource)
            profile, max_active = GraphStateCalculator.active_profile(graph, order, held=resource.roles.main_ids)
        else:
            profile, max_active = GraphStateCalculator.active_profile(resource.graph, order)
        storage = GraphStateCalculator.storage_profile(AcLadderCompiler.prepared_tableau(resource), order)

        n_main, ell, steps = resource.n_main, resource.period_length, resource.trotter_steps
        ladder_cnots = 0 if resource.ladder is None else resource.ladder.n_cnots
        if resource.is_ac:
            first_step_edges = resource.graph.subgraph(range(n_main + ell)).n_edges
            per_step, total = AcLadderCompiler.entangling_cost(result.anticommutation, steps, first_step_edges)
            depth: Optional[int] = AcLadderCompiler.linear_depth_bound(n_main, ell, steps)
            active_bound: Optional[int]
            active_bound, layout = AcLadderCompiler.ac_active_accounting(n_main, ell)
        else:
            per_step = resource.graph.n_edges - resource.graph.subgraph(range(resource.n - ell)).n_edges
            total = resource.graph.n_edges
            depth, active_bound, layout = None, None, None

        return ResourceReport(
            method=result.method.value,
            n_main=n_main,
            n_aux=resource.m,
            n_edges=resource.graph.n_edges,
            ladder_cnots=ladder_cnots,
            active_profile=tuple(profile),
            max_active=max_active,
            storage_profile=tuple(storage),
            intermediate_storage=max(storage, default=0),
            entangling_cost_per_step=per_step,
            entangling_cost_total=total,
            depth_bound=depth,
            weight=None if d is None else LcCostFunction.weight(resource.graph, d),
            aperiodicity=LcCostFunction.aperiodicity(resource.graph, ell, resource.m),
            active_bound=active_bound,
            linear_layout_qubits=layout,
        )

    @classmethod
    def entangling_graph(cls, resource: CompiledResource) -> GraphAdjacency:
        """
        :return: The graph with every ladder CNOT added as an edge
        """
        if resource.ladder is None:
            return resource.graph
        gamma = resource.graph.gamma.copy()
        for control, target in resource.ladder.edges:
            gamma[control, target] = gamma[target, control] = 1
        return GraphAdjacency(gamma=np.asarray(gamma, dtype=np.uint8))
