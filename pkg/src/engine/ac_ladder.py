import logging
from typing import Optional

import numpy as np

from src.engine.graph_state import GraphStateCalculator
from src.engine.resource_compiler import ResourceCompiler
from src.models.graph import GraphAdjacency, VopLayer
from src.models.resource import AnticommutationData, CompiledResource, LadderSpec, VertexRepo
from src.models.rotation import RotationSequence
from src.models.tableau import StabilizerTableau
from src.tools import gf2
from src.tools.typing import BitVector, as_bits

logger = logging.getLogger(__name__)


class AcLadderCompiler:
    """Resource states prepared as a graph state with first-step VOPs followed by a forward CNOT ladder."""

    @classmethod
    def ac_graph(
        cls,
        seq: RotationSequence,
        g0: GraphAdjacency,
        r: BitVector,
        trotter_steps: int,
        main_vops: Optional[VopLayer] = None,
    ) -> CompiledResource:
        """
        The first auxiliary block is the single-step graph solution; every later block k holds the
        anticommutation graph A, coupled to block k-1 by LT(A). Main qubits only touch block 1.
        :param seq: Conjugated sequence (its first period is used)
        :param g0: Initial graph
        :param r: Sign bits of the conjugated generators; the first period is used
        :param trotter_steps: K
        :param main_vops: C0; identity when omitted
        :return: The resource with its forward ladder
        """
        if trotter_steps < 1:
            raise ValueError(f"Trotter steps must be positive, got {trotter_steps}")
        n, ell = seq.n_main, seq.period_length
        period = seq.with_steps(1)
        r_period = as_bits(r)[:ell]
        first = ResourceCompiler.graph_solution(period, g0, r_period, main_vops=main_vops)
        a = ResourceCompiler.anticommutation_matrices(period, g0).a

        size = n + trotter_steps * ell
        gamma = np.zeros((size, size), dtype=np.uint8)
        gamma[: n + ell, : n + ell] = first.graph.gamma
        lower = gf2.strict_lower(a)
        for k in range(2, trotter_steps + 1):
            cur = slice(n + (k - 1) * ell, n + k * ell)
            prev = slice(n + (k - 2) * ell, n + (k - 1) * ell)
            gamma[cur, cur] = a
            gamma[prev, cur] = lower
            gamma[cur, prev] = lower.T

        vops = first.vops.concatenate(VopLayer.identity((trotter_steps - 1) * ell))
        roles = VertexRepo.make(n, ell, trotter_steps)
        resource = CompiledResource(
            graph=GraphAdjacency(gamma=gamma),
            vops=vops,
            roles=roles,
            n_main=n,
            period_length=ell,
            trotter_steps=trotter_steps,
            phases_r=np.tile(r_period, trotter_steps),
            ladder=cls.forward_ladder(roles, ell, trotter_steps),
        )
        logger.debug(f"AC resource with {resource.graph.n_edges} edges and {resource.ladder.n_cnots} ladder CNOTs")
        return resource

    @classmethod
    def forward_ladder(cls, roles: VertexRepo, period_length: int, trotter_steps: int) -> LadderSpec:
        """
        One layer per k = 1..K-1: CNOT from auxiliary (k+1, l) onto (k, l) for every l.
        """
        layers = []
        for k in range(1, trotter_steps):
            layers.append(
                tuple(
                    (roles.aux_vertex(k + 1, ell), roles.aux_vertex(k, ell)) for ell in range(period_length)
                )
            )
        return LadderSpec(layers=tuple(layers))

    @classmethod
    def prepared_tableau(cls, resource: CompiledResource) -> StabilizerTableau:
        """
        :return: Stabilizer generators of ladder * vops * |graph>
        """
        tableau = GraphStateCalculator.graph_tableau(resource.graph, resource.vops)
        if resource.ladder is not None:
            for control, target in resource.ladder.edges:
                tableau = tableau.conjugate_cnot(control, target)
        return tableau

    @classmethod
    def verify_preparation(cls, resource: CompiledResource, expected: StabilizerTableau) -> bool:
        """
        :param resource: Resource with or without a ladder
        :param expected: Resource tableau the preparation has to reproduce
        :return: Whether both generate the same stabilizer group
        """
        return cls.first_mismatch(resource, expected) is None

    @classmethod
    def first_mismatch(cls, resource: CompiledResource, expected: StabilizerTableau) -> Optional[tuple[int, str, str]]:
        """
        :return: None on success, else (row index, prepared row, expected row) of the first differing canonical row
        """
        prepared = cls.prepared_tableau(resource).canonical_form()
        wanted = expected.canonical_form()
        for k, (p, q) in enumerate(zip(prepared.rows, wanted.rows)):
            if p != q:
                return k, p.to_string(), q.to_string()
        return None

    @classmethod
    def entangling_cost(
        cls, a: AnticommutationData, trotter_steps: int, first_step_edges: int = 0
    ) -> tuple[int, int]:
        """
        :param a: Anticommutation data of the period
        :param trotter_steps: K
        :param first_step_edges: Edges of the single-step graph (main block, A0 and the first auxiliary block)
        :return: Cost per extra step ||A||_1 + L and the total edge plus CNOT count
        """
        per_step = a.a_norm + a.period_length
        return per_step, first_step_edges + (trotter_steps - 1) * per_step

    @classmethod
    def linear_depth_bound(cls, n_main: int, period_length: int, trotter_steps: int) -> int:
        if trotter_steps == 1:
            return 2 * n_main + 2 * period_length + 2
        return 2 * n_main + (trotter_steps - 1) * (4 * period_length + 3)

    @classmethod
    def active_count_ac(cls, n_main: int, period_length: int) -> int:
        return n_main + period_length + 1

    @classmethod
    def ac_active_accounting(cls, n_main: int, period_length: int) -> tuple[int, int]:
        """
        :return: Pattern-level bound N + L + 1 and the qubit count of the linear layout N + 2L
        """
        return cls.active_count_ac(n_main, period_length), n_main + 2 * period_length

    @classmethod
    def ladder_layers(cls, ladder: LadderSpec) -> list[list[tuple[int, int]]]:
        for layer in ladder.layers:
            touched = [v for gate in layer for v in gate]
            assert len(touched) == len(set(touched)), "CNOTs of one ladder layer overlap"
        return [list(layer) for layer in ladder.layers]

    @classmethod
    def linear_layout(cls, resource: CompiledResource, step: int) -> list[int]:
        """
        Qubit order on a line for applying ladder layer `step`: the main qubits, then the auxiliaries of
        steps k and k+1 interleaved so each CNOT acts on neighbours.
        """
        if not 1 <= step < resource.trotter_steps:
            raise ValueError(f"Ladder step {step} outside 1..{resource.trotter_steps - 1}")
        layout = list(resource.roles.main_ids)
        for ell in range(resource.period_length):
            layout.append(resource.roles.aux_vertex(step, ell))
            layout.append(resource.roles.aux_vertex(step + 1, ell))
        return layout
