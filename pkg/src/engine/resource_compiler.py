import logging
from typing import Iterable, Optional

import numpy as np

from src.engine.graph_state import GraphStateCalculator
from src.models.clifford import SingleQubitClifford
from src.models.graph import GraphAdjacency, VopLayer
from src.models.pauli import PauliString
from src.models.resource import AnticommutationData, CompiledResource, VertexRepo
from src.models.rotation import RotationSequence
from src.models.tableau import StabilizerTableau
from src.tools import gf2
from src.tools.typing import BitMatrix, BitVector, as_bits

logger = logging.getLogger(__name__)


class ResourceCompiler:
    """Closed-form resource states for a rotation sequence acting on a stabilizer initial state."""

    @classmethod
    def conjugate_through_initial_lc(
        cls, seq: RotationSequence, init: StabilizerTableau
    ) -> tuple[GraphAdjacency, VopLayer, RotationSequence, BitVector]:
        """
        Writes the initial state as C0|G0> and moves every generator into the graph frame: C0^dagger P C0 = (-1)^R P'.
        :param seq: Rotation sequence in the original frame
        :param init: Stabilizer tableau of the initial state
        :return: G0, C0, the phase-free conjugated sequence and the sign bits R (one per rotation)
        """
        if init.n != seq.n_main:
            raise ValueError(f"Initial state has {init.n} qubits, the sequence acts on {seq.n_main}")
        g0, c0 = GraphStateCalculator.graph_from_tableau(init)
        inverse = VopLayer(vops=tuple(c.inverse() for c in c0.vops))
        conjugated = [inverse.conjugate(p) for p in seq.generators]
        r = as_bits([p.sign_bit for p in conjugated])
        return g0, c0, seq.with_generators([p.unsigned() for p in conjugated]), r

    @classmethod
    def anticommutation_matrices(cls, seq: RotationSequence, g0: GraphAdjacency) -> AnticommutationData:
        """
        :param seq: Conjugated sequence; only its first period is used
        :param g0: Initial graph
        :return: A0 (initial stabilizers vs generators) and A (generators vs generators)
        """
        if g0.n != seq.n_main:
            raise ValueError(f"Initial graph has {g0.n} vertices, the sequence acts on {seq.n_main} qubits")
        x = seq.x_matrix[: seq.period_length]
        z = seq.z_matrix[: seq.period_length]
        a0 = (z.T + gf2.matmul(g0.gamma, x.T)) % 2
        a = (gf2.matmul(x, z.T) + gf2.matmul(z, x.T)) % 2
        return AnticommutationData(a0=a0, a=a)

    @classmethod
    def resource_tableau(
        cls,
        seq: RotationSequence,
        g0: GraphAdjacency,
        r: BitVector,
        main_vops: Optional[VopLayer] = None,
    ) -> StabilizerTableau:
        """
        Stabilizer generators of the resource state prod_m Lambda_m((-1)^R_m P'_m) |G0>|+>^M.
        Main rows are K_n with Z on every auxiliary whose generator anticommutes with K_n; auxiliary row m is
        (-1)^R_m P'_m X_m with Z on every later auxiliary whose generator anticommutes with P'_m.
        :param seq: Conjugated sequence
        :param g0: Initial graph
        :param r: Sign bits of the conjugated generators
        :param main_vops: If given, the main columns are conjugated by this layer (back to the original frame)
        :return: The N + M rows
        """
        n, m = seq.n_main, seq.m
        x = seq.x_matrix
        z = seq.z_matrix
        a0 = (z.T + gf2.matmul(g0.gamma, x.T)) % 2
        a = (gf2.matmul(x, z.T) + gf2.matmul(z, x.T)) % 2
        r = as_bits(r, shape=(m,))

        rows = []
        for v in range(n):
            row_x = np.zeros(n + m, dtype=np.uint8)
            row_x[v] = 1
            row_z = np.concatenate([g0.gamma[v], a0[v]])
            rows.append(PauliString(x=row_x, z=row_z))
        for k in range(m):
            aux_x = np.zeros(m, dtype=np.uint8)
            aux_x[k] = 1
            aux_z = np.triu(a, k=1)[k]
            rows.append(
                PauliString(
                    x=np.concatenate([x[k], aux_x]), z=np.concatenate([z[k], aux_z]), r=2 * int(r[k])
                )
            )
        if main_vops is not None:
            layer = main_vops.concatenate(VopLayer.identity(m))
            rows = [layer.conjugate(p) for p in rows]
        return StabilizerTableau(rows=tuple(rows))

    @classmethod
    def graph_solution(
        cls, seq: RotationSequence, g0: GraphAdjacency, r: BitVector, main_vops: Optional[VopLayer] = None
    ) -> CompiledResource:
        """
        Graph-state form of the resource, treating all M rotations as one block.
        :param seq: Conjugated sequence
        :param g0: Initial graph
        :param r: Sign bits of the conjugated generators
        :param main_vops: C0; identity when omitted
        :return: The compiled resource (no ladder)
        """
        x = seq.x_matrix
        z = seq.z_matrix
        aux_block = cls._aux_block(x, z, x, z, g0.gamma, diagonal=True)
        a0 = (z.T + gf2.matmul(g0.gamma, x.T)) % 2
        gamma = np.block([[g0.gamma, a0], [a0.T, aux_block]])
        exponents = cls.aux_vop_exponents(seq.generators, g0, r)
        return cls._assemble(seq, gamma, exponents, r, main_vops, trotter_steps=1, period_length=seq.m)

    @classmethod
    def periodic_graph(
        cls,
        seq: RotationSequence,
        g0: GraphAdjacency,
        r: BitVector,
        trotter_steps: int,
        main_vops: Optional[VopLayer] = None,
    ) -> CompiledResource:
        """
        Graph-state form of the resource for K repetitions of the period, assembled from per-period blocks
        (so nothing is recomputed per step). Diagonal blocks: G_X + UT(Z X^T) + LT(X Z^T); blocks above the
        diagonal: G_X + Z X^T; below: their transpose; the main rows repeat A0.
        :param seq: Conjugated sequence (its first period is used)
        :param g0: Initial graph
        :param r: Sign bits; the first period is tiled
        :param trotter_steps: K
        :param main_vops: C0; identity when omitted
        :return: The compiled resource (no ladder)
        """
        if trotter_steps < 1:
            raise ValueError(f"Trotter steps must be positive, got {trotter_steps}")
        ell = seq.period_length
        period = seq.with_steps(1)
        x = period.x_matrix
        z = period.z_matrix
        diagonal = cls._aux_block(x, z, x, z, g0.gamma, diagonal=True)
        upper = cls._aux_block(x, z, x, z, g0.gamma, diagonal=False)

        ones_upper = np.triu(np.ones((trotter_steps, trotter_steps), dtype=np.uint8), k=1)
        aux_gamma = (
            np.kron(np.eye(trotter_steps, dtype=np.uint8), diagonal)
            + np.kron(ones_upper, upper)
            + np.kron(ones_upper.T, upper.T)
        ) % 2
        a0 = (z.T + gf2.matmul(g0.gamma, x.T)) % 2
        main_aux = np.tile(a0, (1, trotter_steps))
        gamma = np.block([[g0.gamma, main_aux], [main_aux.T, aux_gamma]])

        r_period = as_bits(r)[:ell]
        exponents = cls.aux_vop_exponents(period.generators, g0, r_period)
        full = seq.with_steps(trotter_steps)
        return cls._assemble(
            full,
            gamma,
            np.tile(exponents, trotter_steps),
            np.tile(r_period, trotter_steps),
            main_vops,
            trotter_steps=trotter_steps,
            period_length=ell,
        )

    @classmethod
    def compile_closed_form(
        cls, seq: RotationSequence, init: StabilizerTableau, trotter_steps: Optional[int] = None
    ) -> CompiledResource:
        g0, c0, conjugated, r = cls.conjugate_through_initial_lc(seq, init)
        steps = seq.trotter_steps if trotter_steps is None else trotter_steps
        resource = cls.periodic_graph(conjugated, g0, r, steps, main_vops=c0)
        logger.debug(f"Closed-form resource with {resource.graph.n_edges} edges for K={steps}")
        return resource

    @classmethod
    def aux_vop_exponents(
        cls, generators: Iterable[PauliString], g0: GraphAdjacency, r: BitVector
    ) -> np.ndarray:
        """
        S-power on each auxiliary: 2R + x^T G0 x - (number of Y factors), mod 4.
        x^T G0 x is an integer product (twice the number of edges inside the X support).
        """
        exponents = []
        for k, p in enumerate(generators):
            xk = p.x.astype(np.int64)
            gamma_x = int(xk @ g0.gamma.astype(np.int64) @ xk)
            n_y = int(np.dot(p.x, p.z))
            exponents.append((2 * int(r[k]) + gamma_x - n_y) % 4)
        return np.array(exponents, dtype=np.int64)

    @classmethod
    def stab_product_phase(cls, g: GraphAdjacency, subset: Iterable[int]) -> int:
        """
        Sign bit of the product of the graph stabilizers K_v over the subset, written with Y where X and Z meet.
        :return: sum over the subset of floor(induced degree / 2), mod 2
        """
        index = sorted(set(subset))
        degrees = g.gamma[np.ix_(index, index)].sum(axis=1).astype(np.int64)
        return int((degrees // 2).sum() % 2)

    @staticmethod
    def _aux_block(
        x_rows: BitMatrix,
        z_rows: BitMatrix,
        x_cols: BitMatrix,
        z_cols: BitMatrix,
        gamma0: BitMatrix,
        diagonal: bool,
    ) -> BitMatrix:
        gamma_x = gf2.matmul(gf2.matmul(x_rows, gamma0), x_cols.T)
        zx = gf2.matmul(z_rows, x_cols.T)
        if not diagonal:
            return (gamma_x + zx) % 2
        xz = gf2.matmul(x_rows, z_cols.T)
        block = (gamma_x + gf2.strict_upper(zx) + gf2.strict_lower(xz)) % 2
        np.fill_diagonal(block, 0)
        return block.astype(np.uint8)

    @staticmethod
    def _assemble(
        seq: RotationSequence,
        gamma: BitMatrix,
        exponents: np.ndarray,
        r: BitVector,
        main_vops: Optional[VopLayer],
        trotter_steps: int,
        period_length: int,
    ) -> CompiledResource:
        n = seq.n_main
        main = VopLayer.identity(n) if main_vops is None else main_vops
        aux = VopLayer(vops=tuple(SingleQubitClifford.phase_power(int(e)) for e in exponents))
        return CompiledResource(
            graph=GraphAdjacency(gamma=gamma.astype(np.uint8)),
            vops=main.concatenate(aux),
            roles=VertexRepo.make(n, period_length, trotter_steps),
            n_main=n,
            period_length=period_length,
            trotter_steps=trotter_steps,
            phases_r=as_bits(r),
        )
