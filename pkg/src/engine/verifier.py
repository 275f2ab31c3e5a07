import itertools
import logging
from functools import lru_cache
from typing import Mapping, Optional, Sequence

import numpy as np
import numpy.typing as npt

from src.engine.ac_ladder import AcLadderCompiler
from src.engine.pattern_runtime import HybridPremeasurer, PatternBuilder
from src.models.dense import BranchResult, DenseState, MAX_DENSE_QUBITS
from src.models.errors import TableauError, VerificationError
from src.models.graph import GraphAdjacency, VopLayer
from src.models.pattern import MeasurementPattern
from src.models.pauli import PauliString
from src.models.resource import CompiledResource
from src.models.rotation import RotationSequence
from src.models.tableau import StabilizerTableau

logger = logging.getLogger(__name__)

_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_EPSILON = 1e-12

Amplitudes = npt.NDArray[np.complex128]


@lru_cache(maxsize=None)
def _basis_bits(n: int) -> np.ndarray:
    # Row b holds the bits of basis index b, qubit 0 first (most significant)
    index = np.arange(2**n)
    return ((index[:, None] >> (n - 1 - np.arange(n))) & 1).astype(np.int64)


def _mask(bits: np.ndarray) -> int:
    n = len(bits)
    return int(sum(int(b) << (n - 1 - q) for q, b in enumerate(bits)))


class DenseSimulator:
    """State-vector oracle for desk-scale checks."""

    # PRIMITIVES
    @classmethod
    def apply_pauli(cls, amplitudes: Amplitudes, p: PauliString) -> Amplitudes:
        n = p.n
        cls._check_size(n)
        index = np.arange(2**n)
        z_parity = (_basis_bits(n) @ p.z.astype(np.int64)) % 2
        n_y = int(np.dot(p.x.astype(np.int64), p.z.astype(np.int64)))
        # literal Y = i X Z, so P = i^(r + n_y) X^x Z^z
        phase = 1j ** ((p.r + n_y) % 4)
        out = np.empty_like(amplitudes)
        out[index ^ _mask(p.x)] = phase * np.where(z_parity == 1, -1, 1) * amplitudes
        return out

    @classmethod
    def apply_rotation(cls, amplitudes: Amplitudes, p: PauliString, theta: float) -> Amplitudes:
        # exp(-i theta P / 2)
        return np.cos(theta / 2) * amplitudes - 1j * np.sin(theta / 2) * cls.apply_pauli(amplitudes, p)

    @classmethod
    def apply_single(cls, amplitudes: Amplitudes, n: int, qubit: int, u: np.ndarray) -> Amplitudes:
        work = amplitudes.reshape(2**qubit, 2, 2 ** (n - qubit - 1))
        return np.einsum("ab,ibj->iaj", u, work).reshape(-1)

    @classmethod
    def apply_cnot(cls, amplitudes: Amplitudes, n: int, control: int, target: int) -> Amplitudes:
        bits = _basis_bits(n)
        index = np.arange(2**n)
        source = np.where(bits[:, control] == 1, index ^ (1 << (n - 1 - target)), index)
        return amplitudes[source]

    @classmethod
    def project(cls, amplitudes: Amplitudes, n: int, qubit: int, outcome: int) -> Amplitudes:
        # Unnormalised projection onto Z = (-1)^outcome
        return np.where(_basis_bits(n)[:, qubit] == outcome, amplitudes, 0)

    # STATES
    @classmethod
    def state_from_tableau(cls, t: StabilizerTableau, seed: int = 0) -> DenseState:
        """
        Applies prod_j (I + S_j) / 2 to a random seed vector.
        :param t: Full-rank tableau
        :param seed: Seed of the random start vector
        :return: The unique stabilized state
        """
        cls._check_size(t.n)
        t.validate_state()
        rng = np.random.default_rng(seed)
        amplitudes = rng.normal(size=2**t.n) + 1j * rng.normal(size=2**t.n)
        for p in t.rows:
            amplitudes = (amplitudes + cls.apply_pauli(amplitudes, p)) / 2
        norm = np.linalg.norm(amplitudes)
        if norm < 1e-9:
            raise TableauError("The stabilizer rows have no common +1 eigenstate")
        return DenseState(amplitudes=amplitudes / norm)

    @classmethod
    def graph_state(cls, g: GraphAdjacency, layer: Optional[VopLayer] = None) -> Amplitudes:
        """
        :return: Amplitudes of layer * prod_edges CZ |+>^n
        """
        n = g.n
        cls._check_size(n)
        bits = _basis_bits(n)
        upper = np.triu(g.gamma, k=1).astype(np.int64)
        quad = ((bits @ upper) * bits).sum(axis=1) % 2
        amplitudes = np.where(quad == 1, -1.0, 1.0).astype(np.complex128) / np.sqrt(2**n)
        if layer is not None:
            for v, c in enumerate(layer.vops):
                if not c.is_identity:
                    amplitudes = cls.apply_single(amplitudes, n, v, c.matrix)
        return amplitudes

    @classmethod
    def resource_state(cls, resource: CompiledResource) -> Amplitudes:
        amplitudes = cls.graph_state(resource.graph, resource.vops)
        if resource.ladder is not None:
            for control, target in resource.ladder.edges:
                amplitudes = cls.apply_cnot(amplitudes, resource.n, control, target)
        return amplitudes

    @classmethod
    def simulate_circuit(
        cls, seq: RotationSequence, angles: Sequence[float] | np.ndarray, init: StabilizerTableau
    ) -> DenseState:
        """
        Applies exp(-i theta_m P_m / 2) for m = 1..M, left to right, to the initial state.
        """
        angles = np.asarray(angles, dtype=float)
        if angles.shape != (seq.m,):
            raise ValueError(f"Expected {seq.m} angles, got shape {angles.shape}")
        amplitudes = cls.state_from_tableau(init).amplitudes.copy()
        for p, theta in zip(seq.generators, angles):
            amplitudes = cls.apply_rotation(amplitudes, p, theta)
        return DenseState.from_unnormalised(amplitudes)

    # PATTERNS
    @classmethod
    def simulate_pattern_branch(
        cls,
        resource: CompiledResource,
        pattern: MeasurementPattern,
        angles: Sequence[float] | np.ndarray,
        forced_outcomes: Sequence[int] | np.ndarray,
    ) -> BranchResult:
        """
        Runs the pattern on the prepared resource with the given outcomes: per auxiliary, a rotation
        exp(-i theta' X / 2) at the adapted angle and a projection onto the forced Z outcome.
        :param resource: Compiled resource
        :param pattern: Its measurement pattern
        :param angles: M numeric base angles
        :param forced_outcomes: M bits
        :return: The branch probability and the corrected main-register state (None for impossible branches)
        """
        s = np.asarray(forced_outcomes, dtype=np.int64)
        if s.shape != (resource.m,):
            raise ValueError(f"Expected {resource.m} outcomes, got shape {s.shape}")
        n = resource.n
        adapted = PatternBuilder.adapt_angles(pattern, s, values=np.asarray(angles, dtype=float))
        amplitudes = cls.resource_state(resource)
        for measured in pattern.order.rounds:
            for m in measured:
                vertex = resource.n_main + m
                rotation = np.cos(adapted[m] / 2) * np.eye(2) - 1j * np.sin(adapted[m] / 2) * _X
                amplitudes = cls.apply_single(amplitudes, n, vertex, rotation)
                amplitudes = cls.project(amplitudes, n, vertex, int(s[m]))
        probability = float(np.vdot(amplitudes, amplitudes).real)
        outcomes = tuple(int(b) for b in s)
        if probability < _EPSILON:
            return BranchResult(outcomes=outcomes, probability=0.0, state=None)
        column = _mask(s)
        main = amplitudes.reshape(2**resource.n_main, 2**resource.m)[:, column]
        correction = PatternBuilder.final_correction(pattern, s)
        main = cls.apply_pauli(main, correction)
        return BranchResult(outcomes=outcomes, probability=probability, state=DenseState.from_unnormalised(main))

    @classmethod
    def enumerate_branches(
        cls, resource: CompiledResource, pattern: MeasurementPattern, angles: Sequence[float] | np.ndarray
    ) -> list[BranchResult]:
        return [
            cls.simulate_pattern_branch(resource, pattern, angles, outcomes)
            for outcomes in itertools.product((0, 1), repeat=resource.m)
        ]

    # MEASURES
    @classmethod
    def fidelity(cls, a: DenseState, b: DenseState) -> float:
        if a.n != b.n:
            raise ValueError(f"States on {a.n} and {b.n} qubits")
        return a.fidelity(b)

    @classmethod
    def expectation(cls, state: DenseState, observable: PauliString) -> float:
        value = np.vdot(state.amplitudes, cls.apply_pauli(state.amplitudes, observable))
        return float(value.real)

    @classmethod
    def sample_hybrid_expectation(
        cls,
        resource: CompiledResource,
        pattern: MeasurementPattern,
        angles: Sequence[float] | np.ndarray,
        observable: PauliString,
        shots: int,
        rng: Optional[np.random.Generator] = None,
    ) -> tuple[float, float]:
        """
        Estimates <O> with the main qubits pre-measured classically: each shot draws the main outcomes,
        prepares the auxiliary state with its byproduct frame (ladder afterwards), samples the adaptive
        auxiliary measurements and corrects the main outcomes classically.
        :return: Mean and standard error over the shots
        """
        if shots < 1:
            raise ValueError(f"Need at least one shot, got {shots}")
        rng = np.random.default_rng() if rng is None else rng
        aux, model, byproducts = HybridPremeasurer.hybrid_premeasure(resource, observable)
        m = aux.n
        base = cls.graph_state(aux.graph, aux.vops)
        numeric = PatternBuilder.bind_angles(pattern, np.asarray(angles, dtype=float))
        adaptivity = pattern.adaptivity.astype(np.int64)
        values = np.empty(shots)
        for shot in range(shots):
            t = HybridPremeasurer.hybrid_outcome_sample(model, rng)
            amplitudes = cls.apply_pauli(base, HybridPremeasurer.hybrid_byproduct(byproducts, t))
            if aux.ladder is not None:
                for control, target in aux.ladder.edges:
                    amplitudes = cls.apply_cnot(amplitudes, m, control, target)
            s = np.zeros(m, dtype=np.int64)
            for measured in pattern.order.rounds:
                for k in measured:
                    theta = -numeric[k] if (adaptivity[k] @ s) % 2 else numeric[k]
                    rotation = np.cos(theta / 2) * np.eye(2) - 1j * np.sin(theta / 2) * _X
                    amplitudes = cls.apply_single(amplitudes, m, k, rotation)
                    zero = cls.project(amplitudes, m, k, 0)
                    p_zero = float(np.vdot(zero, zero).real) / float(np.vdot(amplitudes, amplitudes).real)
                    s[k] = int(rng.random() >= p_zero)
                    amplitudes = zero if s[k] == 0 else cls.project(amplitudes, m, k, 1)
            correction = PatternBuilder.final_correction(pattern, s)
            values[shot] = HybridPremeasurer.observable_value(observable, t, correction)
        return float(values.mean()), float(values.std(ddof=1) / np.sqrt(shots)) if shots > 1 else 0.0

    # ORACLE CHECKS
    @classmethod
    def check_preparation(cls, resource: CompiledResource, expected: StabilizerTableau) -> None:
        mismatch = AcLadderCompiler.first_mismatch(resource, expected)
        if mismatch is not None:
            row, got, wanted = mismatch
            raise VerificationError(f"Canonical row {row} differs: prepared {got}, expected {wanted}")

    @classmethod
    def check_pattern(
        cls,
        resource: CompiledResource,
        pattern: MeasurementPattern,
        seq: RotationSequence,
        init: StabilizerTableau,
        values: Optional[Mapping[str, float] | Sequence[float] | np.ndarray] = None,
        tolerance: float = 1e-9,
    ) -> float:
        """
        Compares every outcome branch of the pattern with the circuit model.
        :return: The worst branch fidelity
        :raises VerificationError: On a branch below 1 - tolerance or probabilities not summing to one
        """
        angles = PatternBuilder.bind_angles(pattern, values)
        reference = cls.simulate_circuit(seq, angles, init)
        branches = cls.enumerate_branches(resource, pattern, angles)
        total = sum(b.probability for b in branches)
        if abs(total - 1) > tolerance:
            raise VerificationError(f"Branch probabilities sum to {total}")
        worst = 1.0
        for b in branches:
            if b.state is None:
                continue
            f = cls.fidelity(b.state, reference)
            worst = min(worst, f)
            if f < 1 - tolerance:
                raise VerificationError(f"Branch {b.outcomes} has fidelity {f:.12f}")
        logger.info(f"Pattern verified on {len(branches)} branches, worst fidelity {worst:.12f}")
        return worst

    @staticmethod
    def _check_size(n: int) -> None:
        if n > MAX_DENSE_QUBITS:
            raise ValueError(f"Dense simulation is limited to {MAX_DENSE_QUBITS} qubits, got {n}")
