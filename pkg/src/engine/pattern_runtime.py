import logging
from typing import Mapping, Optional, Sequence

import numpy as np
import numpy.typing as npt

from src.engine.graph_state import GraphStateCalculator
from src.models.graph import GraphAdjacency, MeasurementOrder, OutcomeLaw, VopLayer
from src.models.pattern import ByproductMap, MeasurementPattern, OutcomeModel
from src.models.pauli import PauliString, multiply_all
from src.models.resource import CompiledResource
from src.models.rotation import RotationSequence
from src.tools.typing import as_bits

logger = logging.getLogger(__name__)

_LETTERS = {(1, 0): "X", (0, 1): "Z", (1, 1): "Y"}


class PatternBuilder:
    @classmethod
    def build_pattern(cls, seq: RotationSequence) -> MeasurementPattern:
        """
        Standard-form pattern for a rotation sequence: one auxiliary per rotation, rounds of consecutive
        mutually commuting generators, angle flips driven by earlier anticommuting outcomes.
        :param seq: Sequence in the original frame
        :return: The measurement pattern
        """
        x = seq.x_matrix.astype(np.int64)
        z = seq.z_matrix.astype(np.int64)
        anticommuting = (x @ z.T + z @ x.T) % 2
        adaptivity = np.tril(anticommuting, k=-1)

        rounds: list[list[int]] = []
        for m in range(seq.m):
            if rounds and not any(anticommuting[m, k] for k in rounds[-1]):
                rounds[-1].append(m)
            else:
                rounds.append([m])
        return MeasurementPattern(
            base_angles=seq.angles,
            adaptivity=adaptivity,
            order=MeasurementOrder(rounds=tuple(tuple(r) for r in rounds)),
            correction=tuple(p.unsigned() for p in seq.generators),
        )

    @classmethod
    def bind_angles(
        cls, pattern: MeasurementPattern, values: Optional[Mapping[str, float] | Sequence[float] | np.ndarray] = None
    ) -> np.ndarray:
        """
        :param pattern: Pattern whose base angles are resolved
        :param values: Symbol -> radians, or one number per auxiliary; numeric base angles need nothing
        :return: M numeric angles
        """
        if values is None or isinstance(values, Mapping):
            return np.array([a.bind(values or {}) for a in pattern.base_angles], dtype=float)
        numeric = np.asarray(values, dtype=float)
        if numeric.shape != (pattern.m,):
            raise ValueError(f"Expected {pattern.m} angles, got shape {numeric.shape}")
        return numeric

    @classmethod
    def adapt_angles(
        cls,
        pattern: MeasurementPattern,
        outcomes: npt.ArrayLike,
        values: Optional[Mapping[str, float] | Sequence[float] | np.ndarray] = None,
        round_index: Optional[int] = None,
    ) -> np.ndarray:
        """
        theta_m -> (-1)^h_m theta_m with h_m the parity of earlier outcomes whose generators anticommute with m.
        :param pattern: Measurement pattern
        :param outcomes: M bits; entries of auxiliaries not yet measured are ignored by the strict lower adaptivity
        :param values: Angle bindings passed to bind_angles
        :param round_index: If given, only the angles of that round are returned, in round order
        :return: The adapted angles
        """
        s = np.asarray(outcomes)
        if s.shape != (pattern.m,):
            raise ValueError(f"Expected {pattern.m} outcomes, got shape {s.shape}")
        s = as_bits(s)
        h = (pattern.adaptivity.astype(np.int64) @ s) % 2
        angles = np.where(h == 1, -1.0, 1.0) * cls.bind_angles(pattern, values)
        if round_index is None:
            return angles
        return angles[list(pattern.order.rounds[round_index])]

    @classmethod
    def final_correction(cls, pattern: MeasurementPattern, outcomes: npt.ArrayLike) -> PauliString:
        """
        :return: prod_m correction[m]^s_m, multiplied left to right
        """
        s = np.asarray(outcomes)
        if s.shape != (pattern.m,):
            raise ValueError(f"Expected {pattern.m} outcomes, got shape {s.shape}")
        n = pattern.correction[0].n
        return multiply_all((p for p, bit in zip(pattern.correction, as_bits(s)) if bit), n)

    @classmethod
    def measurement_order(cls, resource: CompiledResource, pattern: MeasurementPattern) -> MeasurementOrder:
        """
        Measurement rounds over all vertices: the auxiliary rounds of the pattern, then the main qubits as output.
        """
        if pattern.m != resource.m:
            raise ValueError(f"Pattern has {pattern.m} auxiliaries, the resource {resource.m}")
        rounds = [tuple(resource.n_main + m for m in r) for r in pattern.order.rounds]
        if resource.n_main:
            rounds.append(tuple(resource.roles.main_ids))
        return MeasurementOrder(rounds=tuple(rounds))


class HybridPremeasurer:
    """Classical pre-measurement of the main qubits in the basis of a Pauli observable."""

    @classmethod
    def hybrid_premeasure(
        cls, resource: CompiledResource, observable: PauliString
    ) -> tuple[CompiledResource, OutcomeModel, ByproductMap]:
        """
        Measures every main qubit with the graph rules; where the observable acts trivially the basis is chosen
        so that the measurement only deletes the vertex.
        Byproducts of earlier measurements stay an outer Pauli frame and flip later outcomes they anticommute with.
        :param resource: Compiled resource, main qubits first
        :param observable: Pauli string on the main qubits
        :return: The auxiliary-only resource, the law of the main outcomes and the auxiliary byproduct frame
        """
        n_main = resource.n_main
        if observable.n != n_main:
            raise ValueError(f"Observable acts on {observable.n} qubits, the main register has {n_main}")

        g, layer = resource.graph, resource.vops
        width = resource.n
        frame0 = PauliString.identity(width)
        frames: list[PauliString] = []
        # intrinsic outcomes u = u_map @ t + u_const
        u_map = np.zeros((n_main, n_main), dtype=np.int64)
        u_const = np.zeros(n_main, dtype=np.int64)
        free = []
        constants = np.zeros(n_main, dtype=np.int64)
        parity = np.zeros((n_main, n_main), dtype=np.int64)

        # On AC resources the main qubits and block 1 hold every byproduct when pivots stay among them
        local = set(range(n_main + resource.period_length)) if resource.is_ac else None

        for j in range(n_main):
            basis = observable.letter(j)
            if basis == "I":
                basis = cls.deletion_basis(layer, 0)
            measured = PauliString.single(width, 0, basis)
            a0 = frame0.anticommutes(measured)
            a = np.array([f.anticommutes(measured) for f in frames] + [0] * (n_main - j), dtype=np.int64)
            shift_map = a @ u_map
            shift_const = (a0 + a @ u_const) % 2

            pivot = None if local is None else cls.local_pivot(g, local)
            result = GraphStateCalculator.measure_pauli(g, layer, 0, basis, special_neighbor=pivot)
            if local is not None:
                local = {i - 1 for i in local if i != 0}
            kept = list(range(1, width))
            frame0 = frame0.restrict(kept)
            frames = [f.restrict(kept) for f in frames]
            width -= 1

            if result.law is OutcomeLaw.DETERMINISTIC:
                free.append(False)
                constants[j] = (result.deterministic_outcome + shift_const) % 2
                parity[j] = shift_map % 2
                u_const[j] = result.deterministic_outcome
                frames.append(PauliString.identity(width))
            else:
                free.append(True)
                u_map[j] = shift_map % 2
                u_map[j, j] = 1
                u_const[j] = shift_const
                zero, one = result.byproducts
                if zero.is_identity:
                    frames.append(one)
                else:
                    frame0 = frame0 * zero
                    frames.append(zero)

            g, layer = result.graph, result.vops

        constant = frame0
        for f, e in zip(frames, u_const % 2):
            if e:
                constant = constant * f
        linear = tuple(
            multiply_all((f for f, bit in zip(frames, u_map[:, j] % 2) if bit), width) for j in range(n_main)
        )
        aux_ids = resource.roles.aux_ids
        ladder = None
        if resource.ladder is not None:
            ladder = resource.ladder.relabelled({v: k for k, v in enumerate(aux_ids)})
        aux = CompiledResource(
            graph=g,
            vops=layer,
            roles=resource.roles.relabelled(aux_ids),
            n_main=0,
            period_length=resource.period_length,
            trotter_steps=resource.trotter_steps,
            phases_r=resource.phases_r,
            ladder=ladder,
        )
        model = OutcomeModel(free=tuple(free), constants=constants % 2, parity=parity % 2)
        byproducts = ByproductMap(constant=constant, linear=linear)
        logger.debug(f"Hybrid pre-measurement: {model.n_free} free main outcomes, frame on {byproducts.support}")
        return aux, model, byproducts

    @staticmethod
    def deletion_basis(layer: VopLayer, v: int) -> str:
        """
        The basis whose pull-back through the VOP of v is Z, so that measuring it only deletes v.
        :param layer: Current VOP layer
        :param v: Vertex
        :return: "X", "Y" or "Z"
        """
        x, z, _ = layer[v].conjugate_bits(0, 1)
        return _LETTERS[(x, z)]

    @staticmethod
    def local_pivot(g: GraphAdjacency, local: set[int]) -> Optional[int]:
        # A neighbour of vertex 0 whose neighbourhood lies inside local, if any
        for w in g.neighbors(0):
            if set(g.neighbors(w)) <= local:
                return w
        return None

    @classmethod
    def hybrid_outcome_sample(cls, model: OutcomeModel, rng: np.random.Generator) -> np.ndarray:
        t = np.zeros(model.n, dtype=np.uint8)
        for j in range(model.n):
            if model.free[j]:
                t[j] = rng.integers(2)
            else:
                t[j] = (int(model.constants[j]) + int(model.parity[j].astype(np.int64) @ t)) % 2
        return t

    @classmethod
    def hybrid_byproduct(cls, byproducts: ByproductMap, bits: npt.ArrayLike) -> PauliString:
        return byproducts.frame(bits)

    @classmethod
    def observable_value(cls, observable: PauliString, bits: npt.ArrayLike, correction: PauliString) -> int:
        """
        Eigenvalue of the observable on the corrected main register, from main outcomes taken before the correction.
        :param observable: Hermitian Pauli string on the main qubits
        :param bits: Main outcomes, one per qubit
        :param correction: Final Pauli correction of the pattern
        :return: +1 or -1
        """
        t = as_bits(bits, shape=(observable.n,))
        parity = observable.sign_bit
        for q in observable.support:
            basis = PauliString.single(1, 0, observable.letter(q))
            local = PauliString(x=correction.x[q : q + 1], z=correction.z[q : q + 1])
            parity += int(t[q]) + local.anticommutes(basis)
        return -1 if parity % 2 else 1

