from typing import Callable, Iterable, Optional

import numpy as np

from src.models.clifford import SingleQubitClifford
from src.models.graph import GraphAdjacency, VopLayer, MeasurementOrder, PauliMeasurement, OutcomeLaw
from src.models.pauli import PauliString
from src.models.tableau import StabilizerTableau
from src.tools import gf2

_BASES = {"X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


class GraphStateCalculator:
    @classmethod
    def local_complement(cls, g: GraphAdjacency, v: int) -> GraphAdjacency:
        """
        Toggles every edge between two neighbours of v.
        :param g: Graph
        :param v: Vertex to complement at
        :return: LC_v(g)
        """
        cls._check_vertex(g, v)
        nbr = g.gamma[v]
        gamma = g.gamma ^ np.outer(nbr, nbr).astype(np.uint8)
        np.fill_diagonal(gamma, 0)
        return GraphAdjacency(gamma=gamma)

    @classmethod
    def lc_update_vops(cls, layer: VopLayer, g: GraphAdjacency, v: int) -> VopLayer:
        """
        Composes the layer with sqrt(iX) on v and sqrt(-iZ) on its neighbours, so that
        layer * |g> == new_layer * |LC_v(g)>.
        :param layer: VOPs of the state before the complement
        :param g: The graph before the complement
        :param v: Vertex to complement at
        :return: The updated layer
        """
        cls._check_vertex(g, v)
        out = layer.right_multiply(v, SingleQubitClifford.sqrt_ix())
        for w in g.neighbors(v):
            out = out.right_multiply(w, SingleQubitClifford.sqrt_minus_iz())
        return out

    @classmethod
    def complement_with_vops(cls, g: GraphAdjacency, layer: VopLayer, v: int) -> tuple[GraphAdjacency, VopLayer]:
        return cls.local_complement(g, v), cls.lc_update_vops(layer, g, v)

    @classmethod
    def replay(cls, g: GraphAdjacency, layer: VopLayer, moves: Iterable[int]) -> tuple[GraphAdjacency, VopLayer]:
        for v in moves:
            g, layer = cls.complement_with_vops(g, layer, v)
        return g, layer

    @classmethod
    def graph_tableau(cls, g: GraphAdjacency, layer: Optional[VopLayer] = None) -> StabilizerTableau:
        """
        :return: The generators C K_v C^dagger of C|g>, with K_v = X_v Z_N(v)
        """
        eye = np.eye(g.n, dtype=np.uint8)
        rows = [PauliString(x=eye[v], z=g.gamma[v]) for v in range(g.n)]
        if layer is not None and not layer.is_identity:
            rows = [layer.conjugate(p) for p in rows]
        return StabilizerTableau(rows=tuple(rows))

    @classmethod
    def measure_pauli(
        cls,
        g: GraphAdjacency,
        layer: VopLayer,
        v: int,
        basis: str,
        special_neighbor: Optional[int] = None,
    ) -> PauliMeasurement:
        """
        Measures vertex v of layer * |g> in the Pauli basis X, Y or Z.
        The measured Pauli is pulled back through C_v; Y and X effective measurements are turned into a Z
        measurement by local complementations (at v for Y; at v, the special neighbour w and v again for X).
        :param g: Graph
        :param layer: VOP layer
        :param v: Measured vertex
        :param basis: "X", "Y" or "Z"
        :param special_neighbor: Neighbour used for effective X measurements, the lowest-index neighbour by default
        :return: Post-measurement graph and VOPs on the remaining vertices with the per-outcome byproducts
        """
        cls._check_vertex(g, v)
        if g.n < 2:
            raise ValueError("Measuring the last vertex leaves no state to describe")
        if basis not in _BASES:
            raise ValueError(f"Unknown Pauli basis {basis!r}")
        if special_neighbor is not None and not g.gamma[v, special_neighbor]:
            raise ValueError(f"Vertex {special_neighbor} is not a neighbour of {v}")

        ex, ez, flip = layer[v].inverse().conjugate_bits(*_BASES[basis])
        if (ex, ez) == (0, 1):
            return cls._measure_effective_z(g, layer, v, flip)

        if g.is_isolated(v):
            identity = PauliString.identity(g.n - 1)
            effective_x = (ex, ez) == (1, 0)
            return PauliMeasurement(
                graph=g.delete_vertex(v),
                vops=layer.delete_vertex(v),
                kept=tuple(k for k in range(g.n) if k != v),
                byproducts=(identity, identity),
                law=OutcomeLaw.DETERMINISTIC if effective_x else OutcomeLaw.UNIFORM,
                deterministic_outcome=flip if effective_x else None,
            )

        if (ex, ez) == (1, 1):
            g, layer = cls.complement_with_vops(g, layer, v)
            return cls.measure_pauli(g, layer, v, basis)

        w = g.neighbors(v)[0] if special_neighbor is None else special_neighbor
        g, layer = cls.complement_with_vops(g, layer, v)
        g, layer = cls.complement_with_vops(g, layer, w)
        return cls.measure_pauli(g, layer, v, basis)

    @classmethod
    def _measure_effective_z(cls, g: GraphAdjacency, layer: VopLayer, v: int, flip: int) -> PauliMeasurement:
        # Outcome t of Z on |g> leaves Z_N(v)^t |g - v>; the Z's are pushed through the remaining VOPs
        kept = tuple(k for k in range(g.n) if k != v)
        new_layer = layer.delete_vertex(v)
        z = np.delete(g.gamma[v], v)
        frame = new_layer.conjugate(PauliString(x=np.zeros(g.n - 1, dtype=np.uint8), z=z)).unsigned()
        identity = PauliString.identity(g.n - 1)
        byproducts = (frame, identity) if flip else (identity, frame)
        return PauliMeasurement(
            graph=g.delete_vertex(v), vops=new_layer, kept=kept, byproducts=byproducts, law=OutcomeLaw.UNIFORM
        )

    @classmethod
    def graph_from_tableau(cls, t: StabilizerTableau) -> tuple[GraphAdjacency, VopLayer]:
        """
        Finds (graph, VOPs) whose state C|graph> is stabilized by exactly the group of t.
        Elimination on the X block; qubits whose X column stays empty get a Hadamard, after which the X block
        is invertible and is reduced to the identity. The Z diagonal and the row signs become S powers.
        :param t: A valid stabilizer tableau
        :return: The graph and the VOP layer
        """
        t.validate_state()
        n = t.n
        rows = list(t.rows)

        rank_x = cls._eliminate(rows, lambda p, c: int(p.x[c]), range(n), start=0)
        z_pivots: list[int] = []
        cls._eliminate(rows, lambda p, c: int(p.z[c]), range(n), start=rank_x, pivots=z_pivots)

        hadamard = SingleQubitClifford.hadamard()
        for q in z_pivots:
            rows = [hadamard.conjugate(p, q) for p in rows]

        full = cls._eliminate(rows, lambda p, c: int(p.x[c]), range(n), start=0)
        assert full == n, "X block is singular after the Hadamard fix"

        x = np.array([p.x for p in rows], dtype=np.uint8)
        z = np.array([p.z for p in rows], dtype=np.uint8)
        assert np.array_equal(x, np.eye(n, dtype=np.uint8))
        diagonal = np.diag(z).astype(int)
        gamma = z.copy()
        np.fill_diagonal(gamma, 0)

        vops = []
        for i, p in enumerate(rows):
            c = SingleQubitClifford.phase_power(diagonal[i] + 2 * p.sign_bit)
            if i in z_pivots:
                c = hadamard.compose(c)
            vops.append(c)
        return GraphAdjacency(gamma=gamma), VopLayer(vops=tuple(vops))

    @staticmethod
    def _eliminate(
        rows: list[PauliString],
        bit: Callable[[PauliString, int], int],
        columns: Iterable[int],
        start: int,
        pivots: Optional[list[int]] = None,
    ) -> int:
        # Gauss-Jordan on rows[start:] in place with exact row products; returns the index after the last pivot row
        pivot_row = start
        for col in columns:
            if pivot_row == len(rows):
                break
            found = next((k for k in range(pivot_row, len(rows)) if bit(rows[k], col)), None)
            if found is None:
                continue
            rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
            for k in range(len(rows)):
                if k != pivot_row and bit(rows[k], col):
                    rows[k] = rows[k] * rows[pivot_row]
            if pivots is not None:
                pivots.append(col)
            pivot_row += 1
        return pivot_row

    @classmethod
    def active_profile(
        cls, g: GraphAdjacency, order: MeasurementOrder, held: Iterable[int] = ()
    ) -> tuple[list[int], int]:
        """
        Active qubits per round: the measured vertices plus every neighbour measured in a later round.
        :param g: Graph
        :param order: Measurement rounds covering every vertex
        :param held: Vertices counted as active in every round until they are measured
        :return: The per-round counts and their maximum
        """
        order.check_partition(g.n)
        round_of = order.round_of()
        held = list(held)
        profile = []
        for i, r in enumerate(order.rounds):
            active = set(r)
            for v in r:
                active.update(w for w in g.neighbors(v) if round_of[w] > i)
            active.update(h for h in held if round_of[h] > i)
            profile.append(len(active))
        return profile, max(profile)

    @classmethod
    def cut_rank(cls, g: GraphAdjacency, part: Iterable[int]) -> int:
        index = sorted(set(part))
        rest = [k for k in range(g.n) if k not in set(index)]
        if not index or not rest:
            return 0
        return gf2.rank(g.gamma[np.ix_(index, rest)])

    @classmethod
    def storage_profile(cls, state: GraphAdjacency | StabilizerTableau, order: MeasurementOrder) -> list[int]:
        """
        Entanglement between the vertices measured up to each round and all later vertices,
        for every boundary between two consecutive rounds.
        """
        order.check_partition(state.n)
        measured: list[int] = []
        profile = []
        for r in order.rounds[:-1]:
            measured.extend(r)
            if isinstance(state, GraphAdjacency):
                profile.append(cls.cut_rank(state, measured))
            else:
                profile.append(state.entanglement(measured))
        return profile

    @staticmethod
    def _check_vertex(g: GraphAdjacency, v: int) -> None:
        if not 0 <= v < g.n:
            raise IndexError(f"Vertex {v} out of range for a graph on {g.n} vertices")
