from typing import Optional

from src.engine.graph_state import GraphStateCalculator
from src.models.pauli import PauliString
from src.models.problem import AnnealConfig, InitialState, InitialStateKind, Method, PeriodTerm, ProblemSpec
from src.models.rotation import Angle
from src.models.tableau import StabilizerTableau

TORIC_STABILIZERS = (
    "ZZZIIIZI",
    "ZZIZIIIZ",
    "IIZIZZZI",
    "XIXXXIII",
    "IXXXIXII",
    "XIIIXIXX",
    # logical Z operators, fixing a state inside the code space
    "IIZZIIII",
    "ZIIIZIII",
)
TORIC_STARS = ("XIXXXIII", "IXXXIXII", "XIIIXIXX", "IXIIIXXX")


def _term(n: int, letters: dict[int, str], angle: str | float, group: Optional[str] = None) -> PeriodTerm:
    return PeriodTerm(pauli=PauliString.from_letters(n, letters), angle=Angle.from_simple(angle), group=group)


class ProblemCatalog:
    """The bundled example problems."""

    @classmethod
    def catalog(cls) -> list[ProblemSpec]:
        return [
            cls.xy_model(7, 3),
            cls.xy_model(6, 3, main_edge_override=True),
            cls.xy_model(6, 3, impurity=True),
            cls.toric_perturbed(),
            cls.two_local(5),
            cls.weight_one(4, (tuple(range(4)),), name="weight1_n4"),
            cls.weight_one(5, ((0, 1), (1, 2, 3, 4)), name="weight1_n5_s2"),
            cls.cqca(),
        ]

    @classmethod
    def names(cls) -> list[str]:
        return [p.name for p in cls.catalog()]

    @classmethod
    def by_name(cls, name: str) -> ProblemSpec:
        for problem in cls.catalog():
            if problem.name == name:
                return problem
        raise KeyError(f"No catalog entry {name!r}; known: {', '.join(cls.names())}")

    @classmethod
    def xy_model(
        cls, n: int, trotter_steps: int, main_edge_override: bool = False, impurity: bool = False
    ) -> ProblemSpec:
        """
        XY chain on n qubits from |0...0>: brickwall XX terms (even bonds, then odd bonds) followed by the
        same YY terms, one commuting group each.
        :param n: Chain length
        :param trotter_steps: K
        :param main_edge_override: Give main-auxiliary edges distance 1 when annealing
        :param impurity: Prepend a zero-angle Z_0 rotation to every period
        """
        bonds = [(q, q + 1) for q in range(0, n - 1, 2)] + [(q, q + 1) for q in range(1, n - 1, 2)]
        period = []
        if impurity:
            period.append(_term(n, {0: "Z"}, 0.0, "impurity"))
        for letter in ("X", "Y"):
            group = letter.lower() * 2
            period.extend(_term(n, {a: letter, b: letter}, f"theta_{group}", group) for a, b in bonds)
        if impurity:
            name = f"xy_n{n}_impurity"
        else:
            name = f"xy_n{n}_k{trotter_steps}"
        return ProblemSpec(
            name=name,
            num_qubits=n,
            initial_state=InitialState(kind=InitialStateKind.ZERO),
            period=tuple(period),
            trotter_steps=trotter_steps,
            method=Method.LC,
            anneal=AnnealConfig(target_memory=n - 1, main_edge_override=main_edge_override),
        )

    @classmethod
    def toric_perturbed(cls, trotter_steps: int = 3) -> ProblemSpec:
        """
        Eight-qubit toric code in a code state, evolved under its star terms and a Z field on every qubit.
        The code state is given in graph form: a graph plus the local Cliffords taking it to the code state.
        """
        n = 8
        g, layer = GraphStateCalculator.graph_from_tableau(StabilizerTableau.from_strings(TORIC_STABILIZERS))
        period = [
            PeriodTerm(pauli=PauliString.from_string(s), angle=Angle(symbol="theta_star"), group="stars")
            for s in TORIC_STARS
        ]
        period.extend(_term(n, {q: "Z"}, "theta_field", "fields") for q in range(n))
        return ProblemSpec(
            name="toric_perturbed",
            num_qubits=n,
            initial_state=InitialState(
                kind=InitialStateKind.GRAPH, edges=tuple(g.edges()), vops=tuple(int(c) for c in layer.vops)
            ),
            period=tuple(period),
            trotter_steps=trotter_steps,
            method=Method.LC,
            anneal=AnnealConfig(target_memory=3),
        )

    @classmethod
    def two_local(cls, n: int, trotter_steps: int = 2) -> ProblemSpec:
        """Universal generating set of nearest-neighbour terms with at most two-qubit support."""
        period = [
            _term(n, {0: "X"}, "a0"),
            _term(n, {0: "Z"}, "a1"),
            _term(n, {1: "X"}, "a2"),
            _term(n, {1: "Z"}, "a3"),
            _term(n, {0: "Z", 1: "Z"}, "a4"),
        ]
        for q in range(1, n - 1):
            period.append(_term(n, {q: "X", q + 1: "Z"}, f"a{len(period)}"))
            period.append(_term(n, {q: "Z", q + 1: "X"}, f"a{len(period)}"))
        return ProblemSpec(
            name=f"two_local_n{n}",
            num_qubits=n,
            initial_state=InitialState(kind=InitialStateKind.ZERO),
            period=tuple(period),
            trotter_steps=trotter_steps,
            anneal=AnnealConfig(target_memory=n),
        )

    @classmethod
    def weight_one(
        cls, n: int, z_strings: tuple[tuple[int, ...], ...], name: str, trotter_steps: int = 2
    ) -> ProblemSpec:
        """
        X_i and Z_i on every qubit plus Z strings on the given supports.
        """
        period = []
        for q in range(n):
            period.append(_term(n, {q: "X"}, f"a{len(period)}"))
            period.append(_term(n, {q: "Z"}, f"a{len(period)}"))
        for support in z_strings:
            period.append(_term(n, {q: "Z" for q in support}, f"a{len(period)}"))
        return ProblemSpec(
            name=name,
            num_qubits=n,
            initial_state=InitialState(kind=InitialStateKind.ZERO),
            period=tuple(period),
            trotter_steps=trotter_steps,
            anneal=AnnealConfig(target_memory=n),
        )

    @classmethod
    def cqca(cls, trotter_steps: int = 4) -> ProblemSpec:
        """Seven-term generating set of a Clifford quantum cellular automaton on three qubits."""
        strings = ("ZII", "XII", "YZI", "YXI", "XYY", "YZX", "YXZ")
        period = [
            PeriodTerm(pauli=PauliString.from_string(s), angle=Angle(symbol=f"a{k}")) for k, s in enumerate(strings)
        ]
        return ProblemSpec(
            name="cqca_n3",
            num_qubits=3,
            initial_state=InitialState(kind=InitialStateKind.ZERO),
            period=tuple(period),
            trotter_steps=trotter_steps,
            anneal=AnnealConfig(target_memory=3),
        )
