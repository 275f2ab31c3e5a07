from dataclasses import dataclass, field, fields, replace
from enum import Enum
from typing import Any, Optional

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from src.models.clifford import SingleQubitClifford
from src.models.errors import ProblemValidationError
from src.models.graph import GraphAdjacency, VopLayer
from src.models.pauli import PauliString
from src.models.rotation import Angle, RotationSequence
from src.models.tableau import StabilizerTableau
from src.tools.serialization import SimpleDict


class Method(Enum):
    LC = "lc"
    AC = "ac"


class InitialStateKind(Enum):
    ZERO = "zero"
    PLUS = "plus"
    GRAPH = "graph"
    TABLEAU = "tableau"


@dataclass(frozen=True)
class AnnealConfig:
    """Settings of the LC annealer."""

    cooling_rate: float = 0.99995
    target_memory: Optional[int] = None
    runs: int = 1
    rng_seed: Optional[int] = None
    main_edge_override: bool = False
    k_anneal: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0 < self.cooling_rate < 1:
            raise ProblemValidationError(f"Cooling rate must lie in (0, 1), got {self.cooling_rate}", "cooling_rate")
        if self.runs < 1:
            raise ProblemValidationError(f"At least one run is needed, got {self.runs}", "runs")
        if self.target_memory is not None and self.target_memory < 1:
            raise ProblemValidationError(f"Target memory must be positive, got {self.target_memory}", "target_memory")
        if self.k_anneal is not None and self.k_anneal < 1:
            raise ProblemValidationError(f"Annealing steps must be positive, got {self.k_anneal}", "k_anneal")

    def with_overrides(self, **overrides: Any) -> "AnnealConfig":
        # None means "keep the current value"
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_simple_dict(self) -> SimpleDict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_simple_dict(cls, simple_dict: SimpleDict) -> Self:
        known = {f.name for f in fields(cls)}
        unknown = set(simple_dict) - known
        if unknown:
            raise ProblemValidationError(f"Unknown anneal settings {sorted(unknown)}", "anneal")
        return cls(**simple_dict)


@dataclass(frozen=True)
class CompileSettings:
    method: Method = Method.LC
    trotter_steps: Optional[int] = None
    anneal: bool = False


@dataclass(frozen=True)
class InitialState:
    kind: InitialStateKind
    edges: tuple[tuple[int, int], ...] = ()
    rows: tuple[str, ...] = ()
    # Local Cliffords on the graph vertices, by group index; empty means none
    vops: tuple[int, ...] = ()

    def to_tableau(self, n: int) -> StabilizerTableau:
        if self.kind is InitialStateKind.ZERO:
            return StabilizerTableau.computational_zero(n)
        if self.kind is InitialStateKind.PLUS:
            return StabilizerTableau.plus(n)
        if self.kind is InitialStateKind.GRAPH:
            g = GraphAdjacency.from_edges(n, self.edges)
            rows = [PauliString.from_letters(n, {v: "X", **{w: "Z" for w in g.neighbors(v)}}) for v in range(n)]
            if self.vops:
                if len(self.vops) != n:
                    raise ProblemValidationError(
                        f"Graph initial state has {len(self.vops)} vertex operators for {n} qubits", "initial_state"
                    )
                layer = VopLayer(vops=tuple(SingleQubitClifford(c) for c in self.vops))
                rows = [layer.conjugate(p) for p in rows]
            return StabilizerTableau(rows=tuple(rows))
        return StabilizerTableau.from_strings(self.rows)

    def to_simple_dict(self) -> SimpleDict | str:
        if self.kind is InitialStateKind.GRAPH:
            graph: SimpleDict = {"edges": [list(e) for e in self.edges]}
            if self.vops:
                graph["vops"] = list(self.vops)
            return {"graph": graph}
        if self.kind is InitialStateKind.TABLEAU:
            return {"tableau": {"rows": list(self.rows)}}
        return self.kind.value

    @classmethod
    def from_simple_dict(cls, simple: SimpleDict | str) -> Self:
        if isinstance(simple, str):
            if simple not in (InitialStateKind.ZERO.value, InitialStateKind.PLUS.value):
                raise ProblemValidationError(f"Unknown initial state {simple!r}", "initial_state")
            return cls(kind=InitialStateKind(simple))
        if not isinstance(simple, dict) or len(simple) != 1:
            raise ProblemValidationError("Initial state must be 'zero', 'plus', {graph} or {tableau}", "initial_state")
        if "graph" in simple:
            graph = simple["graph"]
            return cls(
                kind=InitialStateKind.GRAPH,
                edges=tuple(tuple(e) for e in graph["edges"]),
                vops=tuple(int(c) for c in graph.get("vops", ())),
            )
        if "tableau" in simple:
            return cls(kind=InitialStateKind.TABLEAU, rows=tuple(simple["tableau"]["rows"]))
        raise ProblemValidationError(f"Unknown initial state {sorted(simple)}", "initial_state")


@dataclass(frozen=True)
class PeriodTerm:
    pauli: PauliString
    angle: Angle
    group: Optional[str] = None

    def to_simple_dict(self) -> SimpleDict:
        out: SimpleDict = {"pauli": self.pauli.to_string(), "angle": self.angle.to_simple()}
        if self.group is not None:
            out["group"] = self.group
        return out

    @classmethod
    def from_simple_dict(cls, simple_dict: SimpleDict) -> Self:
        return cls(
            pauli=PauliString.from_string(simple_dict["pauli"]),
            angle=Angle.from_simple(simple_dict["angle"]),
            group=simple_dict.get("group"),
        )


@dataclass(frozen=True)
class ProblemSpec:
    """A periodic rotation sequence acting on a stabilizer initial state, plus how to compile it."""

    name: str
    num_qubits: int
    initial_state: InitialState
    period: tuple[PeriodTerm, ...]
    trotter_steps: int = 1
    method: Method = Method.LC
    anneal: AnnealConfig = field(default_factory=AnnealConfig)
    observables: tuple[PauliString, ...] = ()

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if self.num_qubits < 1:
            raise ProblemValidationError(f"Need at least one qubit, got {self.num_qubits}", "num_qubits")
        if len(self.period) == 0:
            raise ProblemValidationError("The period must contain at least one rotation", "period")
        if self.trotter_steps < 1:
            raise ProblemValidationError(f"Trotter steps must be positive, got {self.trotter_steps}", "trotter_steps")
        for k, term in enumerate(self.period):
            if term.pauli.n != self.num_qubits:
                raise ProblemValidationError(
                    f"Pauli {term.pauli.to_string()} has width {term.pauli.n}, expected {self.num_qubits}", "period", k
                )
            if term.pauli.r != 0:
                raise ProblemValidationError("Rotation generators carry no phase", "period", k)
        for k, o in enumerate(self.observables):
            if o.n != self.num_qubits or not o.is_hermitian:
                raise ProblemValidationError(
                    f"Observable {o.to_string()} is not a Hermitian {self.num_qubits}-qubit string", "observables", k
                )
        self._validate_groups()
        try:
            self.initial_tableau().validate_state()
        except ValueError as e:
            raise ProblemValidationError(f"Invalid initial state: {e}", "initial_state") from e

    def _validate_groups(self) -> None:
        members: dict[str, list[int]] = {}
        for k, term in enumerate(self.period):
            if term.group is not None:
                members.setdefault(term.group, []).append(k)
        for name, index in members.items():
            if index != list(range(index[0], index[-1] + 1)):
                raise ProblemValidationError(f"Group {name!r} is not a consecutive run", "period", index[0])
            for a in index:
                for b in index:
                    if a < b and self.period[a].pauli.anticommutes(self.period[b].pauli):
                        raise ProblemValidationError(f"Group {name!r} contains anticommuting terms", "period", b)

    @property
    def period_length(self) -> int:
        return len(self.period)

    @property
    def groups(self) -> tuple[Optional[str], ...]:
        return tuple(t.group for t in self.period)

    def initial_tableau(self) -> StabilizerTableau:
        return self.initial_state.to_tableau(self.num_qubits)

    def rotation_sequence(self, trotter_steps: Optional[int] = None) -> RotationSequence:
        return RotationSequence.from_period(
            self.num_qubits,
            [t.pauli for t in self.period],
            [t.angle for t in self.period],
            self.trotter_steps if trotter_steps is None else trotter_steps,
        )

    def with_settings(
        self,
        method: Optional[Method] = None,
        trotter_steps: Optional[int] = None,
        anneal: Optional[AnnealConfig] = None,
    ) -> "ProblemSpec":
        return replace(
            self,
            method=self.method if method is None else method,
            trotter_steps=self.trotter_steps if trotter_steps is None else trotter_steps,
            anneal=self.anneal if anneal is None else anneal,
        )

    def to_simple_dict(self) -> SimpleDict:
        return {
            "name": self.name,
            "num_qubits": self.num_qubits,
            "initial_state": self.initial_state.to_simple_dict(),
            "period": [t.to_simple_dict() for t in self.period],
            "trotter_steps": self.trotter_steps,
            "method": self.method.value,
            "anneal": self.anneal.to_simple_dict(),
            "observables": [o.to_string() for o in self.observables],
        }

    @classmethod
    def from_simple_dict(cls, simple_dict: SimpleDict) -> Self:
        for key in ("name", "num_qubits", "initial_state", "period"):
            if key not in simple_dict:
                raise ProblemValidationError("Missing required field", key)
        period = []
        for k, term in enumerate(simple_dict["period"]):
            try:
                period.append(PeriodTerm.from_simple_dict(term))
            except (KeyError, ValueError, TypeError) as e:
                raise ProblemValidationError(f"Malformed period term: {e}", "period", k) from e
        observables = []
        for k, o in enumerate(simple_dict.get("observables", [])):
            try:
                observables.append(PauliString.from_string(o))
            except ValueError as e:
                raise ProblemValidationError(str(e), "observables", k) from e
        try:
            method = Method(simple_dict.get("method", Method.LC.value))
        except ValueError as e:
            raise ProblemValidationError(str(e), "method") from e
        return cls(
            name=simple_dict["name"],
            num_qubits=int(simple_dict["num_qubits"]),
            initial_state=InitialState.from_simple_dict(simple_dict["initial_state"]),
            period=tuple(period),
            trotter_steps=int(simple_dict.get("trotter_steps", 1)),
            method=method,
            anneal=AnnealConfig.from_simple_dict(simple_dict.get("anneal", {})),
            observables=tuple(observables),
        )
