from dataclasses import dataclass
from enum import Enum
from typing import Optional

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np

from src.models.data.ldc_repo import LdcRepo
from src.models.data.light_dc import LightDc
from src.models.graph import GraphAdjacency, VopLayer
from src.models.ids import VertexId
from src.tools.serialization import SimpleDict
from src.tools.typing import BitMatrix, BitVector, as_bits


class VertexRole(Enum):
    MAIN = "main"
    AUX = "aux"


@dataclass(frozen=True)
class VertexInfo(LightDc):
    # Main vertices carry step 0 and term = qubit index; auxiliaries carry their step k >= 1 and term l
    id: VertexId
    role: VertexRole
    step: int
    term: int


class VertexRepo(LdcRepo[VertexInfo]):
    @classmethod
    def _get_dc_type(cls) -> type[VertexInfo]:
        return VertexInfo

    @classmethod
    def make(cls, n_main: int, period_length: int, trotter_steps: int) -> Self:
        """
        Main vertices come first, then auxiliaries ordered by step and term.
        """
        dcs = [VertexInfo(id=VertexId(n), role=VertexRole.MAIN, step=0, term=n) for n in range(n_main)]
        for k in range(trotter_steps):
            for ell in range(period_length):
                vertex = n_main + k * period_length + ell
                dcs.append(VertexInfo(id=VertexId(vertex), role=VertexRole.AUX, step=k + 1, term=ell))
        return cls(dcs)

    @property
    def main_ids(self) -> list[int]:
        return self.filter({"role": VertexRole.MAIN}).ids

    @property
    def aux_ids(self) -> list[int]:
        return self.filter({"role": VertexRole.AUX}).ids

    def block(self, step: int) -> list[int]:
        return self.filter({"role": VertexRole.AUX, "step": step}).ids

    def aux_vertex(self, step: int, term: int) -> int:
        ids = self.filter({"role": VertexRole.AUX, "step": step, "term": term}).ids
        if len(ids) != 1:
            raise KeyError(f"No auxiliary vertex for step {step}, term {term}")
        return ids[0]

    def relabelled(self, keep: list[int]) -> "VertexRepo":
        # Restricts to the kept vertices and renumbers them 0..len(keep)-1 in the given order
        return VertexRepo([self[old_id].with_id(new_id) for new_id, old_id in enumerate(keep)])


@dataclass(frozen=True)
class LadderSpec:
    """
    CNOT layers between consecutive blocks of auxiliaries, applied in list order.
    Each gate is (control, target) in vertex indices.
    """

    layers: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "layers", tuple(tuple((int(c), int(t)) for c, t in layer) for layer in self.layers)
        )

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [e for layer in self.layers for e in layer]

    @property
    def n_cnots(self) -> int:
        return len(self.edges)

    def relabelled(self, mapping: dict[int, int]) -> "LadderSpec":
        return LadderSpec(layers=tuple(tuple((mapping[c], mapping[t]) for c, t in layer) for layer in self.layers))

    def to_simple_dict(self) -> list[list[list[int]]]:
        return [[[c, t] for c, t in layer] for layer in self.layers]

    @classmethod
    def from_simple_dict(cls, simple_list: list[list[list[int]]]) -> Self:
        return cls(layers=tuple(tuple((c, t) for c, t in layer) for layer in simple_list))


@dataclass(frozen=True, eq=False)
class AnticommutationData:
    """
    a0[n, l] = 1 when the initial stabilizer K_n anticommutes with period generator l (N x L),
    a[l, l'] = 1 when period generators l and l' anticommute (L x L, symmetric, zero diagonal).
    """

    a0: BitMatrix
    a: BitMatrix

    def __post_init__(self) -> None:
        a0 = as_bits(self.a0)
        a = as_bits(self.a)
        if a.shape != (a0.shape[1], a0.shape[1]):
            raise ValueError(f"Shapes {a0.shape} and {a.shape} do not fit")
        if not np.array_equal(a, a.T) or np.any(np.diag(a)):
            raise ValueError("Anticommutation among generators must be symmetric with zero diagonal")
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "a", a)

    @property
    def n_main(self) -> int:
        return self.a0.shape[0]

    @property
    def period_length(self) -> int:
        return self.a.shape[0]

    @property
    def a_norm(self) -> int:
        return int(self.a.sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AnticommutationData):
            return NotImplemented
        return np.array_equal(self.a0, other.a0) and np.array_equal(self.a, other.a)


@dataclass(frozen=True, eq=False)
class CompiledResource:
    """
    A resource state ladder * vops * |graph>, plus the bookkeeping needed to run a pattern on it.
    phases_r holds one sign bit per auxiliary; it is already folded into the auxiliary VOPs and kept
    for reporting.
    """

    graph: GraphAdjacency
    vops: VopLayer
    roles: VertexRepo
    n_main: int
    period_length: int
    trotter_steps: int
    phases_r: BitVector
    ladder: Optional[LadderSpec] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "phases_r", as_bits(self.phases_r))
        if self.graph.n != self.vops.n or self.graph.n != len(self.roles):
            raise ValueError(f"Graph ({self.graph.n}), VOPs ({self.vops.n}) and roles ({len(self.roles)}) disagree")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.period_length * self.trotter_steps

    @property
    def is_ac(self) -> bool:
        return self.ladder is not None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CompiledResource):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.vops == other.vops
            and self.roles == other.roles
            and (self.n_main, self.period_length, self.trotter_steps)
            == (other.n_main, other.period_length, other.trotter_steps)
            and np.array_equal(self.phases_r, other.phases_r)
            and self.ladder == other.ladder
        )

    def __str__(self) -> str:
        kind = "AC" if self.is_ac else "LC"
        return f"<{self.__class__.__name__} {kind} N={self.n_main} L={self.period_length} K={self.trotter_steps}>"

    def to_simple_dict(self) -> SimpleDict:
        return {
            "n_main": self.n_main,
            "period_length": self.period_length,
            "trotter_steps": self.trotter_steps,
            "graph": self.graph.to_simple_dict(),
            "vops": self.vops.to_simple_dict(),
            "vop_mnemonics": [c.mnemonic for c in self.vops.vops],
            "roles": self.roles.to_simple_dict(),
            "phases_r": self.phases_r.tolist(),
            "ladder": None if self.ladder is None else self.ladder.to_simple_dict(),
        }

    @classmethod
    def from_simple_dict(cls, simple_dict: SimpleDict) -> Self:
        ladder = simple_dict.get("ladder")
        return cls(
            graph=GraphAdjacency.from_simple_dict(simple_dict["graph"]),
            vops=VopLayer.from_simple_dict(simple_dict["vops"]),
            roles=VertexRepo.from_simple_dict(simple_dict["roles"]),
            n_main=simple_dict["n_main"],
            period_length=simple_dict["period_length"],
            trotter_steps=simple_dict["trotter_steps"],
            phases_r=np.array(simple_dict["phases_r"], dtype=np.uint8),
            ladder=None if ladder is None else LadderSpec.from_simple_dict(ladder),
        )
