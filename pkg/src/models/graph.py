from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import networkx as nx
import numpy as np

from src.models.clifford import SingleQubitClifford
from src.models.pauli import PauliString
from src.tools.serialization import SimpleDict
from src.tools.typing import BitMatrix, as_bits


@dataclass(frozen=True, eq=False)
class GraphAdjacency:
    """A simple undirected graph as a symmetric binary matrix with zero diagonal."""

    gamma: BitMatrix

    def __post_init__(self) -> None:
        gamma = as_bits(self.gamma)
        if gamma.ndim != 2 or gamma.shape[0] != gamma.shape[1]:
            raise ValueError(f"Adjacency must be square, got shape {gamma.shape}")
        if not np.array_equal(gamma, gamma.T):
            raise ValueError("Adjacency must be symmetric")
        if np.any(np.diag(gamma)):
            raise ValueError("Adjacency must have a zero diagonal")
        object.__setattr__(self, "gamma", gamma)

    @property
    def n(self) -> int:
        return self.gamma.shape[0]

    @property
    def n_edges(self) -> int:
        return int(np.count_nonzero(self.gamma)) // 2

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphAdjacency):
            return NotImplemented
        return np.array_equal(self.gamma, other.gamma)

    def __hash__(self) -> int:
        return hash(self.gamma.tobytes())

    def __str__(self) -> str:
        return f"<{self.__class__.__name__} n={self.n} edges={self.n_edges}>"

    @classmethod
    def empty(cls, n: int) -> Self:
        return cls(gamma=np.zeros((n, n), dtype=np.uint8))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Self:
        gamma = np.zeros((n, n), dtype=np.uint8)
        for a, b in edges:
            if a == b:
                raise ValueError(f"Self loop on vertex {a}")
            gamma[a, b] = gamma[b, a] = 1
        return cls(gamma=gamma)

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> Self:
        return cls(gamma=nx.to_numpy_array(g, nodelist=sorted(g.nodes), dtype=np.uint8))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def edges(self) -> list[tuple[int, int]]:
        a, b = np.nonzero(np.triu(self.gamma, k=1))
        return list(zip(a.tolist(), b.tolist()))

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self.gamma[v]).tolist()

    def degree(self, v: int) -> int:
        return int(np.count_nonzero(self.gamma[v]))

    def is_isolated(self, v: int) -> bool:
        return self.degree(v) == 0

    def delete_vertex(self, v: int) -> "GraphAdjacency":
        keep = [k for k in range(self.n) if k != v]
        return GraphAdjacency(gamma=self.gamma[np.ix_(keep, keep)])

    def subgraph(self, keep: Iterable[int]) -> "GraphAdjacency":
        index = list(keep)
        return GraphAdjacency(gamma=self.gamma[np.ix_(index, index)])

    def to_simple_dict(self) -> SimpleDict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_simple_dict(cls, simple_dict: SimpleDict) -> Self:
        return cls.from_edges(simple_dict["n"], [tuple(e) for e in simple_dict["edges"]])


@dataclass(frozen=True)
class VopLayer:
    """One single-qubit Clifford per vertex; the layer acts after the graph state is prepared."""

    vops: tuple[SingleQubitClifford, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vops", tuple(SingleQubitClifford(int(c)) for c in self.vops))

    @property
    def n(self) -> int:
        return len(self.vops)

    def __getitem__(self, v: int) -> SingleQubitClifford:
        return self.vops[v]

    def __len__(self) -> int:
        return len(self.vops)

    def __str__(self) -> str:
        return f"<{self.__class__.__name__} [{' '.join(c.mnemonic for c in self.vops)}]>"

    @classmethod
    def identity(cls, n: int) -> Self:
        return cls(vops=tuple(SingleQubitClifford.identity() for _ in range(n)))

    @property
    def is_identity(self) -> bool:
        return all(c.is_identity for c in self.vops)

    def replace(self, v: int, c: SingleQubitClifford) -> "VopLayer":
        vops = list(self.vops)
        vops[v] = c
        return VopLayer(vops=tuple(vops))

    def right_multiply(self, v: int, c: SingleQubitClifford) -> "VopLayer":
        # C_v <- C_v * c, so c acts on the graph state first
        return self.replace(v, self.vops[v].compose(c))

    def delete_vertex(self, v: int) -> "VopLayer":
        return VopLayer(vops=self.vops[:v] + self.vops[v + 1 :])

    def subset(self, keep: Iterable[int]) -> "VopLayer":
        return VopLayer(vops=tuple(self.vops[k] for k in keep))

    def concatenate(self, other: "VopLayer") -> "VopLayer":
        return VopLayer(vops=self.vops + other.vops)

    def conjugate(self, p: PauliString) -> PauliString:
        """
        :return: (tensor of C_v) p (tensor of C_v)^dagger
        """
        assert p.n == self.n
        out = p
        for v, c in enumerate(self.vops):
            if (p.x[v] or p.z[v]) and not c.is_identity:
                out = c.conjugate(out, v)
        return out

    def to_simple_dict(self) -> list[int]:
        return [int(c) for c in self.vops]

    @classmethod
    def from_simple_dict(cls, simple_list: list[int]) -> Self:
        return cls(vops=tuple(SingleQubitClifford(k) for k in simple_list))


@dataclass(frozen=True)
class MeasurementOrder:
    """Ordered rounds of vertices; vertices inside one round are measured simultaneously."""

    rounds: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rounds = tuple(tuple(int(v) for v in r) for r in self.rounds)
        flat = [v for r in rounds for v in r]
        if len(flat) != len(set(flat)):
            raise ValueError("A vertex appears in more than one round")
        if any(len(r) == 0 for r in rounds):
            raise ValueError("Measurement rounds must not be empty")
        object.__setattr__(self, "rounds", rounds)

    @property
    def vertices(self) -> list[int]:
        return [v for r in self.rounds for v in r]

    def __len__(self) -> int:
        return len(self.rounds)

    def round_of(self) -> dict[int, int]:
        return {v: k for k, r in enumerate(self.rounds) for v in r}

    def check_partition(self, n: int) -> None:
        if sorted(self.vertices) != list(range(n)):
            raise ValueError(f"Measurement order does not partition the {n} vertices")

    def shifted(self, offset: int) -> "MeasurementOrder":
        return MeasurementOrder(rounds=tuple(tuple(v + offset for v in r) for r in self.rounds))

    def to_simple_dict(self) -> list[list[int]]:
        return [list(r) for r in self.rounds]

    @classmethod
    def from_simple_dict(cls, simple_list: list[list[int]]) -> Self:
        return cls(rounds=tuple(tuple(r) for r in simple_list))


class OutcomeLaw(Enum):
    UNIFORM = "uniform"
    DETERMINISTIC = "deterministic"


@dataclass(frozen=True)
class PauliMeasurement:
    """
    Result of measuring one vertex of C|G> in a Pauli basis.
    For outcome s the post-measurement state is byproducts[s] * vops * |graph> on the kept vertices.
    """

    graph: GraphAdjacency
    vops: VopLayer
    kept: tuple[int, ...]
    byproducts: tuple[PauliString, PauliString]
    law: OutcomeLaw
    deterministic_outcome: Optional[int] = None

    def __post_init__(self) -> None:
        if self.law is OutcomeLaw.DETERMINISTIC:
            assert self.deterministic_outcome in (0, 1)
        else:
            assert self.deterministic_outcome is None
