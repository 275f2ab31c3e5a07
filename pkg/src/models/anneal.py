from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd

from src.models.graph import GraphAdjacency
from src.tools.typing import IntMatrix

TRACE_COLUMNS = ["iteration", "W", "Pi", "f"]


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """
    Edge weights for the annealer, in vertex order (main qubits first).
    group_matrix is the per-group matrix before expansion, with the main register as the last group.
    """

    d: IntMatrix
    group_matrix: IntMatrix
    group_sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        d = np.array(self.d, dtype=np.int64)
        if d.ndim != 2 or d.shape[0] != d.shape[1] or not np.array_equal(d, d.T):
            raise ValueError("Distance matrix must be square and symmetric")
        if np.any(d < 1):
            raise ValueError("Distances must be positive")
        d.setflags(write=False)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "group_matrix", np.array(self.group_matrix, dtype=np.int64))
        object.__setattr__(self, "group_sizes", tuple(int(s) for s in self.group_sizes))

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return np.array_equal(self.d, other.d) and np.array_equal(self.group_matrix, other.group_matrix)


@dataclass(frozen=True, eq=False)
class AnnealTrace:
    """
    One annealing run. steps logs every accepted move (plus the start state at iteration 0);
    moves replays the start graph into the returned graph.
    """

    steps: pd.DataFrame
    graph: GraphAdjacency
    moves: tuple[int, ...]
    cost: int
    weight: int
    aperiodicity: int
    t0: float
    n_iterations: int
    seed: Optional[int] = None

    @property
    def feasible(self) -> bool:
        return self.aperiodicity == 0

    @property
    def best_costs(self) -> pd.Series:
        return self.steps["f"].cummin()

    def to_csv(self) -> str:
        return self.steps[TRACE_COLUMNS].to_csv(index=False, lineterminator="\n")

    def __str__(self) -> str:
        name = self.__class__.__name__
        return f"<{name} f={self.cost} W={self.weight} Pi={self.aperiodicity} moves={len(self.moves)}>"
