from dataclasses import dataclass
from typing import Optional

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np

from src.engine.graph_state import GraphStateCalculator
from src.models.graph import GraphAdjacency, VopLayer
from src.models.pauli import PauliString
from src.models.rotation import Angle, RotationSequence
from src.models.tableau import StabilizerTableau
from tests.utils.random_choice import random_bits


def random_graph(n: int, rng: np.random.Generator, p: float = 0.5) -> GraphAdjacency:
    upper = np.triu((rng.random((n, n)) < p).astype(np.uint8), k=1)
    return GraphAdjacency(gamma=upper | upper.T)


def random_layer(n: int, rng: np.random.Generator) -> VopLayer:
    return VopLayer(vops=tuple(int(c) for c in rng.integers(0, 24, size=n)))


def random_pauli(n: int, rng: np.random.Generator) -> PauliString:
    while True:
        p = PauliString(x=random_bits(n, rng), z=random_bits(n, rng))
        if not p.is_identity:
            return p


def random_state(n: int, rng: np.random.Generator) -> StabilizerTableau:
    return GraphStateCalculator.graph_tableau(random_graph(n, rng), random_layer(n, rng))


@dataclass(frozen=True)
class Instance:
    seq: RotationSequence
    init: StabilizerTableau
    angles: np.ndarray


class RandomInstanceMaker:
    def __init__(self, seed: Optional[int] = None) -> None:
        self.rng = np.random.default_rng(seed)
        self.n_main: Optional[int] = None
        self.period_length: Optional[int] = None
        self.trotter_steps: Optional[int] = None
        self.period: Optional[list[PauliString]] = None
        self.init: Optional[StabilizerTableau] = None

    def add_n_main(self, n_main: int) -> Self:
        self.n_main = n_main
        return self

    def add_period_length(self, period_length: int) -> Self:
        self.period_length = period_length
        return self

    def add_trotter_steps(self, trotter_steps: int) -> Self:
        self.trotter_steps = trotter_steps
        return self

    def add_period(self, period: list[PauliString]) -> Self:
        self.period = period
        return self

    def add_initial_state(self, init: StabilizerTableau) -> Self:
        self.init = init
        return self

    def _pre_make_hook(self) -> None:
        if self.n_main is None:
            self.n_main = self.period[0].n if self.period else int(self.rng.integers(1, 5))
        if self.period is None:
            if self.period_length is None:
                self.period_length = int(self.rng.integers(1, 5))
            self.period = [random_pauli(self.n_main, self.rng) for _ in range(self.period_length)]
        if self.trotter_steps is None:
            self.trotter_steps = int(self.rng.integers(1, 4))
        if self.init is None:
            self.init = random_state(self.n_main, self.rng)

    def make(self) -> Instance:
        self._pre_make_hook()
        values = self.rng.uniform(-np.pi, np.pi, size=len(self.period))
        seq = RotationSequence.from_period(
            self.n_main, self.period, [Angle(value=v) for v in values], self.trotter_steps
        )
        return Instance(seq=seq, init=self.init, angles=np.tile(values, self.trotter_steps))
