from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np

from src.models.pauli import PauliString
from src.tools.serialization import SimpleDict
from src.tools.typing import BitMatrix


@dataclass(frozen=True)
class Angle:
    """A rotation angle, either a named symbol bound later or a number in radians."""

    symbol: Optional[str] = None
    value: Optional[float] = None

    def __post_init__(self) -> None:
        if (self.symbol is None) == (self.value is None):
            raise ValueError("An angle is either symbolic or numeric")
        if self.value is not None:
            object.__setattr__(self, "value", float(self.value))

    @property
    def is_symbolic(self) -> bool:
        return self.symbol is not None

    def bind(self, values: Mapping[str, float]) -> float:
        if self.value is not None:
            return self.value
        if self.symbol not in values:
            raise KeyError(f"No value bound for angle symbol {self.symbol!r}")
        return float(values[self.symbol])

    def to_simple(self) -> str | float:
        return self.symbol if self.symbol is not None else self.value

    @classmethod
    def from_simple(cls, x: str | float | int) -> Self:
        if isinstance(x, str):
            return cls(symbol=x)
        return cls(value=float(x))

    @classmethod
    def zero(cls) -> Self:
        return cls(value=0.0)


@dataclass(frozen=True)
class RotationSequence:
    """
    M = K * L Pauli rotations exp(-i theta_m P_m / 2) on n_main qubits, applied in list order.
    The first L generators form one period, repeated K times.
    """

    n_main: int
    generators: tuple[PauliString, ...]
    angles: tuple[Angle, ...]
    period_length: int

    def __post_init__(self) -> None:
        generators = tuple(self.generators)
        angles = tuple(self.angles)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "angles", angles)
        if len(generators) != len(angles):
            raise ValueError(f"Got {len(generators)} generators but {len(angles)} angles")
        if self.period_length <= 0 or len(generators) % self.period_length:
            raise ValueError(f"Sequence of {len(generators)} rotations is not a whole number of periods")
        for m, p in enumerate(generators):
            if p.n != self.n_main:
                raise ValueError(f"Generator {m} acts on {p.n} qubits instead of {self.n_main}")
            if p.r != 0:
                raise ValueError(f"Generator {m} ({p.to_string()}) must be sign-free with zero phase")
        for m in range(self.period_length, len(generators)):
            if generators[m] != generators[m - self.period_length]:
                raise ValueError(f"Generator {m} breaks the period")

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def trotter_steps(self) -> int:
        return self.m // self.period_length

    @property
    def period(self) -> tuple[PauliString, ...]:
        return self.generators[: self.period_length]

    @property
    def x_matrix(self) -> BitMatrix:
        # M x N
        return np.array([p.x for p in self.generators], dtype=np.uint8).reshape(self.m, self.n_main)

    @property
    def z_matrix(self) -> BitMatrix:
        return np.array([p.z for p in self.generators], dtype=np.uint8).reshape(self.m, self.n_main)

    @property
    def sign_bits(self) -> np.ndarray:
        return np.array([p.sign_bit for p in self.generators], dtype=np.uint8)

    @classmethod
    def from_period(
        cls, n_main: int, period: Sequence[PauliString], angles: Sequence[Angle], trotter_steps: int
    ) -> Self:
        """
        :param n_main: Number of main qubits
        :param period: The L generators of one period
        :param angles: One angle per period generator, reused in every step
        :param trotter_steps: K
        :return: The K-fold repeated sequence
        """
        if trotter_steps < 1:
            raise ValueError(f"Trotter steps must be positive, got {trotter_steps}")
        return cls(
            n_main=n_main,
            generators=tuple(period) * trotter_steps,
            angles=tuple(angles) * trotter_steps,
            period_length=len(period),
        )

    def with_steps(self, trotter_steps: int) -> "RotationSequence":
        return RotationSequence.from_period(
            self.n_main, self.period, self.angles[: self.period_length], trotter_steps
        )

    def with_generators(self, generators: Sequence[PauliString]) -> "RotationSequence":
        return RotationSequence(
            n_main=self.n_main, generators=tuple(generators), angles=self.angles, period_length=self.period_length
        )

    def bind_angles(self, values: Mapping[str, float] | Sequence[float] | np.ndarray) -> np.ndarray:
        """
        :param values: Either symbol -> radians, or one number per rotation
        :return: M numeric angles
        """
        if isinstance(values, Mapping):
            return np.array([a.bind(values) for a in self.angles], dtype=float)
        numeric = np.asarray(values, dtype=float)
        if numeric.shape != (self.m,):
            raise ValueError(f"Expected {self.m} angles, got shape {numeric.shape}")
        return numeric

    def to_simple_dict(self) -> SimpleDict:
        return {
            "n_main": self.n_main,
            "period_length": self.period_length,
            "generators": [p.to_string() for p in self.generators],
            "angles": [a.to_simple() for a in self.angles],
        }

    @classmethod
    def from_simple_dict(cls, simple_dict: SimpleDict) -> Self:
        return cls(
            n_main=simple_dict["n_main"],
            generators=tuple(PauliString.from_string(s) for s in simple_dict["generators"]),
            angles=tuple(Angle.from_simple(a) for a in simple_dict["angles"]),
            period_length=simple_dict["period_length"],
        )
