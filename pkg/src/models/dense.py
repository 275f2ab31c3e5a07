from dataclasses import dataclass
from typing import Optional

import numpy as np
import numpy.typing as npt

MAX_DENSE_QUBITS = 14


@dataclass(frozen=True, eq=False)
class DenseState:
    """A normalised state vector; qubit 0 is the most significant bit of the basis index."""

    amplitudes: npt.NDArray[np.complex128]

    def __post_init__(self) -> None:
        amplitudes = np.array(self.amplitudes, dtype=np.complex128)
        n = int(np.log2(len(amplitudes))) if len(amplitudes) else -1
        if amplitudes.ndim != 1 or n < 0 or 2**n != len(amplitudes):
            raise ValueError(f"Amplitude vector length {len(amplitudes)} is not a power of two")
        if n > MAX_DENSE_QUBITS:
            raise ValueError(f"Dense states are limited to {MAX_DENSE_QUBITS} qubits, got {n}")
        norm = np.linalg.norm(amplitudes)
        if abs(norm - 1) > 1e-9:
            raise ValueError(f"State is not normalised (norm {norm})")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def n(self) -> int:
        return int(np.log2(len(self.amplitudes)))

    @classmethod
    def from_unnormalised(cls, amplitudes: npt.ArrayLike) -> "DenseState":
        vec = np.asarray(amplitudes, dtype=np.complex128)
        return cls(amplitudes=vec / np.linalg.norm(vec))

    def fidelity(self, other: "DenseState") -> float:
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)


@dataclass(frozen=True)
class BranchResult:
    """One forced-outcome branch of a pattern; a zero-probability branch carries no state."""

    outcomes: tuple[int, ...]
    probability: float
    state: Optional[DenseState]
