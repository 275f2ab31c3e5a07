from dataclasses import dataclass

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
import numpy.typing as npt

from src.models.graph import MeasurementOrder
from src.models.pauli import PauliString
from src.models.rotation import Angle
from src.tools.serialization import SimpleDict, bits_to_rows, rows_to_bits
from src.tools.typing import BitMatrix, BitVector, as_bits

# Auxiliaries are measured by a rotation about X followed by a Z-basis readout
MEASUREMENT_PLANE = "YZ"


@dataclass(frozen=True, eq=False)
class MeasurementPattern:
    """
    Measurement angles, their adaptivity and the final Pauli correction for M auxiliaries.
    Auxiliary m is measured at angle (-1)^h_m * theta_m with h_m = sum_l adaptivity[m, l] * s_l mod 2,
    and the main register is corrected by prod_m correction[m]^s_m.
    """

    base_angles: tuple[Angle, ...]
    adaptivity: BitMatrix
    order: MeasurementOrder
    correction: tuple[PauliString, ...]

    def __post_init__(self) -> None:
        adaptivity = as_bits(self.adaptivity)
        m = len(self.base_angles)
        if adaptivity.shape != (m, m):
            raise ValueError(f"Adaptivity must be {m} x {m}, got {adaptivity.shape}")
        if np.any(np.triu(adaptivity)):
            raise ValueError("Adaptivity must be strictly lower triangular")
        if len(self.correction) != m:
            raise ValueError(f"Expected {m} correction strings, got {len(self.correction)}")
        self.order.check_partition(m)
        object.__setattr__(self, "adaptivity", adaptivity)
        object.__setattr__(self, "base_angles", tuple(self.base_angles))
        object.__setattr__(self, "correction", tuple(self.correction))

    @property
    def m(self) -> int:
        return len(self.base_angles)

    @property
    def plane(self) -> str:
        return MEASUREMENT_PLANE

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MeasurementPattern):
            return NotImplemented
        return (
            self.base_angles == other.base_angles
            and np.array_equal(self.adaptivity, other.adaptivity)
            and self.order == other.order
            and self.correction == other.correction
        )

    def __str__(self) -> str:
        return f"<{self.__class__.__name__} M={self.m} rounds={len(self.order)}>"

    def to_simple_dict(self) -> SimpleDict:
        return {
            "plane": self.plane,
            "base_angles": [a.to_simple() for a in self.base_angles],
            "adaptivity": bits_to_rows(self.adaptivity),
            "rounds": self.order.to_simple_dict(),
            "correction": [p.to_string() for p in self.correction],
        }

    @classmethod
    def from_simple_dict(cls, simple_dict: SimpleDict) -> Self:
        angles = tuple(Angle.from_simple(a) for a in simple_dict["base_angles"])
        return cls(
            base_angles=angles,
            adaptivity=rows_to_bits(simple_dict["adaptivity"], len(angles)),
            order=MeasurementOrder.from_simple_dict(simple_dict["rounds"]),
            correction=tuple(PauliString.from_string(s) for s in simple_dict["correction"]),
        )


@dataclass(frozen=True, eq=False)
class OutcomeModel:
    """
    Joint law of the main-qubit outcomes t, drawn in qubit order.
    A free bit is a fair coin; any other bit equals constants[j] + sum_i parity[j, i] * t_i (mod 2) over i < j.
    """

    free: tuple[bool, ...]
    constants: BitVector
    parity: BitMatrix

    def __post_init__(self) -> None:
        n = len(self.free)
        constants = as_bits(self.constants, shape=(n,))
        parity = as_bits(self.parity, shape=(n, n))
        if np.any(np.triu(parity)):
            raise ValueError("Outcome parities may only depend on earlier outcomes")
        object.__setattr__(self, "free", tuple(bool(f) for f in self.free))
        object.__setattr__(self, "constants", constants)
        object.__setattr__(self, "parity", parity)

    @property
    def n(self) -> int:
        return len(self.free)

    @property
    def n_free(self) -> int:
        return sum(self.free)

    def is_consistent(self, bits: npt.ArrayLike) -> bool:
        t = as_bits(bits, shape=(self.n,))
        forced = (self.constants + self.parity.astype(np.int64) @ t) % 2
        return all(f or forced[j] == t[j] for j, f in enumerate(self.free))

    def to_simple_dict(self) -> SimpleDict:
        return {"free": list(self.free), "constants": self.constants.tolist(), "parity": bits_to_rows(self.parity)}


@dataclass(frozen=True, eq=False)
class ByproductMap:
    """
    Pauli frame on the auxiliaries after the main qubits are measured: constant * prod_j linear[j]^t_j.
    Phases are dropped, the frame only matters up to a global phase.
    """

    constant: PauliString
    linear: tuple[PauliString, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "constant", self.constant.unsigned())
        object.__setattr__(self, "linear", tuple(p.unsigned() for p in self.linear))
        if any(p.n != self.constant.n for p in self.linear):
            raise ValueError("Byproduct strings must share one width")

    def frame(self, bits: npt.ArrayLike) -> PauliString:
        t = as_bits(bits, shape=(len(self.linear),))
        out = self.constant
        for p, b in zip(self.linear, t):
            if b:
                out = out * p
        return out.unsigned()

    @property
    def support(self) -> list[int]:
        touched = set(self.constant.support)
        for p in self.linear:
            touched.update(p.support)
        return sorted(touched)
