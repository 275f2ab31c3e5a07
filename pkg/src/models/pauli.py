from dataclasses import dataclass
from typing import Iterable

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
import numpy.typing as npt

from src.tools.typing import BitVector, as_bits

# (x, z) -> letter. (1, 1) is a literal Y, so a string reads i^r * (tensor of letters).
_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _LETTERS.items()}
_PHASE_PREFIX = {0: "", 1: "i", 2: "-", 3: "-i"}


def phase_g(x1: npt.ArrayLike, z1: npt.ArrayLike, x2: npt.ArrayLike, z2: npt.ArrayLike) -> npt.NDArray[np.int64]:
    """
    Exponent of i picked up when multiplying single-qubit Paulis sigma(x1, z1) * sigma(x2, z2).
    Works elementwise on arrays.
    :return: Values in {-1, 0, 1}
    """
    x1, z1, x2, z2 = (np.asarray(a, dtype=np.int64) for a in (x1, z1, x2, z2))
    return np.where(
        (x1 == 1) & (z1 == 1),
        z2 - x2,
        np.where(x1 == 1, z2 * (2 * x2 - 1), np.where(z1 == 1, x2 * (1 - 2 * z2), 0)),
    )


@dataclass(frozen=True, eq=False)
class PauliString:
    """
    A Pauli string i^r * sigma(x_0, z_0) x ... x sigma(x_{n-1}, z_{n-1}) in symplectic form.
    Qubit 0 is the leftmost character of the text form.
    """

    x: BitVector
    z: BitVector
    r: int = 0

    def __post_init__(self) -> None:
        x = as_bits(self.x)
        z = as_bits(self.z)
        if x.ndim != 1 or x.shape != z.shape:
            raise ValueError(f"x and z must be 1D bit vectors of equal length, got {x.shape} and {z.shape}")
        if x.shape[0] == 0:
            raise ValueError("A Pauli string acts on at least one qubit")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "r", int(self.r) % 4)

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.x | self.z))

    @property
    def support(self) -> list[int]:
        return np.flatnonzero(self.x | self.z).tolist()

    @property
    def is_identity(self) -> bool:
        return self.weight == 0

    @property
    def is_hermitian(self) -> bool:
        return self.r % 2 == 0

    @property
    def sign_bit(self) -> int:
        assert self.is_hermitian, f"{self} has an imaginary phase"
        return self.r // 2

    # CONSTRUCTORS
    @classmethod
    def identity(cls, n: int) -> Self:
        return cls(x=np.zeros(n, dtype=np.uint8), z=np.zeros(n, dtype=np.uint8))

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> Self:
        if not 0 <= qubit < n:
            raise ValueError(f"Qubit {qubit} out of range for {n} qubits")
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        x[qubit], z[qubit] = _BITS[letter]
        return cls(x=x, z=z)

    @classmethod
    def from_letters(cls, n: int, letters: dict[int, str], r: int = 0) -> Self:
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        for q, letter in letters.items():
            x[q], z[q] = _BITS[letter]
        return cls(x=x, z=z, r=r)

    # TEXT FORM
    def to_string(self) -> str:
        return _PHASE_PREFIX[self.r] + "".join(_LETTERS[(int(a), int(b))] for a, b in zip(self.x, self.z))

    @classmethod
    def from_string(cls, s: str) -> Self:
        body = s.strip()
        r = 0
        if body.startswith("+"):
            body = body[1:]
        elif body.startswith("-"):
            r = 2
            body = body[1:]
        if body.startswith("i"):
            r += 1
            body = body[1:]
        if len(body) == 0 or any(c not in _BITS for c in body):
            raise ValueError(f"Invalid Pauli string: {s!r}")
        bits = np.array([_BITS[c] for c in body], dtype=np.uint8)
        return cls(x=bits[:, 0], z=bits[:, 1], r=r)

    def letter(self, qubit: int) -> str:
        return _LETTERS[(int(self.x[qubit]), int(self.z[qubit]))]

    def __str__(self) -> str:
        return f"<{self.__class__.__name__} {self.to_string()}>"

    def __repr__(self) -> str:
        return str(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliString):
            return NotImplemented
        return self.r == other.r and np.array_equal(self.x, other.x) and np.array_equal(self.z, other.z)

    def __hash__(self) -> int:
        return hash((self.r, self.x.tobytes(), self.z.tobytes()))

    # ALGEBRA
    def multiply(self, other: "PauliString") -> "PauliString":
        """
        Operator product self * other with the phase tracked exactly.
        """
        self._check_width(other)
        g = phase_g(self.x, self.z, other.x, other.z)
        return PauliString(x=self.x ^ other.x, z=self.z ^ other.z, r=self.r + other.r + int(g.sum()))

    def __mul__(self, other: "PauliString") -> "PauliString":
        return self.multiply(other)

    def anticommutes(self, other: "PauliString") -> int:
        self._check_width(other)
        return int((np.dot(self.x, other.z) + np.dot(self.z, other.x)) % 2)

    def commutes(self, other: "PauliString") -> bool:
        return self.anticommutes(other) == 0

    def with_phase(self, r: int) -> "PauliString":
        return PauliString(x=self.x, z=self.z, r=r)

    def negate(self) -> "PauliString":
        return self.with_phase(self.r + 2)

    def unsigned(self) -> "PauliString":
        return self.with_phase(0)

    def tensor(self, other: "PauliString") -> "PauliString":
        return PauliString(
            x=np.concatenate([self.x, other.x]), z=np.concatenate([self.z, other.z]), r=self.r + other.r
        )

    def restrict(self, qubits: Iterable[int]) -> "PauliString":
        # Keeps the phase; the caller decides what dropped factors mean
        index = list(qubits)
        return PauliString(x=self.x[index], z=self.z[index], r=self.r)

    def embed(self, n: int, qubits: Iterable[int]) -> "PauliString":
        index = list(qubits)
        assert len(index) == self.n
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        x[index] = self.x
        z[index] = self.z
        return PauliString(x=x, z=z, r=self.r)

    def replace_qubit(self, qubit: int, x: int, z: int, extra_phase: int = 0) -> "PauliString":
        new_x = self.x.copy()
        new_z = self.z.copy()
        new_x[qubit] = x
        new_z[qubit] = z
        return PauliString(x=new_x, z=new_z, r=self.r + extra_phase)

    def conjugate_cnot(self, control: int, target: int) -> "PauliString":
        """
        Returns CNOT * self * CNOT^dagger with the sign tracked exactly.
        :param control: Control qubit
        :param target: Target qubit
        :return: The conjugated string
        """
        for qubit in (control, target):
            if not 0 <= qubit < self.n:
                raise ValueError(f"Qubit {qubit} out of range for {self.n} qubits")
        if control == target:
            raise ValueError("Control and target of a CNOT must differ")
        xc, zc, xt, zt = (int(v) for v in (self.x[control], self.z[control], self.x[target], self.z[target]))
        flip = xc * zt * (xt ^ zc ^ 1)
        new_x = self.x.copy()
        new_z = self.z.copy()
        new_z[control] = zc ^ zt
        new_x[target] = xt ^ xc
        return PauliString(x=new_x, z=new_z, r=self.r + 2 * flip)

    def to_matrix(self) -> npt.NDArray[np.complex128]:
        # Dense 2^n x 2^n matrix, qubit 0 is the most significant factor
        letters = {
            "I": np.eye(2),
            "X": np.array([[0, 1], [1, 0]]),
            "Y": np.array([[0, -1j], [1j, 0]]),
            "Z": np.diag([1, -1]),
        }
        out = np.array([[1j**self.r]], dtype=np.complex128)
        for q in range(self.n):
            out = np.kron(out, letters[self.letter(q)])
        return out

    def _check_width(self, other: "PauliString") -> None:
        if self.n != other.n:
            raise ValueError(f"Pauli strings have different widths: {self.n} != {other.n}")


def multiply_all(paulis: Iterable[PauliString], n: int) -> PauliString:
    out = PauliString.identity(n)
    for p in paulis:
        out = out * p
    return out
