"""
The 24 single-qubit Clifford operators modulo global phase.

Elements are indexed 0..23 in breadth-first order over the generators H and S starting from the identity,
so index 0 is always the identity. Each element is fully described by where it sends X and Z under
conjugation (with signs); the image of Y follows from Y = iXZ.
"""

from collections import deque
from dataclasses import dataclass

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
import numpy.typing as npt

from src.models.pauli import PauliString, phase_g
from src.tools.typing import WrappedInt

# (x, z, sign) with sign in {0, 1}
SignedPauli = tuple[int, int, int]

_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
_S = np.diag([1, 1j]).astype(np.complex128)


@dataclass(frozen=True)
class _TableEntry:
    image_x: SignedPauli
    image_z: SignedPauli
    word: str
    matrix: npt.NDArray[np.complex128]


def _image_of(image_x: SignedPauli, image_z: SignedPauli, x: int, z: int) -> SignedPauli:
    if (x, z) == (0, 0):
        return 0, 0, 0
    if (x, z) == (1, 0):
        return image_x
    if (x, z) == (0, 1):
        return image_z
    # Y = i X Z, so the image is i * img(X) * img(Z)
    ax, az, a_sign = image_x
    bx, bz, b_sign = image_z
    exponent = 1 + int(phase_g(ax, az, bx, bz)) + 2 * (a_sign + b_sign)
    assert exponent % 2 == 0
    return ax ^ bx, az ^ bz, (exponent % 4) // 2


def _apply_generator(letter: str, p: SignedPauli) -> SignedPauli:
    x, z, sign = p
    if letter == "H":
        # X <-> Z, Y -> -Y
        return z, x, sign ^ (x & z)
    # S: X -> Y, Y -> -X, Z -> Z
    return x, z ^ x, sign ^ (x & z)


def _build_table() -> list[_TableEntry]:
    identity = _TableEntry(image_x=(1, 0, 0), image_z=(0, 1, 0), word="", matrix=np.eye(2, dtype=np.complex128))
    table = [identity]
    seen = {(identity.image_x, identity.image_z)}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for letter, gate in (("H", _H), ("S", _S)):
            # New element is gate * current, so images of current are pushed through the gate
            image_x = _apply_generator(letter, current.image_x)
            image_z = _apply_generator(letter, current.image_z)
            if (image_x, image_z) in seen:
                continue
            seen.add((image_x, image_z))
            entry = _TableEntry(
                image_x=image_x, image_z=image_z, word=letter + current.word, matrix=gate @ current.matrix
            )
            table.append(entry)
            queue.append(entry)
    assert len(table) == 24
    return table


_TABLE = _build_table()
_INDEX = {(e.image_x, e.image_z): k for k, e in enumerate(_TABLE)}


def _compose_index(a: int, b: int) -> int:
    # Images of a * b: push b's images through a
    ea = _TABLE[a]
    eb = _TABLE[b]
    image_x = _image_of(ea.image_x, ea.image_z, *eb.image_x[:2])
    image_z = _image_of(ea.image_x, ea.image_z, *eb.image_z[:2])
    image_x = (image_x[0], image_x[1], image_x[2] ^ eb.image_x[2])
    image_z = (image_z[0], image_z[1], image_z[2] ^ eb.image_z[2])
    return _INDEX[(image_x, image_z)]


_PRODUCT = np.array([[_compose_index(a, b) for b in range(24)] for a in range(24)], dtype=np.int64)
_INVERSE = [int(np.flatnonzero(_PRODUCT[a] == 0)[0]) for a in range(24)]


class SingleQubitClifford(WrappedInt):
    def __new__(cls, value: int) -> Self:
        if not 0 <= int(value) < 24:
            raise ValueError(f"Single-qubit Clifford index must be in 0..23, got {value}")
        return super().__new__(cls, value)

    # NAMED ELEMENTS
    @classmethod
    def identity(cls) -> Self:
        return cls(0)

    @classmethod
    def from_images(cls, image_x: SignedPauli, image_z: SignedPauli) -> Self:
        key = (tuple(int(v) for v in image_x), tuple(int(v) for v in image_z))
        if key not in _INDEX:
            raise ValueError(f"Images {image_x}, {image_z} do not define a Clifford operator")
        return cls(_INDEX[key])

    @classmethod
    def hadamard(cls) -> Self:
        return cls.from_images((0, 1, 0), (1, 0, 0))

    @classmethod
    def phase(cls) -> Self:
        return cls.from_images((1, 1, 0), (0, 1, 0))

    @classmethod
    def phase_power(cls, k: int) -> Self:
        out = cls.identity()
        for _ in range(k % 4):
            out = out.compose(cls.phase())
        return out

    @classmethod
    def pauli_z(cls) -> Self:
        return cls.from_images((1, 0, 1), (0, 1, 0))

    @classmethod
    def sqrt_ix(cls) -> Self:
        # exp(i pi X / 4): X -> X, Z -> Y
        return cls.from_images((1, 0, 0), (1, 1, 0))

    @classmethod
    def sqrt_minus_iz(cls) -> Self:
        # exp(-i pi Z / 4) equals S up to a global phase
        return cls.phase()

    @classmethod
    def all(cls) -> list[Self]:
        return [cls(k) for k in range(24)]

    # PROPERTIES
    @property
    def image_x(self) -> SignedPauli:
        return _TABLE[self].image_x

    @property
    def image_z(self) -> SignedPauli:
        return _TABLE[self].image_z

    @property
    def word(self) -> str:
        # Operator product of H and S gates, rightmost applied first
        return _TABLE[self].word

    @property
    def mnemonic(self) -> str:
        return self.word or "I"

    @property
    def matrix(self) -> npt.NDArray[np.complex128]:
        return _TABLE[self].matrix.copy()

    @property
    def is_identity(self) -> bool:
        return int(self) == 0

    def __str__(self) -> str:
        return f"<{self.__class__.__name__} {self.mnemonic}>"

    def __repr__(self) -> str:
        return str(self)

    def to_string(self) -> str:
        return self.mnemonic

    # ALGEBRA
    def compose(self, other: "SingleQubitClifford") -> "SingleQubitClifford":
        """
        Operator product self * other (other acts first).
        """
        return SingleQubitClifford(int(_PRODUCT[self, other]))

    def inverse(self) -> "SingleQubitClifford":
        return SingleQubitClifford(_INVERSE[self])

    def conjugate_bits(self, x: int, z: int) -> SignedPauli:
        """
        :return: C sigma(x, z) C^dagger as (x', z', sign)
        """
        return _image_of(self.image_x, self.image_z, int(x), int(z))

    def conjugate(self, p: PauliString, qubit: int) -> PauliString:
        """
        Conjugates one factor of a Pauli string: returns (C on qubit) p (C on qubit)^dagger.
        """
        if self.is_identity:
            return p
        x, z, sign = self.conjugate_bits(p.x[qubit], p.z[qubit])
        return p.replace_qubit(qubit, x, z, extra_phase=2 * sign)


def conjugate_single_clifford(p: PauliString, qubit: int, c: SingleQubitClifford) -> PauliString:
    return c.conjugate(p, qubit)
