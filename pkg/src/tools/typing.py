from typing import TypeVar

import numpy as np
import numpy.typing as npt

T = TypeVar("T")

# Bits are stored one per uint8 entry; every GF(2) routine reduces mod 2 on entry.
BitVector = npt.NDArray[np.uint8]
BitMatrix = npt.NDArray[np.uint8]
IntMatrix = npt.NDArray[np.int64]


class WrappedInt(int):
    def as_int(self) -> int:
        return int(self)


def as_bits(x: npt.ArrayLike, shape: tuple[int, ...] | None = None) -> BitVector:
    """
    Copy anything array-like into a read-only uint8 bit array.
    :param x: Values, reduced mod 2
    :param shape: Optional shape the result must have
    :return: A frozen bit array
    """
    bits = np.array(x, dtype=np.int64) % 2
    bits = bits.astype(np.uint8)
    if shape is not None and bits.shape != shape:
        raise ValueError(f"Expected bit array of shape {shape}, got {bits.shape}")
    bits.setflags(write=False)
    return bits
