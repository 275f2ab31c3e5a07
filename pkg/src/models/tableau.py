from dataclasses import dataclass
from typing import Iterable

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np

from src.models.clifford import SingleQubitClifford
from src.models.errors import TableauError
from src.models.pauli import PauliString
from src.tools import gf2
from src.tools.serialization import SimpleDict
from src.tools.typing import BitMatrix


@dataclass(frozen=True)
class StabilizerTableau:
    """
    An ordered list of Pauli generators on n qubits.
    A valid tableau has n independent, pairwise commuting, Hermitian rows and describes one stabilizer state.
    """

    rows: tuple[PauliString, ...]

    def __post_init__(self) -> None:
        rows = tuple(self.rows)
        if len(rows) == 0:
            raise TableauError("A tableau needs at least one row")
        widths = {p.n for p in rows}
        if len(widths) != 1:
            raise TableauError(f"Rows have different widths: {sorted(widths)}")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return self.rows[0].n

    @property
    def x_matrix(self) -> BitMatrix:
        return np.array([p.x for p in self.rows], dtype=np.uint8)

    @property
    def z_matrix(self) -> BitMatrix:
        return np.array([p.z for p in self.rows], dtype=np.uint8)

    @property
    def symplectic(self) -> BitMatrix:
        return np.concatenate([self.x_matrix, self.z_matrix], axis=1)

    def __len__(self) -> int:
        return len(self.rows)

    def __str__(self) -> str:
        return f"<{self.__class__.__name__} n={self.n} [{', '.join(p.to_string() for p in self.rows)}]>"

    # CONSTRUCTORS
    @classmethod
    def from_strings(cls, rows: Iterable[str]) -> Self:
        return cls(rows=tuple(PauliString.from_string(s) for s in rows))

    @classmethod
    def computational_zero(cls, n: int) -> Self:
        return cls(rows=tuple(PauliString.single(n, q, "Z") for q in range(n)))

    @classmethod
    def plus(cls, n: int) -> Self:
        return cls(rows=tuple(PauliString.single(n, q, "X") for q in range(n)))

    # VALIDATION
    def validate_state(self) -> None:
        """
        Raises a TableauError unless the rows define a unique stabilizer state.
        """
        if len(self.rows) != self.n:
            raise TableauError(f"Expected {self.n} rows for {self.n} qubits, got {len(self.rows)}")
        for k, p in enumerate(self.rows):
            if not p.is_hermitian:
                raise TableauError(f"Row {k} ({p.to_string()}) is not Hermitian")
        for i in range(len(self.rows)):
            for j in range(i + 1, len(self.rows)):
                if self.rows[i].anticommutes(self.rows[j]):
                    raise TableauError(f"Rows {i} and {j} anticommute")
        if gf2.rank(self.symplectic) != len(self.rows):
            raise TableauError("Rows are not independent")

    # TRANSFORMATIONS
    def conjugate_cnot(self, control: int, target: int) -> "StabilizerTableau":
        return StabilizerTableau(rows=tuple(p.conjugate_cnot(control, target) for p in self.rows))

    def conjugate_single_clifford(self, qubit: int, c: SingleQubitClifford) -> "StabilizerTableau":
        return StabilizerTableau(rows=tuple(c.conjugate(p, qubit) for p in self.rows))

    def canonical_form(self) -> "StabilizerTableau":
        """
        Reduced row echelon form of the generators over [X | Z] with phases tracked through every row product.
        Two tableaus generate the same signed group exactly when their canonical forms are equal.
        :return: The canonical tableau
        """
        rows = list(self.rows)
        n = self.n
        pivot_row = 0
        for col in range(2 * n):
            if pivot_row == len(rows):
                break

            def bit(p: PauliString) -> int:
                return int(p.x[col]) if col < n else int(p.z[col - n])

            found = next((k for k in range(pivot_row, len(rows)) if bit(rows[k])), None)
            if found is None:
                continue
            rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
            for k in range(len(rows)):
                if k != pivot_row and bit(rows[k]):
                    rows[k] = rows[k] * rows[pivot_row]
            pivot_row += 1
        if pivot_row != len(rows):
            raise TableauError("Rows are not independent")
        return StabilizerTableau(rows=tuple(rows))

    def same_group(self, other: "StabilizerTableau") -> bool:
        return self.n == other.n and self.canonical_form() == other.canonical_form()

    def entanglement(self, part: Iterable[int]) -> int:
        """
        Entanglement entropy (in bits) of the stabilizer state across part | rest.
        :param part: Qubits on one side of the cut
        :return: rank of the generators restricted to the part, minus its size
        """
        index = sorted(set(part))
        if len(index) == 0 or len(index) == self.n:
            return 0
        restricted = np.concatenate([self.x_matrix[:, index], self.z_matrix[:, index]], axis=1)
        return gf2.rank(restricted) - len(index)

    # SERIALIZATION
    def to_simple_dict(self) -> SimpleDict:
        return {"n": self.n, "rows": [p.to_string() for p in self.rows]}

    @classmethod
    def from_simple_dict(cls, simple_dict: SimpleDict) -> Self:
        tableau = cls.from_strings(simple_dict["rows"])
        if tableau.n != simple_dict["n"]:
            raise TableauError(f"Declared width {simple_dict['n']} does not match rows of width {tableau.n}")
        return tableau
