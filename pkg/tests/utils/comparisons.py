import numpy as np

from src.models.dense import DenseState
from src.models.tableau import StabilizerTableau


class TableauComparator:
    @classmethod
    def first_difference(cls, t1: StabilizerTableau, t2: StabilizerTableau) -> str | None:
        if t1.n != t2.n:
            return f"widths {t1.n} and {t2.n}"
        c1, c2 = t1.canonical_form(), t2.canonical_form()
        for k, (p, q) in enumerate(zip(c1.rows, c2.rows)):
            if p != q:
                return f"canonical row {k}: {p.to_string()} != {q.to_string()}"
        return None


def assert_same_group(t1: StabilizerTableau, t2: StabilizerTableau) -> None:
    difference = TableauComparator.first_difference(t1, t2)
    assert difference is None, f"Tableaus generate different groups, {difference}"


def assert_states_equal_up_to_phase(
    a: DenseState | np.ndarray, b: DenseState | np.ndarray, tolerance: float = 1e-10
) -> None:
    a = a if isinstance(a, DenseState) else DenseState.from_unnormalised(a)
    b = b if isinstance(b, DenseState) else DenseState.from_unnormalised(b)
    assert a.n == b.n, f"States on {a.n} and {b.n} qubits"
    fidelity = a.fidelity(b)
    assert fidelity > 1 - tolerance, f"States differ, fidelity {fidelity:.12f}"
