from typing import Optional


class ProblemValidationError(ValueError):
    """Raised when a problem document or a compiler input is malformed."""

    def __init__(self, message: str, field: Optional[str] = None, index: Optional[int] = None) -> None:
        location = ""
        if field is not None:
            location = f" [{field}]" if index is None else f" [{field}[{index}]]"
        super().__init__(f"{message}{location}")
        self.field = field
        self.index = index


class TableauError(ValueError):
    """Raised for stabilizer tableaus that are not full-rank sets of commuting Hermitian Paulis."""


class VerificationError(Exception):
    """Raised when an oracle check fails."""


class NoFeasibleSolutionError(Exception):
    """Raised when no annealing run reached a periodic (feasible) graph."""


class ExtrapolationError(ValueError):
    """Raised when an annealed resource lacks the translation invariance needed to extend it."""
