from abc import ABC, abstractmethod

from src.models.problem import ProblemSpec


class BaseProblemRepo(ABC):
    @abstractmethod
    def add_problem(self, problem: ProblemSpec) -> None:
        pass

    @abstractmethod
    def update_problem(self, problem: ProblemSpec) -> None:
        pass

    @abstractmethod
    def get_problem(self, name: str) -> ProblemSpec:
        pass

    @abstractmethod
    def list_problem_names(self) -> list[str]:
        pass

    @abstractmethod
    def delete_problem(self, name: str, missing_ok: bool = True) -> None:
        pass
