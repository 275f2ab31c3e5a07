import json
from pathlib import Path

from src.app.problem_repo.base import BaseProblemRepo
from src.directories import problem_cache_dir
from src.models.errors import ProblemValidationError
from src.models.problem import ProblemSpec
from src.tools.serialization import serialize, deserialize


def load_problem(path: Path) -> ProblemSpec:
    """
    Reads and validates a single problem document.
    :raises ProblemValidationError: On malformed JSON or an invalid problem
    """
    with open(path, "r") as file:
        data = file.read()
    try:
        return deserialize(x=data, cls=ProblemSpec)
    except json.JSONDecodeError as e:
        raise ProblemValidationError(f"{path.name} is not valid JSON: {e.msg} (line {e.lineno})") from e


class FileProblemRepo(BaseProblemRepo):
    def __init__(self, cache_dir: Path = problem_cache_dir) -> None:
        self.cache_dir = cache_dir

    def add_problem(self, problem: ProblemSpec) -> None:
        path = self.name_to_file_path(problem.name)
        if path.exists():
            raise FileExistsError(f"Problem {problem.name!r} already exists.")
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as file:
            file.write(serialize(problem))

    def update_problem(self, problem: ProblemSpec) -> None:
        path = self.name_to_file_path(problem.name)
        if not path.exists():
            raise FileNotFoundError(f"Problem {problem.name!r} does not exist.")
        with open(path, "w") as file:
            file.write(serialize(problem))

    def get_problem(self, name: str) -> ProblemSpec:
        path = self.name_to_file_path(name)
        if not path.exists():
            raise FileNotFoundError(f"Problem {name!r} does not exist.")
        return load_problem(path)

    def list_problem_names(self) -> list[str]:
        problem_files = self.cache_dir.glob("problem_*.json")
        return sorted(self.file_path_to_name(file_path) for file_path in problem_files if file_path.is_file())

    def delete_problem(self, name: str, missing_ok: bool = True) -> None:
        path = self.name_to_file_path(name)
        path.unlink(missing_ok=missing_ok)

    def name_to_file_path(self, name: str) -> Path:
        """Get the file path for a problem name."""
        return self.cache_dir / f"problem_{name}.json"

    @staticmethod
    def file_path_to_name(file_path: Path) -> str:
        """Extract the problem name from a file path."""
        if not file_path.name.startswith("problem_") or not file_path.name.endswith(".json"):
            raise ValueError(f"Invalid problem file name: {file_path.name}")
        return file_path.name[len("problem_") : -len(".json")]
