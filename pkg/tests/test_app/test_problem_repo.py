import tempfile
from pathlib import Path
from unittest import TestCase

from src.app.problem_repo.file_problem_repo import FileProblemRepo, load_problem
from src.engine.catalog import ProblemCatalog
from src.models.errors import ProblemValidationError


class TestFileProblemRepo(TestCase):
    def setUp(self) -> None:
        self._tmp = tempfile.TemporaryDirectory()
        self.cache_dir = Path(self._tmp.name)
        self.repo = FileProblemRepo(cache_dir=self.cache_dir)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def test_add_get_update_delete(self) -> None:
        problem = ProblemCatalog.by_name("cqca_n3")
        self.repo.add_problem(problem)
        self.assertEqual(self.repo.list_problem_names(), ["cqca_n3"])
        self.assertEqual(self.repo.get_problem("cqca_n3"), problem)
        with self.assertRaises(FileExistsError):
            self.repo.add_problem(problem)

        changed = problem.with_settings(trotter_steps=2)
        self.repo.update_problem(changed)
        self.assertEqual(self.repo.get_problem("cqca_n3").trotter_steps, 2)

        self.repo.delete_problem("cqca_n3")
        self.assertEqual(self.repo.list_problem_names(), [])
        with self.assertRaises(FileNotFoundError):
            self.repo.get_problem("cqca_n3")
        with self.assertRaises(FileNotFoundError):
            self.repo.delete_problem("cqca_n3", missing_ok=False)

    def test_file_names(self) -> None:
        path = self.repo.name_to_file_path("xy")
        self.assertEqual(path.name, "problem_xy.json")
        self.assertEqual(FileProblemRepo.file_path_to_name(path), "xy")
        with self.assertRaises(ValueError):
            FileProblemRepo.file_path_to_name(self.cache_dir / "xy.json")

    def test_load_invalid_json(self) -> None:
        path = self.cache_dir / "broken.json"
        path.write_text("{not json")
        with self.assertRaises(ProblemValidationError):
            load_problem(path)
