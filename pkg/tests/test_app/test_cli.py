import contextlib
import io
import json
import tempfile
from pathlib import Path
from unittest import TestCase, mock

from src.app.cli import EXIT_NO_FEASIBLE, EXIT_OK, EXIT_VALIDATION, EXIT_VERIFICATION, main
from src.app.exporters import load_artifacts
from src.engine.catalog import ProblemCatalog
from src.models.errors import ExtrapolationError, NoFeasibleSolutionError, VerificationError


class TestCli(TestCase):
    def setUp(self) -> None:
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def run_cli(self, *argv: str) -> tuple[int, str]:
        out = io.StringIO()
        with contextlib.redirect_stdout(out):
            code = main(list(argv))
        return code, out.getvalue()

    def test_examples(self) -> None:
        code, out = self.run_cli("examples", "--save-dir", str(self.tmp))
        self.assertEqual(code, EXIT_OK)
        self.assertIn("xy_n7_k3\tN=7\tL=12\tK=3", out.splitlines())
        self.assertTrue((self.tmp / "problem_cqca_n3.json").is_file())
        # Saving again updates the stored files
        self.assertEqual(self.run_cli("examples", "--save-dir", str(self.tmp))[0], EXIT_OK)

    def test_compile(self) -> None:
        out_path, dot_path = self.tmp / "out.json", self.tmp / "out.dot"
        code, _ = self.run_cli(
            "compile", "cqca_n3", "--steps", "1", "--method", "ac", "--out", str(out_path), "--dot", str(dot_path)
        )
        self.assertEqual(code, EXIT_OK)
        resource, pattern = load_artifacts(out_path.read_text())
        self.assertEqual((resource.n_main, pattern.m), (3, 7))
        self.assertTrue(resource.is_ac)
        self.assertTrue(dot_path.read_text().startswith("graph resource {"))

    def test_compile_from_file(self) -> None:
        path = self.tmp / "problem.json"
        path.write_text(json.dumps(ProblemCatalog.cqca(trotter_steps=1).to_simple_dict()))
        code, out = self.run_cli("compile", str(path))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["resource"]["trotter_steps"], 1)

    def test_anneal(self) -> None:
        out_path = self.tmp / "trace.csv"
        code, _ = self.run_cli(
            "anneal", "cqca_n3", "--steps", "1", "--cooling-rate", "0.99", "--seed", "2", "--out", str(out_path)
        )
        self.assertEqual(code, EXIT_OK)
        lines = out_path.read_text().splitlines()
        self.assertEqual(lines[0], "run,iteration,W,Pi,f")
        self.assertTrue(lines[1].startswith("0,0,"))

    def test_verify_and_report(self) -> None:
        code, out = self.run_cli("verify", "cqca_n3", "--steps", "1", "--seed", "3")
        self.assertEqual(code, EXIT_OK)
        summary = json.loads(out)
        self.assertEqual(summary["preparation"], "ok")
        self.assertGreater(summary["worst_fidelity"], 1 - 1e-9)

        code, out = self.run_cli("report", "cqca_n3", "--steps", "1", "--method", "ac")
        self.assertEqual(code, EXIT_OK)
        report = json.loads(out)
        self.assertEqual(report["problem"], "cqca_n3")
        self.assertEqual(report["active_bound"], 3 + 7 + 1)

    def test_invalid_problems(self) -> None:
        self.assertEqual(self.run_cli("compile", "no_such_problem")[0], EXIT_VALIDATION)
        broken = self.tmp / "broken.json"
        broken.write_text("{not json")
        self.assertEqual(self.run_cli("compile", str(broken))[0], EXIT_VALIDATION)
        invalid = self.tmp / "invalid.json"
        invalid.write_text(json.dumps({**ProblemCatalog.cqca().to_simple_dict(), "num_qubits": 0}))
        self.assertEqual(self.run_cli("compile", str(invalid))[0], EXIT_VALIDATION)
        self.assertEqual(self.run_cli("compile", str(self.tmp / "missing.json"))[0], EXIT_VALIDATION)

    def test_verification_failure(self) -> None:
        with mock.patch(
            "src.app.cli.DenseSimulator.check_preparation", side_effect=VerificationError("row 0 differs")
        ):
            self.assertEqual(self.run_cli("verify", "cqca_n3", "--steps", "1")[0], EXIT_VERIFICATION)

    def test_no_feasible_resource(self) -> None:
        for error in (NoFeasibleSolutionError("no periodic graph"), ExtrapolationError("blocks differ")):
            with self.subTest(type(error).__name__):
                with mock.patch("src.app.cli.Compiler.compile", side_effect=error):
                    self.assertEqual(self.run_cli("anneal", "cqca_n3")[0], EXIT_NO_FEASIBLE)
