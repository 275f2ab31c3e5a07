from unittest import TestCase

from src.engine.catalog import ProblemCatalog
from src.engine.compiler import Compiler
from src.engine.verifier import DenseSimulator
from src.models.anneal import TRACE_COLUMNS
from src.models.problem import CompileSettings, Method


class TestCompiler(TestCase):
    def test_lc_and_ac(self) -> None:
        problem = ProblemCatalog.by_name("xy_n7_k3")
        for method in (Method.LC, Method.AC):
            with self.subTest(method.value):
                result = Compiler.compile(problem, CompileSettings(method=method))
                self.assertEqual(result.method, method)
                self.assertEqual(result.resource.is_ac, method is Method.AC)
                self.assertEqual(result.resource.n, 7 + 36)
                self.assertEqual(result.pattern.m, 36)
                DenseSimulator.check_preparation(result.resource, result.resource_tableau)

    def test_defaults_and_step_override(self) -> None:
        problem = ProblemCatalog.by_name("two_local_n5")
        result = Compiler.compile(problem)
        self.assertEqual(result.method, problem.method)
        self.assertEqual(result.resource.trotter_steps, problem.trotter_steps)
        shorter = Compiler.compile(problem, CompileSettings(method=Method.AC, trotter_steps=1))
        self.assertEqual(shorter.resource.trotter_steps, 1)
        self.assertEqual(shorter.sequence.m, problem.period_length)

    def test_anneal(self) -> None:
        problem = ProblemCatalog.xy_model(3, 2)
        problem = problem.with_settings(anneal=problem.anneal.with_overrides(cooling_rate=0.99, runs=2, rng_seed=5))
        result = Compiler.compile(problem, CompileSettings(method=Method.LC, anneal=True))
        self.assertEqual(len(result.traces), 2)
        self.assertEqual(list(result.traces_frame.columns), ["run"] + TRACE_COLUMNS)
        self.assertEqual(sorted(result.traces_frame["run"].unique().tolist()), [0, 1])
        DenseSimulator.check_preparation(result.resource, result.resource_tableau)

    def test_distance_matrix(self) -> None:
        problem = ProblemCatalog.by_name("xy_n7_k3")
        d = Compiler.distance_matrix(problem, 3)
        self.assertEqual(d.n, 43)
        self.assertEqual(d.group_sizes, (6,) * 6 + (7,))
