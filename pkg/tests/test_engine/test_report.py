from unittest import TestCase

from src.engine.catalog import ProblemCatalog
from src.engine.compiler import Compiler
from src.engine.report import ResourceReporter
from src.models.problem import CompileSettings, Method
from tests.utils.misc import slow_test


class TestResourceReporter(TestCase):
    def test_ac_report(self) -> None:
        problem = ProblemCatalog.by_name("xy_n7_k3")
        report = ResourceReporter.report(Compiler.compile(problem, CompileSettings(method=Method.AC)))
        self.assertEqual(report.method, "ac")
        self.assertEqual((report.n_main, report.n_aux), (7, 36))
        self.assertEqual(report.ladder_cnots, 24)
        self.assertEqual(report.max_active, 25)
        self.assertEqual(report.active_bound, 20)
        self.assertEqual(report.linear_layout_qubits, 31)
        self.assertEqual(report.depth_bound, 2 * 7 + 2 * (4 * 12 + 3))
        self.assertIsNone(report.weight)
        self.assertEqual(len(report.active_profile), 7)
        self.assertEqual(len(report.storage_profile), 6)

    def test_lc_report(self) -> None:
        problem = ProblemCatalog.by_name("xy_n7_k3")
        result = Compiler.compile(problem, CompileSettings(method=Method.LC))
        report = ResourceReporter.report(result, Compiler.distance_matrix(problem, 3))
        self.assertEqual(report.aperiodicity, 0)
        self.assertGreater(report.weight, 0)
        self.assertIsNone(report.depth_bound)
        self.assertEqual(report.entangling_cost_total, report.n_edges)
        frame = report.rounds_frame()
        self.assertEqual(list(frame.columns), ["round", "active", "storage"])
        self.assertEqual(len(frame), len(report.active_profile))

    def test_toric_storage(self) -> None:
        problem = ProblemCatalog.by_name("toric_perturbed")
        report = ResourceReporter.report(Compiler.compile(problem, CompileSettings(method=Method.LC)))
        # The star terms stabilize the code state, so nothing is stored after the first round
        self.assertEqual(report.storage_profile[0], 0)
        self.assertEqual(report.intermediate_storage, 3)

    @slow_test
    def test_annealed_xy_chain(self) -> None:
        problem = ProblemCatalog.by_name("xy_n7_k3")
        problem = problem.with_settings(
            anneal=problem.anneal.with_overrides(runs=20, rng_seed=1, cooling_rate=0.99995)
        )
        result = Compiler.compile(problem, CompileSettings(method=Method.LC, anneal=True))
        self.assertEqual(len(result.traces), 20)
        # Hot moves leave the periodic family; the run settles back on a periodic graph
        self.assertTrue(
            any((t.steps["Pi"][t.steps["iteration"] < t.n_iterations / 10] > 0).any() for t in result.traces)
        )
        self.assertTrue(any(t.feasible for t in result.traces))
        report = ResourceReporter.report(result, Compiler.distance_matrix(problem, 3))
        self.assertEqual(report.aperiodicity, 0)
        self.assertLessEqual(report.max_active, 13)
