from unittest import TestCase

import numpy as np

from src.engine.catalog import ProblemCatalog
from src.engine.compiler import Compiler
from src.engine.pattern_runtime import HybridPremeasurer, PatternBuilder
from src.engine.resource_compiler import ResourceCompiler
from src.models.clifford import SingleQubitClifford
from src.models.graph import GraphAdjacency, VopLayer
from src.models.pattern import OutcomeModel
from src.models.pauli import PauliString
from src.models.problem import CompileSettings, Method
from src.models.rotation import Angle, RotationSequence
from src.models.tableau import StabilizerTableau


def alternating(trotter_steps: int = 2) -> RotationSequence:
    period = [PauliString.from_string("X"), PauliString.from_string("Z")]
    return RotationSequence.from_period(1, period, [Angle(symbol="a"), Angle(value=0.25)], trotter_steps)


class TestPatternBuilder(TestCase):
    def test_anticommuting_sequence(self) -> None:
        pattern = PatternBuilder.build_pattern(alternating())
        self.assertEqual(pattern.order.rounds, ((0,), (1,), (2,), (3,)))
        expected = np.zeros((4, 4), dtype=int)
        for m, k in ((1, 0), (2, 1), (3, 0), (3, 2)):
            expected[m, k] = 1
        np.testing.assert_array_equal(pattern.adaptivity, expected)
        self.assertEqual([p.to_string() for p in pattern.correction], ["X", "Z", "X", "Z"])

    def test_commuting_sequence_is_one_round(self) -> None:
        period = [PauliString.from_string("XX"), PauliString.from_string("ZZ")]
        seq = RotationSequence.from_period(2, period, [Angle(value=0.1)] * 2, 2)
        pattern = PatternBuilder.build_pattern(seq)
        self.assertEqual(pattern.order.rounds, ((0, 1, 2, 3),))
        self.assertFalse(pattern.adaptivity.any())

    def test_adapt_angles(self) -> None:
        pattern = PatternBuilder.build_pattern(alternating())
        adapted = PatternBuilder.adapt_angles(pattern, [1, 0, 0, 0], values={"a": 1.0})
        np.testing.assert_allclose(adapted, [1.0, -0.25, 1.0, -0.25])
        third = PatternBuilder.adapt_angles(pattern, [1, 1, 0, 0], {"a": 1.0}, round_index=2)
        np.testing.assert_allclose(third, [-1.0])
        with self.assertRaises(ValueError):
            PatternBuilder.adapt_angles(pattern, [1, 0], values={"a": 1.0})
        with self.assertRaises(KeyError):
            PatternBuilder.bind_angles(pattern)

    def test_final_correction(self) -> None:
        pattern = PatternBuilder.build_pattern(alternating())
        self.assertEqual(PatternBuilder.final_correction(pattern, [1, 1, 0, 0]).to_string(), "-iY")
        self.assertTrue(PatternBuilder.final_correction(pattern, [0, 0, 0, 0]).is_identity)

    def test_measurement_order(self) -> None:
        seq = alternating()
        resource = ResourceCompiler.compile_closed_form(seq, StabilizerTableau.computational_zero(1))
        order = PatternBuilder.measurement_order(resource, PatternBuilder.build_pattern(seq))
        self.assertEqual(order.rounds, ((1,), (2,), (3,), (4,), (0,)))


class TestHybridPremeasurer(TestCase):
    def test_outcome_sample_follows_the_model(self) -> None:
        model = OutcomeModel(free=(True, False, True), constants=[0, 1, 0], parity=[[0, 0, 0], [1, 0, 0], [0, 0, 0]])
        rng = np.random.default_rng(0)
        for _ in range(20):
            self.assertTrue(model.is_consistent(HybridPremeasurer.hybrid_outcome_sample(model, rng)))

    def test_premeasure_shapes(self) -> None:
        seq = alternating()
        resource = ResourceCompiler.compile_closed_form(seq, StabilizerTableau.computational_zero(1))
        aux, model, byproducts = HybridPremeasurer.hybrid_premeasure(resource, PauliString.from_string("Z"))
        self.assertEqual(aux.n, resource.m)
        self.assertEqual(aux.n_main, 0)
        self.assertEqual(model.n, 1)
        self.assertEqual(byproducts.constant.n, resource.m)
        with self.assertRaises(ValueError):
            HybridPremeasurer.hybrid_premeasure(resource, PauliString.from_string("ZZ"))

    def test_observable_value(self) -> None:
        observable = PauliString.from_string("-XZ")
        correction = PauliString.from_string("ZI")
        # Outcome parity 1 + 0, flipped by Z anticommuting with X, then the sign
        self.assertEqual(HybridPremeasurer.observable_value(observable, [1, 0], correction), -1)
        self.assertEqual(HybridPremeasurer.observable_value(observable, [0, 0], PauliString.identity(2)), -1)
        self.assertEqual(HybridPremeasurer.observable_value(observable, [1, 1], PauliString.identity(2)), -1)
        self.assertEqual(HybridPremeasurer.observable_value(observable, [1, 0], PauliString.identity(2)), 1)

    def test_isolated_main_qubit_is_deterministic(self) -> None:
        # |0> measured in Z with no rotations touching it
        seq = RotationSequence.from_period(2, [PauliString.from_string("IX")], [Angle(value=0.3)], 1)
        resource = ResourceCompiler.compile_closed_form(seq, StabilizerTableau.computational_zero(2))
        _, model, _ = HybridPremeasurer.hybrid_premeasure(resource, PauliString.from_string("ZI"))
        self.assertFalse(model.free[0])
        self.assertEqual(int(model.constants[0]), 0)

    def test_deletion_basis(self) -> None:
        layer = VopLayer(vops=(SingleQubitClifford.hadamard(), SingleQubitClifford.phase()))
        self.assertEqual(HybridPremeasurer.deletion_basis(VopLayer.identity(1), 0), "Z")
        self.assertEqual(HybridPremeasurer.deletion_basis(layer, 0), "X")
        self.assertEqual(HybridPremeasurer.deletion_basis(layer, 1), "Z")

    def test_untouched_main_qubits_are_deleted(self) -> None:
        # Main VOPs are H, so X and the fill-in basis both delete the main vertex
        result = Compiler.compile(ProblemCatalog.xy_model(4, 2, main_edge_override=True), CompileSettings())
        resource = result.resource
        self.assertEqual([c.mnemonic for c in resource.vops.vops[:4]], ["H"] * 4)
        aux_ids = resource.roles.aux_ids
        for observable in ("XXII", "IXXI", "IIII", "XXXX"):
            with self.subTest(observable):
                aux, _, _ = HybridPremeasurer.hybrid_premeasure(resource, PauliString.from_string(observable))
                self.assertEqual(aux.graph, resource.graph.subgraph(aux_ids))
                self.assertEqual(aux.vops, resource.vops.subset(aux_ids))

    def test_local_pivot(self) -> None:
        star = GraphAdjacency.from_edges(5, [(0, 1), (0, 2), (1, 3), (2, 4)])
        self.assertEqual(HybridPremeasurer.local_pivot(star, {0, 1, 2, 4}), 2)
        self.assertEqual(HybridPremeasurer.local_pivot(star, {0, 1, 2, 3, 4}), 1)
        self.assertIsNone(HybridPremeasurer.local_pivot(star, {0, 1, 2}))

    def test_ac_byproducts_stay_in_the_first_block(self) -> None:
        cases = [
            (ProblemCatalog.cqca(trotter_steps=3), ("XXX",)),
            (ProblemCatalog.xy_model(4, 3), ("XXII", "IYYI", "XYII")),
        ]
        for problem, observables in cases:
            resource = Compiler.compile(problem, CompileSettings(method=Method.AC)).resource
            for observable in observables:
                with self.subTest(problem=problem.name, observable=observable):
                    aux, _, byproducts = HybridPremeasurer.hybrid_premeasure(
                        resource, PauliString.from_string(observable)
                    )
                    self.assertLessEqual(set(byproducts.support), set(aux.roles.block(1)))
