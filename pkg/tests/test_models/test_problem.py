import json
from unittest import TestCase

from src.models.errors import ProblemValidationError
from src.models.problem import AnnealConfig, InitialState, InitialStateKind, Method, ProblemSpec


def problem_dict(**changes: object) -> dict:
    out = {
        "name": "pair",
        "num_qubits": 2,
        "initial_state": "zero",
        "period": [{"pauli": "XX", "angle": "a", "group": "g"}, {"pauli": "ZZ", "angle": 0.3, "group": "g"}],
        "trotter_steps": 2,
        "method": "ac",
        "observables": ["ZI"],
    }
    out.update(changes)
    return out


class TestProblemSpec(TestCase):
    def test_round_trip(self) -> None:
        problem = ProblemSpec.from_simple_dict(problem_dict())
        self.assertEqual(problem.method, Method.AC)
        self.assertEqual(problem.groups, ("g", "g"))
        again = ProblemSpec.from_simple_dict(json.loads(json.dumps(problem.to_simple_dict())))
        self.assertEqual(again, problem)

    def test_rotation_sequence(self) -> None:
        seq = ProblemSpec.from_simple_dict(problem_dict()).rotation_sequence()
        self.assertEqual(seq.m, 4)
        self.assertEqual(seq.trotter_steps, 2)
        self.assertEqual(seq.bind_angles({"a": 1.0}).tolist(), [1.0, 0.3, 1.0, 0.3])

    def test_validation_errors_name_the_field(self) -> None:
        cases = [
            (problem_dict(num_qubits=0), "num_qubits", None),
            (problem_dict(period=[]), "period", None),
            (problem_dict(trotter_steps=0), "trotter_steps", None),
            (problem_dict(period=[{"pauli": "XX", "angle": 1}, {"pauli": "XXX", "angle": 1}]), "period", 1),
            (problem_dict(period=[{"pauli": "XX", "angle": 1}, {"pauli": "-ZZ", "angle": 1}]), "period", 1),
            (problem_dict(period=[{"pauli": "XQ", "angle": 1}]), "period", 0),
            (problem_dict(observables=["ZI", "iZZ"]), "observables", 1),
            (problem_dict(method="xy"), "method", None),
            (problem_dict(initial_state="minus"), "initial_state", None),
            (problem_dict(initial_state={"tableau": {"rows": ["XI", "ZI"]}}), "initial_state", None),
            (problem_dict(anneal={"cooling_rate": 1.5}), "cooling_rate", None),
            (problem_dict(anneal={"speed": 2}), "anneal", None),
        ]
        for simple_dict, field, index in cases:
            with self.subTest(field=field, index=index):
                with self.assertRaises(ProblemValidationError) as context:
                    ProblemSpec.from_simple_dict(simple_dict)
                self.assertEqual(context.exception.field, field)
                self.assertEqual(context.exception.index, index)

    def test_missing_field(self) -> None:
        simple_dict = problem_dict()
        del simple_dict["period"]
        with self.assertRaises(ProblemValidationError) as context:
            ProblemSpec.from_simple_dict(simple_dict)
        self.assertEqual(context.exception.field, "period")

    def test_groups(self) -> None:
        anticommuting = [{"pauli": "XI", "angle": 1, "group": "g"}, {"pauli": "ZI", "angle": 1, "group": "g"}]
        with self.assertRaises(ProblemValidationError):
            ProblemSpec.from_simple_dict(problem_dict(period=anticommuting))
        split = [
            {"pauli": "XI", "angle": 1, "group": "g"},
            {"pauli": "ZZ", "angle": 1},
            {"pauli": "IX", "angle": 1, "group": "g"},
        ]
        with self.assertRaises(ProblemValidationError) as context:
            ProblemSpec.from_simple_dict(problem_dict(period=split))
        self.assertEqual(context.exception.index, 0)

    def test_initial_states(self) -> None:
        graph = InitialState.from_simple_dict({"graph": {"edges": [[0, 1]]}})
        self.assertEqual([p.to_string() for p in graph.to_tableau(2).rows], ["XZ", "ZX"])
        self.assertEqual(graph.to_simple_dict(), {"graph": {"edges": [[0, 1]]}})
        self.assertEqual(InitialState(kind=InitialStateKind.PLUS).to_tableau(2).rows[1].to_string(), "IX")

    def test_with_settings(self) -> None:
        problem = ProblemSpec.from_simple_dict(problem_dict())
        changed = problem.with_settings(method=Method.LC, anneal=problem.anneal.with_overrides(runs=3, rng_seed=None))
        self.assertEqual(changed.method, Method.LC)
        self.assertEqual(changed.trotter_steps, 2)
        self.assertEqual(changed.anneal.runs, 3)
        self.assertIsNone(changed.anneal.rng_seed)
        self.assertEqual(AnnealConfig().cooling_rate, 0.99995)

    def test_graph_with_vertex_operators(self) -> None:
        # Group index 1 is H
        graph = InitialState.from_simple_dict({"graph": {"edges": [[0, 1]], "vops": [0, 1]}})
        self.assertEqual([p.to_string() for p in graph.to_tableau(2).rows], ["XX", "ZZ"])
        self.assertEqual(graph.vops, (0, 1))
        self.assertEqual(InitialState.from_simple_dict(graph.to_simple_dict()), graph)
        self.assertEqual(graph.to_simple_dict(), {"graph": {"edges": [[0, 1]], "vops": [0, 1]}})
        with self.assertRaises(ProblemValidationError) as context:
            ProblemSpec.from_simple_dict(problem_dict(initial_state={"graph": {"edges": [[0, 1]], "vops": [1]}}))
        self.assertEqual(context.exception.field, "initial_state")
