from unittest import TestCase

import pandas as pd

from src.app.exporters import ExportFormat, export, export_dot, labelled_graph, load_artifacts
from src.engine.ac_ladder import AcLadderCompiler
from src.engine.pattern_runtime import PatternBuilder
from src.engine.resource_compiler import ResourceCompiler
from src.models.anneal import TRACE_COLUMNS
from src.models.pauli import PauliString
from src.models.rotation import Angle, RotationSequence
from src.models.tableau import StabilizerTableau


def x_rotations(trotter_steps: int) -> RotationSequence:
    return RotationSequence.from_period(1, [PauliString.from_string("X")], [Angle(symbol="a")], trotter_steps)


class TestExporters(TestCase):
    def setUp(self) -> None:
        seq = x_rotations(1)
        self.resource = ResourceCompiler.compile_closed_form(seq, StabilizerTableau.computational_zero(1))
        self.pattern = PatternBuilder.build_pattern(seq)

    def test_json_round_trip(self) -> None:
        text = export(self.resource, self.pattern, "json")
        self.assertTrue(text.endswith("\n"))
        resource, pattern = load_artifacts(text)
        self.assertEqual(resource, self.resource)
        self.assertEqual(pattern, self.pattern)
        self.assertEqual(text, export(resource, pattern, ExportFormat.JSON))

    def test_dot(self) -> None:
        text = export(self.resource, self.pattern, "dot")
        lines = text.splitlines()
        self.assertEqual(lines[0], "graph resource {")
        self.assertIn('\t"0" [label="main(0) H", shape=box];', lines)
        self.assertIn('\t"1" [label="aux(1,0)", shape=circle];', lines)
        self.assertIn('\t"0" -- "1" [style=solid];', lines)
        self.assertEqual(lines[-1], "}")
        self.assertEqual(text, export_dot(self.resource))

    def test_ladder_edges(self) -> None:
        seq = x_rotations(2)
        g0, c0, conjugated, r = ResourceCompiler.conjugate_through_initial_lc(
            seq, StabilizerTableau.computational_zero(1)
        )
        resource = AcLadderCompiler.ac_graph(conjugated, g0, r, 2, main_vops=c0)
        g = labelled_graph(resource)
        self.assertEqual(g.edges[1, 2]["style"], "dashed")
        self.assertEqual(g.nodes[2]["role"], "aux")
        self.assertIn('\t"1" -- "2" [style=dashed];', export_dot(resource).splitlines())

    def test_trace_csv(self) -> None:
        self.assertEqual(export(self.resource, self.pattern, "csv-trace"), ",".join(TRACE_COLUMNS) + "\n")
        trace = pd.DataFrame({"run": [0], "iteration": [0], "W": [4], "Pi": [0], "f": [4]})
        self.assertEqual(
            export(self.resource, self.pattern, "csv-trace", trace), "run,iteration,W,Pi,f\n0,0,4,0,4\n"
        )

    def test_unknown_format(self) -> None:
        with self.assertRaises(ValueError):
            export(self.resource, self.pattern, "svg")
