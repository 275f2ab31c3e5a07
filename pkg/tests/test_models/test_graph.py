from unittest import TestCase

import networkx as nx
import numpy as np

from src.models.clifford import SingleQubitClifford
from src.models.graph import GraphAdjacency, MeasurementOrder, VopLayer
from src.models.pauli import PauliString


class TestGraphAdjacency(TestCase):
    def test_validation(self) -> None:
        with self.assertRaises(ValueError):
            GraphAdjacency(gamma=np.array([[0, 1], [0, 0]]))
        with self.assertRaises(ValueError):
            GraphAdjacency(gamma=np.eye(2))
        with self.assertRaises(ValueError):
            GraphAdjacency.from_edges(2, [(1, 1)])

    def test_networkx_round_trip(self) -> None:
        g = GraphAdjacency.from_edges(5, [(0, 1), (1, 2), (3, 4)])
        self.assertEqual(g.n_edges, 3)
        self.assertEqual(GraphAdjacency.from_networkx(g.to_networkx()), g)
        self.assertEqual(nx.number_connected_components(g.to_networkx()), 2)

    def test_vertex_operations(self) -> None:
        g = GraphAdjacency.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        self.assertEqual(g.neighbors(1), [0, 2])
        self.assertEqual(g.delete_vertex(1), GraphAdjacency.from_edges(3, [(1, 2)]))
        self.assertEqual(g.subgraph([3, 2]), GraphAdjacency.from_edges(2, [(0, 1)]))
        self.assertTrue(g.delete_vertex(1).is_isolated(0))

    def test_simple_dict(self) -> None:
        g = GraphAdjacency.from_edges(3, [(0, 2)])
        self.assertEqual(g.to_simple_dict(), {"n": 3, "edges": [[0, 2]]})
        self.assertEqual(GraphAdjacency.from_simple_dict(g.to_simple_dict()), g)


class TestVopLayer(TestCase):
    def test_conjugate(self) -> None:
        layer = VopLayer(vops=(SingleQubitClifford.hadamard(), SingleQubitClifford.identity()))
        self.assertEqual(layer.conjugate(PauliString.from_string("XX")).to_string(), "ZX")
        self.assertTrue(VopLayer.identity(3).is_identity)

    def test_right_multiply(self) -> None:
        h = SingleQubitClifford.hadamard()
        layer = VopLayer.identity(2).right_multiply(0, h).right_multiply(0, h)
        self.assertTrue(layer.is_identity)
        self.assertEqual(VopLayer.from_simple_dict(layer.to_simple_dict()), layer)


class TestMeasurementOrder(TestCase):
    def test_partition(self) -> None:
        order = MeasurementOrder(rounds=((0, 2), (1,)))
        order.check_partition(3)
        self.assertEqual(order.round_of(), {0: 0, 2: 0, 1: 1})
        with self.assertRaises(ValueError):
            order.check_partition(4)
        with self.assertRaises(ValueError):
            MeasurementOrder(rounds=((0,), (0,)))
        with self.assertRaises(ValueError):
            MeasurementOrder(rounds=((0,), ()))
        self.assertEqual(order.shifted(2).rounds, ((2, 4), (3,)))
