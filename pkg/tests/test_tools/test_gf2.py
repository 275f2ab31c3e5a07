from unittest import TestCase

import numpy as np

from src.tools import gf2


class TestGf2(TestCase):
    def test_rank(self) -> None:
        self.assertEqual(gf2.rank(np.eye(4, dtype=np.uint8)), 4)
        self.assertEqual(gf2.rank([[1, 1], [1, 1]]), 1)
        self.assertEqual(gf2.rank([[1, 1, 0], [0, 1, 1], [1, 0, 1]]), 2)
        self.assertEqual(gf2.rank(np.zeros((0, 3))), 0)

    def test_row_echelon_pivots(self) -> None:
        reduced, pivots = gf2.row_echelon([[0, 1, 1], [1, 1, 0]])
        self.assertEqual(pivots, [0, 1])
        np.testing.assert_array_equal(reduced, [[1, 0, 1], [0, 1, 1]])

    def test_row_echelon_restricted_pivots(self) -> None:
        _, pivots = gf2.row_echelon([[0, 1], [0, 1]], n_pivot_cols=1)
        self.assertEqual(pivots, [])

    def test_matmul(self) -> None:
        m = np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]], dtype=np.uint8)
        m_inv = np.array([[1, 1, 1], [0, 1, 1], [0, 0, 1]], dtype=np.uint8)
        np.testing.assert_array_equal(gf2.matmul(m, m_inv), np.eye(3, dtype=np.uint8))

    def test_triangles(self) -> None:
        m = np.ones((3, 3), dtype=np.uint8)
        np.testing.assert_array_equal(gf2.strict_upper(m) + gf2.strict_lower(m) + np.eye(3, dtype=np.uint8), m)

    def test_input_is_not_modified(self) -> None:
        m = np.array([[1, 1], [1, 0]], dtype=np.uint8)
        gf2.row_echelon(m)
        np.testing.assert_array_equal(m, [[1, 1], [1, 0]])
