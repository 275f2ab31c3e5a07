from unittest import TestCase

from src.models.pauli import PauliString
from src.models.rotation import Angle, RotationSequence


class TestAngle(TestCase):
    def test_bind(self) -> None:
        self.assertEqual(Angle(symbol="t").bind({"t": 2}), 2.0)
        self.assertEqual(Angle(value=1).bind({}), 1.0)
        with self.assertRaises(KeyError):
            Angle(symbol="t").bind({})
        with self.assertRaises(ValueError):
            Angle()
        self.assertEqual(Angle.from_simple("t"), Angle(symbol="t"))
        self.assertEqual(Angle.from_simple(3).to_simple(), 3.0)


class TestRotationSequence(TestCase):
    def setUp(self) -> None:
        self.period = [PauliString.from_string("XX"), PauliString.from_string("ZI")]
        self.seq = RotationSequence.from_period(2, self.period, [Angle(symbol="a"), Angle(value=0.5)], 3)

    def test_from_period(self) -> None:
        self.assertEqual(self.seq.m, 6)
        self.assertEqual(self.seq.trotter_steps, 3)
        self.assertEqual(self.seq.x_matrix.tolist(), [[1, 1], [0, 0]] * 3)
        self.assertEqual(self.seq.with_steps(1).m, 2)

    def test_broken_period(self) -> None:
        generators = list(self.seq.generators)
        generators[3] = PauliString.from_string("IZ")
        with self.assertRaises(ValueError):
            self.seq.with_generators(generators)

    def test_bind_angles(self) -> None:
        self.assertEqual(self.seq.bind_angles({"a": 1.0}).tolist(), [1.0, 0.5] * 3)
        with self.assertRaises(ValueError):
            self.seq.bind_angles([0.1, 0.2])

    def test_simple_dict(self) -> None:
        self.assertEqual(RotationSequence.from_simple_dict(self.seq.to_simple_dict()), self.seq)

    def test_signed_generator(self) -> None:
        for text in ("-XZ", "iXZ"):
            with self.subTest(text):
                with self.assertRaises(ValueError):
                    RotationSequence.from_period(2, [PauliString.from_string(text)], [Angle(value=0.1)], 1)
