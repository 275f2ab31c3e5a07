import json
from unittest import TestCase

import numpy as np

from src.models.graph import GraphAdjacency, VopLayer
from src.models.resource import (
    AnticommutationData,
    CompiledResource,
    LadderSpec,
    VertexRepo,
    VertexRole,
)


class TestVertexRepo(TestCase):
    def setUp(self) -> None:
        self.repo = VertexRepo.make(n_main=2, period_length=3, trotter_steps=2)

    def test_layout(self) -> None:
        self.assertEqual(len(self.repo), 8)
        self.assertEqual(self.repo.main_ids, [0, 1])
        self.assertEqual(self.repo.aux_ids, list(range(2, 8)))
        self.assertEqual(self.repo.block(2), [5, 6, 7])
        self.assertEqual(self.repo.aux_vertex(step=2, term=1), 6)
        with self.assertRaises(KeyError):
            self.repo.aux_vertex(step=3, term=0)

    def test_relabelled(self) -> None:
        relabelled = self.repo.relabelled([6, 0, 1])
        self.assertEqual(relabelled.main_ids, [1, 2])
        info = relabelled[0]
        self.assertEqual((info.role, info.step, info.term), (VertexRole.AUX, 2, 1))

    def test_simple_dict(self) -> None:
        self.assertEqual(VertexRepo.from_simple_dict(self.repo.to_simple_dict()), self.repo)

    def test_row_without_a_field(self) -> None:
        simple_dict = self.repo.to_simple_dict()
        del simple_dict["data"][3]["step"]
        with self.assertRaisesRegex(KeyError, "lacks step"):
            VertexRepo.from_simple_dict(simple_dict)

    def test_with_id(self) -> None:
        info = self.repo[5].with_id(0)
        self.assertEqual((int(info.id), info.role, info.step, info.term), (0, VertexRole.AUX, 2, 0))
        self.assertIsInstance(info.id, type(self.repo[5].id))


class TestAnticommutationData(TestCase):
    def test_validation(self) -> None:
        data = AnticommutationData(a0=[[1, 0]], a=[[0, 1], [1, 0]])
        self.assertEqual((data.n_main, data.period_length, data.a_norm), (1, 2, 2))
        with self.assertRaises(ValueError):
            AnticommutationData(a0=[[1, 0]], a=[[0, 1], [0, 0]])
        with self.assertRaises(ValueError):
            AnticommutationData(a0=[[1, 0, 0]], a=[[0, 1], [1, 0]])


class TestCompiledResource(TestCase):
    def make(self, ladder: LadderSpec | None) -> CompiledResource:
        return CompiledResource(
            graph=GraphAdjacency.from_edges(4, [(0, 2), (1, 3)]),
            vops=VopLayer(vops=(0, 0, 1, 5)),
            roles=VertexRepo.make(n_main=2, period_length=1, trotter_steps=2),
            n_main=2,
            period_length=1,
            trotter_steps=2,
            phases_r=np.array([0, 1]),
            ladder=ladder,
        )

    def test_round_trip(self) -> None:
        for ladder in (None, LadderSpec(layers=(((2, 3),),))):
            resource = self.make(ladder)
            again = CompiledResource.from_simple_dict(json.loads(json.dumps(resource.to_simple_dict())))
            self.assertEqual(again, resource)
            self.assertEqual(resource.is_ac, ladder is not None)
            self.assertEqual(resource.m, 2)

    def test_size_mismatch(self) -> None:
        with self.assertRaises(ValueError):
            CompiledResource(
                graph=GraphAdjacency.empty(3),
                vops=VopLayer.identity(4),
                roles=VertexRepo.make(2, 1, 2),
                n_main=2,
                period_length=1,
                trotter_steps=2,
                phases_r=np.zeros(2),
            )

    def test_ladder(self) -> None:
        ladder = LadderSpec(layers=(((2, 3), (4, 5)), ((3, 6),)))
        self.assertEqual(ladder.n_cnots, 3)
        self.assertEqual(ladder.relabelled({2: 0, 3: 1, 4: 2, 5: 3, 6: 4}).edges, [(0, 1), (2, 3), (1, 4)])
