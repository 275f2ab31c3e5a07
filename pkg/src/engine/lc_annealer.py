import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from src.engine.graph_state import GraphStateCalculator
from src.models.anneal import AnnealTrace, DistanceMatrix, TRACE_COLUMNS
from src.models.errors import ExtrapolationError, NoFeasibleSolutionError
from src.models.graph import GraphAdjacency, VopLayer
from src.models.pauli import PauliString
from src.models.problem import AnnealConfig
from src.models.resource import CompiledResource, VertexRepo
from src.models.rotation import Angle, RotationSequence
from src.tools.typing import BitMatrix

logger = logging.getLogger(__name__)


class DistanceMatrixBuilder:
    @classmethod
    def commuting_groups(cls, seq: RotationSequence, tags: Optional[Sequence[Optional[str]]] = None) -> list[int]:
        """
        Splits the M rotations into consecutive groups of mutually commuting generators.
        :param seq: Rotation sequence
        :param tags: Optional group tag per period term; consecutive equal tags form one group (tiled per period),
        untagged terms stand alone. Without tags the split is greedy.
        :return: Group sizes in sequence order
        """
        if tags is not None and any(t is not None for t in tags):
            if len(tags) != seq.period_length:
                raise ValueError(f"Expected {seq.period_length} group tags, got {len(tags)}")
            sizes: list[int] = []
            previous: Optional[str] = None
            for tag in tags:
                if tag is not None and tag == previous:
                    sizes[-1] += 1
                else:
                    sizes.append(1)
                previous = tag
            return sizes * seq.trotter_steps

        sizes = []
        current: list[PauliString] = []
        for p in seq.generators:
            if current and any(p.anticommutes(q) for q in current):
                sizes.append(len(current))
                current = []
            current.append(p)
        sizes.append(len(current))
        return sizes

    @classmethod
    def build_distance_matrix(
        cls, groups: Sequence[int], n_main: int, n_targ: int, override: bool = False
    ) -> DistanceMatrix:
        """
        Distances between measurement groups, weighted exponentially.
        Group j links to the first group l + 1 whose predecessors j+1..l already hold n_targ qubits.
        The distance from group i to a later group k counts the groups j in [i, k) whose link reaches k or beyond,
        i.e. the number of times the stored state has to be handed on. Entries become 2^distance and are expanded
        to one row per qubit, main qubits forming the last group.
        :param groups: Sizes of the J commuting groups, in order
        :param n_main: N, the size of the main group
        :param n_targ: Target memory size
        :param override: Set every main-auxiliary distance to 1
        :return: The distance matrix in vertex order (main qubits first)
        """
        if len(groups) == 0 or any(s < 1 for s in groups):
            raise ValueError(f"Groups must be non-empty, got {list(groups)}")
        if n_targ < 1:
            raise ValueError(f"Target memory must be positive, got {n_targ}")
        n_groups = len(groups) + 1
        sizes = list(groups) + [n_main]

        link = [math.inf] * n_groups
        for j in range(n_groups - 2):
            counter = 0
            for ell in range(j + 1, n_groups - 1):
                counter += sizes[ell]
                if counter >= n_targ:
                    link[j] = ell + 1
                    break

        hops = np.zeros((n_groups, n_groups), dtype=np.int64)
        for i in range(n_groups):
            for k in range(i + 1, n_groups):
                hops[i, k] = sum(1 for j in range(i, k) if link[j] <= k)
        hops = hops + hops.T
        group_matrix = 2**hops

        expanded = np.repeat(np.repeat(group_matrix, sizes, axis=0), sizes, axis=1)
        n_aux = sum(groups)
        order = list(range(n_aux, n_aux + n_main)) + list(range(n_aux))
        d = expanded[np.ix_(order, order)]
        if override:
            d[:n_main, n_main:] = 1
            d[n_main:, :n_main] = 1
        return DistanceMatrix(d=d, group_matrix=group_matrix, group_sizes=tuple(sizes))


class LcCostFunction:
    """f = W + Pi^2 over an adjacency matrix with main qubits first."""

    @classmethod
    def weight(cls, g: GraphAdjacency, d: DistanceMatrix) -> int:
        if g.n != d.n:
            raise ValueError(f"Graph has {g.n} vertices, distance matrix {d.n}")
        return int((np.triu(g.gamma, k=1).astype(np.int64) * d.d).sum())

    @classmethod
    def aperiodicity(cls, g: GraphAdjacency, period_length: int, n_aux: int) -> int:
        """
        Number of auxiliary pairs i < j <= M - L whose edge differs from the pair one period later.
        Zero when there is a single period.
        """
        return cls._aperiodicity(g.gamma, g.n - n_aux, period_length)

    @classmethod
    def cost(cls, g: GraphAdjacency, d: DistanceMatrix, n_main: int, period_length: int) -> int:
        return cls.weight(g, d) + cls._aperiodicity(g.gamma, n_main, period_length) ** 2

    @classmethod
    def delta_cost(
        cls,
        g: GraphAdjacency | BitMatrix,
        d: DistanceMatrix,
        n_main: int,
        period_length: int,
        v: int,
        current_pi: Optional[int] = None,
    ) -> int:
        """
        f(LC_v(g)) - f(g), looking only at pairs inside the neighbourhood of v.
        :param g: Graph or its adjacency matrix
        :param d: Distance matrix
        :param n_main: Number of main qubits (auxiliaries follow them)
        :param period_length: L
        :param v: Vertex to complement at
        :param current_pi: Aperiodicity of g if already known
        :return: The cost change
        """
        gamma = g.gamma if isinstance(g, GraphAdjacency) else g
        if current_pi is None:
            current_pi = cls._aperiodicity(gamma, n_main, period_length)
        nbr = np.flatnonzero(gamma[v])
        if len(nbr) < 2:
            return 0
        ia, ib = np.triu_indices(len(nbr), k=1)
        a, b = nbr[ia], nbr[ib]
        toggled = gamma[a, b].astype(np.int64)
        delta_w = int((d.d[a, b] * (1 - 2 * toggled)).sum())
        delta_pi = cls._delta_aperiodicity(gamma, n_main, period_length, nbr)
        return delta_w + (current_pi + delta_pi) ** 2 - current_pi**2

    @staticmethod
    def _aperiodicity(gamma: BitMatrix, n_main: int, period_length: int) -> int:
        aux = gamma[n_main:, n_main:]
        span = aux.shape[0] - period_length
        if span <= 0:
            return 0
        diff = aux[:span, :span] ^ aux[period_length:, period_length:]
        return int(np.triu(diff, k=1).sum())

    @staticmethod
    def _delta_aperiodicity(gamma: BitMatrix, n_main: int, period_length: int, nbr: np.ndarray) -> int:
        # A term (i, j) flips when exactly one of (i, j) and (i + L, j + L) lies inside the toggled neighbourhood
        aux = gamma[n_main:, n_main:]
        n_aux = aux.shape[0]
        span = n_aux - period_length
        s = nbr[nbr >= n_main] - n_main
        if span <= 0 or len(s) < 2:
            return 0
        inside = np.zeros(n_aux + 2 * period_length, dtype=bool)
        inside[s + period_length] = True

        def member(idx: np.ndarray) -> np.ndarray:
            return inside[idx + period_length]

        ia, ib = np.triu_indices(len(s), k=1)
        a, b = s[ia], s[ib]
        forward = (b < span) & ~(member(a + period_length) & member(b + period_length))
        backward = (a >= period_length) & ~(member(a - period_length) & member(b - period_length))
        i = np.concatenate([a[forward], a[backward] - period_length])
        j = np.concatenate([b[forward], b[backward] - period_length])
        old = aux[i, j] ^ aux[i + period_length, j + period_length]
        return int((1 - 2 * old.astype(np.int64)).sum())


class LcAnnealer:
    @classmethod
    def anneal(
        cls,
        start: CompiledResource,
        d: DistanceMatrix,
        config: AnnealConfig,
        rng: Optional[np.random.Generator] = None,
    ) -> AnnealTrace:
        """
        Simulated annealing over the local-complementation orbit of the start graph.
        T0 is the standard deviation of the cost change over all vertices; T_n = T0 * cooling_rate^n and the run
        stops once T_n < 1 - cooling_rate. One uniformly drawn vertex is proposed per step.
        :param start: Resource whose graph is the starting point
        :param d: Distance matrix
        :param config: Annealing settings
        :param rng: Random generator; seeded from config.rng_seed when omitted
        :return: The trace, with the best periodic graph seen (or the best graph overall when none was periodic)
        """
        if rng is None:
            rng = np.random.default_rng(config.rng_seed)
        n_main, ell = start.n_main, start.period_length
        gamma = start.graph.gamma.copy()
        n = gamma.shape[0]
        weight = LcCostFunction.weight(start.graph, d)
        pi = LcCostFunction._aperiodicity(gamma, n_main, ell)
        cost = weight + pi**2

        deltas = [LcCostFunction.delta_cost(gamma, d, n_main, ell, v, current_pi=pi) for v in range(n)]
        t0 = float(np.std(deltas))
        lam = config.cooling_rate

        records = [(0, weight, pi, cost)]
        moves: list[int] = []
        best = (cost if pi == 0 else math.inf, 0, gamma.copy(), weight, pi)
        best_any = (cost, 0, gamma.copy(), weight, pi)

        iteration = 0
        temperature = t0
        while temperature >= 1 - lam:
            iteration += 1
            v = int(rng.integers(n))
            delta = LcCostFunction.delta_cost(gamma, d, n_main, ell, v, current_pi=pi)
            if delta <= 0 or rng.random() < math.exp(-delta / temperature):
                nbr = np.flatnonzero(gamma[v])
                if len(nbr) >= 2:
                    new_pi = pi + LcCostFunction._delta_aperiodicity(gamma, n_main, ell, nbr)
                    block = np.ix_(nbr, nbr)
                    gamma[block] ^= 1
                    gamma[nbr, nbr] = 0
                    cost += delta
                    pi = new_pi
                    weight = cost - pi**2
                moves.append(v)
                records.append((iteration, weight, pi, cost))
                if pi == 0 and cost < best[0]:
                    best = (cost, len(moves), gamma.copy(), weight, pi)
                if cost < best_any[0]:
                    best_any = (cost, len(moves), gamma.copy(), weight, pi)
            temperature = t0 * lam**iteration

        chosen = best if best[0] < math.inf else best_any
        best_cost, n_moves, best_gamma, best_weight, best_pi = chosen
        logger.info(f"Annealing: T0={t0:.3f}, {iteration} iterations, best f={best_cost} (Pi={best_pi})")
        return AnnealTrace(
            steps=pd.DataFrame(records, columns=TRACE_COLUMNS),
            graph=GraphAdjacency(gamma=best_gamma),
            moves=tuple(moves[:n_moves]),
            cost=int(best_cost),
            weight=int(best_weight),
            aperiodicity=int(best_pi),
            t0=t0,
            n_iterations=iteration,
            seed=config.rng_seed,
        )

    @classmethod
    def anneal_many(
        cls, start: CompiledResource, d: DistanceMatrix, config: AnnealConfig, max_workers: Optional[int] = None
    ) -> list[AnnealTrace]:
        """
        Independent restarts, each with its own random stream spawned from config.rng_seed.
        :return: One trace per restart, in restart order
        """
        streams = np.random.SeedSequence(config.rng_seed).spawn(config.runs)
        if config.runs == 1 or max_workers == 1:
            return [cls.anneal(start, d, config, np.random.default_rng(s)) for s in streams]
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            futures = [pool.submit(_anneal_with_stream, start, d, config, s) for s in streams]
            return [f.result() for f in futures]

    @classmethod
    def best_feasible(cls, traces: Sequence[AnnealTrace]) -> AnnealTrace:
        feasible = [t for t in traces if t.feasible]
        if not feasible:
            raise NoFeasibleSolutionError(f"None of the {len(traces)} annealing runs reached a periodic graph")
        return min(feasible, key=lambda t: t.cost)

    @classmethod
    def recover_vops(cls, start: CompiledResource, moves: Sequence[int]) -> VopLayer:
        """
        Replays the accepted local complementations on the start graph and composes their VOP updates.
        """
        for v in moves:
            if not 0 <= v < start.n:
                raise IndexError(f"Move at vertex {v} is outside the {start.n}-vertex resource")
        _, layer = GraphStateCalculator.replay(start.graph, start.vops, moves)
        return layer

    @classmethod
    def annealed_resource(cls, start: CompiledResource, trace: AnnealTrace) -> CompiledResource:
        graph, layer = GraphStateCalculator.replay(start.graph, start.vops, trace.moves)
        assert graph == trace.graph, "Replayed moves do not reproduce the annealed graph"
        return CompiledResource(
            graph=graph,
            vops=layer,
            roles=start.roles,
            n_main=start.n_main,
            period_length=start.period_length,
            trotter_steps=start.trotter_steps,
            phases_r=start.phases_r,
            ladder=start.ladder,
        )

    @classmethod
    def extrapolate(cls, result: CompiledResource, trotter_steps: int) -> CompiledResource:
        """
        Extends a resource annealed at K steps to more steps by repeating its interior blocks.
        First and last blocks keep their own pattern; interior blocks (2..K-1) must agree in the graph,
        and their VOPs may repeat with a period of several blocks. Blocks two or more steps apart must be either
        all empty or all identical.
        :param result: Annealed resource at K steps
        :param trotter_steps: Target number of steps, at least K
        :return: The resource at the target number of steps
        """
        k_src = result.trotter_steps
        if trotter_steps == k_src:
            return result
        if trotter_steps < k_src:
            raise ExtrapolationError(f"Cannot extrapolate from K={k_src} down to K={trotter_steps}")
        if k_src < 4:
            raise ExtrapolationError(f"Need at least K=4 to see two interior blocks, got K={k_src}")

        n_main, ell = result.n_main, result.period_length
        gamma = result.graph.gamma

        def aux(k: int) -> slice:
            return slice(n_main + (k - 1) * ell, n_main + k * ell)

        def block(a: int, b: int) -> np.ndarray:
            return gamma[aux(a), aux(b)]

        interior = range(2, k_src)
        for k in interior:
            if not np.array_equal(block(k, k), block(2, 2)):
                raise ExtrapolationError(f"Diagonal block {k} differs from block 2")
            if not np.array_equal(gamma[:n_main, aux(k)], gamma[:n_main, aux(2)]):
                raise ExtrapolationError(f"Main connections of block {k} differ from block 2")
        for k in range(2, k_src - 1):
            if not np.array_equal(block(k, k + 1), block(2, 3)):
                raise ExtrapolationError(f"Neighbour block ({k}, {k + 1}) differs from (2, 3)")
        far = [block(a, b) for a in range(1, k_src + 1) for b in range(a + 2, k_src + 1)]
        if any(not np.array_equal(f, far[0]) for f in far):
            raise ExtrapolationError("Blocks two or more steps apart are not uniform")

        vop_period = cls._vop_period(result, interior)

        def source(k: int) -> int:
            if k == 1:
                return 1
            if k == trotter_steps:
                return k_src
            return 2 + (k - 2) % vop_period

        def neighbour_source(k: int) -> tuple[int, int]:
            if k == 1:
                return 1, 2
            if k + 1 == trotter_steps:
                return k_src - 1, k_src
            return 2, 3

        n = n_main + trotter_steps * ell
        new = np.zeros((n, n), dtype=np.uint8)
        new[:n_main, :n_main] = gamma[:n_main, :n_main]

        def target(k: int) -> slice:
            return slice(n_main + (k - 1) * ell, n_main + k * ell)

        for k in range(1, trotter_steps + 1):
            k_graph = 1 if k == 1 else (k_src if k == trotter_steps else 2)
            new[:n_main, target(k)] = gamma[:n_main, aux(k_graph)]
            new[target(k), target(k)] = block(k_graph, k_graph)
            if k < trotter_steps:
                a, b = neighbour_source(k)
                new[target(k), target(k + 1)] = block(a, b)
            for k2 in range(k + 2, trotter_steps + 1):
                new[target(k), target(k2)] = far[0]
        new = np.triu(new, k=1)
        new = new | new.T

        main_vops = result.vops.vops[:n_main]
        aux_vops = []
        for k in range(1, trotter_steps + 1):
            start = n_main + (source(k) - 1) * ell
            aux_vops.extend(result.vops.vops[start : start + ell])
        phases = np.tile(result.phases_r[:ell], trotter_steps)
        return CompiledResource(
            graph=GraphAdjacency(gamma=new),
            vops=VopLayer(vops=tuple(main_vops) + tuple(aux_vops)),
            roles=VertexRepo.make(n_main, ell, trotter_steps),
            n_main=n_main,
            period_length=ell,
            trotter_steps=trotter_steps,
            phases_r=phases,
        )

    @staticmethod
    def _vop_period(result: CompiledResource, interior: range) -> int:
        n_main, ell = result.n_main, result.period_length

        def vops(k: int) -> tuple:
            start = n_main + (k - 1) * ell
            return result.vops.vops[start : start + ell]

        blocks = list(interior)
        for p in range(1, len(blocks) + 1):
            if all(vops(k) == vops(k + p) for k in blocks if k + p in blocks):
                # With only two interior blocks (K=4) a 2L period is taken as seen
                if p < len(blocks) or p <= 2:
                    return p
        raise ExtrapolationError("Interior VOPs show no repeating pattern")

    @classmethod
    def dress_with_identity(cls, seq: RotationSequence, extra: PauliString, position: int) -> RotationSequence:
        """
        Inserts a zero-angle rotation about extra into every period.
        :param seq: Sequence to dress
        :param extra: Generator to insert (identity strings allowed)
        :param position: Index inside the period, 0..L
        :return: The dressed sequence with period L + 1
        """
        if extra.n != seq.n_main:
            raise ValueError(f"Extra generator has width {extra.n}, expected {seq.n_main}")
        if not 0 <= position <= seq.period_length:
            raise IndexError(f"Position {position} outside 0..{seq.period_length}")
        period = list(seq.period)
        angles = list(seq.angles[: seq.period_length])
        period.insert(position, extra.unsigned())
        angles.insert(position, Angle.zero())
        return RotationSequence.from_period(seq.n_main, period, angles, seq.trotter_steps)


def _anneal_with_stream(
    start: CompiledResource, d: DistanceMatrix, config: AnnealConfig, stream: np.random.SeedSequence
) -> AnnealTrace:
    return LcAnnealer.anneal(start, d, config, np.random.default_rng(stream))
