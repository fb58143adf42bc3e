"""Two-way graph bipartitioning via the standard multilevel scheme.

Coarsen with heavy-edge matching, bipartition the coarsest graph by greedy
region growing, then uncoarsen with Fiduccia-Mattheyses refinement at every
level. All tie-breaks resolve toward the smaller vertex index so results
are deterministic for a fixed (graph, eps, seed).
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass

from . import PolarscopeError
from .graph import RetweetGraph

DEFAULT_EPS = 0.05
DEFAULT_SEED = 42
COARSEST_SIZE = 40
MIN_SHRINK = 0.10
GROW_RUNS = 8
RESTARTS = 4
MAX_FM_PASSES = 10

SIDE_LABELS = ("X", "Y")


class InfeasibleBalance(PolarscopeError):
    """No bipartition can satisfy the requested balance tolerance."""


@dataclass
class LevelGraph:
    """Weighted undirected graph used inside the multilevel hierarchy."""

    adjacency: list[dict[int, int]]
    vertex_weights: list[int]

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def total_vertex_weight(self) -> int:
        return sum(self.vertex_weights)

    def edges(self):
        for u, nbrs in enumerate(self.adjacency):
            for v, w in nbrs.items():
                if u < v:
                    yield u, v, w


@dataclass
class CoarseningLevel:
    fine_to_coarse: tuple[int, ...]
    coarse: LevelGraph


@dataclass
class Partition:
    side: tuple[int, ...]  # 0 = X, 1 = Y
    cut_weight: int
    balance: float  # share of total vertex weight on side X
    seed: int

    def side_labels(self) -> tuple[str, ...]:
        return tuple(SIDE_LABELS[s] for s in self.side)

    def side_vertices(self, side: int) -> list[int]:
        return [v for v, s in enumerate(self.side) if s == side]


def as_level_graph(g: RetweetGraph | LevelGraph) -> LevelGraph:
    if isinstance(g, LevelGraph):
        return g
    return LevelGraph(
        adjacency=[dict(nbrs) for nbrs in g.adjacency],
        vertex_weights=[1] * g.n_vertices,
    )


def compute_cut(g: LevelGraph, side) -> int:
    cut = 0
    for u, v, w in g.edges():
        if side[u] != side[v]:
            cut += w
    return cut


def _balance_bounds(total: float, eps: float) -> tuple[float, float]:
    # tiny float guard so integer weights hitting the bound exactly stay feasible
    return (0.5 - eps) * total - 1e-9, (0.5 + eps) * total + 1e-9


def _make_partition(g: LevelGraph, side: list[int], seed: int) -> Partition:
    total = g.total_vertex_weight()
    weight_x = sum(w for w, s in zip(g.vertex_weights, side) if s == 0)
    return Partition(
        side=tuple(side),
        cut_weight=compute_cut(g, side),
        balance=weight_x / total if total else 0.0,
        seed=seed,
    )


def _canonicalize(side: list[int]) -> list[int]:
    # side X is the side containing vertex 0
    if side and side[0] == 1:
        return [1 - s for s in side]
    return side


def coarsen(g: RetweetGraph | LevelGraph, seed: int) -> list[CoarseningLevel]:
    """Heavy-edge-matching hierarchy, finest level first.

    Matching rounds repeat until the coarse graph has at most 40 vertices or
    a round shrinks the vertex count by less than 10%. At least one round is
    performed for graphs with two or more vertices.
    """
    rng = random.Random(seed)
    current = as_level_graph(g)
    levels: list[CoarseningLevel] = []
    while current.n >= 2:
        if levels and current.n <= COARSEST_SIZE:
            break
        matched = _match_round(current, rng)
        mapping, coarse = _contract(current, matched)
        if coarse.n > (1.0 - MIN_SHRINK) * current.n:
            break
        levels.append(CoarseningLevel(fine_to_coarse=mapping, coarse=coarse))
        current = coarse
    return levels


def _match_round(g: LevelGraph, rng: random.Random) -> list[int]:
    """One heavy-edge matching pass; returns partner per vertex (-1 if single)."""
    order = list(range(g.n))
    rng.shuffle(order)
    partner = [-1] * g.n
    for u in order:
        if partner[u] != -1:
            continue
        best = -1
        best_w = 0
        for v, w in g.adjacency[u].items():
            if partner[v] != -1 or v == u:
                continue
            if w > best_w or (w == best_w and (best == -1 or v < best)):
                best, best_w = v, w
        if best != -1:
            partner[u] = best
            partner[best] = u
    return partner


def _contract(g: LevelGraph, partner: list[int]) -> tuple[tuple[int, ...], LevelGraph]:
    mapping = [-1] * g.n
    coarse_weights: list[int] = []
    for v in range(g.n):
        if mapping[v] != -1:
            continue
        cid = len(coarse_weights)
        mapping[v] = cid
        weight = g.vertex_weights[v]
        mate = partner[v]
        if mate != -1 and mapping[mate] == -1:
            mapping[mate] = cid
            weight += g.vertex_weights[mate]
        coarse_weights.append(weight)
    adjacency: list[dict[int, int]] = [dict() for _ in coarse_weights]
    for u, v, w in g.edges():
        cu, cv = mapping[u], mapping[v]
        if cu == cv:
            continue
        adjacency[cu][cv] = adjacency[cu].get(cv, 0) + w
        adjacency[cv][cu] = adjacency[cv].get(cu, 0) + w
    return tuple(mapping), LevelGraph(adjacency=adjacency, vertex_weights=coarse_weights)


def initial_bipartition(g: RetweetGraph | LevelGraph, eps: float, seed: int) -> Partition:
    """Best of several greedy region-growing runs on a (typically coarse) graph.

    Each run grows side X from a random seed vertex by absorbing the frontier
    vertex with maximum attached weight, skipping vertices that would push X
    past the balance ceiling, until X reaches the balance floor.
    """
    lg = as_level_graph(g)
    if lg.n < 2:
        raise InfeasibleBalance("cannot split fewer than 2 vertices")
    total = lg.total_vertex_weight()
    lo, hi = _balance_bounds(total, eps)
    if max(lg.vertex_weights) > hi:
        raise InfeasibleBalance("a single vertex exceeds the balance ceiling")

    rng = random.Random(seed)
    best_side: list[int] | None = None
    best_cut = None
    for _ in range(GROW_RUNS):
        side = _grow_run(lg, rng.randrange(lg.n), lo, hi)
        if side is None:
            continue
        cut = compute_cut(lg, side)
        if best_cut is None or cut < best_cut:
            best_side, best_cut = side, cut
    if best_side is None:
        raise InfeasibleBalance(f"no balanced split found within eps={eps}")
    return _make_partition(lg, _canonicalize(best_side), seed)


def _grow_run(g: LevelGraph, start: int, lo: float, hi: float) -> list[int] | None:
    """Grow X from a seed, returning the smallest-cut prefix inside [lo, hi]."""
    weight_x = g.vertex_weights[start]
    if weight_x > hi:
        return None
    in_x = [False] * g.n
    in_x[start] = True
    attach: dict[int, int] = dict(g.adjacency[start])
    cut = sum(g.adjacency[start].values())
    best_cut = None
    best_side = None
    if lo <= weight_x:
        best_cut, best_side = cut, [0 if flag else 1 for flag in in_x]
    while weight_x < hi:
        best = -1
        best_w = -1
        for v, w in attach.items():
            if weight_x + g.vertex_weights[v] > hi:
                continue
            if w > best_w or (w == best_w and v < best):
                best, best_w = v, w
        if best == -1:
            break
        in_x[best] = True
        weight_x += g.vertex_weights[best]
        cut += sum(w for v, w in g.adjacency[best].items() if not in_x[v]) - attach[best]
        del attach[best]
        for v, w in g.adjacency[best].items():
            if not in_x[v]:
                attach[v] = attach.get(v, 0) + w
        if lo <= weight_x and (best_cut is None or cut < best_cut):
            best_cut = cut
            best_side = [0 if flag else 1 for flag in in_x]
    return best_side


def fm_refine(
    g: RetweetGraph | LevelGraph,
    p: Partition,
    eps: float,
    max_passes: int = MAX_FM_PASSES,
) -> Partition:
    """Fiduccia-Mattheyses passes; the result never cuts more than the input."""
    lg = as_level_graph(g)
    side = list(p.side)
    total = lg.total_vertex_weight()
    lo, hi = _balance_bounds(total, eps)
    cut = compute_cut(lg, side)
    for _ in range(max_passes):
        new_cut = _fm_pass(lg, side, lo, hi, cut)
        assert new_cut <= cut, "FM pass increased the cut"
        if new_cut == cut:
            break
        cut = new_cut
    refined = _make_partition(lg, side, p.seed)
    assert refined.cut_weight <= p.cut_weight
    return refined


def _fm_pass(g: LevelGraph, side: list[int], lo: float, hi: float, cut_in: int) -> int:
    """One FM pass: move max-gain feasible vertices, then keep the best prefix.

    Mutates ``side`` in place and returns the resulting cut weight.
    """
    n = g.n
    gains = [0] * n
    for u, nbrs in enumerate(g.adjacency):
        gain = 0
        for v, w in nbrs.items():
            gain += w if side[u] != side[v] else -w
        gains[u] = gain

    weight_x = sum(w for w, s in zip(g.vertex_weights, side) if s == 0)
    stamp = [0] * n
    heap: list[tuple[int, int, int]] = [(-gains[v], v, 0) for v in range(n)]
    heapq.heapify(heap)
    locked = [False] * n

    moves: list[int] = []
    cuts: list[int] = []
    cut = cut_in
    deferred: list[tuple[int, int, int]] = []

    while heap or deferred:
        chosen = -1
        while heap:
            neg_gain, v, s = heapq.heappop(heap)
            if locked[v] or s != stamp[v]:
                continue
            delta = -g.vertex_weights[v] if side[v] == 0 else g.vertex_weights[v]
            if lo <= weight_x + delta <= hi:
                chosen = v
                break
            deferred.append((neg_gain, v, s))
        if chosen == -1:
            break

        locked[chosen] = True
        old_side = side[chosen]
        side[chosen] = 1 - old_side
        weight_x += -g.vertex_weights[chosen] if old_side == 0 else g.vertex_weights[chosen]
        cut -= gains[chosen]
        moves.append(chosen)
        cuts.append(cut)

        for v, w in g.adjacency[chosen].items():
            if locked[v]:
                continue
            # edge flipped between internal and external for v
            gains[v] += -2 * w if side[v] == side[chosen] else 2 * w
            stamp[v] += 1
            heapq.heappush(heap, (-gains[v], v, stamp[v]))
        gains[chosen] = -gains[chosen]

        # balance changed; deferred candidates may be feasible again
        for item in deferred:
            if not locked[item[1]] and item[2] == stamp[item[1]]:
                heapq.heappush(heap, item)
        deferred.clear()

    best_idx = -1
    best_cut = cut_in
    for idx, value in enumerate(cuts):
        if value < best_cut:
            best_idx, best_cut = idx, value
    for v in moves[best_idx + 1:]:
        side[v] = 1 - side[v]
    return best_cut


def bipartition(
    g: RetweetGraph | LevelGraph,
    eps: float = DEFAULT_EPS,
    seed: int = DEFAULT_SEED,
) -> Partition:
    """Full multilevel bipartition of a connected graph.

    Several independent restarts (coarsening orders and growing seeds derived
    from ``seed``) are run and the smallest cut wins; if the coarsest level of
    an attempt admits no balanced split, the attempt falls back to the finest
    level that does. Deterministic for fixed (g, eps, seed).
    """
    lg = as_level_graph(g)
    if lg.n < 2:
        raise InfeasibleBalance("cannot split fewer than 2 vertices")
    master = random.Random(seed)
    attempt_seeds = [master.randrange(1 << 62) for _ in range(RESTARTS)]

    best: list[int] | None = None
    best_cut = None
    for attempt_seed in attempt_seeds:
        arng = random.Random(attempt_seed)
        coarsen_seed = arng.randrange(1 << 62)
        init_seed = arng.randrange(1 << 62)

        levels = coarsen(lg, coarsen_seed)
        graphs = [lg] + [level.coarse for level in levels]

        start = None
        initial = None
        for idx in range(len(graphs) - 1, -1, -1):
            try:
                initial = initial_bipartition(graphs[idx], eps, init_seed)
            except InfeasibleBalance:
                continue
            start = idx
            break
        if initial is None or start is None:
            continue

        refined = fm_refine(graphs[start], initial, eps)
        side = list(refined.side)
        for idx in range(start - 1, -1, -1):
            mapping = levels[idx].fine_to_coarse
            side = [side[mapping[v]] for v in range(graphs[idx].n)]
            projected = _make_partition(graphs[idx], side, seed)
            side = list(fm_refine(graphs[idx], projected, eps).side)

        cut = compute_cut(lg, side)
        if best_cut is None or cut < best_cut:
            best, best_cut = side, cut

    if best is None:
        raise InfeasibleBalance(f"no balanced split found within eps={eps}")
    return _make_partition(lg, _canonicalize(best), seed)


__all__ = [
    "Partition",
    "LevelGraph",
    "CoarseningLevel",
    "InfeasibleBalance",
    "SIDE_LABELS",
    "DEFAULT_EPS",
    "DEFAULT_SEED",
    "as_level_graph",
    "compute_cut",
    "coarsen",
    "initial_bipartition",
    "fm_refine",
    "bipartition",
]
