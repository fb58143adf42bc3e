"""Random-walk controversy scoring of a partitioned retweet graph.

A walk starts at a uniformly random non-authority vertex of one side and
moves along undirected edges with probability proportional to edge weight
until it hits an authority (top endorsement receiver) of either side. With
p_AB the probability that a walk from side B is absorbed on side A,

    rwc_raw = p_xx * p_yy - p_yx * p_xy

is near 1 when the sides are separated and near 0 for a single community;
the display score clamps negatives to 0.

Two scorers are provided: an exact absorbing-chain linear solve and a
Monte Carlo walker whose per-walk randomness comes from counter-based
hashing, so walk results are independent of execution order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csc_matrix, identity
from scipy.sparse.linalg import splu

from . import PolarscopeError
from .graph import RetweetGraph, connected_components
from .partition import DEFAULT_EPS, DEFAULT_SEED, Partition, bipartition

DEFAULT_K = 10
DEFAULT_WALKS = 10_000
DEFAULT_MAX_STEPS = 100_000
EXACT_VERTEX_LIMIT = 20_000
SOLVE_RESIDUAL = 1e-10


class EmptySide(PolarscopeError):
    pass


class DomainError(PolarscopeError):
    pass


class NoTransientStart(PolarscopeError):
    """A side consists entirely of authorities; no walk can start there."""


class Disconnected(PolarscopeError):
    pass


class ZeroWalks(PolarscopeError):
    pass


@dataclass
class AuthoritySet:
    side: int
    vertices: list[int]  # sorted by (endorsements desc, vertex index asc)


@dataclass
class RwcScore:
    p_xx: float
    p_xy: float
    p_yx: float
    p_yy: float
    rwc_raw: float
    display_score: float
    k: int
    method: str  # "exact" | "montecarlo"
    walks: int | None = None
    stderr_estimate: float | None = None
    discarded: int = 0


def select_authorities(g: RetweetGraph, p: Partition, side: int, k: int) -> AuthoritySet:
    """Top-k endorsement receivers of one side; ties go to the smaller index."""
    if k < 1:
        raise DomainError("k must be at least 1")
    members = p.side_vertices(side)
    if not members:
        raise EmptySide(f"side {side} has no vertices")
    members.sort(key=lambda v: (-g.endorsements[v], v))
    return AuthoritySet(side=side, vertices=members[: min(k, len(members))])


def compute_rwc(p_xx: float, p_xy: float, p_yx: float, p_yy: float) -> tuple[float, float]:
    for value in (p_xx, p_xy, p_yx, p_yy):
        if not 0.0 <= value <= 1.0:
            raise DomainError(f"absorption probability {value} outside [0, 1]")
    rwc_raw = p_xx * p_yy - p_yx * p_xy
    return rwc_raw, max(0.0, rwc_raw)


def _prepare(g: RetweetGraph, p: Partition, k: int):
    if g.n_vertices != len(p.side):
        raise DomainError("partition does not match graph")
    info = connected_components(g)
    if len(info.sizes) != 1:
        raise Disconnected(f"graph has {len(info.sizes)} components")
    auth_x = select_authorities(g, p, 0, k)
    auth_y = select_authorities(g, p, 1, k)
    absorbing = set(auth_x.vertices) | set(auth_y.vertices)
    starts_x = [v for v in p.side_vertices(0) if v not in absorbing]
    starts_y = [v for v in p.side_vertices(1) if v not in absorbing]
    if not starts_x or not starts_y:
        raise NoTransientStart("a side consists entirely of authorities")
    # -1 transient, 0 absorbs for X, 1 absorbs for Y
    absorb_side = np.full(g.n_vertices, -1, dtype=np.int64)
    absorb_side[auth_x.vertices] = 0
    absorb_side[auth_y.vertices] = 1
    return absorb_side, starts_x, starts_y


def rwc_exact(g: RetweetGraph, p: Partition, k: int = DEFAULT_K) -> RwcScore:
    """Score by solving the absorbing-chain linear system (I - Q)B = R."""
    absorb_side, starts_x, starts_y = _prepare(g, p, k)
    transient = [v for v in range(g.n_vertices) if absorb_side[v] == -1]
    index = {v: i for i, v in enumerate(transient)}
    m = len(transient)

    rows, cols, vals = [], [], []
    r = np.zeros((m, 2))
    for i, u in enumerate(transient):
        degree = sum(g.adjacency[u].values())
        row_sum = 0.0
        for v, w in sorted(g.adjacency[u].items()):
            prob = w / degree
            row_sum += prob
            if absorb_side[v] == -1:
                rows.append(i)
                cols.append(index[v])
                vals.append(prob)
            else:
                r[i, absorb_side[v]] += prob
        assert abs(row_sum - 1.0) <= 1e-12, "transition row not stochastic"

    q = csc_matrix((vals, (rows, cols)), shape=(m, m))
    a = (identity(m, format="csc") - q).tocsc()
    lu = splu(a)
    b = np.column_stack([lu.solve(r[:, 0]), lu.solve(r[:, 1])])
    residual = np.abs(a @ b - r).max() if m else 0.0
    if residual > SOLVE_RESIDUAL:
        raise PolarscopeError(f"absorption solve residual {residual:.3e} too large")
    completeness = np.abs(b.sum(axis=1) - 1.0).max() if m else 0.0
    if completeness > 1e-8:
        raise PolarscopeError("absorption probabilities do not sum to 1")

    ix = [index[v] for v in starts_x]
    iy = [index[v] for v in starts_y]
    clamp = lambda x: min(max(float(x), 0.0), 1.0)  # shave solver float dust
    p_xx = clamp(b[ix, 0].mean())
    p_yx = clamp(b[ix, 1].mean())
    p_yy = clamp(b[iy, 1].mean())
    p_xy = clamp(b[iy, 0].mean())
    rwc_raw, display = compute_rwc(p_xx, p_xy, p_yx, p_yy)
    return RwcScore(
        p_xx=p_xx, p_xy=p_xy, p_yx=p_yx, p_yy=p_yy,
        rwc_raw=rwc_raw, display_score=display, k=k, method="exact",
    )


# counter-based uniforms: walk randomness is a pure function of
# (seed, side, walk id, step), so any execution order gives identical walks
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_WALK_SALT = np.uint64(0x9E3779B97F4A7C15)
_STEP_SALT = np.uint64(0xC2B2AE3D27D4EB4F)


def _splitmix(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):  # wraparound mod 2^64 is the point
        z = x + _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


def _uniforms(key: np.uint64, walk_ids: np.ndarray, step: int) -> np.ndarray:
    with np.errstate(over="ignore"):
        x = walk_ids * _WALK_SALT ^ np.uint64(step) * _STEP_SALT ^ key
    return (_splitmix(x) >> np.uint64(11)).astype(np.float64) / float(1 << 53)


def _walk_tables(g: RetweetGraph):
    """Flattened neighbor table with globally increasing cumulative boundaries."""
    neighbors = []
    boundaries = []
    row_start = np.zeros(g.n_vertices + 1, dtype=np.int64)
    for v in range(g.n_vertices):
        nbrs = sorted(g.adjacency[v].items())
        weights = np.array([w for _, w in nbrs], dtype=np.float64)
        cum = np.cumsum(weights) / weights.sum()
        cum[-1] = 1.0
        neighbors.extend(idx for idx, _ in nbrs)
        boundaries.extend(v + cum)
        row_start[v + 1] = len(neighbors)
    return np.array(neighbors, dtype=np.int64), np.array(boundaries, dtype=np.float64)


def rwc_montecarlo(
    g: RetweetGraph,
    p: Partition,
    k: int = DEFAULT_K,
    walks: int = DEFAULT_WALKS,
    seed: int = DEFAULT_SEED,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> RwcScore:
    """Score by simulating absorbing walks; see rwc_exact for the exact twin."""
    if walks < 1:
        raise ZeroWalks("walks must be at least 1")
    absorb_side, starts_x, starts_y = _prepare(g, p, k)
    neighbors, boundaries = _walk_tables(g)

    counts = np.zeros((2, 2), dtype=np.int64)  # [start side, absorbed side]
    discarded = 0
    for side, starts in ((0, starts_x), (1, starts_y)):
        key = _splitmix(np.uint64((seed & 0xFFFFFFFFFFFFFFFF)) ^ np.uint64(side + 1))
        start_array = np.array(starts, dtype=np.int64)
        next_id = 0
        pending = walks
        rounds = 0
        while pending:
            walk_ids = np.arange(next_id, next_id + pending, dtype=np.uint64)
            next_id += pending
            pos = start_array[
                (_uniforms(key, walk_ids, 0) * len(start_array)).astype(np.int64)
            ]
            active = np.ones(pending, dtype=bool)
            for step in range(1, max_steps + 1):
                ids = walk_ids[active]
                if ids.size == 0:
                    break
                q = pos[active] + _uniforms(key, ids, step)
                nxt = neighbors[np.searchsorted(boundaries, q, side="right")]
                landed = absorb_side[nxt]
                done = landed >= 0
                if done.any():
                    for absorbed in (0, 1):
                        counts[side, absorbed] += int((landed[done] == absorbed).sum())
                active_idx = np.flatnonzero(active)
                pos[active_idx] = nxt
                active[active_idx[done]] = False
            remaining = int(active.sum())
            discarded += remaining
            pending = remaining
            rounds += 1
            if rounds > 64:
                raise PolarscopeError("walks repeatedly exceeded max_steps")

    p_xx = counts[0, 0] / walks
    p_yx = counts[0, 1] / walks
    p_yy = counts[1, 1] / walks
    p_xy = counts[1, 0] / walks
    rwc_raw, display = compute_rwc(p_xx, p_xy, p_yx, p_yy)
    se_xx = np.sqrt(p_xx * (1.0 - p_xx) / walks)
    se_yy = np.sqrt(p_yy * (1.0 - p_yy) / walks)
    # first-order propagation through the RWC formula; with complementary
    # columns rwc_raw = p_xx + p_yy - 1, so the variances add
    stderr = float(np.sqrt(se_xx**2 + se_yy**2))
    return RwcScore(
        p_xx=p_xx, p_xy=p_xy, p_yx=p_yx, p_yy=p_yy,
        rwc_raw=rwc_raw, display_score=display, k=k, method="montecarlo",
        walks=walks, stderr_estimate=stderr, discarded=discarded,
    )


def score_topic(
    g: RetweetGraph,
    eps: float = DEFAULT_EPS,
    k: int = DEFAULT_K,
    seed: int = DEFAULT_SEED,
    mode: str = "auto",
    walks: int = DEFAULT_WALKS,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> tuple[Partition, RwcScore]:
    """Bipartition a connected graph and score the split.

    mode "auto" solves exactly up to 20k vertices and falls back to
    Monte Carlo beyond that.
    """
    if g.n_vertices < 2:
        raise DomainError("scoring needs at least 2 vertices")
    p = bipartition(g, eps=eps, seed=seed)
    if mode == "auto":
        mode = "exact" if g.n_vertices <= EXACT_VERTEX_LIMIT else "montecarlo"
    if mode == "exact":
        score = rwc_exact(g, p, k)
    elif mode == "montecarlo":
        score = rwc_montecarlo(g, p, k, walks=walks, seed=seed, max_steps=max_steps)
    else:
        raise DomainError(f"unknown mode {mode!r}")
    return p, score


__all__ = [
    "AuthoritySet",
    "RwcScore",
    "EmptySide",
    "DomainError",
    "NoTransientStart",
    "Disconnected",
    "ZeroWalks",
    "DEFAULT_K",
    "DEFAULT_WALKS",
    "select_authorities",
    "compute_rwc",
    "rwc_exact",
    "rwc_montecarlo",
    "score_topic",
]
