"""Structure-only force-directed layout.

Forces per iteration: spring attraction along edges (distance times edge
weight), degree-weighted pairwise repulsion, and constant-magnitude gravity
toward the origin. Per-vertex speed is damped by swing (the change between
successive force vectors) and displacement is clamped. The function never
sees a partition, so the rendered geometry depends on graph structure only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import PolarscopeError
from .graph import RetweetGraph
from .partition import Partition

_BLOCK = 512  # row block for the O(V^2) repulsion accumulation
_MIN_DIST = 1e-2
_CONVERGENCE = 1e-3


class DimensionMismatch(PolarscopeError):
    pass


@dataclass
class LayoutParams:
    repulsion_scale: float = 10.0
    gravity: float = 1.0
    iterations: int = 600
    speed: float = 1.0
    max_displacement: float = 10.0
    seed: int = 42


@dataclass
class Layout:
    positions: np.ndarray  # (n, 2)
    converged: bool
    mean_displacement: float
    trace: list[float] | None = None  # per-iteration mean displacement, opt-in

    def positions_list(self) -> list[list[float]]:
        return [[float(x), float(y)] for x, y in self.positions]


def layout_forceatlas2(
    g: RetweetGraph,
    params: LayoutParams | None = None,
    record_trace: bool = False,
) -> Layout:
    """Run the force simulation to equilibrium or the iteration budget."""
    if params is None:
        params = LayoutParams()
    n = g.n_vertices
    if n == 0:
        raise DimensionMismatch("layout needs at least one vertex")
    if n == 1:
        return Layout(positions=np.zeros((1, 2)), converged=True, mean_displacement=0.0,
                      trace=[0.0] if record_trace else None)

    rng = np.random.default_rng(params.seed)
    angle = rng.uniform(0.0, 2.0 * np.pi, size=n)
    radius = np.sqrt(rng.uniform(0.0, 1.0, size=n))
    pos = np.column_stack([radius * np.cos(angle), radius * np.sin(angle)])

    mass = np.array(g.degrees(), dtype=np.float64) + 1.0
    edges = g.undirected_edges()
    eu = np.array([e[0] for e in edges], dtype=np.int64)
    ev = np.array([e[1] for e in edges], dtype=np.int64)
    ew = np.array([e[2] for e in edges], dtype=np.float64)

    prev_force = np.zeros((n, 2))
    speed = params.speed
    speed_efficiency = 1.0
    converged = False
    mean_disp = 0.0
    trace: list[float] | None = [] if record_trace else None
    for _ in range(params.iterations):
        force = np.zeros((n, 2))

        for lo in range(0, n, _BLOCK):
            hi = min(lo + _BLOCK, n)
            diff = pos[lo:hi, None, :] - pos[None, :, :]
            dist2 = np.maximum((diff**2).sum(axis=2), _MIN_DIST**2)
            scale = params.repulsion_scale * mass[lo:hi, None] * mass[None, :] / dist2
            force[lo:hi] += (diff * scale[:, :, None]).sum(axis=1)

        if eu.size:
            pull = (pos[ev] - pos[eu]) * ew[:, None]
            np.add.at(force, eu, pull)
            np.add.at(force, ev, -pull)

        norms = np.linalg.norm(pos, axis=1)
        away = np.divide(pos, norms[:, None], out=np.zeros_like(pos), where=norms[:, None] > 1e-12)
        force -= params.gravity * mass[:, None] * away

        # global speed follows the swing/traction balance; per-vertex speed
        # is damped by each vertex's own swing
        swing = np.linalg.norm(force - prev_force, axis=1)
        traction = np.linalg.norm(force + prev_force, axis=1) / 2.0
        total_swing = max(float((mass * swing).sum()), 1e-12)
        total_traction = max(float((mass * traction).sum()), 1e-12)
        est_jitter = 0.05 * np.sqrt(n)
        jitter = max(np.sqrt(est_jitter),
                     min(10.0, est_jitter * total_traction / n**2))
        if total_swing / total_traction > 2.0 and speed_efficiency > 0.05:
            speed_efficiency *= 0.5
            jitter = max(jitter, 1.0)
        target_speed = jitter * speed_efficiency * total_traction / total_swing
        if total_swing > jitter * total_traction:
            if speed_efficiency > 0.05:
                speed_efficiency *= 0.7
        elif speed < 1000.0:
            speed_efficiency *= 1.3
        speed = speed + min(target_speed - speed, 0.5 * speed)

        local_speed = speed / (1.0 + np.sqrt(speed * swing))
        disp = force * local_speed[:, None]
        disp_norm = np.linalg.norm(disp, axis=1)
        too_far = disp_norm > params.max_displacement
        if too_far.any():
            disp[too_far] *= (params.max_displacement / disp_norm[too_far])[:, None]
        pos += disp
        prev_force = force

        mean_disp = float(np.linalg.norm(disp, axis=1).mean())
        if trace is not None:
            trace.append(mean_disp)
        centroid = pos.mean(axis=0)
        extent = float(np.linalg.norm(pos - centroid, axis=1).max())
        if mean_disp < _CONVERGENCE * max(extent, 1e-9):
            converged = True
            break

    return Layout(positions=pos, converged=converged, mean_displacement=mean_disp, trace=trace)


def render_payload(g: RetweetGraph, p: Partition, layout: Layout) -> dict:
    """Node-link visualization document with normalized coordinates and sides."""
    n = g.n_vertices
    if len(layout.positions) != n:
        raise DimensionMismatch(f"layout has {len(layout.positions)} positions for {n} vertices")
    if len(p.side) != n:
        raise DimensionMismatch(f"partition has {len(p.side)} labels for {n} vertices")

    pos = np.asarray(layout.positions, dtype=np.float64)
    center = (pos.max(axis=0) + pos.min(axis=0)) / 2.0
    shifted = pos - center
    scale = float(np.abs(shifted).max())
    normalized = shifted / scale if scale > 0 else shifted

    labels = p.side_labels()
    nodes = [
        {
            "id": i,
            "user": g.users[i],
            "x": float(normalized[i, 0]),
            "y": float(normalized[i, 1]),
            "side": labels[i],
            "endorsements": g.endorsements[i],
        }
        for i in range(n)
    ]
    links = [
        {"source": u, "target": v, "weight": w}
        for (u, v), w in sorted(g.directed_edges.items())
    ]
    return {"nodes": nodes, "links": links}


__all__ = ["LayoutParams", "Layout", "DimensionMismatch", "layout_forceatlas2", "render_payload"]
