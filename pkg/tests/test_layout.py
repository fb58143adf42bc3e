from __future__ import annotations

import math

import numpy as np
import pytest

from polarscope.generate import barbell_graph, er_graph
from polarscope.graph import from_undirected_edges
from polarscope.layout import (
    DimensionMismatch,
    Layout,
    LayoutParams,
    layout_forceatlas2,
    render_payload,
)
from polarscope.partition import _make_partition, as_level_graph, bipartition


def fixed_partition(g, side):
    return _make_partition(as_level_graph(g), list(side), seed=0)


def centroid_stats(pos, groups):
    centroids = [pos[list(group)].mean(axis=0) for group in groups]
    separation = float(np.linalg.norm(centroids[0] - centroids[1]))
    spread = float(np.mean([
        np.linalg.norm(pos[list(group)] - c, axis=1).mean()
        for group, c in zip(groups, centroids)
    ]))
    return separation, spread


class TestForceLayout:
    def test_single_vertex_stays_at_origin(self):
        g = from_undirected_edges(1, [])
        layout = layout_forceatlas2(g)
        assert layout.converged
        assert np.allclose(layout.positions, 0.0)

    def test_two_vertex_equilibrium_distance(self):
        # attraction d balances repulsion 4*k_r/d at d* = 2*sqrt(k_r)
        g = from_undirected_edges(2, [(0, 1, 1)])
        target = 2.0 * math.sqrt(10.0)
        for seed in (1, 2, 3):
            layout = layout_forceatlas2(g, LayoutParams(gravity=0.0, seed=seed))
            d = float(np.linalg.norm(layout.positions[0] - layout.positions[1]))
            assert abs(d - target) / target <= 0.05

    def test_triangle_equilateral(self):
        g = from_undirected_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
        layout = layout_forceatlas2(g, LayoutParams(gravity=0.0, seed=2))
        d = [
            float(np.linalg.norm(layout.positions[i] - layout.positions[j]))
            for i, j in ((0, 1), (1, 2), (0, 2))
        ]
        assert (max(d) - min(d)) / min(d) <= 0.05

    def test_deterministic_given_seed(self):
        g = er_graph(30, 0.2, seed=5, connected=True)
        a = layout_forceatlas2(g, LayoutParams(seed=7))
        b = layout_forceatlas2(g, LayoutParams(seed=7))
        assert np.array_equal(a.positions, b.positions)

    def test_positions_finite_and_complete(self):
        g = er_graph(50, 0.1, seed=8, connected=True)
        layout = layout_forceatlas2(g, LayoutParams(seed=1))
        assert layout.positions.shape == (50, 2)
        assert np.isfinite(layout.positions).all()

    def test_energy_decreases(self):
        g = er_graph(60, 0.15, seed=3, connected=True)
        layout = layout_forceatlas2(g, LayoutParams(seed=4, iterations=200), record_trace=True)
        trace = layout.trace
        assert trace is not None and len(trace) >= 100
        assert np.mean(trace[-50:]) <= np.mean(trace[:50])

    def test_barbell_separation(self):
        g = barbell_graph(20, 1)
        layout = layout_forceatlas2(g, LayoutParams(seed=3))
        separation, spread = centroid_stats(layout.positions, [range(20), range(20, 40)])
        assert separation >= 2.0 * spread

    def test_single_community_cohesion(self):
        # pinned fixture: ER seed 3 (the ratio is instance-sensitive)
        g = er_graph(100, 0.3, seed=3, connected=True)
        layout = layout_forceatlas2(g, LayoutParams(seed=42))
        p = bipartition(g, 0.05, 42)
        groups = [p.side_vertices(0), p.side_vertices(1)]
        separation, spread = centroid_stats(layout.positions, groups)
        assert separation <= 1.0 * spread


class TestRenderPayload:
    def test_structure_only_coordinates(self):
        g = barbell_graph(5, 1)
        layout = layout_forceatlas2(g, LayoutParams(seed=1))
        p = fixed_partition(g, [0] * 5 + [1] * 5)
        flipped = fixed_partition(g, [1] * 5 + [0] * 5)
        a = render_payload(g, p, layout)
        b = render_payload(g, flipped, layout)
        assert [(n["x"], n["y"]) for n in a["nodes"]] == [(n["x"], n["y"]) for n in b["nodes"]]
        assert [n["side"] for n in a["nodes"]] == ["X"] * 5 + ["Y"] * 5
        assert [n["side"] for n in b["nodes"]] == ["Y"] * 5 + ["X"] * 5

    def test_coordinates_normalized(self):
        g = er_graph(40, 0.2, seed=2, connected=True)
        layout = layout_forceatlas2(g, LayoutParams(seed=2))
        payload = render_payload(g, bipartition(g, 0.05, 42), layout)
        xs = [n["x"] for n in payload["nodes"]]
        ys = [n["y"] for n in payload["nodes"]]
        assert all(-1.0 <= v <= 1.0 for v in xs + ys)
        assert max(max(map(abs, xs)), max(map(abs, ys))) == pytest.approx(1.0)

    def test_single_vertex_payload(self):
        g = from_undirected_edges(1, [])
        layout = layout_forceatlas2(g)
        p = fixed_partition(g, [0])
        payload = render_payload(g, p, layout)
        assert payload["nodes"] == [
            {"id": 0, "user": g.users[0], "x": 0.0, "y": 0.0, "side": "X", "endorsements": 0}
        ]
        assert payload["links"] == []

    def test_dimension_mismatch(self):
        g = barbell_graph(5, 1)
        p = fixed_partition(g, [0] * 5 + [1] * 5)
        short = Layout(positions=np.zeros((3, 2)), converged=True, mean_displacement=0.0)
        with pytest.raises(DimensionMismatch):
            render_payload(g, p, short)
        other = barbell_graph(4, 1)
        good = layout_forceatlas2(other, LayoutParams(seed=1))
        with pytest.raises(DimensionMismatch):
            render_payload(g, p, good)

    def test_barbell_payload_separated(self):
        g = barbell_graph(20, 1)
        layout = layout_forceatlas2(g, LayoutParams(seed=3))
        p = fixed_partition(g, [0] * 20 + [1] * 20)
        payload = render_payload(g, p, layout)
        pos = np.array([[n["x"], n["y"]] for n in payload["nodes"]])
        separation, spread = centroid_stats(pos, [range(20), range(20, 40)])
        assert separation >= 2.0 * spread
