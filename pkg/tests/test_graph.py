from __future__ import annotations

import random
import xml.etree.ElementTree as ET
from datetime import date

import pytest

from polarscope.graph import (
    EmptyActivity,
    build_retweet_graph,
    connected_components,
    from_node_link,
    from_undirected_edges,
    largest_component_subgraph,
    to_gexf,
    to_node_link,
    to_node_link_json,
)
from polarscope.ingest import TopicActivity, bucket_topics

from conftest import make_activity, make_tweet


class TestBuild:
    def test_double_retweet_collapses_to_weight_two(self):
        tweets = [
            make_tweet("1", "u2", "#a original"),
            make_tweet("2", "u1", "RT @u2: #a original", rt=("1", "u2")),
            make_tweet("3", "u1", "RT @u2: #a original", rt=("1", "u2")),
        ]
        g = build_retweet_graph(make_activity("a", tweets))
        assert g.users == ("u1", "u2")
        assert g.directed_edges == {(0, 1): 2}
        assert g.endorsements == [0, 2]

    def test_isolated_contributor_is_a_vertex(self):
        tweets = [make_tweet("1", "u1", "#a"), make_tweet("2", "u3", "#a alone")]
        g = build_retweet_graph(make_activity("a", tweets))
        assert "u3" in g.users
        assert g.directed_edges == {}

    def test_self_retweet_dropped(self):
        tweets = [
            make_tweet("1", "u1", "#a"),
            make_tweet("2", "u1", "RT @u1: #a", rt=("1", "u1")),
        ]
        g = build_retweet_graph(make_activity("a", tweets))
        assert g.directed_edges == {}

    def test_empty_activity_raises(self):
        with pytest.raises(EmptyActivity):
            build_retweet_graph(TopicActivity(hashtag="a", day=date(2015, 6, 3)))

    def test_order_independence(self):
        rng = random.Random(3)
        tweets = [make_tweet("1", "u2", "#a first")]
        for i in range(2, 60):
            target = rng.randint(1, i - 1)
            tweets.append(
                make_tweet(str(i), f"u{rng.randint(1, 12)}", "RT: #a first",
                           rt=(str(target), f"u{rng.randint(1, 12)}"))
            )
        g1 = build_retweet_graph(make_activity("a", tweets))
        shuffled = tweets[:]
        rng.shuffle(shuffled)
        g2 = build_retweet_graph(make_activity("a", shuffled))
        assert g1 == g2  # sorted-user indexing makes equality literal

    def test_brute_force_recount(self):
        rng = random.Random(9)
        tweets = []
        for i in range(800):
            rt = None
            if rng.random() < 0.5:
                rt = (str(rng.randint(0, 799)), f"u{rng.randint(0, 40)}")
            tweets.append(make_tweet(str(i), f"u{rng.randint(0, 40)}", "#a", rt=rt))
        activity = bucket_topics(tweets, date(2015, 6, 3), min_users=1)["a"]
        g = build_retweet_graph(activity)

        assert g.n_vertices == len(activity.users)
        qualifying = sum(
            1 for t in activity.tweets
            if t.retweet_of is not None and t.retweet_of[1] != t.author_id
        )
        assert g.total_weight() == qualifying
        assert sum(g.endorsements) == g.total_weight()
        for (u, v), w in g.directed_edges.items():
            assert u != v
            assert w > 0
            assert g.adjacency[u][v] == g.adjacency[v][u]


class TestComponents:
    def test_two_disjoint_edges(self):
        g = from_undirected_edges(4, [(0, 1, 1), (2, 3, 1)])
        info = connected_components(g)
        assert info.sizes == [2, 2]
        assert info.component_id == [0, 0, 1, 1]

    def test_empty_graph(self):
        g = from_undirected_edges(0, [])
        assert connected_components(g).sizes == []

    def test_barbell_single_component(self):
        edges = [(i, j, 1) for i in range(5) for j in range(i + 1, 5)]
        edges += [(5 + i, 5 + j, 1) for i in range(5) for j in range(i + 1, 5)]
        edges.append((4, 5, 1))
        info = connected_components(from_undirected_edges(10, edges))
        assert info.sizes == [10]

    def test_labels_by_smallest_vertex(self):
        g = from_undirected_edges(4, [(1, 3, 1), (0, 2, 1)])
        info = connected_components(g)
        assert info.component_id == [0, 1, 0, 1]


class TestLargestComponent:
    def test_k5_union_k3(self):
        edges = [(i, j, 1) for i in range(5) for j in range(i + 1, 5)]
        edges += [(5 + i, 5 + j, 1) for i in range(3) for j in range(i + 1, 3)]
        sub = largest_component_subgraph(from_undirected_edges(8, edges))
        assert sub.n_vertices == 5
        assert sub.n_edges == 10

    def test_connected_graph_identity(self):
        g = from_undirected_edges(3, [(0, 1, 2), (1, 2, 1)])
        sub = largest_component_subgraph(g)
        assert sub == g

    def test_tie_breaks_to_smallest_vertex(self):
        g = from_undirected_edges(4, [(0, 1, 1), (2, 3, 1)],
                                  users=("a", "b", "c", "d"))
        sub = largest_component_subgraph(g)
        assert sub.users == ("a", "b")

    def test_reindexing_preserves_user_ids(self):
        g = from_undirected_edges(5, [(1, 3, 1), (3, 4, 1)],
                                  users=("a", "b", "c", "d", "e"))
        sub = largest_component_subgraph(g)
        assert sub.users == ("b", "d", "e")
        assert sub.directed_edges == {(0, 1): 1, (1, 2): 1}


class TestExports:
    def test_node_link_round_trip(self):
        g = from_undirected_edges(4, [(0, 1, 2), (1, 2, 1), (2, 3, 5)])
        doc = to_node_link(g)
        assert from_node_link(doc) == g

    def test_node_link_deterministic(self):
        g = from_undirected_edges(3, [(0, 2, 1), (0, 1, 1)])
        assert to_node_link_json(g) == to_node_link_json(g)
        ids = [n["id"] for n in to_node_link(g)["nodes"]]
        assert ids == sorted(ids)

    def test_gexf_parses_and_counts(self):
        g = from_undirected_edges(3, [(0, 1, 2), (1, 2, 1)])
        root = ET.fromstring(to_gexf(g))
        ns = {"g": "http://www.gexf.net/1.2draft"}
        nodes = root.findall(".//g:node", ns)
        edges = root.findall(".//g:edge", ns)
        assert len(nodes) == 3
        assert len(edges) == 2

    def test_gexf_escapes_labels(self):
        g = from_undirected_edges(2, [(0, 1, 1)], users=('a"<&>', "b"))
        root = ET.fromstring(to_gexf(g))
        ns = {"g": "http://www.gexf.net/1.2draft"}
        labels = [n.get("label") for n in root.findall(".//g:node", ns)]
        assert 'a"<&>' in labels
