"""Per-topic retweet graph: construction, components, exports.

Vertices are indexed densely in sorted user-id order, which makes graph
construction independent of tweet order. The directed view carries
endorsement counts (retweeter -> original author); partitioning and layout
consume the symmetric undirected view.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from xml.sax.saxutils import quoteattr

from . import PolarscopeError
from .ingest import TopicActivity


class EmptyActivity(PolarscopeError):
    pass


class EmptyGraph(PolarscopeError):
    pass


@dataclass
class RetweetGraph:
    users: tuple[str, ...]  # user_id per vertex index
    directed_edges: dict[tuple[int, int], int]  # (from, to) -> retweet count
    adjacency: list[dict[int, int]]  # undirected view, weight per neighbor
    endorsements: list[int]  # weighted in-degree in directed_edges

    @property
    def n_vertices(self) -> int:
        return len(self.users)

    @property
    def n_edges(self) -> int:
        """Number of distinct undirected edges."""
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def total_weight(self) -> int:
        return sum(self.directed_edges.values())

    def degrees(self) -> list[int]:
        """Unweighted undirected degree per vertex."""
        return [len(nbrs) for nbrs in self.adjacency]

    def undirected_edges(self) -> list[tuple[int, int, int]]:
        """Distinct (u, v, weight) with u < v, sorted."""
        out = []
        for u, nbrs in enumerate(self.adjacency):
            for v, w in nbrs.items():
                if u < v:
                    out.append((u, v, w))
        out.sort()
        return out


@dataclass
class ComponentInfo:
    component_id: list[int]  # per vertex; labels ordered by smallest contained vertex
    sizes: list[int]
    largest: int = field(default=0)  # component id of the largest (ties: smallest id)


def build_retweet_graph(activity: TopicActivity) -> RetweetGraph:
    """Build the retweet graph for one topic activity.

    One vertex per user in the activity (tweet authors plus retweeted
    original authors). Each non-self retweet adds 1 to the directed weight
    retweeter -> original author.
    """
    if not activity.tweets:
        raise EmptyActivity(f"no tweets for topic {activity.hashtag!r}")

    users = tuple(sorted(activity.users))
    index = {user: i for i, user in enumerate(users)}

    directed: dict[tuple[int, int], int] = {}
    for tweet in activity.tweets:
        if tweet.retweet_of is None:
            continue
        _, original_author = tweet.retweet_of
        if original_author == tweet.author_id:
            continue  # self-retweet
        key = (index[tweet.author_id], index[original_author])
        directed[key] = directed.get(key, 0) + 1

    adjacency: list[dict[int, int]] = [dict() for _ in users]
    endorsements = [0] * len(users)
    for (u, v), w in directed.items():
        adjacency[u][v] = adjacency[u].get(v, 0) + w
        adjacency[v][u] = adjacency[v].get(u, 0) + w
        endorsements[v] += w

    return RetweetGraph(
        users=users,
        directed_edges=directed,
        adjacency=adjacency,
        endorsements=endorsements,
    )


def from_undirected_edges(
    n: int,
    edges: list[tuple[int, int, int]],
    users: tuple[str, ...] | None = None,
) -> RetweetGraph:
    """Assemble a RetweetGraph from an undirected weighted edge list.

    Each undirected edge (u, v, w) is stored as a directed edge u -> v;
    useful for synthetic fixtures where direction is immaterial.
    """
    if users is None:
        width = max(4, len(str(max(n - 1, 0))))
        users = tuple(f"u{i:0{width}d}" for i in range(n))
    directed: dict[tuple[int, int], int] = {}
    for u, v, w in edges:
        if u == v:
            continue
        directed[(u, v)] = directed.get((u, v), 0) + w
    adjacency: list[dict[int, int]] = [dict() for _ in range(n)]
    endorsements = [0] * n
    for (u, v), w in directed.items():
        adjacency[u][v] = adjacency[u].get(v, 0) + w
        adjacency[v][u] = adjacency[v].get(u, 0) + w
        endorsements[v] += w
    return RetweetGraph(users=users, directed_edges=directed,
                        adjacency=adjacency, endorsements=endorsements)


def connected_components(g: RetweetGraph) -> ComponentInfo:
    """Components of the undirected view, labeled by smallest contained vertex."""
    n = g.n_vertices
    component_id = [-1] * n
    sizes: list[int] = []
    for start in range(n):
        if component_id[start] != -1:
            continue
        label = len(sizes)
        stack = [start]
        component_id[start] = label
        count = 0
        while stack:
            u = stack.pop()
            count += 1
            for v in g.adjacency[u]:
                if component_id[v] == -1:
                    component_id[v] = label
                    stack.append(v)
        sizes.append(count)
    largest = 0
    for cid, size in enumerate(sizes):
        if size > sizes[largest]:
            largest = cid
    return ComponentInfo(component_id=component_id, sizes=sizes, largest=largest)


def largest_component_subgraph(g: RetweetGraph) -> RetweetGraph:
    """Induced subgraph on the largest component, vertex indices re-densified."""
    if g.n_vertices == 0:
        raise EmptyGraph("graph has no vertices")
    info = connected_components(g)
    keep = [v for v in range(g.n_vertices) if info.component_id[v] == info.largest]
    remap = {old: new for new, old in enumerate(keep)}
    users = tuple(g.users[v] for v in keep)
    directed = {
        (remap[u], remap[v]): w
        for (u, v), w in g.directed_edges.items()
        if u in remap and v in remap
    }
    adjacency: list[dict[int, int]] = [dict() for _ in keep]
    endorsements = [0] * len(keep)
    for (u, v), w in directed.items():
        adjacency[u][v] = adjacency[u].get(v, 0) + w
        adjacency[v][u] = adjacency[v].get(u, 0) + w
        endorsements[v] += w
    return RetweetGraph(users=users, directed_edges=directed,
                        adjacency=adjacency, endorsements=endorsements)


def to_node_link(g: RetweetGraph) -> dict:
    """Deterministic node-link document (nodes/links sorted by vertex index)."""
    nodes = [
        {"id": i, "user": user, "endorsements": g.endorsements[i]}
        for i, user in enumerate(g.users)
    ]
    links = [
        {"source": u, "target": v, "weight": w}
        for (u, v), w in sorted(g.directed_edges.items())
    ]
    return {"nodes": nodes, "links": links}


def to_node_link_json(g: RetweetGraph) -> str:
    return json.dumps(to_node_link(g), ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def from_node_link(doc: dict) -> RetweetGraph:
    """Rebuild a RetweetGraph from a node-link document."""
    nodes = sorted(doc["nodes"], key=lambda node: node["id"])
    users = tuple(node["user"] for node in nodes)
    directed = {
        (link["source"], link["target"]): link["weight"] for link in doc["links"]
    }
    adjacency: list[dict[int, int]] = [dict() for _ in users]
    endorsements = [0] * len(users)
    for (u, v), w in directed.items():
        adjacency[u][v] = adjacency[u].get(v, 0) + w
        adjacency[v][u] = adjacency[v].get(u, 0) + w
        endorsements[v] += w
    return RetweetGraph(users=users, directed_edges=directed,
                        adjacency=adjacency, endorsements=endorsements)


def to_gexf(g: RetweetGraph) -> str:
    """Deterministic GEXF 1.2 document for third-party viewers."""
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<gexf xmlns="http://www.gexf.net/1.2draft" version="1.2">',
        '  <graph defaultedgetype="directed">',
        '    <attributes class="node">',
        '      <attribute id="0" title="endorsements" type="integer"/>',
        "    </attributes>",
        "    <nodes>",
    ]
    for i, user in enumerate(g.users):
        lines.append(
            f'      <node id="{i}" label={quoteattr(user)}>'
            f'<attvalues><attvalue for="0" value="{g.endorsements[i]}"/></attvalues>'
            "</node>"
        )
    lines.append("    </nodes>")
    lines.append("    <edges>")
    for eid, ((u, v), w) in enumerate(sorted(g.directed_edges.items())):
        lines.append(f'      <edge id="{eid}" source="{u}" target="{v}" weight="{w}"/>')
    lines.append("    </edges>")
    lines.append("  </graph>")
    lines.append("</gexf>")
    return "\n".join(lines) + "\n"


__all__ = [
    "RetweetGraph",
    "ComponentInfo",
    "EmptyActivity",
    "EmptyGraph",
    "build_retweet_graph",
    "from_undirected_edges",
    "connected_components",
    "largest_component_subgraph",
    "to_node_link",
    "to_node_link_json",
    "from_node_link",
    "to_gexf",
]
