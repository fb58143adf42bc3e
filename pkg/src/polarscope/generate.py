"""Synthetic graphs and corpora with known ground truth.

Stands in for live platform data: each scenario emits a corpus in the
ingest line format whose rebuilt retweet graph realizes a known structure
(barbell, single community, or planted two-block), plus a sidecar file with
the ground-truth labels where applicable.
"""

from __future__ import annotations

import gzip
import json
import random
from datetime import date, datetime, timedelta, timezone
from pathlib import Path

from . import PolarscopeError
from .graph import RetweetGraph, connected_components, from_undirected_edges

SCENARIOS = ("barbell", "single-community", "planted")

_FILLER = (
    "debate", "rally", "street", "policy", "crowd", "speech", "media",
    "report", "video", "photo", "march", "vote", "city", "people", "news",
)


class InvalidScenario(PolarscopeError):
    pass


def barbell_edges(m: int, bridge_weight: int = 1) -> tuple[int, list[tuple[int, int, int]]]:
    """Two K_m cliques joined by one bridge edge of the given multiplicity."""
    if m < 2 or bridge_weight < 1:
        raise InvalidScenario("barbell needs m >= 2 and bridge >= 1")
    edges = []
    for block in (0, m):
        for i in range(m):
            for j in range(i + 1, m):
                edges.append((block + i, block + j, 1))
    edges.append((m - 1, m, bridge_weight))
    return 2 * m, edges


def barbell_graph(m: int, bridge_weight: int = 1) -> RetweetGraph:
    n, edges = barbell_edges(m, bridge_weight)
    return from_undirected_edges(n, edges)


def er_edges(n: int, p: float, seed: int) -> tuple[int, list[tuple[int, int, int]]]:
    """Erdos-Renyi G(n, p) with unit weights."""
    if n < 2 or not 0.0 < p <= 1.0:
        raise InvalidScenario("single-community needs n >= 2 and 0 < p <= 1")
    rng = random.Random(seed)
    edges = [
        (i, j, 1)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return n, edges


def er_graph(n: int, p: float, seed: int, connected: bool = False) -> RetweetGraph:
    attempt_seed = seed
    for _ in range(100):
        count, edges = er_edges(n, p, attempt_seed)
        g = from_undirected_edges(count, edges)
        if not connected or len(connected_components(g).sizes) == 1:
            return g
        attempt_seed += 1_000_003
    raise InvalidScenario(f"no connected G({n}, {p}) instance found near seed {seed}")


def planted_edges(
    n: int, p_in: float, p_out: float, seed: int
) -> tuple[int, list[tuple[int, int, int]], list[int]]:
    """Two equal blocks with intra probability p_in and inter probability p_out."""
    if n < 4 or n % 2:
        raise InvalidScenario("planted needs an even n >= 4")
    if not 0.0 < p_out < p_in <= 1.0:
        raise InvalidScenario("planted needs p_in > p_out > 0")
    half = n // 2
    labels = [0] * half + [1] * half
    rng = random.Random(seed)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            prob = p_in if labels[i] == labels[j] else p_out
            if rng.random() < prob:
                edges.append((i, j, 1))
    return n, edges, labels


def planted_graph(
    n: int, p_in: float, p_out: float, seed: int, connected: bool = False
) -> tuple[RetweetGraph, list[int]]:
    attempt_seed = seed
    for _ in range(100):
        count, edges, labels = planted_edges(n, p_in, p_out, attempt_seed)
        g = from_undirected_edges(count, edges)
        if not connected or len(connected_components(g).sizes) == 1:
            return g, labels
        attempt_seed += 1_000_003
    raise InvalidScenario(f"no connected planted instance found near seed {seed}")


def corpus_lines(
    n: int,
    edges: list[tuple[int, int, int]],
    hashtag: str,
    day: date,
    seed: int = 0,
) -> list[str]:
    """Corpus realizing an undirected graph: one original tweet per user and,
    per edge (u, v, w), w retweets of v's original by u."""
    rng = random.Random(seed)
    start = datetime(day.year, day.month, day.day, tzinfo=timezone.utc)
    width = max(4, len(str(max(n - 1, 0))))
    users = [f"u{i:0{width}d}" for i in range(n)]

    lines = []
    original_id = {}
    original_text = {}
    counter = 0
    for i, user in enumerate(users):
        tweet_id = f"t{counter:07d}"
        words = " ".join(rng.choice(_FILLER) for _ in range(3))
        text = f"{words} #{hashtag}"
        lines.append(json.dumps({
            "id": tweet_id,
            "user": user,
            "ts": (start + timedelta(seconds=counter)).strftime("%Y-%m-%dT%H:%M:%SZ"),
            "text": text,
        }, ensure_ascii=False, sort_keys=True))
        original_id[i] = tweet_id
        original_text[i] = text
        counter += 1

    for u, v, w in edges:
        for _ in range(w):
            tweet_id = f"t{counter:07d}"
            lines.append(json.dumps({
                "id": tweet_id,
                "user": users[u],
                "ts": (start + timedelta(seconds=counter)).strftime("%Y-%m-%dT%H:%M:%SZ"),
                "text": f"RT @{users[v]}: {original_text[v]}",
                "rt": {"id": original_id[v], "user": users[v]},
            }, ensure_ascii=False, sort_keys=True))
            counter += 1
    return lines


def write_corpus(path: str | Path, lines: list[str]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = "\n".join(lines) + ("\n" if lines else "")
    if path.name.endswith(".gz"):
        with gzip.open(path, "wt", encoding="utf-8") as handle:
            handle.write(payload)
    else:
        path.write_text(payload, encoding="utf-8")


def generate_scenario(
    scenario: str,
    out_path: str | Path,
    hashtag: str = "topic",
    day: date = date(2015, 6, 3),
    seed: int = 0,
    m: int = 20,
    bridge: int = 1,
    n: int = 200,
    p: float = 0.05,
    p_in: float = 0.3,
    p_out: float = 0.02,
) -> dict:
    """Emit a scenario corpus plus a ground-truth sidecar; returns the truth."""
    if scenario == "barbell":
        count, edges = barbell_edges(m, bridge)
        labels: list[int] | None = [0] * m + [1] * m
    elif scenario == "single-community":
        count, edges = er_edges(n, p, seed)
        labels = None
    elif scenario == "planted":
        count, edges, labels = planted_edges(n, p_in, p_out, seed)
    else:
        raise InvalidScenario(f"unknown scenario {scenario!r}")

    lines = corpus_lines(count, edges, hashtag, day, seed)
    write_corpus(out_path, lines)

    width = max(4, len(str(max(count - 1, 0))))
    truth = {
        "scenario": scenario,
        "hashtag": hashtag,
        "day": day.isoformat(),
        "seed": seed,
        "vertices": count,
        "edges": len(edges),
        "labels": (
            {f"u{i:0{width}d}": label for i, label in enumerate(labels)}
            if labels is not None else None
        ),
    }
    sidecar = Path(str(out_path) + ".truth.json")
    sidecar.write_text(json.dumps(truth, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
                       encoding="utf-8")
    return truth


__all__ = [
    "SCENARIOS",
    "InvalidScenario",
    "barbell_edges",
    "barbell_graph",
    "er_edges",
    "er_graph",
    "planted_edges",
    "planted_graph",
    "corpus_lines",
    "write_corpus",
    "generate_scenario",
]
