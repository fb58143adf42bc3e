"""End-to-end processing: corpus in, persisted topic records out.

For every qualifying (day, hashtag): build the retweet graph, restrict to
the largest component, bipartition, score, lay out, summarize, persist.
Per-topic failures are logged and skipped; they never abort the run.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

from . import SCHEMA_VERSION, PolarscopeError, __version__
from .controversy import DEFAULT_K, DEFAULT_WALKS, rwc_exact, rwc_montecarlo, RwcScore
from .controversy import EXACT_VERTEX_LIMIT
from .graph import build_retweet_graph, largest_component_subgraph
from .ingest import DEFAULT_MIN_USERS, CorpusStats, bucket_topics, read_corpus
from .layout import LayoutParams, layout_forceatlas2, render_payload
from .partition import DEFAULT_EPS, DEFAULT_SEED, bipartition
from .store import TopicStore
from .summary import DEFAULT_KEYWORDS, DEFAULT_REPRESENTATIVES, summarize_topic

log = logging.getLogger(__name__)


@dataclass
class PipelineParams:
    seed: int = DEFAULT_SEED
    balance_eps: float = DEFAULT_EPS
    authorities_k: int = DEFAULT_K
    mode: str = "auto"  # auto | exact | montecarlo
    walks: int = DEFAULT_WALKS
    min_users: int = DEFAULT_MIN_USERS
    n_keywords: int = DEFAULT_KEYWORDS
    m_representatives: int = DEFAULT_REPRESENTATIVES
    layout: LayoutParams = field(default_factory=LayoutParams)

    def provenance(self) -> dict:
        return {
            "seed": self.seed,
            "balance_eps": self.balance_eps,
            "authorities_k": self.authorities_k,
            "mode": self.mode,
            "walks": self.walks,
            "min_users": self.min_users,
            "layout": {
                "repulsion_scale": self.layout.repulsion_scale,
                "gravity": self.layout.gravity,
                "iterations": self.layout.iterations,
                "speed": self.layout.speed,
                "max_displacement": self.layout.max_displacement,
                "seed": self.layout.seed,
            },
            "software_version": __version__,
        }


@dataclass
class ProcessResult:
    succeeded: list[tuple[str, str, float]] = field(default_factory=list)
    failed: list[tuple[str, str, str]] = field(default_factory=list)
    corpus: CorpusStats = field(default_factory=CorpusStats)

    @property
    def attempted(self) -> int:
        return len(self.succeeded) + len(self.failed)


def process_topic(activity, params: PipelineParams) -> dict:
    """Run stages 1-3 plus layout and summary for one topic; returns the record."""
    full = build_retweet_graph(activity)
    scored = largest_component_subgraph(full)
    if scored.n_vertices < 2:
        raise PolarscopeError("largest component has fewer than 2 vertices")

    partition = bipartition(scored, eps=params.balance_eps, seed=params.seed)
    score = _score(scored, partition, params)
    layout = layout_forceatlas2(scored, params.layout)
    payload = render_payload(scored, partition, layout)
    summary = summarize_topic(
        activity, scored, partition,
        n_keywords=params.n_keywords,
        m_representatives=params.m_representatives,
    )

    return {
        "schema_version": SCHEMA_VERSION,
        "hashtag": activity.hashtag,
        "day": activity.day.isoformat(),
        "stats": {
            "vertices": full.n_vertices,
            "edges": full.n_edges,
            "retweets": full.total_weight(),
            "tweets": len(activity.tweets),
            "largest_component_fraction": scored.n_vertices / full.n_vertices,
            "scored_vertices": scored.n_vertices,
            "scored_edges": scored.n_edges,
        },
        "partition": {
            "sides": list(partition.side_labels()),
            "cut_weight": partition.cut_weight,
            "balance": partition.balance,
            "seed": partition.seed,
        },
        "score": _score_doc(score),
        "layout": {
            "nodes": payload["nodes"],
            "links": payload["links"],
            "converged": layout.converged,
            "mean_displacement": layout.mean_displacement,
        },
        "summary": {
            "hashtag": summary.hashtag,
            "related_keywords": [[term, count] for term, count in summary.related_keywords],
            "representative": summary.representative,
        },
        "provenance": params.provenance(),
    }


def _score(g, partition, params: PipelineParams) -> RwcScore:
    mode = params.mode
    if mode == "auto":
        mode = "exact" if g.n_vertices <= EXACT_VERTEX_LIMIT else "montecarlo"
    if mode == "exact":
        return rwc_exact(g, partition, params.authorities_k)
    return rwc_montecarlo(
        g, partition, params.authorities_k,
        walks=params.walks, seed=params.seed,
    )


def _score_doc(score: RwcScore) -> dict:
    return {
        "p_xx": score.p_xx,
        "p_xy": score.p_xy,
        "p_yx": score.p_yx,
        "p_yy": score.p_yy,
        "rwc_raw": score.rwc_raw,
        "display_score": score.display_score,
        "k": score.k,
        "method": score.method,
        "walks": score.walks,
        "stderr_estimate": score.stderr_estimate,
        "discarded": score.discarded,
    }


def process_corpus(
    corpus_path: str | Path,
    data_dir: str | Path,
    days: list[date] | None = None,
    day_range: tuple[date | None, date | None] | None = None,
    params: PipelineParams | None = None,
) -> ProcessResult:
    """Process every qualifying topic of the corpus into the store.

    ``days`` picks explicit days; ``day_range`` is an inclusive (start, end)
    window with open ends allowed. Both default to every day present.
    """
    if params is None:
        params = PipelineParams()
    result = ProcessResult()
    store = TopicStore(data_dir)

    by_day: dict[date, list] = defaultdict(list)
    for record in read_corpus(corpus_path, result.corpus):
        by_day[record.timestamp.date()].append(record)

    selected = sorted(by_day) if days is None else sorted(set(days) & set(by_day))
    if day_range is not None:
        start, end = day_range
        selected = [
            day for day in selected
            if (start is None or day >= start) and (end is None or day <= end)
        ]
    for day in selected:
        topics = bucket_topics(by_day[day], day, min_users=params.min_users)
        for hashtag in sorted(topics):
            activity = topics[hashtag]
            try:
                doc = process_topic(activity, params)
                store.put_topic(doc)
            except PolarscopeError as exc:
                log.warning("skipping topic %s/%s: %s", day, hashtag, exc)
                result.failed.append((day.isoformat(), hashtag, str(exc)))
                continue
            result.succeeded.append(
                (day.isoformat(), hashtag, doc["score"]["display_score"])
            )
    return result


__all__ = ["PipelineParams", "ProcessResult", "process_topic", "process_corpus"]
