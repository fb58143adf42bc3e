"""Render stored topics to matplotlib figures plus a delimited summary.

Produces one PNG per topic (layout scatter, side X in blue, side Y in red,
node size tracking endorsements) and a topics.csv next to the figures.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # headless rendering
import matplotlib.pyplot as plt
from matplotlib.collections import LineCollection

from .store import TopicStore, sanitize_hashtag

SIDE_COLORS = {"X": "#1f77b4", "Y": "#d62728"}  # blue / red

CSV_COLUMNS = [
    "day", "hashtag", "display_score", "rwc_raw", "vertices", "edges",
    "scored_vertices", "cut_weight", "balance", "method", "figure",
]


def render_topic_figure(doc: dict, out_path: str | Path, dpi: int = 150) -> Path:
    """Draw one topic's precomputed layout to a PNG file."""
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)

    nodes = doc["layout"]["nodes"]
    links = doc["layout"]["links"]
    by_id = {node["id"]: node for node in nodes}

    fig, ax = plt.subplots(figsize=(6, 6))
    if links:
        segments = [
            [(by_id[l["source"]]["x"], by_id[l["source"]]["y"]),
             (by_id[l["target"]]["x"], by_id[l["target"]]["y"])]
            for l in links
        ]
        ax.add_collection(LineCollection(segments, colors="#bbbbbb",
                                         linewidths=0.4, alpha=0.5, zorder=1))
    max_endorsements = max((node["endorsements"] for node in nodes), default=0)
    for node in nodes:
        size = 12.0 + (48.0 * node["endorsements"] / max_endorsements if max_endorsements else 0.0)
        ax.scatter(node["x"], node["y"], s=size, c=SIDE_COLORS[node["side"]],
                   edgecolors="none", zorder=2)
    ax.set_title(
        f"#{doc['hashtag']}  {doc['day']}  "
        f"controversy {doc['score']['display_score']:.2f}"
    )
    ax.set_xlim(-1.1, 1.1)
    ax.set_ylim(-1.1, 1.1)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(out_path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)
    return out_path


def write_report(
    store: TopicStore,
    out_dir: str | Path,
    day: str | None = None,
    hashtag: str | None = None,
) -> Path:
    """Render figures for the selected topics and write topics.csv."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    figures_dir = out_dir / "figures"

    entries = store.query_all(sort="score")
    if day is not None:
        entries = [e for e in entries if e["day"] == day]
    if hashtag is not None:
        entries = [e for e in entries if e["hashtag"] == hashtag]

    csv_path = out_dir / "topics.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for entry in entries:
            doc = store.get_topic(entry["day"], entry["hashtag"])
            figure_name = f"{doc['day']}_{sanitize_hashtag(doc['hashtag'])}.png"
            render_topic_figure(doc, figures_dir / figure_name)
            writer.writerow({
                "day": doc["day"],
                "hashtag": doc["hashtag"],
                "display_score": doc["score"]["display_score"],
                "rwc_raw": doc["score"]["rwc_raw"],
                "vertices": doc["stats"]["vertices"],
                "edges": doc["stats"]["edges"],
                "scored_vertices": doc["stats"]["scored_vertices"],
                "cut_weight": doc["partition"]["cut_weight"],
                "balance": doc["partition"]["balance"],
                "method": doc["score"]["method"],
                "figure": f"figures/{figure_name}",
            })
    return csv_path


__all__ = ["render_topic_figure", "write_report", "SIDE_COLORS", "CSV_COLUMNS"]
