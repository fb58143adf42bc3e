from __future__ import annotations

import json
from datetime import date, datetime, timezone

import pytest

from polarscope.ingest import TweetRecord, TopicActivity


def make_tweet(
    tweet_id: str,
    user: str,
    text: str = "hello #topic",
    ts: str = "2015-06-03T10:00:00Z",
    rt: tuple[str, str] | None = None,
    tags: tuple[str, ...] | None = None,
) -> TweetRecord:
    when = datetime.fromisoformat(ts.replace("Z", "+00:00")).astimezone(timezone.utc)
    if tags is None:
        from polarscope.ingest import extract_hashtags
        tags = tuple(extract_hashtags(text))
    return TweetRecord(
        tweet_id=tweet_id,
        author_id=user,
        timestamp=when.replace(microsecond=0),
        text=text,
        hashtags=tags,
        retweet_of=rt,
    )


def make_activity(hashtag: str, tweets) -> TopicActivity:
    activity = TopicActivity(hashtag=hashtag, day=tweets[0].timestamp.date())
    for tweet in tweets:
        activity.tweets.append(tweet)
        activity.users.add(tweet.author_id)
        if tweet.retweet_of is not None:
            activity.users.add(tweet.retweet_of[1])
    return activity


def corpus_line(tweet_id: str, user: str, ts: str, text: str, rt=None, **extra) -> str:
    obj = {"id": tweet_id, "user": user, "ts": ts, "text": text, **extra}
    if rt is not None:
        obj["rt"] = {"id": rt[0], "user": rt[1]}
    return json.dumps(obj, ensure_ascii=False)


def make_record(
    day: str = "2015-06-03",
    hashtag: str = "topic",
    display_score: float = 0.5,
    rwc_raw: float | None = None,
    keywords: tuple[str, ...] = ("march", "vote"),
) -> dict:
    """A minimal valid TopicRecord document (4 vertices, sides XXYY, k=1)."""
    sides = ["X", "X", "Y", "Y"]
    users = [f"{hashtag[:2]}{i}" for i in range(4)]
    raw = display_score if rwc_raw is None else rwc_raw
    nodes = [
        {"id": i, "user": users[i], "x": 0.1 * i, "y": -0.1 * i,
         "side": sides[i], "endorsements": i}
        for i in range(4)
    ]
    return {
        "schema_version": 1,
        "hashtag": hashtag,
        "day": day,
        "stats": {
            "vertices": 4, "edges": 3, "retweets": 3, "tweets": 7,
            "largest_component_fraction": 1.0,
            "scored_vertices": 4, "scored_edges": 3,
        },
        "partition": {"sides": sides, "cut_weight": 1, "balance": 0.5, "seed": 42},
        "score": {
            "p_xx": 0.9, "p_xy": 0.1, "p_yx": 0.1, "p_yy": 0.9,
            "rwc_raw": raw, "display_score": display_score,
            "k": 1, "method": "exact", "walks": None,
            "stderr_estimate": None, "discarded": 0,
        },
        "layout": {
            "nodes": nodes,
            "links": [{"source": 0, "target": 1, "weight": 1},
                      {"source": 2, "target": 3, "weight": 1},
                      {"source": 1, "target": 2, "weight": 1}],
            "converged": True,
            "mean_displacement": 0.001,
        },
        "summary": {
            "hashtag": hashtag,
            "related_keywords": [[term, 3] for term in keywords],
            "representative": {
                "X": [{"user": users[0], "tweet_id": "t1",
                       "text": f"#{hashtag} claim", "endorsements": 0}],
                "Y": [],
            },
        },
        "provenance": {
            "seed": 42, "balance_eps": 0.05, "authorities_k": 1,
            "mode": "exact", "walks": 10000, "min_users": 1,
            "layout": {"repulsion_scale": 10.0, "gravity": 1.0, "iterations": 600,
                       "speed": 1.0, "max_displacement": 10.0, "seed": 42},
            "software_version": "0.1.0",
        },
    }


@pytest.fixture
def barbell_activity():
    """Two K5 retweet cliques joined by one bridge retweet, all on one hashtag."""
    from polarscope.generate import barbell_edges, corpus_lines
    from polarscope.ingest import bucket_topics, parse_record

    n, edges = barbell_edges(5, 1)
    lines = corpus_lines(n, edges, "probe", date(2015, 6, 3))
    records = [parse_record(line) for line in lines]
    return bucket_topics(records, date(2015, 6, 3), min_users=1)["probe"]
