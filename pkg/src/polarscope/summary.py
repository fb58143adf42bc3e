"""Topic summaries: related keywords and representative tweets per side."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .graph import RetweetGraph
from .ingest import TopicActivity, TweetRecord
from .partition import SIDE_LABELS, Partition

_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_MENTION_RE = re.compile(r"@\w+", re.UNICODE)
_TOKEN_RE = re.compile(r"\w+", re.UNICODE)

DEFAULT_KEYWORDS = 10
DEFAULT_REPRESENTATIVES = 3


@dataclass
class TopicSummary:
    hashtag: str
    related_keywords: list[tuple[str, int]]
    representative: dict[str, list[dict]]  # side label -> entries


@lru_cache(maxsize=1)
def stopwords() -> frozenset[str]:
    text = resources.files("polarscope").joinpath("data/stopwords.txt").read_text("utf-8")
    return frozenset(word.strip() for word in text.splitlines() if word.strip())


def _text_tokens(text: str) -> set[str]:
    cleaned = _MENTION_RE.sub(" ", _URL_RE.sub(" ", text.casefold()))
    stops = stopwords()
    return {
        token
        for token in _TOKEN_RE.findall(cleaned)
        if len(token) >= 3 and token not in stops
    }


def related_keywords(activity: TopicActivity, n: int = DEFAULT_KEYWORDS) -> list[tuple[str, int]]:
    """Top-n co-occurring terms by within-topic document frequency.

    Candidates are co-occurring hashtags plus non-stopword text tokens of
    length >= 3; the topic's own hashtag is excluded. Ties break
    lexicographically.
    """
    counts: Counter[str] = Counter()
    for tweet in activity.tweets:
        terms = set(tweet.hashtags) | _text_tokens(tweet.text)
        terms.discard(activity.hashtag)
        counts.update(terms)
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:n]


def representative_tweets(
    activity: TopicActivity,
    g: RetweetGraph,
    p: Partition,
    m: int = DEFAULT_REPRESENTATIVES,
) -> dict[str, list[dict]]:
    """Per side, the top authorities' most-retweeted original tweets.

    Authors are visited by endorsements received (descending); each
    contributes their most-retweeted non-retweet tweet (ties by earliest
    timestamp) until m authors are represented or the side runs out.
    """
    retweet_counts: Counter[str] = Counter(
        tweet.retweet_of[0] for tweet in activity.tweets if tweet.retweet_of is not None
    )
    originals: dict[str, list[TweetRecord]] = {}
    for tweet in activity.tweets:
        if tweet.retweet_of is None:
            originals.setdefault(tweet.author_id, []).append(tweet)

    result: dict[str, list[dict]] = {}
    for side, label in enumerate(SIDE_LABELS):
        members = p.side_vertices(side)
        members.sort(key=lambda v: (-g.endorsements[v], v))
        entries: list[dict] = []
        for v in members:
            if len(entries) >= m:
                break
            candidates = originals.get(g.users[v])
            if not candidates:
                continue
            best = min(
                candidates,
                key=lambda t: (-retweet_counts[t.tweet_id], t.timestamp, t.tweet_id),
            )
            entries.append(
                {
                    "user": g.users[v],
                    "tweet_id": best.tweet_id,
                    "text": best.text,
                    "endorsements": g.endorsements[v],
                }
            )
        result[label] = entries
    return result


def summarize_topic(
    activity: TopicActivity,
    g: RetweetGraph,
    p: Partition,
    n_keywords: int = DEFAULT_KEYWORDS,
    m_representatives: int = DEFAULT_REPRESENTATIVES,
) -> TopicSummary:
    return TopicSummary(
        hashtag=activity.hashtag,
        related_keywords=related_keywords(activity, n_keywords),
        representative=representative_tweets(activity, g, p, m_representatives),
    )


__all__ = [
    "TopicSummary",
    "stopwords",
    "related_keywords",
    "representative_tweets",
    "summarize_topic",
    "DEFAULT_KEYWORDS",
    "DEFAULT_REPRESENTATIVES",
]
