"""Corpus parsing and per-day, per-hashtag topic bucketing.

Corpus format: newline-delimited JSON objects, UTF-8, one per line, with
fields ``id``, ``user``, ``ts`` (RFC 3339), ``text``, optional ``tags``
(list of strings) and optional ``rt`` ``{id, user}``. Unknown fields are
ignored. Files ending in ``.gz`` are read gzip-compressed.
"""

from __future__ import annotations

import gzip
import json
import re
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Iterable, Iterator

from . import PolarscopeError

# '#' followed by unicode letters/digits/underscore; digits-only tags rejected.
_HASHTAG_RE = re.compile(r"#(\w+)", re.UNICODE)

DEFAULT_MIN_USERS = 50


class MalformedRecord(PolarscopeError):
    """A corpus line that cannot be turned into a TweetRecord."""


@dataclass(frozen=True)
class TweetRecord:
    tweet_id: str
    author_id: str
    timestamp: datetime  # UTC, second precision
    text: str
    hashtags: tuple[str, ...]
    retweet_of: tuple[str, str] | None = None  # (original_tweet_id, original_author_id)

    @property
    def is_retweet(self) -> bool:
        return self.retweet_of is not None


@dataclass
class TopicActivity:
    """All activity for one hashtag on one day.

    ``users`` covers every author id appearing in the tweets, including the
    original authors named in retweet provenance: a retweeted author
    contributed to the topic through the propagated content.
    """

    hashtag: str
    day: date
    tweets: list[TweetRecord] = field(default_factory=list)
    users: set[str] = field(default_factory=set)


@dataclass
class CorpusStats:
    lines: int = 0
    parsed: int = 0
    malformed: int = 0


def extract_hashtags(text: str) -> list[str]:
    """Extract hashtags from text, case-folded, first-appearance order, deduped."""
    seen: dict[str, None] = {}
    for match in _HASHTAG_RE.finditer(text):
        tag = match.group(1).casefold()
        if tag.isdigit():
            continue
        seen.setdefault(tag, None)
    return list(seen)


def _normalize_tags(raw_tags: Iterable[object]) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for raw in raw_tags:
        if not isinstance(raw, str):
            raise MalformedRecord(f"non-string hashtag: {raw!r}")
        tag = raw.lstrip("#").casefold()
        if not tag or tag.isdigit() or not _HASHTAG_RE.fullmatch("#" + tag):
            continue
        seen.setdefault(tag, None)
    return tuple(seen)


def _parse_timestamp(raw: str) -> datetime:
    # Python 3.10 fromisoformat does not accept a trailing 'Z'.
    text = raw.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        ts = datetime.fromisoformat(text)
    except ValueError as exc:
        raise MalformedRecord(f"unparseable timestamp: {raw!r}") from exc
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc).replace(microsecond=0)


def parse_record(line: bytes | str) -> TweetRecord:
    """Parse one corpus line into a TweetRecord.

    Raises MalformedRecord on bad syntax, missing required fields, or an
    unparseable timestamp; callers skip and count such lines.
    """
    if isinstance(line, bytes):
        try:
            line = line.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedRecord("invalid UTF-8") from exc
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise MalformedRecord("record is not an object")

    for key in ("id", "user", "ts", "text"):
        if key not in obj:
            raise MalformedRecord(f"missing required field {key!r}")
        if not isinstance(obj[key], str):
            raise MalformedRecord(f"field {key!r} is not a string")
    if not obj["id"] or not obj["user"]:
        raise MalformedRecord("empty id or user")

    timestamp = _parse_timestamp(obj["ts"])
    text = obj["text"]

    if "tags" in obj:
        if not isinstance(obj["tags"], list):
            raise MalformedRecord("tags is not a list")
        hashtags = _normalize_tags(obj["tags"])
    else:
        hashtags = tuple(extract_hashtags(text))

    retweet_of = None
    if "rt" in obj and obj["rt"] is not None:
        rt = obj["rt"]
        if not isinstance(rt, dict) or "id" not in rt or "user" not in rt:
            raise MalformedRecord("rt must be an object with id and user")
        if not isinstance(rt["id"], str) or not isinstance(rt["user"], str) or not rt["user"]:
            raise MalformedRecord("rt id/user must be nonempty strings")
        retweet_of = (rt["id"], rt["user"])

    return TweetRecord(
        tweet_id=obj["id"],
        author_id=obj["user"],
        timestamp=timestamp,
        text=text,
        hashtags=hashtags,
        retweet_of=retweet_of,
    )


def serialize_record(record: TweetRecord) -> str:
    """Render a TweetRecord back into the corpus line format."""
    obj: dict[str, object] = {
        "id": record.tweet_id,
        "user": record.author_id,
        "ts": record.timestamp.strftime("%Y-%m-%dT%H:%M:%SZ"),
        "text": record.text,
        "tags": list(record.hashtags),
    }
    if record.retweet_of is not None:
        obj["rt"] = {"id": record.retweet_of[0], "user": record.retweet_of[1]}
    return json.dumps(obj, ensure_ascii=False, sort_keys=True)


def read_corpus(path: str | Path, stats: CorpusStats | None = None) -> Iterator[TweetRecord]:
    """Yield TweetRecords from a corpus file, skipping malformed lines.

    Malformed lines are counted in ``stats`` and never abort the run.
    """
    path = Path(path)
    opener = gzip.open if path.name.endswith(".gz") else open
    with opener(path, "rt", encoding="utf-8") as handle:
        for line in handle:
            if not line.strip():
                continue
            if stats is not None:
                stats.lines += 1
            try:
                record = parse_record(line)
            except MalformedRecord:
                if stats is not None:
                    stats.malformed += 1
                continue
            if stats is not None:
                stats.parsed += 1
            yield record


def bucket_topics(
    records: Iterable[TweetRecord],
    day: date,
    min_users: int = DEFAULT_MIN_USERS,
) -> dict[str, TopicActivity]:
    """Group one day's records into per-hashtag activities.

    A tweet with k hashtags contributes to k topics. Topics with fewer than
    ``min_users`` distinct users are dropped.
    """
    topics: dict[str, TopicActivity] = {}
    for record in records:
        if record.timestamp.date() != day:
            continue
        for tag in record.hashtags:
            activity = topics.get(tag)
            if activity is None:
                activity = topics[tag] = TopicActivity(hashtag=tag, day=day)
            activity.tweets.append(record)
            activity.users.add(record.author_id)
            if record.retweet_of is not None:
                activity.users.add(record.retweet_of[1])
    return {
        tag: activity
        for tag, activity in topics.items()
        if len(activity.users) >= min_users
    }


def corpus_days(records: Iterable[TweetRecord]) -> list[date]:
    """Distinct UTC days present in a record stream, ascending."""
    return sorted({record.timestamp.date() for record in records})
