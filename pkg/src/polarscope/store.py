"""Filesystem persistence for processed topics.

One JSON document per (day, hashtag) under ``topics/YYYY-MM-DD/``, plus a
single index file rebuilt on demand. Writers use temp-file-plus-rename so
readers never observe partial documents.
"""

from __future__ import annotations

import errno
import json
import logging
import os
import re
from dataclasses import dataclass
from datetime import date
from pathlib import Path

from . import SCHEMA_VERSION, PolarscopeError

log = logging.getLogger(__name__)

_SAFE_BYTE = re.compile(rb"[a-z0-9_]")
_DAY_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")

DEFAULT_PAGE_SIZE = 20


class ValidationFailed(PolarscopeError):
    pass


class CorruptRecord(PolarscopeError):
    pass


class TopicNotFound(PolarscopeError):
    pass


class StorageFull(PolarscopeError):
    pass


@dataclass
class VerifyReport:
    checked: int
    problems: list[str]

    @property
    def ok(self) -> bool:
        return not self.problems


def sanitize_hashtag(hashtag: str) -> str:
    """Percent-encode every byte outside [a-z0-9_] for filesystem use."""
    out = []
    for byte in hashtag.encode("utf-8"):
        chunk = bytes([byte])
        if _SAFE_BYTE.match(chunk):
            out.append(chunk.decode("ascii"))
        else:
            out.append(f"%{byte:02x}")
    return "".join(out)


def parse_day(day: str) -> date:
    if not _DAY_RE.match(day):
        raise ValueError(f"malformed day {day!r}")
    return date.fromisoformat(day)


def dump_json(doc: dict) -> str:
    """Canonical JSON used for every stored document (byte-deterministic)."""
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, separators=(",", ": ")) + "\n"


def validate_record(doc: dict) -> None:
    """Check cross-field consistency; raises ValidationFailed."""
    for key in ("schema_version", "hashtag", "day", "stats", "partition",
                "score", "layout", "summary", "provenance"):
        if key not in doc:
            raise ValidationFailed(f"missing field {key!r}")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise ValidationFailed(f"unsupported schema_version {doc['schema_version']!r}")
    try:
        parse_day(doc["day"])
    except ValueError as exc:
        raise ValidationFailed(str(exc)) from exc

    sides = doc["partition"]["sides"]
    nodes = doc["layout"]["nodes"]
    stats = doc["stats"]
    if len(sides) != len(nodes):
        raise ValidationFailed("partition and layout disagree on vertex count")
    if stats["scored_vertices"] != len(sides):
        raise ValidationFailed("stats disagree with partition on vertex count")
    size_x = sum(1 for s in sides if s == "X")
    size_y = len(sides) - size_x
    score = doc["score"]
    if score["k"] > min(size_x, size_y):
        raise ValidationFailed("score k exceeds a side size")
    if not 0.0 <= score["display_score"] <= 1.0:
        raise ValidationFailed("display_score outside [0, 1]")
    if not -1.0 <= score["rwc_raw"] <= 1.0:
        raise ValidationFailed("rwc_raw outside [-1, 1]")


def index_entry(doc: dict) -> dict:
    """The TopicIndexEntry mirrored from a record document."""
    return {
        "hashtag": doc["hashtag"],
        "day": doc["day"],
        "display_score": doc["score"]["display_score"],
        "rwc_raw": doc["score"]["rwc_raw"],
        "vertices": doc["stats"]["vertices"],
        "keywords": [term for term, _ in doc["summary"]["related_keywords"]],
    }


def order_entries(entries: list[dict], sort: str = "score", text: str | None = None) -> list[dict]:
    """Filter by case-folded substring and order per the query contract.

    sort=score: display_score desc, ties by (day desc, hashtag asc);
    sort=date: day desc, ties by display_score desc (then hashtag asc).
    """
    if sort not in ("score", "date"):
        raise ValueError(f"unknown sort {sort!r}")
    if text:
        needle = text.casefold()
        entries = [
            e for e in entries
            if needle in e["hashtag"].casefold()
            or any(needle in keyword.casefold() for keyword in e["keywords"])
        ]
    else:
        entries = list(entries)
    entries.sort(key=lambda e: e["hashtag"])
    if sort == "score":
        entries.sort(key=lambda e: e["day"], reverse=True)
        entries.sort(key=lambda e: e["display_score"], reverse=True)
    else:
        entries.sort(key=lambda e: e["display_score"], reverse=True)
        entries.sort(key=lambda e: e["day"], reverse=True)
    return entries


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)
    except OSError as exc:
        if exc.errno == errno.ENOSPC:
            raise StorageFull(str(exc)) from exc
        raise


class TopicStore:
    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.topics_dir = self.data_dir / "topics"
        self.index_path = self.data_dir / "index.json"

    # -- paths ------------------------------------------------------------

    def record_path(self, day: str, hashtag: str) -> Path:
        return self.topics_dir / day / f"{sanitize_hashtag(hashtag)}.json"

    # -- write ------------------------------------------------------------

    def put_topic(self, doc: dict) -> Path:
        """Atomically persist a record and upsert its index entry."""
        validate_record(doc)
        path = self.record_path(doc["day"], doc["hashtag"])
        payload = dump_json(doc)
        if path.exists():
            if path.read_text(encoding="utf-8") == payload:
                self._upsert_index(index_entry(doc))
                return path
            log.warning("overwriting %s/%s with different content", doc["day"], doc["hashtag"])
        path.parent.mkdir(parents=True, exist_ok=True)
        _atomic_write(path, payload)
        self._upsert_index(index_entry(doc))
        return path

    def _upsert_index(self, entry: dict) -> None:
        entries = [
            existing
            for existing in self.load_index()
            if (existing["day"], existing["hashtag"]) != (entry["day"], entry["hashtag"])
        ]
        entries.append(entry)
        self._write_index(entries)

    def _write_index(self, entries: list[dict]) -> None:
        entries = sorted(entries, key=lambda e: (e["day"], e["hashtag"]))
        doc = {"schema_version": SCHEMA_VERSION, "entries": entries}
        self.data_dir.mkdir(parents=True, exist_ok=True)
        _atomic_write(self.index_path, dump_json(doc))

    # -- read -------------------------------------------------------------

    def get_topic(self, day: str, hashtag: str) -> dict:
        path = self.record_path(day, hashtag)
        if not path.exists():
            raise TopicNotFound(f"no record for {day}/{hashtag}")
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
            validate_record(doc)
        except (json.JSONDecodeError, ValidationFailed, KeyError, TypeError) as exc:
            raise CorruptRecord(f"{path}: {exc}") from exc
        return doc

    def load_index(self) -> list[dict]:
        if not self.index_path.exists():
            return []
        try:
            doc = json.loads(self.index_path.read_text(encoding="utf-8"))
            return list(doc["entries"])
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise CorruptRecord(f"{self.index_path}: {exc}") from exc

    def query_all(self, sort: str = "score", text: str | None = None) -> list[dict]:
        """Full filtered + ordered entry list (pagination slices this)."""
        return order_entries(self.load_index(), sort=sort, text=text)

    def query(
        self,
        sort: str = "score",
        text: str | None = None,
        page: int = 0,
        page_size: int = DEFAULT_PAGE_SIZE,
    ) -> list[dict]:
        if page < 0:
            raise ValueError("page must be >= 0")
        entries = self.query_all(sort=sort, text=text)
        start = page * page_size
        return entries[start:start + page_size]

    # -- maintenance -------------------------------------------------------

    def iter_record_paths(self):
        if not self.topics_dir.exists():
            return
        for day_dir in sorted(self.topics_dir.iterdir()):
            if not day_dir.is_dir():
                continue
            for path in sorted(day_dir.glob("*.json")):
                yield path

    def rebuild_index(self) -> int:
        """Re-derive the index from record files, skipping corrupt ones."""
        entries = []
        for path in self.iter_record_paths():
            try:
                doc = json.loads(path.read_text(encoding="utf-8"))
                validate_record(doc)
            except (json.JSONDecodeError, ValidationFailed, KeyError, TypeError) as exc:
                log.warning("skipping corrupt record %s: %s", path, exc)
                continue
            entries.append(index_entry(doc))
        self._write_index(entries)
        return len(entries)

    def verify(self) -> VerifyReport:
        """fsck: every index entry must reproduce exactly from its record."""
        problems: list[str] = []
        entries = self.load_index()
        seen = set()
        for entry in entries:
            key = (entry["day"], entry["hashtag"])
            seen.add(key)
            try:
                doc = self.get_topic(entry["day"], entry["hashtag"])
            except (TopicNotFound, CorruptRecord) as exc:
                problems.append(f"{key[0]}/{key[1]}: {exc}")
                continue
            if index_entry(doc) != entry:
                problems.append(f"{key[0]}/{key[1]}: index entry does not match record")
        for path in self.iter_record_paths():
            day = path.parent.name
            try:
                doc = json.loads(path.read_text(encoding="utf-8"))
                key = (doc["day"], doc["hashtag"])
            except (json.JSONDecodeError, KeyError, TypeError):
                problems.append(f"{path}: unreadable record file")
                continue
            if key not in seen:
                problems.append(f"{key[0]}/{key[1]}: record on disk missing from index")
        return VerifyReport(checked=len(entries), problems=problems)


__all__ = [
    "TopicStore",
    "VerifyReport",
    "ValidationFailed",
    "CorruptRecord",
    "TopicNotFound",
    "StorageFull",
    "sanitize_hashtag",
    "parse_day",
    "dump_json",
    "validate_record",
    "index_entry",
    "order_entries",
    "DEFAULT_PAGE_SIZE",
]
