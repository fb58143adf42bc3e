"""Read-only HTTP exploration API plus static hosting for the web client.

JSON over HTTP/1.1, UTF-8, gzip when the client asks for it. No endpoint
mutates the store; the index is cached in memory and swapped atomically on
reload (SIGHUP or a loopback-only POST /api/reload).
"""

from __future__ import annotations

import gzip
import json
import logging
import math
import mimetypes
import signal
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, unquote, urlsplit

from . import SCHEMA_VERSION
from .store import (
    DEFAULT_PAGE_SIZE,
    CorruptRecord,
    TopicNotFound,
    TopicStore,
    order_entries,
    parse_day,
)

log = logging.getLogger(__name__)

_GZIP_MIN_BYTES = 256


@dataclass
class ApiConfig:
    bind: str = "127.0.0.1:8080"
    data_dir: str = "data"
    static_dir: str | None = None
    page_size: int = DEFAULT_PAGE_SIZE
    cors_origins: list[str] = field(default_factory=list)

    @property
    def address(self) -> tuple[str, int]:
        host, _, port = self.bind.rpartition(":")
        return host or "127.0.0.1", int(port)


class ExplorationServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, config: ApiConfig):
        self.config = config
        self.store = TopicStore(config.data_dir)
        self.entries = self.store.load_index()
        super().__init__(config.address, _Handler)

    def reload_index(self) -> int:
        entries = self.store.load_index()
        self.entries = entries  # atomic swap; readers pick up the new list
        log.info("index reloaded: %d topics", len(entries))
        return len(entries)

    def install_sighup(self) -> None:
        if threading.current_thread() is threading.main_thread():
            signal.signal(signal.SIGHUP, lambda *_: self.reload_index())


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server: ExplorationServer

    def log_message(self, fmt, *args):  # route through logging, not stderr
        log.debug("%s %s", self.address_string(), fmt % args)

    # -- plumbing ----------------------------------------------------------

    def _send(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        origin = self.headers.get("Origin")
        if origin and origin in self.server.config.cors_origins:
            self.send_header("Access-Control-Allow-Origin", origin)
            self.send_header("Vary", "Origin")
        accepts_gzip = "gzip" in self.headers.get("Accept-Encoding", "")
        if accepts_gzip and len(body) >= _GZIP_MIN_BYTES:
            body = gzip.compress(body, mtime=0)
            self.send_header("Content-Encoding", "gzip")
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, doc: dict) -> None:
        body = json.dumps(doc, ensure_ascii=False, sort_keys=True).encode("utf-8")
        self._send(status, body, "application/json; charset=utf-8")

    def _send_error_json(self, status: int, code: str, message: str) -> None:
        self._send_json(status, {"error": {"code": code, "message": message}})

    def _is_local(self) -> bool:
        return self.client_address[0] in ("127.0.0.1", "::1", "localhost")

    # -- routing -----------------------------------------------------------

    def do_GET(self):
        url = urlsplit(self.path)
        parts = [unquote(p) for p in url.path.split("/") if p]
        try:
            if parts[:2] == ["api", "topics"] and len(parts) == 2:
                self._topics_list(parse_qs(url.query))
            elif parts[:2] == ["api", "topics"] and len(parts) == 4:
                self._topic_detail(parts[2], parts[3])
            elif parts == ["api", "health"]:
                self._health()
            elif parts[:1] == ["api"]:
                self._send_error_json(404, "not_found", f"unknown endpoint {url.path}")
            else:
                self._static(parts)
        except BrokenPipeError:
            pass
        except Exception as exc:  # never leak a traceback as a raw 500
            log.exception("request failed: %s", self.path)
            self._send_error_json(500, "internal", str(exc))

    def do_POST(self):
        url = urlsplit(self.path)
        if url.path == "/api/reload":
            if not self._is_local():
                self._send_error_json(403, "forbidden", "reload is local-only")
                return
            count = self.server.reload_index()
            self._send_json(200, {"status": "ok", "topics_indexed": count})
        else:
            self._send_error_json(405, "method_not_allowed", "read-only API")

    # -- endpoints ----------------------------------------------------------

    def _topics_list(self, query: dict) -> None:
        sort = query.get("sort", ["score"])[0]
        if sort not in ("score", "date"):
            self._send_error_json(400, "bad_sort", f"unknown sort {sort!r}")
            return
        text = query.get("q", [None])[0]
        raw_page = query.get("page", ["0"])[0]
        try:
            page = int(raw_page)
            if page < 0:
                raise ValueError
        except ValueError:
            self._send_error_json(400, "bad_page", f"invalid page {raw_page!r}")
            return
        page_size = self.server.config.page_size
        entries = order_entries(self.server.entries, sort=sort, text=text)
        start = page * page_size
        self._send_json(200, {
            "topics": entries[start:start + page_size],
            "page": page,
            "page_size": page_size,
            "total": len(entries),
            "total_pages": math.ceil(len(entries) / page_size) if entries else 0,
        })

    def _topic_detail(self, day: str, hashtag: str) -> None:
        try:
            parse_day(day)
        except ValueError as exc:
            self._send_error_json(400, "bad_day", str(exc))
            return
        try:
            doc = self.server.store.get_topic(day, hashtag)
        except TopicNotFound:
            self._send_error_json(404, "not_found", f"no topic {day}/{hashtag}")
            return
        except CorruptRecord as exc:
            self._send_error_json(500, "corrupt_record", str(exc))
            return
        self._send_json(200, doc)

    def _health(self) -> None:
        self._send_json(200, {
            "status": "ok",
            "topics_indexed": len(self.server.entries),
            "schema_version": SCHEMA_VERSION,
        })

    def _static(self, parts: list[str]) -> None:
        static_dir = self.server.config.static_dir
        if static_dir is None:
            self._send_error_json(404, "no_webui", "no static bundle configured")
            return
        root = Path(static_dir).resolve()
        target = (root / Path(*parts)) if parts else root / "index.html"
        if target.is_dir():
            target = target / "index.html"
        target = target.resolve()
        if root not in target.parents and target != root:
            self._send_error_json(404, "not_found", "path outside static root")
            return
        if not target.is_file():
            self._send_error_json(404, "not_found", "no such file")
            return
        content_type = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        if content_type.startswith("text/") or content_type in (
            "application/javascript", "application/json"
        ):
            content_type += "; charset=utf-8"
        self._send(200, target.read_bytes(), content_type)


def create_server(config: ApiConfig) -> ExplorationServer:
    return ExplorationServer(config)


def serve_forever(config: ApiConfig) -> None:
    server = create_server(config)
    server.install_sighup()
    host, port = server.server_address[0], server.server_address[1]
    log.info("serving on http://%s:%s (topics: %d)", host, port, len(server.entries))
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


__all__ = ["ApiConfig", "ExplorationServer", "create_server", "serve_forever"]
