"""HTTP surface: log ingestion plus the review console API.

Endpoints:
    POST /logs                      NDJSON body -> ingest receipt
    GET  /healthz                   liveness
    GET  /api/reviews?status=...    ticket list (newest first)
    GET  /api/reviews/{id}          one ticket
    POST /api/reviews/{id}/resolve  {sentiment_override?, response, reviewer}
                                    -> 200 final workflow state,
                                       404 unknown, 409 already resolved

CORS is wide open so the browser console can be served from anywhere.
"""

from __future__ import annotations

import json
import threading
import urllib.parse
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .ingest import BindError, IngestService, QueueUnavailableError
from .sentiment import AlreadyResolvedError, SentimentService, UnknownTicketError


class ApiHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "riverbed"

    # silence per-request stderr logging
    def log_message(self, fmt, *args):
        pass

    @property
    def ingest(self) -> IngestService | None:
        return self.server.ingest  # type: ignore[attr-defined]

    @property
    def reviews(self) -> SentimentService | None:
        return self.server.reviews  # type: ignore[attr-defined]

    def _send(self, status: int, doc: dict):
        body = json.dumps(doc).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _read_body(self) -> bytes:
        length = int(self.headers.get("Content-Length") or 0)
        return self.rfile.read(length) if length else b""

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        parsed = urllib.parse.urlparse(self.path)
        parts = [p for p in parsed.path.split("/") if p]
        if parsed.path == "/healthz":
            self._send(200, {"status": "ok"})
        elif parts[:2] == ["api", "reviews"] and len(parts) == 2 and self.reviews:
            status = urllib.parse.parse_qs(parsed.query).get("status", [None])[0]
            self._send(200, {"tickets": self.reviews.list_tickets(status)})
        elif parts[:2] == ["api", "reviews"] and len(parts) == 3 and self.reviews:
            try:
                self._send(200, self.reviews.get_ticket(parts[2]))
            except UnknownTicketError:
                self._send(404, {"error": "unknown ticket"})
        else:
            self._send(404, {"error": "not found"})

    def do_POST(self):
        parsed = urllib.parse.urlparse(self.path)
        parts = [p for p in parsed.path.split("/") if p]
        if parsed.path == "/logs" and self.ingest:
            try:
                receipt = self.ingest.ingest_lines(
                    self._read_body(),
                    self.client_address[0],
                    self.headers.get("User-Agent", ""),
                )
            except QueueUnavailableError as exc:
                self._send(503, {"error": f"queue unavailable: {exc}"})
                return
            self._send(200, receipt.to_dict())
        elif (
            parts[:2] == ["api", "reviews"]
            and len(parts) == 4
            and parts[3] == "resolve"
            and self.reviews
        ):
            try:
                doc = json.loads(self._read_body() or b"{}")
            except json.JSONDecodeError:
                self._send(400, {"error": "body must be JSON"})
                return
            response = doc.get("response", "")
            reviewer = doc.get("reviewer", "")
            override = doc.get("sentiment_override")
            if not response or not reviewer:
                self._send(400, {"error": "response and reviewer must be non-empty"})
                return
            try:
                outcome = self.reviews.resolve_ticket(parts[2], response, reviewer, override)
            except UnknownTicketError:
                self._send(404, {"error": "unknown ticket"})
            except AlreadyResolvedError:
                self._send(409, {"error": "ticket already resolved"})
            except ValueError as exc:
                self._send(400, {"error": str(exc)})
            else:
                self._send(200, outcome)
        else:
            self._send(404, {"error": "not found"})


class ApiServer(ThreadingHTTPServer):
    daemon_threads = True
    allow_reuse_address = True

    def __init__(self, host: str = "127.0.0.1", port: int = 0,
                 ingest: IngestService | None = None,
                 reviews: SentimentService | None = None):
        self.ingest = ingest
        self.reviews = reviews
        self._thread: threading.Thread | None = None
        try:
            super().__init__((host, port), ApiHandler)
        except OSError as exc:
            raise BindError(f"cannot bind {host}:{port}: {exc}") from exc

    @property
    def port(self) -> int:
        return self.server_address[1]

    @property
    def base_url(self) -> str:
        return f"http://{self.server_address[0]}:{self.port}"

    def start(self) -> "ApiServer":
        self._thread = threading.Thread(target=self.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self):
        self.shutdown()
        self.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)
