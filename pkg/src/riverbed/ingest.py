"""Network front door: validates, enriches, and publishes log records.

Both transports speak newline-delimited JSON records and share one
code path: validate -> enrich(remote address, user agent) -> publish to
"events.<family>" keyed by source IP. Invalid lines never enter the
queue; on HTTP they are reported per line while valid lines are still
accepted.
"""

from __future__ import annotations

import socketserver
import threading
from dataclasses import dataclass, field

from . import logschema
from .topicqueue import Broker, StorageError

TOPIC_PREFIX = "events."


class QueueUnavailableError(Exception):
    """Broker storage failed; the whole request must be failed."""


class BindError(OSError):
    pass


@dataclass(frozen=True)
class RejectedLine:
    line_no: int
    kind: str
    detail: str

    def to_dict(self) -> dict:
        return {"line": self.line_no, "reason": self.kind, "detail": self.detail}


@dataclass
class IngestReceipt:
    accepted: int = 0
    rejected: list[RejectedLine] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "rejected": [r.to_dict() for r in self.rejected],
        }


def topic_for(record: logschema.LogRecord, registry=logschema.DEFAULT_EVENT_FAMILIES) -> str:
    return TOPIC_PREFIX + logschema.event_family(record.event.event_name, registry)


class IngestService:
    """Stateless validation/enrichment/publish pipeline over a broker."""

    def __init__(self, broker: Broker, registry=logschema.DEFAULT_EVENT_FAMILIES):
        self.broker = broker
        self.registry = registry

    def ingest_record(self, line: bytes | str, remote_ip: str, user_agent: str):
        """Validate one line and publish it; raises ValidationError or
        QueueUnavailableError."""
        record = logschema.validate(line, self.registry)
        record = logschema.enrich(record, remote_ip, user_agent)
        key = record.geo.ip.encode("utf-8") if record.geo.ip else None
        payload = logschema.serialize(record).encode("utf-8")
        try:
            return self.broker.publish(topic_for(record, self.registry), payload, key=key)
        except StorageError as exc:
            raise QueueUnavailableError(str(exc)) from exc

    def ingest_lines(self, body: bytes, remote_ip: str, user_agent: str) -> IngestReceipt:
        """Publish every valid line; report every invalid one (partial
        acceptance). QueueUnavailableError aborts the whole call."""
        receipt = IngestReceipt()
        for line_no, line in enumerate(body.split(b"\n"), start=1):
            if not line.strip():
                continue
            try:
                self.ingest_record(line, remote_ip, user_agent)
                receipt.accepted += 1
            except logschema.ValidationError as exc:
                receipt.rejected.append(RejectedLine(line_no, exc.kind, str(exc)))
        return receipt


class _LineHandler(socketserver.StreamRequestHandler):
    def handle(self):
        server: TcpLineServer = self.server  # type: ignore[assignment]
        remote_ip = self.client_address[0]
        for line in self.rfile:
            line = line.strip()
            if not line:
                continue
            try:
                server.ingest.ingest_record(line, remote_ip, "")
                server.count(accepted=1)
            except logschema.ValidationError:
                # Malformed lines are counted and dropped; the connection
                # stays open for subsequent records.
                server.count(malformed=1)
            except QueueUnavailableError:
                server.count(dropped=1)


class TcpLineServer(socketserver.ThreadingTCPServer):
    """One record per line over TCP; each connection handled on its own
    thread, all publishing into the shared broker."""

    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, ingest: IngestService, host: str = "127.0.0.1", port: int = 0):
        self.ingest = ingest
        self.accepted = 0
        self.malformed = 0
        self.dropped = 0
        self._counter_lock = threading.Lock()
        self._thread: threading.Thread | None = None
        try:
            super().__init__((host, port), _LineHandler)
        except OSError as exc:
            raise BindError(f"cannot bind {host}:{port}: {exc}") from exc

    @property
    def port(self) -> int:
        return self.server_address[1]

    def count(self, accepted: int = 0, malformed: int = 0, dropped: int = 0):
        with self._counter_lock:
            self.accepted += accepted
            self.malformed += malformed
            self.dropped += dropped

    def start(self) -> "TcpLineServer":
        self._thread = threading.Thread(target=self.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self):
        self.shutdown()
        self.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)
