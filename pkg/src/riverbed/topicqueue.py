"""Embedded topic-based publish/subscribe message log.

Single-process broker with durable per-partition segment files and
committed consumer-group offsets, decoupling producers from consumers.

On-disk layout under ``data_dir``:
    <topic>/<partition>.seg      length-prefixed frames (see _encode_frame)
    <topic>/<group>.offsets      text lines "partition next_offset"

Frame format: u32 LE frame length (bytes after this field), u32 LE key
length (0xFFFFFFFF = no key), key bytes, payload bytes, u64 LE enqueue_ts.
"""

from __future__ import annotations

import os
import re
import struct
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from .cardinality.kernels import xxhash64

DEFAULT_PARTITIONS = 4
_NO_KEY = 0xFFFFFFFF
_NAME_RE = re.compile(r"^[A-Za-z0-9._-]+$")


class QueueError(Exception):
    pass


class UnknownTopicError(QueueError):
    pass


class OffsetOutOfRangeError(QueueError):
    pass


class StorageError(QueueError):
    """Segment or offsets write failed; the message was not appended."""


@dataclass(frozen=True)
class Message:
    topic: str
    partition: int
    offset: int
    key: bytes | None
    payload: bytes
    enqueue_ts: int


def _encode_frame(key: bytes | None, payload: bytes, enqueue_ts: int) -> bytes:
    klen = _NO_KEY if key is None else len(key)
    body = struct.pack("<I", klen)
    if key is not None:
        body += key
    body += payload
    body += struct.pack("<Q", enqueue_ts)
    return struct.pack("<I", len(body)) + body


def _decode_frames(blob: bytes, topic: str, partition: int):
    messages = []
    pos = 0
    offset = 0
    n = len(blob)
    while pos + 4 <= n:
        (length,) = struct.unpack_from("<I", blob, pos)
        if pos + 4 + length > n:
            break  # torn tail frame: ignore, everything before it is intact
        body = blob[pos + 4 : pos + 4 + length]
        (klen,) = struct.unpack_from("<I", body, 0)
        cursor = 4
        key = None
        if klen != _NO_KEY:
            key = bytes(body[cursor : cursor + klen])
            cursor += klen
        payload = bytes(body[cursor:-8])
        (ts,) = struct.unpack_from("<Q", body, length - 8)
        messages.append(Message(topic, partition, offset, key, payload, ts))
        offset += 1
        pos += 4 + length
    return messages


class _Partition:
    def __init__(self, path: Path, topic: str, index: int):
        self.path = path
        self.topic = topic
        self.index = index
        self.messages: list[Message] = []
        self.lock = threading.Lock()
        self._fh = None
        if path.exists():
            self.messages = _decode_frames(path.read_bytes(), topic, index)

    def _handle(self):
        if self._fh is None:
            self._fh = open(self.path, "ab")
        return self._fh

    def append(self, key: bytes | None, payload: bytes, enqueue_ts: int) -> int:
        with self.lock:
            frame = _encode_frame(key, payload, enqueue_ts)
            try:
                fh = self._handle()
                fh.write(frame)
                fh.flush()
            except OSError as exc:
                raise StorageError(f"segment write failed: {exc}") from exc
            offset = len(self.messages)
            self.messages.append(
                Message(self.topic, self.index, offset, key, payload, enqueue_ts)
            )
            return offset

    def close(self):
        if self._fh is not None:
            try:
                self._fh.flush()
                os.fsync(self._fh.fileno())
            finally:
                self._fh.close()
                self._fh = None


class _Topic:
    def __init__(self, directory: Path, name: str, partitions: int):
        self.directory = directory
        self.name = name
        self.partitions = [
            _Partition(directory / f"{i}.seg", name, i) for i in range(partitions)
        ]
        self.rr_counter = 0
        self.rr_lock = threading.Lock()


class Broker:
    """Thread-safe embedded broker; one instance owns a data directory."""

    def __init__(self, data_dir: str | os.PathLike, default_partitions: int = DEFAULT_PARTITIONS):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.default_partitions = default_partitions
        self._topics: dict[str, _Topic] = {}
        self._offsets: dict[tuple[str, str], dict[int, int]] = {}
        self._group_locks: dict[tuple[str, str], threading.Lock] = {}
        self._meta_lock = threading.RLock()
        self._load()

    def _load(self):
        for topic_dir in sorted(self.data_dir.iterdir()) if self.data_dir.exists() else []:
            if not topic_dir.is_dir():
                continue
            seg_indexes = sorted(
                int(f.stem) for f in topic_dir.glob("*.seg") if f.stem.isdigit()
            )
            if not seg_indexes:
                continue
            topic = _Topic(topic_dir, topic_dir.name, max(seg_indexes) + 1)
            self._topics[topic_dir.name] = topic
            for offsets_file in topic_dir.glob("*.offsets"):
                group = offsets_file.stem
                committed = {}
                for line in offsets_file.read_text().splitlines():
                    parts = line.split()
                    if len(parts) == 2:
                        committed[int(parts[0])] = int(parts[1])
                self._offsets[(group, topic_dir.name)] = committed

    # -- topics -------------------------------------------------------------

    @staticmethod
    def _check_name(kind: str, name: str):
        if not _NAME_RE.match(name):
            raise QueueError(f"invalid {kind} name {name!r}")

    def create_topic(self, topic: str, partitions: int | None = None) -> None:
        self._check_name("topic", topic)
        with self._meta_lock:
            if topic in self._topics:
                return
            count = partitions or self.default_partitions
            directory = self.data_dir / topic
            directory.mkdir(parents=True, exist_ok=True)
            for i in range(count):
                (directory / f"{i}.seg").touch()
            self._topics[topic] = _Topic(directory, topic, count)

    def topics(self) -> list[str]:
        with self._meta_lock:
            return sorted(self._topics)

    def partition_count(self, topic: str) -> int:
        return len(self._topic(topic).partitions)

    def _topic(self, topic: str) -> _Topic:
        with self._meta_lock:
            try:
                return self._topics[topic]
            except KeyError:
                raise UnknownTopicError(topic) from None

    # -- produce ------------------------------------------------------------

    def publish(
        self, topic: str, payload: bytes, key: bytes | None = None, enqueue_ts: int | None = None
    ) -> tuple[int, int]:
        with self._meta_lock:
            if topic not in self._topics:
                self.create_topic(topic)
            t = self._topics[topic]
        if key is not None:
            partition = xxhash64(key) % len(t.partitions)
        else:
            with t.rr_lock:
                partition = t.rr_counter % len(t.partitions)
                t.rr_counter += 1
        ts = enqueue_ts if enqueue_ts is not None else int(time.time() * 1000)
        offset = t.partitions[partition].append(key, payload, ts)
        return partition, offset

    # -- consume ------------------------------------------------------------

    def _group_lock(self, group: str, topic: str) -> threading.Lock:
        with self._meta_lock:
            return self._group_locks.setdefault((group, topic), threading.Lock())

    def committed(self, group: str, topic: str) -> dict[int, int]:
        self._topic(topic)
        with self._meta_lock:
            base = self._offsets.get((group, topic), {})
            return {
                p: base.get(p, 0) for p in range(len(self._topics[topic].partitions))
            }

    def end_offsets(self, topic: str) -> dict[int, int]:
        t = self._topic(topic)
        return {p.index: len(p.messages) for p in t.partitions}

    def poll(self, group: str, topic: str, max_records: int = 10_000) -> list[Message]:
        """Up to max_records at-and-after committed offsets; does not commit.

        Partitions are interleaved round-robin; within a partition messages
        come back in strict offset order.
        """
        t = self._topic(topic)
        committed = self.committed(group, topic)
        pending = []
        for part in t.partitions:
            with part.lock:
                view = part.messages[committed[part.index] :]
            if view:
                pending.append(view)
        out: list[Message] = []
        cursor = 0
        while pending and len(out) < max_records:
            nxt = []
            for view in pending:
                if cursor < len(view) and len(out) < max_records:
                    out.append(view[cursor])
                    if cursor + 1 < len(view):
                        nxt.append(view)
            pending = nxt
            cursor += 1
        return out

    def commit(self, group: str, topic: str, offsets: dict[int, int]) -> None:
        self._check_name("group", group)
        t = self._topic(topic)
        lock = self._group_lock(group, topic)
        with lock:
            current = self.committed(group, topic)
            for partition, offset in offsets.items():
                if partition < 0 or partition >= len(t.partitions):
                    raise OffsetOutOfRangeError(f"partition {partition} does not exist")
                end = len(t.partitions[partition].messages)
                if offset > end:
                    raise OffsetOutOfRangeError(
                        f"offset {offset} beyond end {end} for partition {partition}"
                    )
                current[partition] = offset
            path = t.directory / f"{group}.offsets"
            tmp = path.with_suffix(".offsets.tmp")
            try:
                tmp.write_text(
                    "".join(f"{p} {o}\n" for p, o in sorted(current.items()))
                )
                os.replace(tmp, path)
            except OSError as exc:
                raise StorageError(f"offsets write failed: {exc}") from exc
            with self._meta_lock:
                self._offsets[(group, topic)] = current

    def close(self):
        with self._meta_lock:
            for t in self._topics.values():
                for part in t.partitions:
                    part.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
