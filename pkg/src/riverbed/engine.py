"""Micro-batch execution: fixed-interval batches over queued records,
stateful operators against a keyed blob store, and per-batch checkpoints.

Two batching modes:

* ``replay`` — a batch is the next N queued messages; a simulated clock
  advances by ``interval_ms`` per batch. Deterministic and fast; this is
  what the benchmark uses.
* ``wall`` — true interval timers; batches drain whatever arrived. A batch
  overrunning its interval delays the next one, and the lag is reported
  as scheduling delay.

Offsets are committed strictly after a checkpoint succeeds, and the
checkpoint itself carries the source offsets, so a crash at any point
never double-applies a batch after restart.

Checkpoint directory layout: ``ckpt-<batch_id>.bin`` snapshots plus a
``LATEST`` text file naming the last durable batch_id.
"""

from __future__ import annotations

import io
import json
import os
import struct
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from . import logschema
from .cardinality.kernels import xxhash64
from .topicqueue import Broker

MAGIC = b"RVBDCKPT"
_FORMAT_VERSION = 1
_HEADER = struct.Struct("<8sHQQQ")  # magic, version, batch_id, entries, body hash
HEADER_SIZE = _HEADER.size

OFFSETS_STATE_KEY = "__engine/offsets"


class CheckpointWriteError(Exception):
    """Snapshot could not be written; the batch was rolled back."""


class CorruptCheckpointError(Exception):
    pass


class CodecError(Exception):
    """A state blob could not be decoded or encoded."""


@dataclass(frozen=True)
class Batch:
    batch_id: int
    window_start: int
    window_end: int
    records: tuple


@dataclass
class BatchMetrics:
    batch_id: int
    record_count: int
    processing_ms: float
    scheduling_delay_ms: float
    checkpoint_bytes: int


@dataclass
class BatchResult:
    batch_id: int
    window_start: int
    window_end: int
    record_count: int
    outputs: dict
    metrics: BatchMetrics


class StateStore:
    """Keyed opaque blobs; codecs live with the operators that own the keys."""

    def __init__(self, blobs: dict | None = None):
        self._blobs: dict[str, bytes] = dict(blobs or {})

    def get(self, key: str) -> bytes | None:
        return self._blobs.get(key)

    def put(self, key: str, blob: bytes) -> None:
        if not isinstance(blob, bytes):
            raise CodecError(f"state blob for {key!r} must be bytes")
        self._blobs[key] = blob

    def delete(self, key: str) -> None:
        self._blobs.pop(key, None)

    def keys(self, prefix: str = "") -> list[str]:
        return sorted(k for k in self._blobs if k.startswith(prefix))

    def snapshot(self) -> dict[str, bytes]:
        return dict(self._blobs)

    def load(self, blobs: dict[str, bytes]) -> None:
        self._blobs = dict(blobs)


def update_state_by_key(batch: Batch, store: StateStore, key_fn, update_fn, extra_keys=()):
    """Group records by key and fold each group into its state blob.

    ``update_fn(existing_blob_or_None, records) -> (new_blob, output)`` is
    invoked exactly once per key present in the batch plus any explicitly
    requested ``extra_keys``; untouched keys are left alone.
    """
    groups: dict[str, list] = {key: [] for key in extra_keys}
    for record in batch.records:
        groups.setdefault(key_fn(record), []).append(record)
    outputs = {}
    for key in sorted(groups):
        new_blob, output = update_fn(store.get(key), groups[key])
        store.put(key, new_blob)
        outputs[key] = output
    return outputs


# -- checkpoints ---------------------------------------------------------------


def write_checkpoint(state: dict[str, bytes], directory: str | os.PathLike, batch_id: int) -> int:
    """Atomically persist a snapshot; returns its on-disk size in bytes."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    body = io.BytesIO()
    for key in sorted(state):
        encoded = key.encode("utf-8")
        body.write(struct.pack("<H", len(encoded)))
        body.write(encoded)
        blob = state[key]
        body.write(struct.pack("<I", len(blob)))
        body.write(blob)
    payload = body.getvalue()
    header = _HEADER.pack(MAGIC, _FORMAT_VERSION, batch_id, len(state), xxhash64(payload))
    final = directory / f"ckpt-{batch_id}.bin"
    tmp = directory / f"ckpt-{batch_id}.bin.tmp"
    try:
        with open(tmp, "wb") as fh:
            fh.write(header)
            fh.write(payload)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, final)
        latest_tmp = directory / "LATEST.tmp"
        latest_tmp.write_text(str(batch_id))
        os.replace(latest_tmp, directory / "LATEST")
    except OSError as exc:
        raise CheckpointWriteError(str(exc)) from exc
    return final.stat().st_size


def restore_checkpoint(directory: str | os.PathLike) -> tuple[dict[str, bytes], int] | None:
    """Load the last durably completed snapshot, or None if there is none."""
    directory = Path(directory)
    latest = directory / "LATEST"
    if not latest.exists():
        return None
    try:
        batch_id = int(latest.read_text().strip())
    except ValueError as exc:
        raise CorruptCheckpointError(f"LATEST unreadable: {exc}") from exc
    blob = (directory / f"ckpt-{batch_id}.bin").read_bytes()
    if len(blob) < HEADER_SIZE:
        raise CorruptCheckpointError("snapshot shorter than header")
    magic, version, stored_id, count, body_hash = _HEADER.unpack_from(blob)
    if magic != MAGIC or version != _FORMAT_VERSION or stored_id != batch_id:
        raise CorruptCheckpointError("snapshot header mismatch")
    payload = blob[HEADER_SIZE:]
    if xxhash64(payload) != body_hash:
        raise CorruptCheckpointError("snapshot integrity hash mismatch")
    state = {}
    pos = 0
    for _ in range(count):
        (klen,) = struct.unpack_from("<H", payload, pos)
        pos += 2
        key = payload[pos : pos + klen].decode("utf-8")
        pos += klen
        (blen,) = struct.unpack_from("<I", payload, pos)
        pos += 4
        state[key] = payload[pos : pos + blen]
        pos += blen
    if pos != len(payload):
        raise CorruptCheckpointError("snapshot has trailing bytes")
    return state, batch_id


def _encode_offsets(offsets: dict[tuple[str, int], int]) -> bytes:
    return "".join(
        f"{topic} {partition} {offset}\n"
        for (topic, partition), offset in sorted(offsets.items())
    ).encode("utf-8")


def _decode_offsets(blob: bytes) -> dict[tuple[str, int], int]:
    out = {}
    for line in blob.decode("utf-8").splitlines():
        topic, partition, offset = line.split()
        out[(topic, int(partition))] = int(offset)
    return out


# -- engine --------------------------------------------------------------------


class MicroBatchEngine:
    def __init__(
        self,
        broker: Broker,
        topics,
        group: str,
        checkpoint_dir,
        pipeline,
        interval_ms: int,
        mode: str = "replay",
        batch_records: int | None = None,
        epoch_ms: int = 0,
        metrics_sink=None,
        decoder=logschema.parse_payload,
    ):
        if interval_ms <= 0:
            raise ValueError("interval_ms must be positive")
        if not pipeline:
            raise ValueError("pipeline must not be empty")
        if mode not in ("replay", "wall"):
            raise ValueError(f"unknown mode {mode!r}")
        self.broker = broker
        self.topics = sorted(topics)
        self.group = group
        self.checkpoint_dir = Path(checkpoint_dir)
        self.pipeline = list(pipeline)
        self.interval_ms = interval_ms
        self.mode = mode
        self.batch_records = batch_records
        self.epoch_ms = epoch_ms
        self.metrics_sink = metrics_sink
        self.decoder = decoder
        self.store = StateStore()
        self.last_batch_id = 0
        self.records_consumed = 0
        self.stop_event = threading.Event()
        self._lag_ms = 0.0

        for topic in self.topics:
            self.broker.create_topic(topic)

        restored = restore_checkpoint(self.checkpoint_dir)
        if restored is not None:
            state, self.last_batch_id = restored
            offsets_blob = state.pop(OFFSETS_STATE_KEY, b"")
            self.store.load(state)
            # Re-align the broker with the snapshot: state and position must
            # move together or a replayed batch would double-apply.
            per_topic: dict[str, dict[int, int]] = {}
            for (topic, partition), offset in _decode_offsets(offsets_blob).items():
                per_topic.setdefault(topic, {})[partition] = offset
            for topic, offsets in per_topic.items():
                self.broker.commit(self.group, topic, offsets)

    # -- internals -----------------------------------------------------------

    def _poll_batch(self) -> list:
        cap = self.batch_records if self.mode == "replay" and self.batch_records else None
        messages = []
        for topic in self.topics:
            limit = 1_000_000 if cap is None else cap - len(messages)
            if limit <= 0:
                break
            messages.extend(self.broker.poll(self.group, topic, max_records=limit))
        return messages

    def _commit(self, messages) -> None:
        next_offsets: dict[str, dict[int, int]] = {}
        for m in messages:
            tp = next_offsets.setdefault(m.topic, {})
            tp[m.partition] = max(tp.get(m.partition, 0), m.offset + 1)
        for topic, offsets in next_offsets.items():
            self.broker.commit(self.group, topic, offsets)

    def _checkpoint(self, batch_id: int, messages) -> int:
        state = self.store.snapshot()
        offsets: dict[tuple[str, int], int] = {}
        for topic in self.topics:
            for partition, offset in self.broker.committed(self.group, topic).items():
                offsets[(topic, partition)] = offset
        for m in messages:
            key = (m.topic, m.partition)
            offsets[key] = max(offsets.get(key, 0), m.offset + 1)
        state[OFFSETS_STATE_KEY] = _encode_offsets(offsets)
        return write_checkpoint(state, self.checkpoint_dir, batch_id)

    def _rollback(self) -> None:
        restored = restore_checkpoint(self.checkpoint_dir)
        if restored is None:
            self.store.load({})
        else:
            state, _ = restored
            state.pop(OFFSETS_STATE_KEY, None)
            self.store.load(state)

    def _emit_metrics(self, metrics: BatchMetrics, window) -> None:
        if self.metrics_sink is None:
            return
        line = json.dumps(
            {
                "batch_id": metrics.batch_id,
                "records": metrics.record_count,
                "window_start": window[0],
                "window_end": window[1],
                "processing_ms": round(metrics.processing_ms, 3),
                "scheduling_delay_ms": round(metrics.scheduling_delay_ms, 3),
                "checkpoint_bytes": metrics.checkpoint_bytes,
            }
        )
        self.metrics_sink.write(line + "\n")
        if hasattr(self.metrics_sink, "flush"):
            self.metrics_sink.flush()

    def _run_one(self, scheduling_delay_ms: float) -> BatchResult:
        batch_id = self.last_batch_id + 1
        window_start = self.epoch_ms + (batch_id - 1) * self.interval_ms
        window = (window_start, window_start + self.interval_ms)

        messages = self._poll_batch()
        records = tuple(self.decoder(m.payload) for m in messages)
        batch = Batch(batch_id, window[0], window[1], records)

        started = time.perf_counter()
        outputs = {}
        for name, operator in self.pipeline:
            outputs[name] = operator(batch, self.store)
        processing_ms = (time.perf_counter() - started) * 1000.0

        try:
            checkpoint_bytes = self._checkpoint(batch_id, messages)
        except CheckpointWriteError:
            self._rollback()
            raise
        self._commit(messages)

        self.last_batch_id = batch_id
        self.records_consumed += len(records)
        metrics = BatchMetrics(
            batch_id, len(records), processing_ms, scheduling_delay_ms, checkpoint_bytes
        )
        self._emit_metrics(metrics, window)
        return BatchResult(batch_id, window[0], window[1], len(records), outputs, metrics)

    # -- public --------------------------------------------------------------

    def run(self, stop_after: int | None = None):
        """Yield one BatchResult per executed batch.

        ``stop_after`` bounds the number of batches executed by this call;
        None runs until ``stop_event`` is set (wall mode) or forever in
        replay mode.
        """
        executed = 0
        if self.mode == "wall":
            origin = time.perf_counter()
            n = 0
            while stop_after is None or executed < stop_after:
                if self.stop_event.is_set():
                    return
                scheduled = origin + n * (self.interval_ms / 1000.0)
                now = time.perf_counter()
                if now < scheduled:
                    if self.stop_event.wait(scheduled - now):
                        return
                    now = time.perf_counter()
                delay_ms = max(0.0, (now - scheduled) * 1000.0)
                yield self._run_one(delay_ms)
                executed += 1
                n += 1
        else:
            while stop_after is None or executed < stop_after:
                if self.stop_event.is_set():
                    return
                started = time.perf_counter()
                result = self._run_one(self._lag_ms)
                elapsed_ms = (time.perf_counter() - started) * 1000.0
                # Simulated-clock lag: real work spilling past the simulated
                # interval accumulates, exactly like a wall-clock overrun.
                self._lag_ms = max(0.0, self._lag_ms + elapsed_ms - self.interval_ms)
                yield result
                executed += 1

    def run_to_completion(self, stop_after: int) -> list[BatchResult]:
        return list(self.run(stop_after=stop_after))
