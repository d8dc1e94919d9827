"""Benchmark harness and CLI.

Subcommands:
    generate   deterministic synthetic NDJSON log records
    run        drive both daily distinct-IP pipelines end to end
               (ingest -> queue -> engine, replay mode) over a grid of
               batch sizes and write CSV/JSON/summary reports
    compare    ratio table and directional checks over a run report
    serve      boot ingest (HTTP+TCP), the engine, the sentiment bridge,
               and the review API for interactive use

The workload follows the reference shape: 12 batches per experiment,
batch sizes 3000/5000/10000, each record exactly 1296 serialized bytes
with a 15-byte zero-padded IPv4 address, and half of every batch's IPs
drawn from the already-seen pool.
"""

from __future__ import annotations

import argparse
import csv
import gc
import io
import json
import random
import shutil
import signal
import statistics
import sys
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

from .dailyip import ExactDailyOperator, HllDailyOperator, error_report
from .engine import MicroBatchEngine
from .httpapi import ApiServer
from .ingest import IngestService, TcpLineServer
from .sentiment import SentimentService, TicketStore
from .topicqueue import Broker
from .workflow import FileCheckpointer

DEFAULT_BATCH_SIZES = (3000, 5000, 10000)
DEFAULT_BATCHES = 12
DEFAULT_INTERVAL_MS = 300_000  # five simulated minutes
DEFAULT_RECORD_SIZE = 1296
DEFAULT_DUPLICATE_FRACTION = 0.5
DEFAULT_PRECISION = 14
DEFAULT_SEED = 4
EPOCH_MS = 1_735_689_600_000  # 2025-01-01T00:00:00Z

CSV_COLUMNS = [
    "experiment",
    "batch_size",
    "batch_id",
    "method",
    "value",
    "error_pct",
    "processing_ms",
    "scheduling_delay_ms",
    "checkpoint_bytes",
]


class RecordSizeTooSmallError(ValueError):
    pass


class IncompleteReportError(ValueError):
    pass


# -- synthetic workload ----------------------------------------------------------


def _format_ip(value: int) -> str:
    return ".".join(
        f"{(value >> shift) & 0xFF:03d}" for shift in (24, 16, 8, 0)
    )


def generate_logs(
    count: int,
    seed: int,
    duplicate_fraction: float = DEFAULT_DUPLICATE_FRACTION,
    record_size: int = DEFAULT_RECORD_SIZE,
    batch_size: int = 3000,
    interval_ms: int = DEFAULT_INTERVAL_MS,
    epoch_ms: int = EPOCH_MS,
    days: int = 1,
):
    """Yield ``count`` serialized records, deterministic under ``seed``.

    Within each batch of ``batch_size`` records, ``duplicate_fraction``
    of the IPs are drawn uniformly from the pool of previously generated
    addresses (the first batch reuses its own fresh half); the rest are
    fresh 15-character zero-padded dotted quads never seen before.
    """
    rng = random.Random(seed)
    seen: set[int] = set()
    pool: list[str] = []
    batches = max(1, -(-count // batch_size))
    emitted = 0
    for batch_index in range(batches):
        n = min(batch_size, count - emitted)
        if n <= 0:
            break
        n_dup = int(round(n * duplicate_fraction))
        n_fresh = n - n_dup
        fresh = []
        while len(fresh) < n_fresh:
            candidate = rng.getrandbits(32)
            if candidate not in seen:
                seen.add(candidate)
                fresh.append(_format_ip(candidate))
        dup_source = pool if pool else fresh
        dups = [dup_source[rng.randrange(len(dup_source))] for _ in range(n_dup)]
        ips = fresh + dups
        rng.shuffle(ips)
        pool.extend(fresh)

        day_index = batch_index * days // batches
        day_first_batch = (day_index * batches + days - 1) // days
        window_start = (
            epoch_ms
            + day_index * 86_400_000
            + (batch_index - day_first_batch) * interval_ms
        )
        for j, ip in enumerate(ips):
            start_ts = window_start + (j * interval_ms) // max(n, 1)
            doc = {
                "app": {"app_id": "bench", "version": "1.0", "app_type": "load"},
                "device": {
                    "os": "linux",
                    "resolution": "1920x1080",
                    "model": "synthetic",
                    "user_agent": "bench-agent/1.0",
                },
                "user": {"device_id": f"dev-{emitted + j:010d}", "user_id": ""},
                "event": {"event_name": "browse"},
                "object": {"url": "/bench", "pad": ""},
                "time": {"start_ts": start_ts, "end_ts": start_ts + 500},
                "geo": {"ip": ip, "network_type": "wifi"},
                "result": {"code": "ok"},
            }
            base = len(json.dumps(doc, separators=(",", ":")).encode("utf-8"))
            padding = record_size - base
            if padding < 0:
                raise RecordSizeTooSmallError(
                    f"record_size {record_size} below minimum {base}"
                )
            doc["object"]["pad"] = "x" * padding
            yield json.dumps(doc, separators=(",", ":"))
        emitted += n


# -- experiment runner --------------------------------------------------------------


@dataclass
class Row:
    experiment: str
    batch_size: int
    batch_id: int
    method: str
    day: str
    value: int
    error_pct: float | None
    processing_ms: float
    scheduling_delay_ms: float
    checkpoint_bytes: int
    first_seen: int | None = None

    def to_csv(self) -> list:
        return [
            self.experiment,
            self.batch_size,
            self.batch_id,
            self.method,
            self.value,
            "" if self.error_pct is None else f"{self.error_pct:.6f}",
            f"{self.processing_ms:.3f}",
            f"{self.scheduling_delay_ms:.3f}",
            self.checkpoint_bytes,
        ]

    def to_dict(self) -> dict:
        doc = {
            "experiment": self.experiment,
            "batch_size": self.batch_size,
            "batch_id": self.batch_id,
            "method": self.method,
            "day": self.day,
            "value": self.value,
            "error_pct": self.error_pct,
            "processing_ms": round(self.processing_ms, 3),
            "scheduling_delay_ms": round(self.scheduling_delay_ms, 3),
            "checkpoint_bytes": self.checkpoint_bytes,
        }
        if self.first_seen is not None:
            doc["first_seen"] = self.first_seen
        return doc


def _method_operator(method: str, precision: int):
    if method == "exact":
        return ExactDailyOperator()
    if method == "hllpp":
        return HllDailyOperator(precision)
    raise ValueError(f"unknown method {method!r}")


def _run_cell(broker, experiment, batch_size, batches, methods,
                          precision, interval_ms, ckpt_base, measure_pass) -> tuple:
    """One replay of a batch-size cell, one method at a time.

    Returns (rows, records consumed per method). Exact runs before the
    sketch so the sketch rows can report their error against it. The
    garbage collector stays off while batches execute: collector pauses
    would otherwise land inside operator timings at random.
    """
    runs = []
    for method in methods:
        engine = MicroBatchEngine(
            broker,
            topics=["events.browse"],
            group=f"bench-{method}-p{measure_pass}",
            checkpoint_dir=ckpt_base / f"ckpt-{method}-p{measure_pass}",
            pipeline=[(method, _method_operator(method, precision))],
            interval_ms=interval_ms,
            mode="replay",
            batch_records=batch_size,
            epoch_ms=EPOCH_MS,
        )
        runs.append((method, engine.run(stop_after=batches)))

    rows: list[Row] = []
    consumed = {method: 0 for method, _ in runs}
    exact_values: dict[tuple[int, str], int] = {}
    gc.collect()
    gc.disable()
    try:
        for method, stream in runs:
            for result in stream:
                consumed[method] += result.record_count
                for day, out in sorted(result.outputs[method].items()):
                    if method == "exact":
                        value = out["cumulative"]
                        exact_values[(result.batch_id, day)] = value
                        rows.append(Row(
                            experiment, batch_size, result.batch_id, method, day,
                            value, None,
                            result.metrics.processing_ms,
                            result.metrics.scheduling_delay_ms,
                            result.metrics.checkpoint_bytes,
                            first_seen=out["first_seen"],
                        ))
                    else:
                        value = out["estimate"]
                        exact = exact_values.get((result.batch_id, day))
                        rows.append(Row(
                            experiment, batch_size, result.batch_id, method, day,
                            value, error_report(day, exact, value) if exact else None,
                            result.metrics.processing_ms,
                            result.metrics.scheduling_delay_ms,
                            result.metrics.checkpoint_bytes,
                        ))
    finally:
        gc.enable()
    return rows, consumed


def run_experiment(
    batch_sizes=DEFAULT_BATCH_SIZES,
    batches: int = DEFAULT_BATCHES,
    interval_ms: int = DEFAULT_INTERVAL_MS,
    methods=("exact", "hllpp"),
    precision: int = DEFAULT_PRECISION,
    seed: int = DEFAULT_SEED,
    out_dir=None,
    work_dir=None,
    duplicate_fraction: float = DEFAULT_DUPLICATE_FRACTION,
    record_size: int = DEFAULT_RECORD_SIZE,
    days: int = 1,
    fmt: str = "both",
    cleanup_work: bool = True,
    checkpoint_root=None,
    measure_passes: int = 3,
    echo=lambda msg: None,
) -> dict:
    """Run the grid; returns the report dict and writes it under out_dir."""
    out_dir = Path(out_dir) if out_dir else None
    work_root = Path(work_dir) if work_dir else (out_dir / "work" if out_dir else None)
    if work_root is None:
        raise ValueError("need out_dir or work_dir")
    checkpoint_root = Path(checkpoint_root) if checkpoint_root else None

    rows: list[Row] = []
    violations: list[str] = []
    started = time.perf_counter()

    brokers: dict[int, Broker] = {}
    try:
        for batch_size in batch_sizes:
            experiment = f"b{batch_size}"
            count = batch_size * batches
            stream_seed = seed ^ (batch_size * 2654435761 % 2**32)
            broker = Broker(work_root / experiment / "queue")
            brokers[batch_size] = broker
            ingest = IngestService(broker)
            accepted = 0
            chunk: list[str] = []
            for line in generate_logs(
                count, stream_seed, duplicate_fraction, record_size,
                batch_size, interval_ms, EPOCH_MS, days,
            ):
                chunk.append(line)
                if len(chunk) >= 2000:
                    receipt = ingest.ingest_lines("\n".join(chunk).encode(), "127.0.0.1", "bench")
                    accepted += receipt.accepted
                    if receipt.rejected:
                        violations.append(f"{experiment}: generator produced rejected lines")
                    chunk = []
            if chunk:
                receipt = ingest.ingest_lines("\n".join(chunk).encode(), "127.0.0.1", "bench")
                accepted += receipt.accepted
            if accepted != count:
                violations.append(
                    f"{experiment}: generated {count} records but ingested {accepted}"
                )
            echo(f"{experiment}: ingested {accepted} records")

        # Repeated deterministic replays, still strictly one engine at a
        # time; each round covers the whole grid, and every batch keeps its
        # minimum observed time across rounds. On shared hardware the
        # minimum is the standard low-noise estimator (interference only
        # ever adds time), and grid-level rounds sample every cell across
        # the same wall-clock window so a slow host period cannot skew one
        # cell against another.
        passes = max(1, measure_passes)
        merged: dict[int, list[Row]] = {}
        baseline_values: dict[int, list] = {}
        for measure_pass in range(passes):
            for batch_size in batch_sizes:
                experiment = f"b{batch_size}"
                count = batch_size * batches
                ckpt_base = (
                    checkpoint_root / experiment
                    if checkpoint_root
                    else work_root / experiment
                )
                pass_rows, consumed = _run_cell(
                    broker=brokers[batch_size],
                    experiment=experiment,
                    batch_size=batch_size,
                    batches=batches,
                    methods=methods,
                    precision=precision,
                    interval_ms=interval_ms,
                    ckpt_base=ckpt_base,
                    measure_pass=measure_pass,
                )
                for method, method_consumed in consumed.items():
                    if method_consumed != count:
                        violations.append(
                            f"{experiment}/{method}: consumed {method_consumed} of {count} records"
                        )
                values = [(r.method, r.batch_id, r.day, r.value, r.checkpoint_bytes)
                          for r in pass_rows]
                if batch_size not in merged:
                    merged[batch_size] = pass_rows
                    baseline_values[batch_size] = values
                else:
                    if values != baseline_values[batch_size]:
                        violations.append(
                            f"{experiment}: values differ between measurement rounds"
                        )
                    for kept, fresh in zip(merged[batch_size], pass_rows):
                        kept.processing_ms = min(kept.processing_ms, fresh.processing_ms)
                        kept.scheduling_delay_ms = min(
                            kept.scheduling_delay_ms, fresh.scheduling_delay_ms
                        )
            echo(f"round {measure_pass + 1}/{passes} done")
    finally:
        for broker in brokers.values():
            broker.close()

    for batch_size in batch_sizes:
        rows.extend(merged.get(batch_size, []))
        violations.extend(_cell_assertions(f"b{batch_size}", batch_size, rows, methods))
        if cleanup_work:
            shutil.rmtree(work_root / f"b{batch_size}", ignore_errors=True)

    report = {
        "config": {
            "batch_sizes": list(batch_sizes),
            "batches": batches,
            "interval_ms": interval_ms,
            "methods": list(methods),
            "precision": precision,
            "seed": seed,
            "duplicate_fraction": duplicate_fraction,
            "record_size": record_size,
            "days": days,
        },
        "rows": [r.to_dict() for r in rows],
        "violations": violations,
        "elapsed_s": round(time.perf_counter() - started, 3),
    }
    if set(methods) >= {"exact", "hllpp"}:
        try:
            comparison = report_compare(report)
            report["comparison"] = comparison["by_batch_size"]
            violations.extend(comparison["violations"])
        except IncompleteReportError as exc:
            violations.append(str(exc))

    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        if fmt in ("json", "both"):
            (out_dir / "report.json").write_text(json.dumps(report, indent=2))
        if fmt in ("csv", "both"):
            with open(out_dir / "report.csv", "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(CSV_COLUMNS)
                for row in rows:
                    writer.writerow(row.to_csv())
        with open(out_dir / "results.ndjson", "w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps(daily_result_line(
                    row.batch_id, row.day, row.method, row.value, row.error_pct,
                    row.processing_ms, row.checkpoint_bytes,
                )) + "\n")
        (out_dir / "summary.txt").write_text(render_summary(report))
    return report


def daily_result_line(batch_id, day, method, value, error_pct, processing_ms,
                      checkpoint_bytes) -> dict:
    """Per-batch daily-stats record, the NDJSON shape shared by the report
    and the serve-mode stats log."""
    line = {"batch_id": batch_id, "day": day, "method": method, "value": value}
    if error_pct is not None:
        line["error_pct"] = error_pct
    line["processing_ms"] = round(processing_ms, 3)
    line["checkpoint_bytes"] = checkpoint_bytes
    return line


def _cell_assertions(experiment, batch_size, rows, methods) -> list[str]:
    """Reference-behavior checks embedded in the run itself."""
    problems = []
    cell = [r for r in rows if r.experiment == experiment]
    hll = [r for r in cell if r.method == "hllpp"]
    exact = [r for r in cell if r.method == "exact"]

    if "hllpp" in methods and "exact" in methods:
        for row in hll:
            if row.error_pct is None:
                problems.append(f"{experiment}: batch {row.batch_id} missing error_pct")
            elif row.error_pct >= 1.5:
                problems.append(
                    f"{experiment}: batch {row.batch_id} error {row.error_pct:.3f}% >= 1.5%"
                )
    if exact:
        sizes = [r.checkpoint_bytes for r in exact]
        if any(b >= a for a, b in zip(sizes[1:], sizes)):
            problems.append(f"{experiment}: exact checkpoint size not strictly increasing")
        total_first_seen = sum(r.first_seen or 0 for r in exact)
        final = max(exact, key=lambda r: r.batch_id).value
        if total_first_seen != final:
            problems.append(
                f"{experiment}: sum of first_seen {total_first_seen} != final cumulative {final}"
            )
    if hll:
        stable = [r.checkpoint_bytes for r in hll if r.batch_id >= 2]
        if stable and (max(stable) - min(stable)) / max(stable) >= 0.10:
            problems.append(f"{experiment}: hllpp checkpoint size varies >= 10% after batch 2")
    return problems


# -- comparison -------------------------------------------------------------------


def report_compare(report: dict) -> dict:
    """Processing-time ratios and checkpoint curves per batch size, with
    the directional claims checked (exact slower and bigger; the gap in
    time does not shrink as batches grow)."""
    rows = report.get("rows", [])
    if not rows:
        raise IncompleteReportError("report has no rows")
    methods = {r["method"] for r in rows}
    if not {"exact", "hllpp"} <= methods:
        raise IncompleteReportError(f"need both methods, report has {sorted(methods)}")

    by_size: dict[int, dict] = {}
    violations: list[str] = []
    for batch_size in sorted({r["batch_size"] for r in rows}):
        cell = [r for r in rows if r["batch_size"] == batch_size]
        exact_ms = [r["processing_ms"] for r in cell if r["method"] == "exact"]
        hll_ms = [r["processing_ms"] for r in cell if r["method"] == "hllpp"]
        exact_mean = statistics.mean(exact_ms)
        hll_mean = statistics.mean(hll_ms)
        ratio = exact_mean / hll_mean if hll_mean else float("inf")
        exact_curve = [
            (r["batch_id"], r["checkpoint_bytes"]) for r in cell if r["method"] == "exact"
        ]
        hll_curve = [
            (r["batch_id"], r["checkpoint_bytes"]) for r in cell if r["method"] == "hllpp"
        ]
        errors = [r["error_pct"] for r in cell if r["method"] == "hllpp" and r["error_pct"] is not None]
        by_size[batch_size] = {
            "exact_mean_ms": round(exact_mean, 3),
            "hllpp_mean_ms": round(hll_mean, 3),
            "time_ratio": round(ratio, 3),
            "exact_final_checkpoint_bytes": exact_curve[-1][1],
            "hllpp_final_checkpoint_bytes": hll_curve[-1][1],
            "max_error_pct": round(max(errors), 4) if errors else None,
            "exact_checkpoint_curve": exact_curve,
            "hllpp_checkpoint_curve": hll_curve,
        }
        if exact_mean <= hll_mean:
            violations.append(
                f"b{batch_size}: exact mean {exact_mean:.3f} ms not above hllpp {hll_mean:.3f} ms"
            )
        if exact_curve[-1][1] <= hll_curve[-1][1]:
            violations.append(f"b{batch_size}: exact checkpoint not larger than hllpp")

    ratios = [by_size[s]["time_ratio"] for s in sorted(by_size)]
    if any(b < a for a, b in zip(ratios, ratios[1:])):
        violations.append(f"time ratio not non-decreasing across batch sizes: {ratios}")

    final_hll = [by_size[s]["hllpp_final_checkpoint_bytes"] for s in sorted(by_size)]
    if max(final_hll) - min(final_hll) > 0.1 * max(final_hll):
        violations.append(
            f"hllpp day-state size should be flat across batch sizes, got {final_hll}"
        )

    return {"by_batch_size": by_size, "violations": violations}


def render_summary(report: dict) -> str:
    out = io.StringIO()
    config = report["config"]
    out.write(
        f"grid: batch sizes {config['batch_sizes']} x {config['batches']} batches, "
        f"p={config['precision']}, seed={config['seed']}\n"
    )
    comparison = report.get("comparison")
    if comparison:
        out.write(
            f"{'batch_size':>10} {'exact ms':>10} {'hllpp ms':>10} {'ratio':>7} "
            f"{'exact ckpt':>11} {'hllpp ckpt':>11} {'max err%':>9}\n"
        )
        for size, stats in sorted(comparison.items(), key=lambda kv: int(kv[0])):
            out.write(
                f"{size:>10} {stats['exact_mean_ms']:>10.2f} {stats['hllpp_mean_ms']:>10.2f} "
                f"{stats['time_ratio']:>7.2f} {stats['exact_final_checkpoint_bytes']:>11} "
                f"{stats['hllpp_final_checkpoint_bytes']:>11} "
                f"{stats['max_error_pct'] if stats['max_error_pct'] is not None else '-':>9}\n"
            )
    violations = report.get("violations", [])
    if violations:
        out.write("VIOLATIONS:\n")
        for v in violations:
            out.write(f"  - {v}\n")
    else:
        out.write("all embedded checks passed\n")
    out.write(f"elapsed: {report.get('elapsed_s', '?')} s\n")
    return out.getvalue()


# -- serve stack --------------------------------------------------------------------


@dataclass
class ServeConfig:
    data_dir: Path
    host: str = "127.0.0.1"
    http_port: int = 8077
    tcp_port: int = 8078
    interval_ms: int = 5000
    precision: int = DEFAULT_PRECISION
    sample_rate: float = 1.0
    seed: int = DEFAULT_SEED
    checkpoint_dir: Path | None = None
    topics: tuple = (
        "events.browse", "events.error", "events.play",
        "events.search", "events.comment", "events.share", "events.custom",
    )


class ServeStack:
    """Everything wired together for interactive use, one data_dir."""

    def __init__(self, config: ServeConfig):
        self.config = config
        data_dir = Path(config.data_dir)
        data_dir.mkdir(parents=True, exist_ok=True)
        self.broker = Broker(data_dir / "queue")
        self.ingest = IngestService(self.broker)
        self.results_file = open(data_dir / "results.ndjson", "a", encoding="utf-8")
        self.metrics_file = open(data_dir / "metrics.ndjson", "a", encoding="utf-8")
        self.daily_stats_file = open(data_dir / "daily_stats.ndjson", "a", encoding="utf-8")
        self.sentiment = SentimentService(
            self.broker,
            topic="events.comment",
            store=TicketStore(data_dir / "tickets.ndjson"),
            checkpointer=FileCheckpointer(data_dir / "workflows"),
            results_sink=self.results_file,
            sample_rate=config.sample_rate,
            seed=config.seed,
        )
        self.engine = MicroBatchEngine(
            self.broker,
            topics=list(config.topics),
            group="analytics",
            checkpoint_dir=config.checkpoint_dir or data_dir / "checkpoints",
            pipeline=[
                ("exact", ExactDailyOperator()),
                ("hllpp", HllDailyOperator(config.precision)),
            ],
            interval_ms=config.interval_ms,
            mode="wall",
            metrics_sink=self.metrics_file,
        )
        self.api = ApiServer(
            host=config.host, port=config.http_port,
            ingest=self.ingest, reviews=self.sentiment,
        )
        self.tcp = TcpLineServer(self.ingest, host=config.host, port=config.tcp_port)
        self._stop = threading.Event()
        self._threads: list[threading.Thread] = []

    def start(self) -> "ServeStack":
        self.api.start()
        self.tcp.start()

        def engine_loop():
            exact_values: dict[tuple[int, str], int] = {}
            for result in self.engine.run(stop_after=None):
                for method in ("exact", "hllpp"):
                    for day, out in sorted(result.outputs.get(method, {}).items()):
                        if method == "exact":
                            value, err = out["cumulative"], None
                            exact_values[(result.batch_id, day)] = value
                        else:
                            value = out["estimate"]
                            exact = exact_values.get((result.batch_id, day))
                            err = error_report(day, exact, value) if exact else None
                        self.daily_stats_file.write(
                            json.dumps(daily_result_line(
                                result.batch_id, day, method, value, err,
                                result.metrics.processing_ms,
                                result.metrics.checkpoint_bytes,
                            )) + "\n"
                        )
                self.daily_stats_file.flush()
                if self._stop.is_set():
                    break

        def bridge_loop():
            while not self._stop.is_set():
                summary = self.sentiment.process_available(max_records=500)
                if summary["polled"] == 0:
                    self._stop.wait(0.2)

        self._threads = [
            threading.Thread(target=engine_loop, daemon=True, name="engine"),
            threading.Thread(target=bridge_loop, daemon=True, name="bridge"),
        ]
        for t in self._threads:
            t.start()
        return self

    def stop(self):
        self._stop.set()
        self.engine.stop_event.set()
        for t in self._threads:
            t.join(timeout=10)
        self.api.stop()
        self.tcp.stop()
        self.broker.close()
        self.results_file.close()
        self.metrics_file.close()
        self.daily_stats_file.close()


# -- CLI ---------------------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riverbed-bench",
        description="synthetic workload driver for the streaming analytics stack",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="emit synthetic NDJSON log records")
    g.add_argument("--count", type=int, required=True)
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.add_argument("--duplicate-fraction", type=float, default=DEFAULT_DUPLICATE_FRACTION)
    g.add_argument("--record-size", type=int, default=DEFAULT_RECORD_SIZE)
    g.add_argument("--batch-size", type=int, default=3000)
    g.add_argument("--interval-ms", type=int, default=DEFAULT_INTERVAL_MS)
    g.add_argument("--days", type=int, default=1)
    g.add_argument("--out", type=Path, default=None, help="output file (default stdout)")

    r = sub.add_parser("run", help="run the experiment grid")
    r.add_argument("--batch-size", type=_int_list, default=list(DEFAULT_BATCH_SIZES),
                   help="comma-separated batch sizes")
    r.add_argument("--batches", type=int, default=DEFAULT_BATCHES)
    r.add_argument("--interval-ms", type=int, default=DEFAULT_INTERVAL_MS)
    r.add_argument("--method", choices=["exact", "hllpp", "both"], default="both")
    r.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    r.add_argument("--seed", type=int, default=DEFAULT_SEED)
    r.add_argument("--duplicate-fraction", type=float, default=DEFAULT_DUPLICATE_FRACTION)
    r.add_argument("--record-size", type=int, default=DEFAULT_RECORD_SIZE)
    r.add_argument("--days", type=int, default=1)
    r.add_argument("--out", type=Path, required=True, help="report directory")
    r.add_argument("--data-dir", type=Path, default=None,
                   help="scratch dir for queue segments (default <out>/work)")
    r.add_argument("--checkpoint-dir", type=Path, default=None,
                   help="root for engine checkpoints (default inside the scratch dir)")
    r.add_argument("--passes", type=int, default=3,
                   help="measurement passes per cell; per-batch times keep the minimum")
    r.add_argument("--format", choices=["csv", "json", "both"], default="both")

    c = sub.add_parser("compare", help="summarize a run report")
    c.add_argument("report", type=Path, help="path to report.json")

    s = sub.add_parser("serve", help="boot the interactive stack")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--http-port", type=int, default=8077)
    s.add_argument("--tcp-port", type=int, default=8078)
    s.add_argument("--data-dir", type=Path, required=True)
    s.add_argument("--checkpoint-dir", type=Path, default=None,
                   help="engine checkpoint directory (default <data-dir>/checkpoints)")
    s.add_argument("--interval-ms", type=int, default=5000)
    s.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    s.add_argument("--sample-rate", type=float, default=1.0)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "generate":
        sink = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
        try:
            for line in generate_logs(
                args.count, args.seed, args.duplicate_fraction, args.record_size,
                args.batch_size, args.interval_ms, EPOCH_MS, args.days,
            ):
                sink.write(line + "\n")
        finally:
            if args.out:
                sink.close()
        return 0

    if args.command == "run":
        methods = ("exact", "hllpp") if args.method == "both" else (args.method,)
        report = run_experiment(
            batch_sizes=args.batch_size,
            batches=args.batches,
            interval_ms=args.interval_ms,
            methods=methods,
            precision=args.precision,
            seed=args.seed,
            out_dir=args.out,
            work_dir=args.data_dir,
            duplicate_fraction=args.duplicate_fraction,
            record_size=args.record_size,
            days=args.days,
            fmt=args.format,
            checkpoint_root=args.checkpoint_dir,
            measure_passes=args.passes,
            echo=lambda msg: print(msg, file=sys.stderr),
        )
        print(render_summary(report), end="")
        return 1 if report["violations"] else 0

    if args.command == "compare":
        report = json.loads(Path(args.report).read_text())
        comparison = report_compare(report)
        report["comparison"] = comparison["by_batch_size"]
        report["violations"] = comparison["violations"]
        print(render_summary(report), end="")
        return 1 if comparison["violations"] else 0

    if args.command == "serve":
        stack = ServeStack(
            ServeConfig(
                data_dir=args.data_dir,
                host=args.host,
                http_port=args.http_port,
                tcp_port=args.tcp_port,
                interval_ms=args.interval_ms,
                precision=args.precision,
                sample_rate=args.sample_rate,
                seed=args.seed,
                checkpoint_dir=args.checkpoint_dir,
            )
        ).start()
        print(
            f"http://{args.host}:{args.http_port} (POST /logs, /api/reviews) | "
            f"tcp {args.host}:{args.tcp_port} | data {args.data_dir}",
            file=sys.stderr,
        )
        stop = threading.Event()
        signal.signal(signal.SIGINT, lambda *_: stop.set())
        signal.signal(signal.SIGTERM, lambda *_: stop.set())
        try:
            stop.wait()
        finally:
            stack.stop()
        return 0

    return 2  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
