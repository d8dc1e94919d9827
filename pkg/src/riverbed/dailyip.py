"""Daily distinct-IP counting, two ways: exact first-seen accumulation
and per-day HyperLogLog++ sketches.

Both run as engine operators over the same batches and keep their state
under disjoint key prefixes ("exact/", "hll/") so one engine can carry
them side by side for benchmarking. Grouping is a single fused pass
(day bucket + IP extraction); these operators sit on the measured hot
path, where a second traversal per batch is real money.

Day attribution uses the event's start timestamp (UTC), not arrival time.
"""

from __future__ import annotations

from datetime import datetime, timedelta, timezone
from functools import lru_cache

from .cardinality import CardinalitySketch, ExactDistinctState
from .cardinality import kernels
from .engine import Batch, StateStore

_MS_PER_DAY = 86_400_000
_EPOCH_DATE = datetime(1970, 1, 1, tzinfo=timezone.utc).date()

EXACT_PREFIX = "exact/"
HLL_PREFIX = "hll/"


class ZeroExactCountError(ValueError):
    """No exact data for the day yet; a relative error is undefined."""


class SketchPrecisionConflictError(ValueError):
    """Checkpointed sketch precision differs from the configured one."""


@lru_cache(maxsize=64)
def _day_iso(day_number: int) -> str:
    return (_EPOCH_DATE + timedelta(days=day_number)).isoformat()


def day_key(ts_ms: int) -> str:
    """UTC calendar date for a unix-millisecond timestamp."""
    return _day_iso(ts_ms // _MS_PER_DAY)


def _ips_by_day(batch: Batch) -> dict[int, list[str]]:
    return kernels.extract_day_ips(batch.records)


class ExactDailyOperator:
    """First-seen accumulation per day; output is (new this batch, total)."""

    name = "exact"

    def __call__(self, batch: Batch, store: StateStore) -> dict:
        outputs = {}
        for day_number, ips in sorted(_ips_by_day(batch).items()):
            day = _day_iso(day_number)
            blob = store.get(EXACT_PREFIX + day)
            state = ExactDistinctState.deserialize(blob) if blob else ExactDistinctState()
            seen = state._seen
            first_seen = 0
            for ip in ips:
                if ip not in seen:
                    seen.add(ip)
                    first_seen += 1
            store.put(EXACT_PREFIX + day, state.serialize())
            outputs[day] = {"first_seen": first_seen, "cumulative": state.count}
        return outputs


class HllDailyOperator:
    """Per-day sketch insertion; output is the day's running estimate."""

    name = "hllpp"

    def __init__(self, precision: int = 14):
        self.precision = precision

    def __call__(self, batch: Batch, store: StateStore) -> dict:
        outputs = {}
        for day_number, ips in sorted(_ips_by_day(batch).items()):
            day = _day_iso(day_number)
            blob = store.get(HLL_PREFIX + day)
            if blob:
                sketch = CardinalitySketch.deserialize(blob)
                if sketch.p != self.precision:
                    raise SketchPrecisionConflictError(
                        f"checkpointed sketch has p={sketch.p}, configured p={self.precision}"
                    )
            else:
                sketch = CardinalitySketch(self.precision)
            sketch.insert_many(ips)
            store.put(HLL_PREFIX + day, sketch.serialize())
            outputs[day] = {"estimate": sketch.estimate()}
        return outputs


def error_report(day: str, exact_cumulative: int, estimate: int) -> float:
    """Relative error of the estimate against the exact count, in percent."""
    if exact_cumulative <= 0:
        raise ZeroExactCountError(f"no exact distinct count for {day} yet")
    return abs(estimate - exact_cumulative) / exact_cumulative * 100.0
