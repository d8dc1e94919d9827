import random

import pytest

from riverbed.dailyip import (
    ExactDailyOperator,
    HllDailyOperator,
    SketchPrecisionConflictError,
    ZeroExactCountError,
    day_key,
    error_report,
)
from riverbed.cardinality import CardinalitySketch
from riverbed.engine import Batch, StateStore
from riverbed import logschema

from helpers import make_record_doc

DAY0 = 1_735_689_600_000  # 2025-01-01T00:00:00Z
DAY1 = DAY0 + 86_400_000


def record_with(ip, ts=DAY0):
    return logschema.from_dict(make_record_doc(ip=ip, start_ts=ts))


def batch_of(ips, batch_id=1, ts=DAY0):
    records = tuple(record_with(ip, ts if not isinstance(ts, list) else ts[i])
                    for i, ip in enumerate(ips))
    return Batch(batch_id, 0, 1000, records)


def test_day_key_is_utc_date():
    assert day_key(DAY0) == "2025-01-01"
    assert day_key(DAY0 - 1) == "2024-12-31"
    assert day_key(DAY1) == "2025-01-02"


class TestExactDaily:
    def test_fresh_day(self):
        store = StateStore()
        out = ExactDailyOperator()(batch_of(["1.1.1.1", "2.2.2.2", "1.1.1.1"]), store)
        assert out == {"2025-01-01": {"first_seen": 2, "cumulative": 2}}

    def test_running_cumulative(self):
        store = StateStore()
        op = ExactDailyOperator()
        op(batch_of(["1.1.1.1", "2.2.2.2"]), store)
        out = op(batch_of(["1.1.1.1", "3.3.3.3"], batch_id=2), store)
        assert out == {"2025-01-01": {"first_seen": 1, "cumulative": 3}}

    def test_batch_spanning_two_days(self):
        store = StateStore()
        op = ExactDailyOperator()
        out = op(batch_of(["1.1.1.1", "2.2.2.2"], ts=[DAY0, DAY1]), store)
        assert out == {
            "2025-01-01": {"first_seen": 1, "cumulative": 1},
            "2025-01-02": {"first_seen": 1, "cumulative": 1},
        }
        assert store.keys() == ["exact/2025-01-01", "exact/2025-01-02"]

    def test_matches_bruteforce_oracle(self):
        # Cumulative after each batch == brute-force distinct count over
        # everything that day has seen so far in the raw stream.
        rng = random.Random(5)
        store = StateStore()
        op = ExactDailyOperator()
        seen_raw = []
        for batch_id in range(1, 9):
            ips = [f"10.0.{rng.randrange(6)}.{rng.randrange(30)}" for _ in range(50)]
            seen_raw.extend(ips)
            out = op(batch_of(ips, batch_id=batch_id), store)
            assert out["2025-01-01"]["cumulative"] == len(set(seen_raw))


class TestHllDaily:
    def test_fresh_day_single_ip(self):
        store = StateStore()
        out = HllDailyOperator()(batch_of(["9.9.9.9"]), store)
        assert out == {"2025-01-01": {"estimate": 1}}

    def test_duplicate_batches_do_not_move_estimate(self):
        store = StateStore()
        op = HllDailyOperator()
        ips = [f"10.1.{i // 200}.{i % 200}" for i in range(800)]
        first = op(batch_of(ips), store)
        second = op(batch_of(ips, batch_id=2), store)
        assert first == second

    def test_order_within_batch_irrelevant(self):
        ips = [f"10.2.{i // 250}.{i % 250}" for i in range(1000)]
        shuffled = ips[:]
        random.Random(3).shuffle(shuffled)
        s1, s2 = StateStore(), StateStore()
        HllDailyOperator()(batch_of(ips), s1)
        HllDailyOperator()(batch_of(shuffled), s2)
        assert s1.get("hll/2025-01-01") == s2.get("hll/2025-01-01")

    def test_paper_shape_error_under_1p5_percent(self):
        # 12 batches x 3000 records, half the IPs drawn from the seen pool,
        # the rest fresh random addresses (the benchmark workload shape).
        rng = random.Random(1)
        store = StateStore()
        exact_op, hll_op = ExactDailyOperator(), HllDailyOperator()
        pool, seen = [], set()
        for batch_id in range(1, 13):
            fresh = []
            while len(fresh) < 1500:
                ip = ".".join(f"{rng.randrange(256):03d}" for _ in range(4))
                if ip not in seen:
                    seen.add(ip)
                    fresh.append(ip)
            dups = [rng.choice(pool or fresh) for _ in range(1500)]
            pool.extend(fresh)
            ips = fresh + dups
            rng.shuffle(ips)
            batch = batch_of(ips, batch_id=batch_id)
            exact = exact_op(batch, store)["2025-01-01"]["cumulative"]
            estimate = hll_op(batch, store)["2025-01-01"]["estimate"]
            assert error_report("2025-01-01", exact, estimate) < 1.5

    def test_precision_conflict_refused(self):
        store = StateStore()
        stale = CardinalitySketch(12)
        stale.insert("1.2.3.4")
        store.put("hll/2025-01-01", stale.serialize())
        with pytest.raises(SketchPrecisionConflictError):
            HllDailyOperator(precision=14)(batch_of(["1.2.3.4"]), store)


class TestErrorReport:
    def test_zero_error(self):
        assert error_report("d", 1000, 1000) == 0.0

    def test_one_percent(self):
        assert error_report("d", 1000, 990) == pytest.approx(1.0)

    def test_no_exact_data(self):
        with pytest.raises(ZeroExactCountError):
            error_report("d", 0, 5)
