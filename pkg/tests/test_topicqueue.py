import random
import threading

import pytest

from riverbed.topicqueue import (
    Broker,
    Message,
    OffsetOutOfRangeError,
    StorageError,
    UnknownTopicError,
)


@pytest.fixture
def broker(tmp_path):
    with Broker(tmp_path / "queue") as b:
        yield b


class TestPublish:
    def test_keyed_publish_is_sticky(self, broker):
        p1, _ = broker.publish("events.browse", b"m1", key=b"10.0.0.1")
        p2, _ = broker.publish("events.browse", b"m2", key=b"10.0.0.1")
        assert p1 == p2

    def test_first_offset_is_zero(self, broker):
        _, offset = broker.publish("fresh", b"m")
        assert offset == 0

    def test_round_robin_balances_exactly(self, broker):
        for i in range(1000):
            broker.publish("rr", b"%d" % i)
        ends = broker.end_offsets("rr")
        assert sorted(ends.values()) == [250, 250, 250, 250]

    def test_offsets_contiguous_per_partition(self, broker):
        for i in range(40):
            broker.publish("c", b"%d" % i, key=b"%d" % i)
        for partition, end in broker.end_offsets("c").items():
            msgs = [
                m
                for m in broker.poll("g", "c", max_records=1000)
                if m.partition == partition
            ]
            assert [m.offset for m in msgs] == list(range(end))


class TestPoll:
    def test_fifo_single_partition(self, broker):
        broker.create_topic("t", partitions=1)
        broker.publish("t", b"m1")
        broker.publish("t", b"m2")
        polled = broker.poll("g", "t")
        assert [m.payload for m in polled] == [b"m1", b"m2"]

    def test_poll_is_readonly(self, broker):
        broker.publish("t", b"m1")
        assert broker.poll("g", "t") == broker.poll("g", "t")

    def test_max_bound(self, broker):
        broker.create_topic("t", partitions=1)
        for i in range(3):
            broker.publish("t", b"%d" % i)
        assert len(broker.poll("g", "t", max_records=1)) == 1

    def test_unknown_topic(self, broker):
        with pytest.raises(UnknownTopicError):
            broker.poll("g", "nope")


class TestCommit:
    def test_poll_starts_after_commit(self, broker):
        broker.create_topic("t", partitions=1)
        for i in range(4):
            broker.publish("t", b"%d" % i)
        broker.commit("g", "t", {0: 2})
        assert [m.payload for m in broker.poll("g", "t")] == [b"2", b"3"]

    def test_commit_beyond_end_rejected(self, broker):
        broker.create_topic("t", partitions=1)
        broker.publish("t", b"m")
        with pytest.raises(OffsetOutOfRangeError):
            broker.commit("g", "t", {0: 2})

    def test_committed_survives_restart(self, tmp_path):
        with Broker(tmp_path / "q") as b:
            b.create_topic("t", partitions=1)
            for i in range(5):
                b.publish("t", b"%d" % i)
            b.commit("g", "t", {0: 3})
        with Broker(tmp_path / "q") as b:
            assert [m.payload for m in b.poll("g", "t")] == [b"3", b"4"]


class TestDurability:
    def test_segment_roundtrip_bit_exact(self, tmp_path):
        rng = random.Random(42)
        sent = []
        with Broker(tmp_path / "q") as b:
            b.create_topic("t", partitions=3)
            for i in range(500):
                key = None if rng.random() < 0.3 else rng.randbytes(rng.randrange(1, 20))
                payload = rng.randbytes(rng.randrange(0, 200))
                ts = rng.randrange(1, 2**50)
                partition, offset = b.publish("t", payload, key=key, enqueue_ts=ts)
                sent.append((partition, offset, key, payload, ts))
        with Broker(tmp_path / "q") as b:
            got = {
                (m.partition, m.offset): m
                for m in b.poll("g", "t", max_records=10_000)
            }
        assert len(got) == len(sent)
        for partition, offset, key, payload, ts in sent:
            m = got[(partition, offset)]
            assert (m.key, m.payload, m.enqueue_ts) == (key, payload, ts)

    def test_uncommitted_messages_redelivered_after_crash(self, tmp_path):
        with Broker(tmp_path / "q") as b:
            b.create_topic("t", partitions=1)
            for i in range(6):
                b.publish("t", b"%d" % i)
            first = b.poll("g", "t", max_records=3)
            b.commit("g", "t", {0: first[-1].offset + 1})
            b.poll("g", "t", max_records=3)  # crash before this commit
        with Broker(tmp_path / "q") as b:
            again = b.poll("g", "t", max_records=100)
        assert [m.payload for m in again] == [b"3", b"4", b"5"]

    def test_torn_tail_frame_ignored(self, tmp_path):
        with Broker(tmp_path / "q") as b:
            b.create_topic("t", partitions=1)
            b.publish("t", b"intact")
            b.publish("t", b"to-be-torn")
        seg = tmp_path / "q" / "t" / "0.seg"
        seg.write_bytes(seg.read_bytes()[:-5])
        with Broker(tmp_path / "q") as b:
            msgs = b.poll("g", "t")
        assert [m.payload for m in msgs] == [b"intact"]


class TestProperties:
    def test_per_partition_fifo_randomized(self, broker):
        # Offsets seen by a consumer must be strictly increasing per
        # partition across interleaved publish/poll/commit cycles.
        rng = random.Random(7)
        seen: dict[int, int] = {}
        published = 0
        consumed = 0
        while published < 5000 or consumed < 5000:
            if published < 5000 and (consumed >= published or rng.random() < 0.6):
                n = min(rng.randrange(1, 40), 5000 - published)
                for _ in range(n):
                    key = b"%d" % rng.randrange(50) if rng.random() < 0.5 else None
                    broker.publish("fifo", b"%d" % published, key=key)
                    published += 1
            else:
                msgs = broker.poll("g", "fifo", max_records=rng.randrange(1, 60))
                offsets: dict[int, int] = {}
                for m in msgs:
                    last = seen.get(m.partition, -1)
                    assert m.offset > last
                    seen[m.partition] = m.offset
                    offsets[m.partition] = m.offset + 1
                consumed += len(msgs)
                if offsets:
                    broker.commit("g", "fifo", offsets)
        assert consumed == 5000

    def test_groups_are_independent(self, broker):
        broker.create_topic("t", partitions=1)
        for i in range(4):
            broker.publish("t", b"%d" % i)
        broker.commit("a", "t", {0: 4})
        assert len(broker.poll("b", "t")) == 4

    def test_concurrent_publishers(self, broker):
        broker.create_topic("t", partitions=4)
        errors = []

        def worker(tag):
            try:
                for i in range(250):
                    broker.publish("t", f"{tag}:{i}".encode(), key=tag.encode())
            except Exception as exc:  # pragma: no cover
                errors.append(exc)

        threads = [threading.Thread(target=worker, args=(f"w{i}",)) for i in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        assert sum(broker.end_offsets("t").values()) == 1000
        msgs = broker.poll("g", "t", max_records=2000)
        assert len(msgs) == 1000
        per_writer = {}
        for m in sorted(msgs, key=lambda m: (m.partition, m.offset)):
            tag, i = m.payload.decode().split(":")
            assert per_writer.get(tag, -1) < int(i)
            per_writer[tag] = int(i)

    def test_storage_failure_not_appended(self, broker, monkeypatch):
        broker.create_topic("t", partitions=1)
        part = broker._topics["t"].partitions[0]

        class Boom:
            def write(self, data):
                raise OSError("disk full")

            def flush(self):
                pass

        monkeypatch.setattr(part, "_handle", lambda: Boom())
        with pytest.raises(StorageError):
            broker.publish("t", b"m")
        assert broker.end_offsets("t") == {0: 0}
