"""HyperLogLog++ cardinality sketch.

Standard published algorithm: 64-bit hashing (xxHash64, seed 0), a sparse
encoding at effective precision 25 that promotes to 2**p six-bit dense
registers once it outgrows 6*2**p bits, linear counting for small
cardinalities, and empirical bias correction of the raw harmonic-mean
estimator between the linear-counting handoff and 5*2**p.

Register updates and hashing go through :mod:`.kernels`, which picks the
compiled backend when available.
"""

from __future__ import annotations

import math
from typing import Iterable

from . import kernels

MIN_PRECISION = 4
MAX_PRECISION = 18

_SPARSE_P = 25
_SPARSE_W = 64 - _SPARSE_P  # suffix bits hashed into the sparse rho
_FORMAT_VERSION = 1
_DENSE_MODE = 1
_SPARSE_MODE = 0


class PrecisionOutOfRangeError(ValueError):
    pass


class PrecisionMismatchError(ValueError):
    pass


class CorruptSketchError(ValueError):
    pass


def _alpha(m: int) -> float:
    if m == 16:
        return 0.673
    if m == 32:
        return 0.697
    if m == 64:
        return 0.709
    return 0.7213 / (1.0 + 1.079 / m)


def _sparse_decode(enc: int, p: int) -> tuple[int, int]:
    if enc & 1:
        idx = enc >> 7
        rho = ((enc >> 1) & 0x3F) + (_SPARSE_P - p)
    else:
        idx = enc >> 1
        mid = idx & ((1 << (_SPARSE_P - p)) - 1)
        rho = (_SPARSE_P - p) - mid.bit_length() + 1
    return idx >> (_SPARSE_P - p), rho


class CardinalitySketch:
    """Distinct-count estimator with mergeable, serializable state."""

    __slots__ = ("p", "_registers", "_sparse", "insert_count")

    def __init__(self, p: int = 14):
        if not MIN_PRECISION <= p <= MAX_PRECISION:
            raise PrecisionOutOfRangeError(
                f"precision {p} outside [{MIN_PRECISION}, {MAX_PRECISION}]"
            )
        self.p = p
        self._registers: bytearray | None = None
        self._sparse: set[int] | None = set()
        self.insert_count = 0

    # -- state inspection -------------------------------------------------

    @property
    def m(self) -> int:
        return 1 << self.p

    @property
    def is_sparse(self) -> bool:
        return self._sparse is not None

    def registers(self) -> bytes:
        """Dense register array (promotes a sparse sketch's copy on the fly)."""
        if self._sparse is None:
            assert self._registers is not None
            return bytes(self._registers)
        regs = bytearray(self.m)
        for enc in self._sparse:
            idx, rho = _sparse_decode(enc, self.p)
            if rho > regs[idx]:
                regs[idx] = rho
        return bytes(regs)

    def sparse_entries(self) -> tuple[int, ...]:
        if self._sparse is None:
            raise ValueError("sketch is dense")
        return tuple(sorted(self._sparse))

    def __eq__(self, other) -> bool:
        # insert_count is a diagnostic, deliberately excluded.
        if not isinstance(other, CardinalitySketch) or self.p != other.p:
            return False
        if self.is_sparse != other.is_sparse:
            return False
        if self.is_sparse:
            return self._sparse == other._sparse
        return self._registers == other._registers

    # -- insertion ---------------------------------------------------------

    def _sparse_over_budget(self) -> bool:
        # 32 bits per stored entry against the 6*2^p-bit promotion threshold.
        assert self._sparse is not None
        return 32 * len(self._sparse) > 6 * self.m

    def _promote(self) -> None:
        assert self._sparse is not None
        regs = bytearray(self.m)
        for enc in self._sparse:
            idx, rho = _sparse_decode(enc, self.p)
            if rho > regs[idx]:
                regs[idx] = rho
        self._registers = regs
        self._sparse = None

    def insert(self, item: bytes | str) -> None:
        if isinstance(item, str):
            item = item.encode("utf-8")
        self.insert_count += 1
        if self._sparse is not None:
            self._sparse.add(kernels.sparse_encode_batch((item,), self.p)[0])
            if self._sparse_over_budget():
                self._promote()
        else:
            kernels.dense_insert_hashes(
                self._registers, self.p, (kernels.xxhash64(item),)
            )

    def insert_many(self, items: Iterable[bytes | str]) -> None:
        """Bulk insert; hashing and encoding run in the kernel backend,
        which takes byte strings or text directly."""
        if not isinstance(items, (list, tuple)):
            items = list(items)
        self.insert_count += len(items)
        if self._sparse is not None:
            # Promote as soon as the storage budget is crossed so the rest
            # of the bulk goes through the dense kernel path.
            sparse = self._sparse
            add = sparse.add
            limit = (6 * self.m) // 32
            for i, enc in enumerate(kernels.sparse_encode_batch(items, self.p)):
                add(enc)
                if len(sparse) > limit:
                    self._promote()
                    kernels.dense_insert_items(self._registers, self.p, items[i + 1 :])
                    return
        else:
            kernels.dense_insert_items(self._registers, self.p, items)

    # -- estimation ----------------------------------------------------------

    def estimate(self) -> int:
        if self._sparse is not None:
            m2 = 1 << _SPARSE_P
            distinct = len(
                {enc >> 7 if enc & 1 else enc >> 1 for enc in self._sparse}
            )
            if distinct == 0:
                return 0
            return int(round(m2 * math.log(m2 / (m2 - distinct))))

        m = self.m
        total, zeros = kernels.register_sums(self._registers)
        raw = _alpha(m) * m * m / total
        if raw <= 2.5 * m and zeros:
            return int(round(m * math.log(m / zeros)))
        if raw <= 5.0 * m:
            return int(round(raw - _estimate_bias(raw, self.p)))
        return int(round(raw))

    # -- merge ----------------------------------------------------------------

    def merge(self, other: "CardinalitySketch") -> "CardinalitySketch":
        """Union of both insert streams: sparse sets union, registers max."""
        if self.p != other.p:
            raise PrecisionMismatchError(f"precision {self.p} != {other.p}")
        out = CardinalitySketch(self.p)
        out.insert_count = self.insert_count + other.insert_count
        if self._sparse is not None and other._sparse is not None:
            out._sparse = self._sparse | other._sparse
            if out._sparse_over_budget():
                out._promote()
            return out
        a = self.registers()
        b = other.registers()
        out._sparse = None
        out._registers = bytearray(x if x >= y else y for x, y in zip(a, b))
        return out

    # -- serialization ---------------------------------------------------------

    def serialize(self) -> bytes:
        head = bytes(
            (
                _FORMAT_VERSION,
                ((_SPARSE_MODE if self._sparse is not None else _DENSE_MODE) << 7)
                | self.p,
            )
        )
        if self._sparse is not None:
            entries = sorted(self._sparse)
            body = len(entries).to_bytes(4, "little") + b"".join(
                e.to_bytes(4, "little") for e in entries
            )
        else:
            body = kernels.pack6(self._registers)
        body += self.insert_count.to_bytes(8, "little")
        payload = head + body
        return payload + (kernels.xxhash64(payload) & 0xFFFFFFFF).to_bytes(4, "little")

    @classmethod
    def deserialize(cls, blob: bytes) -> "CardinalitySketch":
        if len(blob) < 14:
            raise CorruptSketchError("sketch blob too short")
        payload, check = blob[:-4], blob[-4:]
        if (kernels.xxhash64(payload) & 0xFFFFFFFF).to_bytes(4, "little") != check:
            raise CorruptSketchError("integrity hash mismatch")
        version, modep = payload[0], payload[1]
        if version != _FORMAT_VERSION:
            raise CorruptSketchError(f"unsupported format version {version}")
        mode, p = modep >> 7, modep & 0x7F
        if not MIN_PRECISION <= p <= MAX_PRECISION:
            raise CorruptSketchError(f"precision {p} out of range")
        sketch = cls(p)
        body = payload[2:]
        if mode == _SPARSE_MODE:
            if len(body) < 12:
                raise CorruptSketchError("truncated sparse body")
            n = int.from_bytes(body[:4], "little")
            if len(body) != 4 + 4 * n + 8:
                raise CorruptSketchError("sparse body length mismatch")
            sketch._sparse = {
                int.from_bytes(body[4 + 4 * i : 8 + 4 * i], "little") for i in range(n)
            }
        else:
            m = 1 << p
            packed = (6 * m + 7) // 8
            if len(body) != packed + 8:
                raise CorruptSketchError("dense body length mismatch")
            regs = kernels.unpack6(body[:packed], m)
            if max(regs, default=0) > 64 - p + 1:
                raise CorruptSketchError("register value above cap")
            sketch._sparse = None
            sketch._registers = regs
        sketch.insert_count = int.from_bytes(body[-8:], "little")
        return sketch


def _estimate_bias(raw: float, p: int) -> float:
    """Mean of the bias at the 6 anchors nearest to the raw estimate."""
    anchors, biases = _BIAS_TABLES[p]
    lo, hi = 0, len(anchors)
    while lo < hi:
        mid = (lo + hi) // 2
        if anchors[mid] < raw:
            lo = mid + 1
        else:
            hi = mid
    best: list[tuple[float, int]] = []
    left, right = lo - 1, lo
    while len(best) < 6 and (left >= 0 or right < len(anchors)):
        dl = raw - anchors[left] if left >= 0 else math.inf
        dr = anchors[right] - raw if right < len(anchors) else math.inf
        if dl <= dr:
            best.append((dl, left))
            left -= 1
        else:
            best.append((dr, right))
            right += 1
    return sum(biases[i] for _, i in best) / len(best)


from ._bias_data import BIAS_TABLES as _BIAS_TABLES  # noqa: E402
