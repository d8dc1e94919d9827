"""Pure-Python kernels for the cardinality sketch hot paths.

Semantically identical to the compiled backend in ``_ckernels``; selected
at import time by :mod:`riverbed.cardinality.kernels` when the extension
is unavailable (or forced via ``RIVERBED_PURE_PYTHON=1``).

The hash is xxHash64 with seed 0, fixed constants, no per-process
randomization: sketches and partition routing must be reproducible
across runs and platforms.
"""

from __future__ import annotations

from typing import Sequence

BACKEND = "python"

_MASK64 = 0xFFFFFFFFFFFFFFFF

_P1 = 0x9E3779B185EBCA87
_P2 = 0xC2B2AE3D27D4EB4F
_P3 = 0x165667B19E3779F9
_P4 = 0x85EBCA77C2B2AE63
_P5 = 0x27D4EB2F165667C5


def _rotl(x: int, r: int) -> int:
    return ((x << r) | (x >> (64 - r))) & _MASK64


def _round(acc: int, lane: int) -> int:
    acc = (acc + lane * _P2) & _MASK64
    acc = _rotl(acc, 31)
    return (acc * _P1) & _MASK64


def xxhash64(data: bytes, seed: int = 0) -> int:
    """xxHash64 of ``data``; matches the reference algorithm bit-for-bit."""
    n = len(data)
    pos = 0
    if n >= 32:
        a1 = (seed + _P1 + _P2) & _MASK64
        a2 = (seed + _P2) & _MASK64
        a3 = seed & _MASK64
        a4 = (seed - _P1) & _MASK64
        end = n - 32
        while pos <= end:
            a1 = _round(a1, int.from_bytes(data[pos : pos + 8], "little"))
            a2 = _round(a2, int.from_bytes(data[pos + 8 : pos + 16], "little"))
            a3 = _round(a3, int.from_bytes(data[pos + 16 : pos + 24], "little"))
            a4 = _round(a4, int.from_bytes(data[pos + 24 : pos + 32], "little"))
            pos += 32
        acc = (_rotl(a1, 1) + _rotl(a2, 7) + _rotl(a3, 12) + _rotl(a4, 18)) & _MASK64
        for a in (a1, a2, a3, a4):
            acc = ((acc ^ _round(0, a)) * _P1 + _P4) & _MASK64
    else:
        acc = (seed + _P5) & _MASK64

    acc = (acc + n) & _MASK64

    while pos + 8 <= n:
        lane = int.from_bytes(data[pos : pos + 8], "little")
        acc ^= _round(0, lane)
        acc = (_rotl(acc, 27) * _P1 + _P4) & _MASK64
        pos += 8
    if pos + 4 <= n:
        lane = int.from_bytes(data[pos : pos + 4], "little")
        acc ^= (lane * _P1) & _MASK64
        acc = (_rotl(acc, 23) * _P2 + _P3) & _MASK64
        pos += 4
    while pos < n:
        acc ^= (data[pos] * _P5) & _MASK64
        acc = (_rotl(acc, 11) * _P1) & _MASK64
        pos += 1

    acc ^= acc >> 33
    acc = (acc * _P2) & _MASK64
    acc ^= acc >> 29
    acc = (acc * _P3) & _MASK64
    acc ^= acc >> 32
    return acc


def _as_bytes(item) -> bytes:
    return item.encode("utf-8") if isinstance(item, str) else item


def hash_batch(items: Sequence) -> list:
    return [xxhash64(_as_bytes(item)) for item in items]


def sparse_encode_batch(items: Sequence[bytes], p: int) -> list:
    """Hash each item and encode (top-25-bit index, rho) for sparse storage.

    Encoding: if the bits between positions p and 25 are all zero the rho
    of the 39-bit suffix is stored explicitly:
        (idx25 << 7) | (rho39 << 1) | 1
    otherwise rho is recoverable from the index itself:
        idx25 << 1
    """
    out = []
    for item in items:
        h = xxhash64(_as_bytes(item))
        idx = h >> 39
        if idx & ((1 << (25 - p)) - 1):
            out.append(idx << 1)
        else:
            w = h & 0x7FFFFFFFFF
            rho = 39 - w.bit_length() + 1
            out.append((idx << 7) | (rho << 1) | 1)
    return out


def dense_insert_hashes(registers: bytearray, p: int, hashes: Sequence[int]) -> None:
    """register[idx] = max(register[idx], rho) for each 64-bit hash."""
    shift = 64 - p
    wmask = (1 << shift) - 1
    for h in hashes:
        idx = h >> shift
        rho = shift - (h & wmask).bit_length() + 1
        if rho > registers[idx]:
            registers[idx] = rho


def dense_insert_items(registers: bytearray, p: int, items: Sequence[bytes]) -> None:
    """Fused hash-and-insert over a batch of byte strings."""
    shift = 64 - p
    wmask = (1 << shift) - 1
    for item in items:
        h = xxhash64(_as_bytes(item))
        idx = h >> shift
        rho = shift - (h & wmask).bit_length() + 1
        if rho > registers[idx]:
            registers[idx] = rho


def register_sums(registers) -> tuple:
    """(harmonic sum of 2**-register, count of zero registers)."""
    total = 0.0
    zeros = 0
    for r in registers:
        total += _POW2NEG[r]
        if r == 0:
            zeros += 1
    return total, zeros


_POW2NEG = [2.0**-i for i in range(64)]


def extract_day_ips(records) -> dict:
    """Bucket record IPs by UTC day number (start_ts // 86_400_000).

    The per-record traversal of every batch runs through here; records
    lacking an IP are skipped.
    """
    groups: dict = {}
    get = groups.get
    for record in records:
        ip = record.geo.ip
        if not ip:
            continue
        day = record.time.start_ts // 86_400_000
        bucket = get(day)
        if bucket is None:
            bucket = groups[day] = []
        bucket.append(ip)
    return groups


def pack6(registers) -> bytes:
    """Pack 6-bit register values, LSB-first within the byte stream."""
    out = bytearray((6 * len(registers) + 7) // 8)
    bitpos = 0
    for r in registers:
        byte = bitpos >> 3
        off = bitpos & 7
        out[byte] |= (r << off) & 0xFF
        if off > 2:
            out[byte + 1] |= r >> (8 - off)
        bitpos += 6
    return bytes(out)


def unpack6(packed: bytes, count: int) -> bytearray:
    """Inverse of :func:`pack6` for ``count`` registers."""
    regs = bytearray(count)
    bitpos = 0
    for i in range(count):
        byte = bitpos >> 3
        off = bitpos & 7
        v = packed[byte] >> off
        if off > 2:
            v |= packed[byte + 1] << (8 - off)
        regs[i] = v & 0x3F
        bitpos += 6
    return regs
