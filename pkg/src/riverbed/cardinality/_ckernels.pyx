# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the cardinality sketch hot paths.

Exact drop-in for ``_pykernels``: same functions, same results bit-for-bit.
The hash is xxHash64 with seed 0 and fixed constants.
"""

from cpython.bytes cimport PyBytes_AsStringAndSize
from cpython.unicode cimport PyUnicode_Check

cdef extern from "Python.h":
    const char* PyUnicode_AsUTF8AndSize(object unicode, Py_ssize_t* size) except NULL

BACKEND = "cython"

cdef extern from *:
    """
    #include <stdint.h>
    typedef uint64_t u64;
    typedef uint32_t u32;
    """
    ctypedef unsigned long long u64
    ctypedef unsigned int u32

cdef u64 P1 = 0x9E3779B185EBCA87ULL
cdef u64 P2 = 0xC2B2AE3D27D4EB4FULL
cdef u64 P3 = 0x165667B19E3779F9ULL
cdef u64 P4 = 0x85EBCA77C2B2AE63ULL
cdef u64 P5 = 0x27D4EB2F165667C5ULL


cdef inline u64 _rotl(u64 x, int r) nogil:
    return (x << r) | (x >> (64 - r))


cdef inline u64 _round(u64 acc, u64 lane) nogil:
    acc += lane * P2
    acc = _rotl(acc, 31)
    return acc * P1


cdef inline u64 _read64(const unsigned char* p) nogil:
    cdef u64 v = 0
    cdef int i
    for i in range(8):
        v |= (<u64> p[i]) << (8 * i)
    return v


cdef inline u64 _read32(const unsigned char* p) nogil:
    cdef u64 v = 0
    cdef int i
    for i in range(4):
        v |= (<u64> p[i]) << (8 * i)
    return v


cdef u64 _xxh64(const unsigned char* data, Py_ssize_t n, u64 seed) nogil:
    cdef u64 acc, a1, a2, a3, a4
    cdef Py_ssize_t pos = 0
    if n >= 32:
        a1 = seed + P1 + P2
        a2 = seed + P2
        a3 = seed
        a4 = seed - P1
        while pos + 32 <= n:
            a1 = _round(a1, _read64(data + pos))
            a2 = _round(a2, _read64(data + pos + 8))
            a3 = _round(a3, _read64(data + pos + 16))
            a4 = _round(a4, _read64(data + pos + 24))
            pos += 32
        acc = _rotl(a1, 1) + _rotl(a2, 7) + _rotl(a3, 12) + _rotl(a4, 18)
        acc = (acc ^ _round(0, a1)) * P1 + P4
        acc = (acc ^ _round(0, a2)) * P1 + P4
        acc = (acc ^ _round(0, a3)) * P1 + P4
        acc = (acc ^ _round(0, a4)) * P1 + P4
    else:
        acc = seed + P5

    acc += <u64> n

    while pos + 8 <= n:
        acc ^= _round(0, _read64(data + pos))
        acc = _rotl(acc, 27) * P1 + P4
        pos += 8
    if pos + 4 <= n:
        acc ^= _read32(data + pos) * P1
        acc = _rotl(acc, 23) * P2 + P3
        pos += 4
    while pos < n:
        acc ^= (<u64> data[pos]) * P5
        acc = _rotl(acc, 11) * P1
        pos += 1

    acc ^= acc >> 33
    acc *= P2
    acc ^= acc >> 29
    acc *= P3
    acc ^= acc >> 32
    return acc


cdef inline const unsigned char* _item_buf(object item, Py_ssize_t* n) except NULL:
    cdef char* raw
    if PyUnicode_Check(item):
        return <const unsigned char*> PyUnicode_AsUTF8AndSize(item, n)
    PyBytes_AsStringAndSize(<bytes> item, &raw, n)
    return <const unsigned char*> raw


cdef inline int _rho(u64 w, int width) nogil:
    # 1 + leading zeros of w within `width` bits; w == 0 -> width + 1.
    cdef int r = 1
    cdef u64 mask = (<u64> 1) << (width - 1)
    while mask != 0 and (w & mask) == 0:
        r += 1
        mask >>= 1
    return r


def xxhash64(bytes data, unsigned long long seed = 0):
    cdef char* buf
    cdef Py_ssize_t n
    PyBytes_AsStringAndSize(data, &buf, &n)
    return _xxh64(<const unsigned char*> buf, n, seed)


def hash_batch(items):
    cdef const unsigned char* buf
    cdef Py_ssize_t n
    cdef list out = []
    for item in items:
        buf = _item_buf(item, &n)
        out.append(_xxh64(buf, n, 0))
    return out


def sparse_encode_batch(items, int p):
    # Mirrors the pure-Python encoding bit-for-bit; see _pykernels.
    cdef const unsigned char* buf
    cdef Py_ssize_t n
    cdef u64 h, idx, w
    cdef int rho
    cdef u64 midmask = ((<u64> 1) << (25 - p)) - 1
    cdef list out = []
    for item in items:
        buf = _item_buf(item, &n)
        h = _xxh64(buf, n, 0)
        idx = h >> 39
        if idx & midmask:
            out.append(idx << 1)
        else:
            w = h & 0x7FFFFFFFFFULL
            rho = _rho(w, 39)
            out.append((idx << 7) | (<u64> rho << 1) | 1)
    return out


def dense_insert_hashes(registers, int p, hashes):
    cdef unsigned char[:] regs = registers
    cdef int shift = 64 - p
    cdef u64 h, w
    cdef u64 idx
    cdef int rho
    for ho in hashes:
        h = <u64> ho
        idx = h >> shift
        w = h & (((<u64> 1) << shift) - 1)
        rho = _rho(w, shift)
        if rho > regs[idx]:
            regs[idx] = <unsigned char> rho


def dense_insert_items(registers, int p, items):
    cdef unsigned char[:] regs = registers
    cdef int shift = 64 - p
    cdef const unsigned char* buf
    cdef Py_ssize_t n
    cdef u64 h, w, idx
    cdef int rho
    for item in items:
        buf = _item_buf(item, &n)
        h = _xxh64(buf, n, 0)
        idx = h >> shift
        w = h & (((<u64> 1) << shift) - 1)
        rho = _rho(w, shift)
        if rho > regs[idx]:
            regs[idx] = <unsigned char> rho


def register_sums(registers):
    cdef const unsigned char[:] regs = registers
    cdef double total = 0.0
    cdef Py_ssize_t zeros = 0
    cdef Py_ssize_t i, n = regs.shape[0]
    cdef unsigned char r
    with nogil:
        for i in range(n):
            r = regs[i]
            total += 1.0 / (<double> ((<u64> 1) << r))
            if r == 0:
                zeros += 1
    return total, zeros


def extract_day_ips(records):
    # Same contract as the pure twin; attribute traversal through the
    # C API is what makes this worth compiling.
    cdef dict groups = {}
    cdef long long day
    cdef list bucket
    for record in records:
        ip = record.geo.ip
        if not ip:
            continue
        day = <long long> record.time.start_ts // 86400000
        bucket = <list> groups.get(day)
        if bucket is None:
            bucket = []
            groups[day] = bucket
        bucket.append(ip)
    return groups


def pack6(registers):
    cdef const unsigned char[:] regs = registers
    cdef Py_ssize_t n = regs.shape[0]
    out = bytearray((6 * n + 7) // 8)
    cdef unsigned char[:] dst = out
    cdef Py_ssize_t i, byte, bitpos = 0
    cdef int off
    cdef unsigned char r
    with nogil:
        for i in range(n):
            r = regs[i]
            byte = bitpos >> 3
            off = bitpos & 7
            dst[byte] |= <unsigned char> ((r << off) & 0xFF)
            if off > 2:
                dst[byte + 1] |= <unsigned char> (r >> (8 - off))
            bitpos += 6
    return bytes(out)


def unpack6(packed, Py_ssize_t count):
    cdef const unsigned char[:] src = packed
    regs = bytearray(count)
    cdef unsigned char[:] dst = regs
    cdef Py_ssize_t i, byte, bitpos = 0
    cdef int off, v
    with nogil:
        for i in range(count):
            byte = bitpos >> 3
            off = bitpos & 7
            v = src[byte] >> off
            if off > 2:
                v |= src[byte + 1] << (8 - off)
            dst[i] = <unsigned char> (v & 0x3F)
            bitpos += 6
    return regs
