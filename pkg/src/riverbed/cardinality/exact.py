"""Exact distinct counting: the oracle the sketch is judged against."""

from __future__ import annotations


class ExactDistinctState:
    """Set-backed distinct counter over IP strings.

    Memory and serialized size grow linearly with the number of distinct
    members; this is the whole point of comparing it against the sketch.
    """

    __slots__ = ("_seen",)

    def __init__(self, members=()):
        self._seen: set[str] = set(members)

    def insert(self, ip: str) -> bool:
        """Insert one member; True iff it was not seen before."""
        if not ip:
            raise ValueError("empty member")
        if ip in self._seen:
            return False
        self._seen.add(ip)
        return True

    @property
    def count(self) -> int:
        return len(self._seen)

    def __contains__(self, ip: str) -> bool:
        return ip in self._seen

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactDistinctState) and self._seen == other._seen

    def serialize(self) -> bytes:
        # Sorted so snapshots are byte-identical regardless of insertion
        # history or hash randomization.
        return "\n".join(sorted(self._seen)).encode("utf-8")

    @classmethod
    def deserialize(cls, blob: bytes) -> "ExactDistinctState":
        if not blob:
            return cls()
        return cls(blob.decode("utf-8").split("\n"))
