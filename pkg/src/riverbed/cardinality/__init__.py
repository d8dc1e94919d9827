"""Distinct-count state: exact set oracle and HyperLogLog++ sketch."""

from .exact import ExactDistinctState
from .kernels import BACKEND
from .sketch import (
    CardinalitySketch,
    CorruptSketchError,
    PrecisionMismatchError,
    PrecisionOutOfRangeError,
)

__all__ = [
    "BACKEND",
    "CardinalitySketch",
    "CorruptSketchError",
    "ExactDistinctState",
    "PrecisionMismatchError",
    "PrecisionOutOfRangeError",
]
