"""Backend selection for the sketch hot-path kernels.

Prefers the compiled extension; falls back to the pure-Python twin when the
extension is missing or ``RIVERBED_PURE_PYTHON=1`` is set. Both backends
produce bit-identical results; only throughput differs (see
``benchmarks/kernel_benchmark.py``).
"""

from __future__ import annotations

import os

if os.environ.get("RIVERBED_PURE_PYTHON") == "1":
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as _impl  # type: ignore[no-redef]

BACKEND: str = _impl.BACKEND

xxhash64 = _impl.xxhash64
sparse_encode_batch = _impl.sparse_encode_batch
extract_day_ips = _impl.extract_day_ips
hash_batch = _impl.hash_batch
dense_insert_hashes = _impl.dense_insert_hashes
dense_insert_items = _impl.dense_insert_items
register_sums = _impl.register_sums
pack6 = _impl.pack6
unpack6 = _impl.unpack6
