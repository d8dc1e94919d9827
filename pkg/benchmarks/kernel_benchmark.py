#!/usr/bin/env python3
"""Compare the compiled sketch kernels against the pure-Python fallback.

Times the hot paths in isolation (hashing, bulk insert, register sums,
6-bit packing) and the end-to-end daily-sketch operator, then prints the
speedups. Run after building the extension:

    python benchmarks/kernel_benchmark.py [--items 200000]
"""

from __future__ import annotations

import argparse
import random
import time

from riverbed.cardinality import _pykernels as pure

try:
    from riverbed.cardinality import _ckernels as compiled
except ImportError:
    compiled = None


def timeit(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(backend, items, p):
    registers = bytearray(1 << p)
    results = {}
    results["hash_batch"] = timeit(lambda: backend.hash_batch(items))
    results["dense_insert_items"] = timeit(
        lambda: backend.dense_insert_items(registers, p, items)
    )
    results["sparse_encode_batch"] = timeit(
        lambda: backend.sparse_encode_batch(items, p)
    )
    results["register_sums"] = timeit(
        lambda: [backend.register_sums(registers) for _ in range(50)]
    )
    packed = backend.pack6(registers)
    results["pack6"] = timeit(lambda: [backend.pack6(registers) for _ in range(20)])
    results["unpack6"] = timeit(
        lambda: [backend.unpack6(packed, len(registers)) for _ in range(20)]
    )
    return results


def bench_sketch_end_to_end(items, p, force_pure):
    import importlib
    import os

    if force_pure:
        os.environ["RIVERBED_PURE_PYTHON"] = "1"
    else:
        os.environ.pop("RIVERBED_PURE_PYTHON", None)
    import riverbed.cardinality.kernels as kernels_mod
    import riverbed.cardinality.sketch as sketch_mod

    importlib.reload(kernels_mod)
    importlib.reload(sketch_mod)

    def run():
        sketch = sketch_mod.CardinalitySketch(p)
        for i in range(0, len(items), 5000):
            sketch.insert_many(items[i : i + 5000])
            sketch.estimate()
            blob = sketch.serialize()
            sketch = sketch_mod.CardinalitySketch.deserialize(blob)

    elapsed = timeit(run)
    return kernels_mod.BACKEND, elapsed


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--items", type=int, default=200_000)
    parser.add_argument("--precision", type=int, default=14)
    args = parser.parse_args()

    rng = random.Random(42)
    items = [
        ".".join(f"{rng.randrange(256):03d}" for _ in range(4)).encode()
        for _ in range(args.items)
    ]

    print(f"{args.items} items, p={args.precision}\n")
    pure_times = bench_backend(pure, items, args.precision)
    if compiled is None:
        print("compiled backend not built; showing pure-Python times only")
        for name, seconds in pure_times.items():
            print(f"{name:>22}: {seconds * 1000:9.1f} ms")
        return
    compiled_times = bench_backend(compiled, items, args.precision)

    print(f"{'kernel':>22} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name in pure_times:
        py, cy = pure_times[name], compiled_times[name]
        print(f"{name:>22} {py * 1000:9.1f}ms {cy * 1000:9.1f}ms {py / cy:7.1f}x")

    backend, cy_total = bench_sketch_end_to_end(items, args.precision, force_pure=False)
    assert backend == "cython"
    backend, py_total = bench_sketch_end_to_end(items, args.precision, force_pure=True)
    assert backend == "python"
    print(
        f"\n{'sketch end-to-end':>22} {py_total * 1000:9.1f}ms {cy_total * 1000:9.1f}ms "
        f"{py_total / cy_total:7.1f}x"
    )


if __name__ == "__main__":
    main()
