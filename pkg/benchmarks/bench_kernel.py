#!/usr/bin/env python3
"""Benchmark: compiled kernel vs pure-Python kernel.

Times the raw coefficient convolution and a full canonical-form
reduction under each backend and prints the speedup.  Results are
also sanity-checked for exact agreement between the backends.

Usage: python3 benchmarks/bench_kernel.py [--quick]
"""

import argparse
import random
import time

from meroconn import _kernel
from meroconn._kernel import _pykernel


def bench_convolution(repeats, size):
    rng = random.Random(7)
    xs = [_pykernel.qnormalize(rng.randint(-99, 99), rng.randint(-99, 99),
                               rng.randint(1, 60)) for _ in range(size)]
    ys = [_pykernel.qnormalize(rng.randint(-99, 99), rng.randint(-99, 99),
                               rng.randint(1, 60)) for _ in range(size)]
    results = {}
    times = {}
    for backend in _kernel.available_backends():
        _kernel.use_backend(backend)
        fn = _kernel.qconv
        t0 = time.perf_counter()
        out = None
        for _ in range(repeats):
            out = fn(xs, ys, 2 * size - 1)
        times[backend] = time.perf_counter() - t0
        results[backend] = out
    if len(results) == 2:
        assert results["python"] == results["c"], "backend results differ"
    return times


def bench_reduction(count, trunc):
    from meroconn.connection import canonical_reduce
    from meroconn.randomgen import rand_connection
    from meroconn.rootdata import Weight

    rng = random.Random(11)
    conns = [rand_connection(rng, 3, 2, trunc) for _ in range(count)]
    theta = Weight([0, 0, 0])
    times = {}
    residues = {}
    for backend in _kernel.available_backends():
        _kernel.use_backend(backend)
        t0 = time.perf_counter()
        out = []
        for conn in conns:
            canonical, _ = canonical_reduce(conn, theta, trunc)
            out.append(canonical.residue)
        times[backend] = time.perf_counter() - t0
        residues[backend] = out
    if len(residues) == 2:
        assert residues["python"] == residues["c"], "backend results differ"
    return times


def show(label, times):
    line = f"{label:28s}"
    for backend in ("python", "c"):
        if backend in times:
            line += f"  {backend}: {times[backend]:8.3f}s"
    if "c" in times and "python" in times and times["c"] > 0:
        line += f"  speedup: {times['python'] / times['c']:5.1f}x"
    print(line)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true")
    args = parser.parse_args()
    default = _kernel.active_backend()
    print(f"available backends: {_kernel.available_backends()} "
          f"(default: {default})")
    try:
        reps = 200 if args.quick else 2000
        show(f"convolution 16x16 x{reps}", bench_convolution(reps, 16))
        count = 2 if args.quick else 10
        show(f"canonical reduction x{count}", bench_reduction(count, 10))
    finally:
        _kernel.use_backend(default)


if __name__ == "__main__":
    main()
