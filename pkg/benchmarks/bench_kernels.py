"""Time the batched retraction on every available backend.

    python benchmarks/bench_kernels.py --degree 5 --samples 10000 --steps 64

The scalar reference backend is timed on a smaller batch (``--reference-samples``)
and reported per sample so the rates are comparable.
"""

import argparse
import time

import numpy as np

from fermatcx import kernels
from fermatcx.retraction import sample_md
from fermatcx.verify import time_grid


def bench(backend, P, d, grid, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for t in grid:
            kernels.retract_batch(P, t, d, backend)
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--degree", "-d", type=int, default=5)
    parser.add_argument("--samples", "-n", type=int, default=10_000)
    parser.add_argument("--reference-samples", type=int, default=500)
    parser.add_argument("--steps", type=int, default=64)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--backends", nargs="*", default=kernels.available_backends())
    args = parser.parse_args(argv)

    d, grid = args.degree, time_grid(args.steps)
    P = np.array(sample_md(d, args.samples, seed=0))
    print(f"degree {d}, {len(grid)} time steps, default backend {kernels.BACKEND}")
    print(f"{'backend':10s} {'samples':>8s} {'seconds':>9s} {'us/sample/step':>15s}")
    for backend in args.backends:
        batch = P[:args.reference_samples] if backend == "reference" else P
        repeat = 1 if backend == "reference" else args.repeat
        secs = bench(backend, batch, d, grid, repeat)
        per = secs / (len(batch) * len(grid)) * 1e6
        print(f"{backend:10s} {len(batch):8d} {secs:9.3f} {per:15.3f}")


if __name__ == "__main__":
    main()
