#!/usr/bin/env python3
"""Benchmark the compiled sampler backend against the pure-Python fallback.

Times the three stream kernels in isolation and two full corruptions end to
end, then prints a table with speedups.  Run:

    python benchmarks/bench_backends.py [--quick]
"""

import argparse
import time

import numpy as np

from skyblight.backend import HAVE_COMPILED, cykernels, pykernels
from skyblight.core.types import Rgb8Image
from skyblight.engine import apply_corruption, resolve_spec
from skyblight.rng import Stream, seed_state


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def bench_kernels(n: int, repeats: int):
    lam = np.abs(Stream(3).normals(n)) * 40.0
    rows = []
    for name, mod in (("cython", cykernels), ("python", pykernels)):
        if mod is None:
            continue
        rows.append(
            (
                name,
                _time(lambda: mod.uniform_fill(seed_state(1), n), repeats),
                _time(lambda: mod.normal_fill(seed_state(2), n), repeats),
                _time(lambda: mod.poisson_fill(seed_state(4), lam.copy()), repeats),
            )
        )
    return rows


def bench_corruption(kind: str, image: Rgb8Image, repeats: int):
    """End-to-end corruption timing under whichever backend is active."""
    spec = resolve_spec(kind, 4)
    return _time(lambda: apply_corruption(image, spec, seed=99), repeats)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller sizes, fewer repeats")
    args = parser.parse_args()

    n = 200_000 if args.quick else 1_000_000
    repeats = 2 if args.quick else 3
    side = 256 if args.quick else 512

    if not HAVE_COMPILED:
        print("compiled backend not built; timing the pure-Python backend only")

    print(f"stream kernels, n={n} draws (best of {repeats}):")
    rows = bench_kernels(n, repeats)
    print(f"  {'backend':8s} {'uniform':>10s} {'normal':>10s} {'poisson':>10s}")
    for name, tu, tn, tp in rows:
        print(f"  {name:8s} {tu * 1e3:9.1f}ms {tn * 1e3:9.1f}ms {tp * 1e3:9.1f}ms")
    if len(rows) == 2:
        (_, cu, cn, cp), (_, pu, pn, pp) = rows
        print(
            f"  {'speedup':8s} {pu / cu:9.0f}x {pn / cn:9.0f}x {pp / cp:9.0f}x"
        )

    arr = (Stream(9).uniforms(side * side * 3).reshape(side, side, 3) * 255).astype(np.uint8)
    image = Rgb8Image(arr)
    print(f"\nend-to-end severity-4 corruptions on a {side}x{side} frame "
          "(active backend does the sampling, numpy does the rest):")
    for kind in ("iso_noise", "fog"):
        dt = bench_corruption(kind, image, repeats)
        print(f"  {kind:10s} {dt * 1e3:9.1f}ms")
    print(
        "\nnote: set SKYBLIGHT_BACKEND=py and rerun to see the same corruptions "
        "on the pure-Python sampler; outputs are byte-identical either way."
    )


if __name__ == "__main__":
    main()
