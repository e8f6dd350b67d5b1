"""Compare the compiled sieve kernel against the pure-numpy fallback.

The two backends produce byte-identical output; they differ in constant
factors.  The compiled loop has no per-slice overhead and wins on small
segments; the numpy fallback's strided ufunc loops win on large ones.

Usage: python benchmarks/bench_sieve.py [--limit N] [--repeat R]
"""

import argparse
import math
import time

import numpy as np

from omegalab import kernels
from omegalab.sieve import base_primes

SEGMENT_SHIFTS = (12, 16, 20, 22)


def run_backend(fn, limit: int, primes, seglen: int) -> float:
    spans = [(lo, min(lo + seglen, limit + 1)) for lo in range(1, limit + 1, seglen)]
    start = time.perf_counter()
    for lo, hi in spans:
        fn(lo, hi, primes)
    return time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--limit", type=int, default=10**7)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("fallback", kernels.omega_segment_fallback)]
    if kernels.COMPILED_AVAILABLE:
        from omegalab import _kernel

        backends.insert(0, ("compiled", _kernel.omega_segment))
    else:
        print("compiled kernel unavailable; benchmarking fallback only")

    primes = base_primes(math.isqrt(args.limit))

    # correctness cross-check before timing
    reference = kernels.omega_segment_fallback(1, 1 << 16, primes)
    for name, fn in backends:
        assert np.array_equal(fn(1, 1 << 16, primes), reference), name

    print(f"sieving Omega(n) for n <= {args.limit:,} (M integers/s, higher is better)")
    header = "  segment " + "".join(f"{name:>12}" for name, _ in backends)
    print(header)
    for shift in SEGMENT_SHIFTS:
        seglen = 1 << shift
        cells = []
        for _, fn in backends:
            best = min(
                run_backend(fn, args.limit, primes, seglen)
                for _ in range(args.repeat)
            )
            cells.append(f"{args.limit / best / 1e6:12.1f}")
        print(f"     2^{shift:<3}" + "".join(cells))


if __name__ == "__main__":
    main()
