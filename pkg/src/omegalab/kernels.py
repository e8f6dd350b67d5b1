"""Backend selection for the sieve hot loop.

The compiled Cython kernel is used when available; a vectorized numpy
implementation of the same pass structure is the fallback.  Set
``OMEGALAB_FORCE_FALLBACK=1`` to force the pure-Python path (used by the
backend-equivalence tests and the benchmark).
"""

import os

import numpy as np

try:
    from . import _kernel
except ImportError:  # pragma: no cover - depends on build environment
    _kernel = None

COMPILED_AVAILABLE = _kernel is not None


def omega_segment_fallback(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    """Pure numpy twin of the compiled kernel; byte-identical output."""
    n = hi - lo
    counts = np.zeros(n, dtype=np.uint8)
    # product of the small prime powers found so far; n has one extra prime
    # factor (necessarily > sqrt(hi-1), hence single) iff found[i] < lo + i
    found = np.ones(n, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        q = p
        while True:
            start = (-lo) % q
            counts[start::q] += 1
            found[start::q] *= p
            if q > (hi - 1) // p:
                break
            q *= p
    counts[found < np.arange(lo, hi, dtype=np.int64)] += 1
    return counts


def active_backend() -> str:
    if COMPILED_AVAILABLE and os.environ.get("OMEGALAB_FORCE_FALLBACK") != "1":
        return "compiled"
    return "fallback"


def omega_segment(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    if active_backend() == "compiled":
        return _kernel.omega_segment(lo, hi, primes)
    return omega_segment_fallback(lo, hi, primes)
