"""Block sequence whose averages along Omega(n) oscillate instead of converging.

The sequence is 1 on the intervals [3^k - 2^k, 3^k + 2^k] and 0 elsewhere.
It is generic (its plain Cesaro averages tend to 0), yet the averages of
a(Omega(n)) swing between ~1 (log log N at a block center) and ~0
(log log N between blocks).  Divergence is not observable by exact sieving
(the first all-zero stretch needs log log N >= 14), so exact small-N
computation is paired with Gaussian-weight checkpoints at virtual N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .errors import BlockOverflowError, InvalidIntervalError, InvalidRangeError
from .sieve import OmegaProfile, omega_profile
from .weights import GaussianWindowSpec, extrapolated_average

MAX_BLOCK_BOUND = 2**62


@dataclass(frozen=True)
class BlockSequence:
    """0/1 sequence that is 1 exactly on a sorted list of disjoint intervals."""

    blocks: tuple  # ((lo, hi) inclusive, ...)

    def __post_init__(self):
        prev_hi = None
        for lo, hi in self.blocks:
            if hi < lo:
                raise InvalidIntervalError(f"block [{lo}, {hi}] is empty")
            if prev_hi is not None and lo <= prev_hi:
                raise InvalidIntervalError("blocks must be disjoint and sorted")
            prev_hi = hi

    def __call__(self, n: int) -> int:
        for lo, hi in self.blocks:
            if lo <= n <= hi:
                return 1
            if n < lo:
                return 0
        return 0

    def count_upto(self, N: int) -> int:
        """Number of n in [1, N] with a(n) = 1, by interval overlap."""
        total = 0
        for lo, hi in self.blocks:
            total += max(0, min(hi, N) - max(lo, 1) + 1)
        return total


def merge_intervals(intervals) -> tuple:
    """Merge touching or overlapping inclusive intervals."""
    merged = []
    for lo, hi in sorted(intervals):
        if merged and lo <= merged[-1][1] + 1:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return tuple((lo, hi) for lo, hi in merged)


def erdos_blocks(k_max: int) -> BlockSequence:
    """Blocks [3^k - 2^k, 3^k + 2^k] for k = 1..k_max, merged where touching."""
    if k_max < 1:
        raise InvalidRangeError("k_max must be >= 1")
    if 3**k_max > MAX_BLOCK_BOUND:
        raise BlockOverflowError(f"3^{k_max} exceeds the supported integer range")
    intervals = [(3**k - 2**k, 3**k + 2**k) for k in range(1, k_max + 1)]
    return BlockSequence(merge_intervals(intervals))


@dataclass(frozen=True)
class Checkpoints:
    """Virtual log log N values probing block k: its center and the middle of
    the zero gap after it."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InvalidRangeError("checkpoint level must be >= 1")

    @property
    def loglogn_peak(self) -> float:
        return float(3**self.k)

    @property
    def loglogn_trough(self) -> float:
        return float(2 * (3**self.k - 2 ** (self.k - 1)))


def genericity_defect(seq: BlockSequence, N: int) -> float:
    """(1/N) sum_{n<=N} a(n): the Cesaro average of the cylinder observable."""
    if N < 1:
        raise InvalidRangeError("N must be >= 1")
    return seq.count_upto(N) / N


def loglog_interval_count(N: int, lo: float, hi: float) -> int:
    """Exact count of n in [3, N] with log log n in [lo, hi].

    The boundaries are inverted (n ranges over an integer interval) rather
    than scanned: e^{e^x} is evaluated in extended precision and the cliff
    integer resolved by direct comparison at the two neighbors.
    """
    if N < 3:
        raise InvalidRangeError("N must be >= 3")
    if lo >= hi:
        raise InvalidIntervalError("need lo < hi")
    n_min = max(3, _first_n_with_loglog_at_least(lo))
    n_max = min(N, _last_n_with_loglog_at_most(hi))
    return max(0, n_max - n_min + 1)


_FAR = 10**60  # beyond any sievable N


def _loglog_cmp(n: int, x: float, strict: bool) -> bool:
    with mpmath.workdps(60):
        value = mpmath.log(mpmath.log(n))
        return value > x if strict else value >= x


def _first_n_crossing(x: float, strict: bool) -> int:
    """Smallest n >= 3 with log log n >= x (or > x when strict)."""
    with mpmath.workdps(60):
        val = mpmath.exp(mpmath.exp(x))
        if val > _FAR:
            return _FAR
        cand = int(mpmath.floor(val))
    n = max(3, cand - 2)
    while not _loglog_cmp(n, x, strict):
        n += 1
    while n > 3 and _loglog_cmp(n - 1, x, strict):
        n -= 1
    return n


def _first_n_with_loglog_at_least(x: float) -> int:
    return _first_n_crossing(x, strict=False)


def _last_n_with_loglog_at_most(x: float) -> int:
    first_above = _first_n_crossing(x, strict=True)
    return _FAR if first_above >= _FAR else first_above - 1


def average_along_omega_blocks(
    seq: BlockSequence,
    N: int,
    *,
    profile: OmegaProfile | None = None,
    workers: int = 1,
    segment_length: int | None = None,
) -> float:
    """Cesaro average of a(Omega(n)) over [1, N], exactly sum_k pi_k(N) a(k) / N."""
    if profile is None:
        profile = omega_profile(N, workers, segment_length)
    elif profile.N != N:
        raise InvalidRangeError(f"profile is for N={profile.N}, not {N}")
    hits = sum(int(profile.pik[k]) for k in range(profile.k_max + 1) if seq(k))
    return hits / N


def oscillation_profile(
    seq: BlockSequence, checkpoints, C: float = 3.0
) -> list[tuple[float, float]]:
    """Gaussian-extrapolated block averages at each checkpoint's virtual N.

    Emits (log log N, value) rows for both the peak and the trough of every
    checkpoint, sorted by log log N; peaks approach the window mass and
    troughs approach 0, exhibiting the divergence.
    """
    rows = []
    for cp in checkpoints:
        for loglogn in (cp.loglogn_peak, cp.loglogn_trough):
            if loglogn <= 1:
                raise InvalidRangeError("checkpoint log log N must exceed 1")
            window = GaussianWindowSpec(loglogn=loglogn, C=C)
            value = extrapolated_average(seq, window).real
            rows.append((loglogn, value))
    return sorted(rows)
