"""Cesaro/logarithmic averaging engines and the averages along Omega(n).

Every average over [1, N] is a fold over sieve segments, reduced through the
per-k totals of an OmegaProfile; the value of any bounded a(Omega(n)) over
[N] is exactly sum_k pi_k(N) a(k) / N, so no pass ever materializes all
Omega values at once.  The Erdos-Kac normalizer always uses log log N with
the outer N (not log log n), and n in {1, 2} are skipped in every
phi-normalized sum.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from functools import partial
from typing import Callable, Sequence

import numpy as np

from .dynamics import ObservableOrbit, exponential_orbit
from .errors import (
    DegenerateGridError,
    EmptySetError,
    InvalidPError,
    InvalidRangeError,
)
from .normal import normal_mass
from .sieve import OmegaProfile, map_segments, omega_profile, sieve_segment


class AverageScheme(Enum):
    CESARO = "cesaro"
    LOGARITHMIC = "logarithmic"


def average(f, B, scheme: AverageScheme = AverageScheme.CESARO) -> complex:
    """Scheme-average of f over the finite set B.

    Cesaro: (1/|B|) sum f(n).  Logarithmic: sum f(n)/n normalized by
    sum_{n in B} 1/n.
    """
    elems = sorted(B)
    if not elems:
        raise EmptySetError("averaging set is empty")
    if scheme is AverageScheme.CESARO:
        return _fsum_complex(f(n) for n in elems) / len(elems)
    norm = math.fsum(1.0 / n for n in elems)
    return _fsum_complex(f(n) / n for n in elems) / norm


def _fsum_complex(values) -> complex:
    pairs = [(complex(v).real, complex(v).imag) for v in values]
    return complex(math.fsum(re for re, _ in pairs), math.fsum(im for _, im in pairs))


def _resolve_profile(N, profile, workers, segment_length) -> OmegaProfile:
    if profile is not None:
        if profile.N != N:
            raise InvalidRangeError(f"profile is for N={profile.N}, not {N}")
        return profile
    return omega_profile(N, workers, segment_length)


def _orbit_values(orbit: ObservableOrbit, k_max: int) -> np.ndarray:
    return np.array([orbit.value_at(k) for k in range(k_max + 1)], dtype=complex)


def _dot(weights: np.ndarray, values: np.ndarray) -> complex:
    return complex(
        math.fsum(weights * values.real), math.fsum(weights * values.imag)
    )


def average_along_omega(
    orbit: ObservableOrbit,
    N: int,
    scheme: AverageScheme = AverageScheme.CESARO,
    *,
    profile: OmegaProfile | None = None,
    workers: int = 1,
    segment_length: int | None = None,
) -> complex:
    """Scheme-average of n -> g(T^{Omega(n)} x) over [1, N]."""
    prof = _resolve_profile(N, profile, workers, segment_length)
    values = _orbit_values(orbit, prof.k_max)
    if scheme is AverageScheme.CESARO:
        return _dot(prof.pik.astype(np.float64), values) / N
    return _dot(prof.inv_weights, values) / prof.harmonic_sum()


def weyl_sum(
    beta: float,
    N: int,
    *,
    profile: OmegaProfile | None = None,
    workers: int = 1,
    segment_length: int | None = None,
) -> complex:
    """(1/N) sum_{n<=N} e^{2 pi i beta Omega(n)}."""
    return average_along_omega(
        exponential_orbit(beta),
        N,
        AverageScheme.CESARO,
        profile=profile,
        workers=workers,
        segment_length=segment_length,
    )


# ---------------------------------------------------------------------------
# Erdos-Kac machinery
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EKNormalizer:
    """phi(n) = (Omega(n) - log log N) / sqrt(log log N), N fixed."""

    N: int

    def __post_init__(self):
        if self.N < 3:
            raise InvalidRangeError("EK normalizer needs N >= 3")

    @property
    def mean(self) -> float:
        return math.log(math.log(self.N))

    @property
    def sd(self) -> float:
        return math.sqrt(self.mean)

    def normalize(self, omega_value: float) -> float:
        return (omega_value - self.mean) / self.sd


@dataclass(frozen=True)
class RealTestFunction:
    """Continuous real test function of compact support."""

    fn: Callable[[float], float]
    support_lo: float
    support_hi: float
    bound: float

    def __post_init__(self):
        if self.support_lo >= self.support_hi:
            raise InvalidRangeError("empty support")

    def __call__(self, x: float) -> float:
        if x < self.support_lo or x > self.support_hi:
            return 0.0
        return self.fn(x)


def interval_indicator(lo: float, hi: float) -> RealTestFunction:
    """Exact indicator of [lo, hi] (for Erdos-Kac cross-checks)."""
    return RealTestFunction(fn=lambda x: 1.0, support_lo=lo, support_hi=hi, bound=1.0)


def smoothed_indicator(lo: float, hi: float, ramp: float = 1.0) -> RealTestFunction:
    """Indicator of [lo, hi] with linear ramps of the given width outside.

    Equals 1 on [lo, hi], falls linearly to 0 over [lo - ramp, lo] and
    [hi, hi + ramp]; compactly supported and continuous.
    """
    if ramp <= 0:
        raise InvalidRangeError("ramp width must be positive")

    def fn(x: float) -> float:
        if lo <= x <= hi:
            return 1.0
        if x < lo:
            return (x - (lo - ramp)) / ramp
        return ((hi + ramp) - x) / ramp

    return RealTestFunction(fn=fn, support_lo=lo - ramp, support_hi=hi + ramp, bound=1.0)


def _adjusted_pik(prof: OmegaProfile) -> np.ndarray:
    """pi_k with n = 1 (k=0) and n = 2 (k=1) removed, for phi-normalized sums."""
    pik = prof.pik.astype(np.float64).copy()
    pik[0] -= 1
    if prof.N >= 2:
        pik[1] -= 1
    return pik


@dataclass(frozen=True)
class EKReport:
    """Empirical vs Gaussian interval masses of the normalized Omega values."""

    N: int
    pairs: tuple  # (A, B) pairs
    empirical: tuple
    gaussian: tuple
    sup_discrepancy: float


def grid_cells(points: Sequence[float]) -> list[tuple[float, float]]:
    """Consecutive cells (A, B) of a grid; the cells partition its span."""
    pts = sorted(points)
    if len(pts) < 2:
        raise DegenerateGridError("grid needs at least two points")
    return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]


def ek_report(
    N: int,
    grid: Sequence[float],
    *,
    profile: OmegaProfile | None = None,
    workers: int = 1,
    segment_length: int | None = None,
) -> EKReport:
    """K_N(A, B)/N against the Gaussian mass, per consecutive grid cell (A, B).

    Cells are half-open (A, B] (first cell closed), so the empirical column
    is a valid sub-probability distribution over the grid span.
    """
    norm = EKNormalizer(N)
    prof = _resolve_profile(N, profile, workers, segment_length)
    pik = _adjusted_pik(prof)
    z = norm.normalize(np.arange(len(pik), dtype=np.float64))
    pairs = grid_cells(grid)
    empirical = []
    gaussian = []
    for i, (a, b) in enumerate(pairs):
        inside = ((z >= a) if i == 0 else (z > a)) & (z <= b)
        empirical.append(float(pik[inside].sum()) / N)
        gaussian.append(normal_mass(a, b))
    sup = max(abs(e - g) for e, g in zip(empirical, gaussian))
    return EKReport(N, tuple(pairs), tuple(empirical), tuple(gaussian), sup)


def ek_weighted_average(
    F: RealTestFunction,
    N: int,
    *,
    profile: OmegaProfile | None = None,
    workers: int = 1,
    segment_length: int | None = None,
) -> float:
    """(1/N) sum F(phi(n)); tends to the Gaussian integral of F."""
    norm = EKNormalizer(N)
    prof = _resolve_profile(N, profile, workers, segment_length)
    pik = _adjusted_pik(prof)
    values = np.array([F(norm.normalize(k)) for k in range(len(pik))])
    return float(math.fsum(pik * values)) / N


def correlation_sum(
    F: RealTestFunction,
    orbit: ObservableOrbit,
    N: int,
    *,
    profile: OmegaProfile | None = None,
    workers: int = 1,
    segment_length: int | None = None,
) -> complex:
    """(1/N) sum F(phi(n)) g(T^{Omega(n)} x); limit is (Gaussian integral of F) * space mean."""
    norm = EKNormalizer(N)
    prof = _resolve_profile(N, profile, workers, segment_length)
    pik = _adjusted_pik(prof)
    weights = pik * np.array([F(norm.normalize(k)) for k in range(len(pik))])
    return _dot(weights, _orbit_values(orbit, len(pik) - 1)) / N


def shifted_omega_average(
    a: Callable[[int], complex],
    N: int,
    shift: int = 0,
    *,
    profile: OmegaProfile | None = None,
    workers: int = 1,
    segment_length: int | None = None,
) -> complex:
    """Cesaro average of n -> a(Omega(n) + shift) over [1, N]."""
    if shift < 0:
        raise InvalidRangeError("shift must be >= 0")
    prof = _resolve_profile(N, profile, workers, segment_length)
    values = np.array([a(k + shift) for k in range(prof.k_max + 1)], dtype=complex)
    return _dot(prof.pik.astype(np.float64), values) / N


# ---------------------------------------------------------------------------
# Logarithmic-average trick
# ---------------------------------------------------------------------------


def _log_sum_chunk(span, fn, n_cap):
    lo, hi = span
    hi = min(hi, n_cap + 1)
    if lo > n_cap:
        return 0.0, 0.0, 0.0
    seg = sieve_segment(lo, hi)
    ns = np.arange(lo, hi, dtype=np.float64)
    vals = np.asarray(fn(np.arange(lo, hi, dtype=np.int64), seg.counts), dtype=complex)
    inv = 1.0 / ns
    return (
        float(np.sum(vals.real * inv)),
        float(np.sum(vals.imag * inv)),
        float(np.sum(inv)),
    )


def log_average_stream(
    fn,
    N: int,
    *,
    workers: int = 1,
    segment_length: int | None = None,
) -> complex:
    """Logarithmic average over [1, N] of a segment function.

    fn receives (n_values, omega_counts) as numpy arrays and returns the
    per-n values; the weighted partial sums merge in segment order.
    """
    chunk = partial(_log_sum_chunk, fn=fn, n_cap=N)
    parts = map_segments(N, chunk, workers, segment_length)
    re = math.fsum(p[0] for p in parts)
    im = math.fsum(p[1] for p in parts)
    norm = math.fsum(p[2] for p in parts)
    return complex(re, im) / norm


def harmonic_sum(N: int) -> float:
    """A_N = sum_{n<=N} 1/n, accumulated in compensated summation."""
    total = math.fsum(
        float(np.sum(1.0 / np.arange(lo, hi, dtype=np.float64)))
        for lo in range(1, N + 1, 1 << 22)
        for hi in [min(lo + (1 << 22), N + 1)]
    )
    return total


def log_trick_discrepancy(
    fn,
    N: int,
    p: int,
    *,
    workers: int = 1,
    segment_length: int | None = None,
) -> float:
    """|E^log_{[N/p]} f - E^log_{[N]} f| for a bounded segment function f."""
    if p < 2:
        raise InvalidPError("p must be >= 2")
    if N < p:
        raise InvalidPError("need N >= p")
    full = log_average_stream(fn, N, workers=workers, segment_length=segment_length)
    head = log_average_stream(
        fn, N // p, workers=workers, segment_length=segment_length
    )
    return abs(head - full)


def log_trick_bound(M: float, N: int, p: int) -> float:
    """Closed-form majorant 2M (1 - A_{floor(N/p)} / A_N)."""
    if p < 2:
        raise InvalidPError("p must be >= 2")
    return 2.0 * M * (1.0 - harmonic_sum(N // p) / harmonic_sum(N))


def liouville_segment_fn(ns: np.ndarray, omegas: np.ndarray) -> np.ndarray:
    """lambda(n) = (-1)^Omega(n) as a segment function."""
    return np.where(omegas % 2 == 0, 1.0, -1.0)
