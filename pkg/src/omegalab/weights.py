"""Weighted-sum reformulation of averages along Omega(n).

Exact weights pi_k(N)/N, the factorial product-form estimate, the Gaussian
window approximation, the windowed Gaussian averaging operator, and
extrapolation of averages to virtual N far beyond any sievable range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidRangeError, WindowRangeError
from .sieve import OmegaProfile, omega_profile


@dataclass(frozen=True)
class WeightVector:
    """Weights w_k over the inclusive k-window [k_lo, k_hi]."""

    k_lo: int
    k_hi: int
    weights: np.ndarray
    kind: str  # exact | erdos | gaussian

    def __post_init__(self):
        if self.k_hi < self.k_lo:
            raise WindowRangeError("empty weight window")
        if len(self.weights) != self.k_hi - self.k_lo + 1:
            raise WindowRangeError("weights length does not match window")

    def weight(self, k: int) -> float:
        if not self.k_lo <= k <= self.k_hi:
            return 0.0
        return float(self.weights[k - self.k_lo])

    def total(self) -> float:
        return float(math.fsum(self.weights))


@dataclass(frozen=True)
class GaussianWindowSpec:
    """k-window [ceil(L - C sqrt L), floor(L + C sqrt L)] around L = log log N.

    L is virtual: it may lie far beyond any sievable N, since the Gaussian
    weights need no sieve data.
    """

    loglogn: float
    C: float = 3.0

    def __post_init__(self):
        if self.loglogn <= 1.0:
            raise WindowRangeError("log log N must exceed 1")
        if self.C <= 0:
            raise WindowRangeError("window half-width C must be positive")

    @property
    def k_lo(self) -> int:
        return max(0, math.ceil(self.loglogn - self.C * math.sqrt(self.loglogn)))

    @property
    def k_hi(self) -> int:
        return math.floor(self.loglogn + self.C * math.sqrt(self.loglogn))

    def ks(self) -> np.ndarray:
        return np.arange(self.k_lo, self.k_hi + 1, dtype=np.int64)


def window_for(N: int, C: float = 3.0) -> GaussianWindowSpec:
    if N < 16:
        raise InvalidRangeError("need N >= 16 so that log log N > 1")
    return GaussianWindowSpec(loglogn=math.log(math.log(N)), C=C)


def exact_weights(
    N: int,
    *,
    profile: OmegaProfile | None = None,
    workers: int = 1,
    segment_length: int | None = None,
) -> WeightVector:
    """w_k = pi_k(N)/N over the full realized k-range; sums to 1 exactly."""
    if profile is None:
        profile = omega_profile(N, workers, segment_length)
    elif profile.N != N:
        raise InvalidRangeError(f"profile is for N={profile.N}, not {N}")
    return WeightVector(
        k_lo=0,
        k_hi=profile.k_max,
        weights=profile.pik.astype(np.float64) / N,
        kind="exact",
    )


def erdos_weights(N: int, window: GaussianWindowSpec) -> WeightVector:
    """Product-form estimate (1/log N) L^{k-1} / (k-1)! on the window, k >= 1.

    Anchored in log-space at k0 = round(L) and extended by the exact
    recurrence w_{k+1}/w_k = L/k, so the ratio identity holds to rounding
    and nothing overflows for virtual L.
    """
    if N < 16:
        raise InvalidRangeError("need N >= 16 so that log log N > 1")
    L = math.log(math.log(N))
    if abs(window.loglogn - L) > 1e-9:
        raise WindowRangeError(
            f"window centered at {window.loglogn}, but log log N = {L}"
        )
    return _erdos_weights_at(L, window)


def _erdos_weights_at(L: float, window: GaussianWindowSpec) -> WeightVector:
    k_lo = max(1, window.k_lo)
    k_hi = window.k_hi
    if k_hi < k_lo:
        raise WindowRangeError("window contains no k >= 1")
    k0 = min(max(k_lo, round(L)), k_hi)
    # log w_k0 = -L + (k0 - 1) log L - log (k0 - 1)!
    log_anchor = -L + (k0 - 1) * math.log(L) - math.lgamma(k0)
    weights = np.empty(k_hi - k_lo + 1, dtype=np.float64)
    weights[k0 - k_lo] = math.exp(log_anchor)
    for k in range(k0 + 1, k_hi + 1):
        weights[k - k_lo] = weights[k - 1 - k_lo] * (L / (k - 1))
    for k in range(k0 - 1, k_lo - 1, -1):
        weights[k - k_lo] = weights[k + 1 - k_lo] * (k / L)
    return WeightVector(k_lo=k_lo, k_hi=k_hi, weights=weights, kind="erdos")


def gaussian_weights(
    window: GaussianWindowSpec, renormalize: bool = False
) -> WeightVector:
    """w_k = (2 pi L)^{-1/2} exp(-(k - L)^2 / (2L)) on the window.

    Raw by default (the averaging-operator convention); ``renormalize``
    rescales to total mass 1 for distribution-style comparisons.
    """
    L = window.loglogn
    z = (window.ks().astype(np.float64) - L) / math.sqrt(L)
    weights = np.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi * L)
    if renormalize:
        weights = weights / math.fsum(weights)
    return WeightVector(
        k_lo=window.k_lo, k_hi=window.k_hi, weights=weights, kind="gaussian"
    )


def tn_operator(indicator, window: GaussianWindowSpec) -> float:
    """Windowed Gaussian average of an indicator: sum_k w_k * indicator(k).

    indicator(k) in {0, 1} stands for 1_A(T^k x).
    """
    wv = gaussian_weights(window)
    return float(
        math.fsum(
            w * (1.0 if indicator(int(k)) else 0.0)
            for k, w in zip(window.ks(), wv.weights)
        )
    )


def extrapolated_average(a, window: GaussianWindowSpec) -> complex:
    """sum_k w_k a(k) over the window with Gaussian weights.

    Interpreted as the approximate value of (1/N) sum a(Omega(n)) at the
    virtual N with the window's log log N; needs no sieve data.
    """
    wv = gaussian_weights(window)
    values = [complex(a(int(k))) for k in window.ks()]
    re = math.fsum(w * v.real for w, v in zip(wv.weights, values))
    im = math.fsum(w * v.imag for w, v in zip(wv.weights, values))
    return complex(re, im)


@dataclass(frozen=True)
class ApproximationReport:
    """Distance between exact and Gaussian weights on a window."""

    N: int
    C: float
    tv_distance: float
    max_rel_err_in_window: float


def approximation_report(
    N: int,
    C: float = 3.0,
    *,
    profile: OmegaProfile | None = None,
    workers: int = 1,
    segment_length: int | None = None,
) -> ApproximationReport:
    """Total-variation and max relative error of the Gaussian weights vs exact."""
    window = window_for(N, C)
    exact = exact_weights(
        N, profile=profile, workers=workers, segment_length=segment_length
    )
    gauss = gaussian_weights(window)
    tv = 0.0
    max_rel = 0.0
    for k in range(window.k_lo, window.k_hi + 1):
        e = exact.weight(k)
        g = gauss.weight(k)
        tv += abs(e - g)
        if e > 0:
            max_rel = max(max_rel, abs(e - g) / e)
    return ApproximationReport(N=N, C=C, tv_distance=tv, max_rel_err_in_window=max_rel)
