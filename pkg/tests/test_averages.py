import cmath
import math

import numpy as np
import pytest

from omegalab import omega_oracle, residue_class_density
from omegalab.averages import (
    AverageScheme,
    EKNormalizer,
    average,
    average_along_omega,
    correlation_sum,
    ek_report,
    ek_weighted_average,
    grid_cells,
    harmonic_sum,
    interval_indicator,
    liouville_segment_fn,
    log_average_stream,
    log_trick_bound,
    log_trick_discrepancy,
    shifted_omega_average,
    smoothed_indicator,
    weyl_sum,
)
from omegalab.dynamics import (
    exponential_orbit,
    residue_indicator_orbit,
    rotation_two_points_liouville,
)
from omegalab.errors import (
    DegenerateGridError,
    EmptySetError,
    InvalidPError,
    InvalidRangeError,
)

GRID = [-3 + 0.25 * i for i in range(25)]


def brute_liouville_average(N: int) -> float:
    return math.fsum((-1) ** omega_oracle(n) for n in range(1, N + 1)) / N


def test_average_scheme_hand_values():
    assert average(lambda n: 1.0, {5, 7, 9}) == 1.0
    assert average(lambda n: 1.0, {5, 7, 9}, AverageScheme.LOGARITHMIC) == pytest.approx(
        1.0, abs=1e-15
    )
    # log-average of f(n) = n over {1,2,3}: 3 / (11/6) = 18/11
    got = average(lambda n: n, {1, 2, 3}, AverageScheme.LOGARITHMIC)
    assert got.real == pytest.approx(18 / 11, abs=1e-15)


def test_average_empty_set():
    with pytest.raises(EmptySetError):
        average(lambda n: n, set())


def test_liouville_average_small_oracle():
    # n <= 10: lambda = +,-,-,+,-,+,-,-,+,+  ->  sum = 0
    assert brute_liouville_average(10) == 0.0
    orb = rotation_two_points_liouville()
    assert average_along_omega(orb, 10).real == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("N", [100, 1000])
def test_average_along_omega_matches_brute_force(N):
    orb = rotation_two_points_liouville()
    got = average_along_omega(orb, N)
    assert got.real == pytest.approx(brute_liouville_average(N), abs=1e-12)
    assert got.imag == 0.0


def test_logarithmic_average_matches_brute_force():
    orb = residue_indicator_orbit(3, 1)
    N = 1000
    num = math.fsum(
        (1.0 if omega_oracle(n) % 3 == 1 else 0.0) / n for n in range(1, N + 1)
    )
    den = math.fsum(1.0 / n for n in range(1, N + 1))
    got = average_along_omega(orb, N, AverageScheme.LOGARITHMIC)
    assert got.real == pytest.approx(num / den, abs=1e-12)


def test_constant_orbit_average_is_constant():
    from omegalab.dynamics import FiniteRotation

    orb = FiniteRotation(m=1, start=0, g_values=(0.7,))
    assert average_along_omega(orb, 12345).real == pytest.approx(0.7, abs=1e-12)


def test_weyl_sum_trivial_and_half():
    assert weyl_sum(0.0, 999) == pytest.approx(1.0, abs=1e-15)
    assert weyl_sum(0.5, 10).real == pytest.approx(brute_liouville_average(10), abs=1e-12)


def test_weyl_sum_rational_identity(profile_1e4):
    # two computation paths: exponential sum vs residue-class densities
    N = 10**4
    for p, q in [(1, 3), (2, 5)]:
        direct = weyl_sum(p / q, N, profile=profile_1e4)
        via_density = sum(
            cmath.exp(2j * math.pi * p * r / q)
            * residue_class_density(N, q, r, profile=profile_1e4)
            for r in range(q)
        )
        assert abs(direct - via_density) < 1e-12


def test_ek_normalizer():
    norm = EKNormalizer(10**8)
    assert norm.mean == pytest.approx(math.log(math.log(10**8)), abs=1e-15)
    assert norm.normalize(norm.mean) == 0.0
    with pytest.raises(InvalidRangeError):
        EKNormalizer(2)


def test_grid_cells_partition():
    cells = grid_cells(GRID)
    assert len(cells) == 24
    assert cells[0] == (-3.0, -2.75)
    with pytest.raises(DegenerateGridError):
        grid_cells([1.0])


def test_ek_report_wide_cell_counts_everything(profile_1e4):
    N = 10**4
    rep = ek_report(N, [-50.0, 50.0], profile=profile_1e4)
    assert rep.empirical[0] == pytest.approx((N - 2) / N, abs=1e-12)
    assert rep.gaussian[0] == pytest.approx(1.0, abs=1e-12)


def test_ek_report_sub_probability(profile_1e4):
    rep = ek_report(10**4, GRID, profile=profile_1e4)
    assert all(0.0 <= e <= 1.0 for e in rep.empirical)
    assert math.fsum(rep.empirical) <= 1.0 + 1e-12
    assert math.fsum(rep.gaussian) == pytest.approx(
        0.5 * (math.erf(3 / math.sqrt(2)) - math.erf(-3 / math.sqrt(2))), abs=1e-12
    )
    assert rep.sup_discrepancy == max(
        abs(e - g) for e, g in zip(rep.empirical, rep.gaussian)
    )


def test_ek_weighted_average_trivial(profile_1e4):
    N = 10**4
    zero = smoothed_indicator(-1, 1)
    zero = type(zero)(fn=lambda x: 0.0, support_lo=-2, support_hi=2, bound=0.0)
    assert ek_weighted_average(zero, N, profile=profile_1e4) == 0.0
    proxy = interval_indicator(-100, 100)
    assert ek_weighted_average(proxy, N, profile=profile_1e4) == pytest.approx(
        (N - 2) / N, abs=1e-12
    )


def test_ek_weighted_average_matches_report_cell(profile_1e6):
    # smoothed indicator vs the exact-cell mass: difference bounded by the
    # empirical mass of the two ramp strips
    N = 10**6
    lo, hi, ramp = -1.0, 1.0, 0.5
    smooth = ek_weighted_average(smoothed_indicator(lo, hi, ramp), N, profile=profile_1e6)
    exact = ek_weighted_average(interval_indicator(lo, hi), N, profile=profile_1e6)
    strips = ek_weighted_average(
        interval_indicator(lo - ramp, hi + ramp), N, profile=profile_1e6
    ) - exact
    assert abs(smooth - exact) <= strips + 1e-12


def test_correlation_sum_trivial_and_degenerate(profile_1e4):
    N = 10**4
    zero = interval_indicator(-1, 1)
    zero = type(zero)(fn=lambda x: 0.0, support_lo=-1, support_hi=1, bound=0.0)
    orb = residue_indicator_orbit(3, 1)
    assert correlation_sum(zero, orb, N, profile=profile_1e4) == 0.0
    # F == 1 on all realized phi values reduces to the plain average along
    # Omega(n) once the n in {1, 2} exclusion is undone
    proxy = interval_indicator(-100, 100)
    got = correlation_sum(proxy, orb, N, profile=profile_1e4)
    full = average_along_omega(orb, N, profile=profile_1e4)
    excluded = (orb.value_at(0) + orb.value_at(1)) / N
    assert abs(got - (full - excluded)) < 1e-12


def test_shifted_average_sign_flip(profile_1e4):
    N = 10**4
    a = lambda k: (-1) ** k
    s0 = shifted_omega_average(a, N, 0, profile=profile_1e4)
    s1 = shifted_omega_average(a, N, 1, profile=profile_1e4)
    assert s1 == -s0
    assert shifted_omega_average(lambda k: 1.0, N, 7, profile=profile_1e4) == (
        pytest.approx(1.0, abs=1e-12)
    )
    with pytest.raises(InvalidRangeError):
        shifted_omega_average(a, N, -1, profile=profile_1e4)


def test_shifted_average_small_oracle():
    a = lambda k: (-1) ** k
    assert shifted_omega_average(a, 10, 0).real == pytest.approx(
        brute_liouville_average(10), abs=1e-12
    )


def test_harmonic_sum_matches_fsum():
    direct = math.fsum(1.0 / n for n in range(1, 10**5 + 1))
    assert harmonic_sum(10**5) == pytest.approx(direct, abs=1e-12)


def test_log_average_stream_matches_brute_force():
    N = 1000
    got = log_average_stream(liouville_segment_fn, N)
    num = math.fsum((-1) ** omega_oracle(n) / n for n in range(1, N + 1))
    den = math.fsum(1.0 / n for n in range(1, N + 1))
    assert got.real == pytest.approx(num / den, abs=1e-12)


def test_log_trick_constant_is_zero():
    const = lambda ns, omegas: np.ones(len(ns))
    assert log_trick_discrepancy(const, 10**4, 3) == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("p", [2, 3, 7])
def test_log_trick_bound_holds_for_liouville(p):
    N = 10**4
    d = log_trick_discrepancy(liouville_segment_fn, N, p)
    assert d <= log_trick_bound(1.0, N, p) + 1e-12


def test_log_trick_validation():
    with pytest.raises(InvalidPError):
        log_trick_discrepancy(liouville_segment_fn, 100, 1)
    with pytest.raises(InvalidPError):
        log_trick_discrepancy(liouville_segment_fn, 2, 3)


def test_smoothed_indicator_shape():
    F = smoothed_indicator(-1, 1, 0.5)
    assert F(0.0) == 1.0
    assert F(-1.25) == pytest.approx(0.5)
    assert F(1.25) == pytest.approx(0.5)
    assert F(-1.6) == 0.0
    assert F(2.0) == 0.0
    with pytest.raises(InvalidRangeError):
        smoothed_indicator(-1, 1, 0.0)
