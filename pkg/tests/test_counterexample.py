import math

import pytest

from omegalab.counterexample import (
    BlockSequence,
    Checkpoints,
    average_along_omega_blocks,
    erdos_blocks,
    genericity_defect,
    loglog_interval_count,
    merge_intervals,
    oscillation_profile,
)
from omegalab.errors import (
    BlockOverflowError,
    InvalidIntervalError,
    InvalidRangeError,
)
from omegalab.sieve import omega_oracle


def test_blocks_merge_when_touching():
    seq = erdos_blocks(2)
    assert seq.blocks == ((1, 13),)
    seq3 = erdos_blocks(3)
    assert seq3.blocks == ((1, 13), (19, 35))


def test_block_membership():
    seq = erdos_blocks(3)
    assert seq(14) == 0
    assert seq(27) == 1
    assert seq(13) == 1
    assert seq(36) == 0


def test_block_sequence_validation():
    with pytest.raises(InvalidIntervalError):
        BlockSequence(blocks=((5, 3),))
    with pytest.raises(InvalidIntervalError):
        BlockSequence(blocks=((1, 10), (5, 20)))
    with pytest.raises(InvalidRangeError):
        erdos_blocks(0)
    with pytest.raises(BlockOverflowError):
        erdos_blocks(60)


def test_merge_intervals():
    assert merge_intervals([(1, 5), (5, 13)]) == ((1, 13),)
    assert merge_intervals([(10, 20), (1, 3)]) == ((1, 3), (10, 20))
    assert merge_intervals([(1, 3), (4, 6)]) == ((1, 6),)  # adjacent merge


def test_checkpoints():
    cp = Checkpoints(3)
    assert cp.loglogn_peak == 27.0
    assert cp.loglogn_trough == 46.0
    assert all(
        Checkpoints(k).loglogn_trough > Checkpoints(k).loglogn_peak
        for k in range(1, 10)
    )
    with pytest.raises(InvalidRangeError):
        Checkpoints(0)


def test_genericity_defect_hand_values():
    seq = erdos_blocks(2)
    assert genericity_defect(seq, 13) == 1.0
    assert genericity_defect(seq, 26) == 0.5
    empty = BlockSequence(blocks=())
    assert genericity_defect(empty, 1000) == 0.0


def test_genericity_defect_bounded_by_block_count():
    seq = erdos_blocks(6)
    N = 10**5
    assert genericity_defect(seq, N) == seq.count_upto(N) / N


def test_loglog_interval_count_boundary_at_16():
    # log log 15 < 1 <= log log 16
    assert math.log(math.log(15)) < 1.0 <= math.log(math.log(16))
    n = 10**4
    below = loglog_interval_count(n, 1.0, 5.0)
    assert below == n - 15
    # hi crossing an integer boundary changes the count by exactly 1
    x16 = math.log(math.log(16))
    x17 = math.log(math.log(17))
    lo = 0.1
    c_before = loglog_interval_count(10**4, lo, (x16 + x17) / 2)
    c_after = loglog_interval_count(10**4, lo, (x17 + math.log(math.log(18))) / 2)
    assert c_after == c_before + 1


def test_loglog_interval_count_trivial_cases():
    assert loglog_interval_count(10**4, 0.0, 10.0) == 10**4 - 2
    assert loglog_interval_count(10**4, 50.0, 60.0) == 0
    with pytest.raises(InvalidIntervalError):
        loglog_interval_count(100, 2.0, 1.0)
    with pytest.raises(InvalidRangeError):
        loglog_interval_count(2, 0.0, 1.0)


def test_loglog_interval_count_matches_scan():
    for lo, hi in [(0.5, 1.2), (1.0, 1.5), (0.2, 2.0)]:
        scan = sum(1 for n in range(3, 5001) if lo <= math.log(math.log(n)) <= hi)
        assert loglog_interval_count(5000, lo, hi) == scan


def test_average_along_omega_blocks_two_paths(profile_1e4):
    seq = erdos_blocks(3)
    N = 10**4
    via_profile = average_along_omega_blocks(seq, N, profile=profile_1e4)
    direct = sum(seq(omega_oracle(n)) for n in range(1, N + 1)) / N
    assert via_profile == pytest.approx(direct, abs=1e-15)


def test_average_along_omega_blocks_trivial(profile_1e4):
    N = 10**4
    everything = BlockSequence(blocks=((0, 100),))
    assert average_along_omega_blocks(everything, N, profile=profile_1e4) == 1.0
    empty = BlockSequence(blocks=())
    assert average_along_omega_blocks(empty, N, profile=profile_1e4) == 0.0


def test_oscillation_profile_contrast():
    seq = erdos_blocks(8)
    cps = [Checkpoints(k) for k in range(3, 7)]
    rows = dict(oscillation_profile(seq, cps))
    for cp in cps:
        assert rows[cp.loglogn_peak] > rows[cp.loglogn_trough]


def test_oscillation_profile_constant_sequence():
    ones = BlockSequence(blocks=((0, 10**6),))
    rows = oscillation_profile(ones, [Checkpoints(4)])
    for _, value in rows:
        assert value == pytest.approx(1.0, abs=0.01)
