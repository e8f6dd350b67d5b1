import math

import mpmath
import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from omegalab.normal import erf, erfc, normal_cdf, normal_mass, normal_pdf


def test_erfc_against_math_library():
    for x in np.linspace(-10, 10, 4001):
        assert abs(erfc(float(x)) - math.erfc(float(x))) < 1e-13


def test_erfc_against_mpmath_tail():
    with mpmath.workdps(40):
        for x in (2.0, 2.5, 3.0, 5.0, 8.0, 12.0, 20.0, 29.9):
            exact = float(mpmath.erfc(x))
            assert abs(erfc(x) - exact) <= 1e-13 + 1e-10 * exact


def test_erfc_anchor_values():
    assert erfc(0.0) == 1.0
    assert abs(erfc(1.0) - 0.15729920705028513) < 1e-14
    assert erfc(31.0) == 0.0


@settings(max_examples=300, deadline=None)
@given(st.floats(-25, 25, allow_nan=False))
def test_erfc_reflection(x):
    assert abs(erfc(x) + erfc(-x) - 2.0) < 1e-12


def test_erf_complement():
    for x in (0.0, 0.3, 1.0, 1.9, 2.1, 4.0):
        assert abs(erf(x) + erfc(x) - 1.0) < 1e-15


def test_normal_cdf_symmetry_and_anchors():
    assert abs(normal_cdf(0.0) - 0.5) < 1e-15
    for x in (0.5, 1.0, 1.96, 3.0):
        assert abs(normal_cdf(x) + normal_cdf(-x) - 1.0) < 1e-13


def test_normal_mass_95_percent():
    assert abs(normal_mass(-1.96, 1.96) - 0.9500042097035591) < 1e-12


def test_normal_mass_empty_and_full():
    assert normal_mass(1.0, 0.0) == 0.0
    assert abs(normal_mass(-40.0, 40.0) - 1.0) < 1e-12


def test_normal_mass_additive():
    total = normal_mass(-2.0, 2.0)
    split = normal_mass(-2.0, 0.3) + normal_mass(0.3, 2.0)
    assert abs(total - split) < 1e-13


def test_normal_pdf_peak():
    assert abs(normal_pdf(0.0) - 1.0 / math.sqrt(2.0 * math.pi)) < 1e-15
