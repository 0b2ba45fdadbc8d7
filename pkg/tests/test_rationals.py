"""Exact rational helpers and the round-to-nearest-even emulation."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewcomp.formats import BINARY32, BINARY64, FloatFormat, unit_roundoff
from skewcomp.rationals import (
    ZeroDenominator,
    ceil_rat,
    floor_rat,
    is_in_format,
    rat,
    round_half_up_rat,
    round_to_format,
)

P11 = FloatFormat(2, 11)


def test_rat_normalizes():
    assert rat(3, 6) == Fraction(1, 2)
    assert rat(5) == 5
    assert rat(-2, 4) == Fraction(-1, 2)


def test_rat_zero_denominator():
    with pytest.raises(ZeroDenominator):
        rat(1, 0)


@pytest.mark.parametrize(
    "q, fl, ce, rhu",
    [
        (Fraction(7, 2), 3, 4, 4),
        (Fraction(-7, 2), -4, -3, -3),  # half up means toward +inf
        (Fraction(5, 1), 5, 5, 5),
        (Fraction(-1, 3), -1, 0, 0),
        (Fraction(9, 2), 4, 5, 5),
        (Fraction(0), 0, 0, 0),
    ],
)
def test_floor_ceil_round_half_up(q, fl, ce, rhu):
    assert floor_rat(q) == fl
    assert ceil_rat(q) == ce
    assert round_half_up_rat(q) == rhu


def test_floor_ceil_consistent_with_math():
    for num in range(-25, 26):
        for den in range(1, 8):
            q = Fraction(num, den)
            assert floor_rat(q) == math.floor(q)
            assert ceil_rat(q) == math.ceil(q)


def test_round_tenth_binary32():
    # 1/10 is not a binary fraction; its nearest 24-bit significand is known
    assert round_to_format(Fraction(1, 10), BINARY32) == Fraction(13421773, 134217728)


def test_tie_rounds_to_even_significand():
    u = unit_roundoff(BINARY32)
    # 1 + u sits exactly between 1 and 1 + 2u; the even side is 1
    assert round_to_format(1 + u, BINARY32) == 1
    # 1 + 3u sits between 1 + 2u and 1 + 4u; the even side is 1 + 4u
    assert round_to_format(1 + 3 * u, BINARY32) == 1 + 4 * u


def test_round_zero_and_sign_symmetry():
    assert round_to_format(Fraction(0), BINARY32) == 0
    for q in (Fraction(1, 10), Fraction(355, 113), Fraction(1, 3)):
        assert round_to_format(-q, BINARY32) == -round_to_format(q, BINARY32)


def test_round_exact_values_pass_through():
    for q in (Fraction(1), Fraction(3, 4), Fraction(2**24 - 1), Fraction(5, 2**30)):
        assert round_to_format(q, BINARY32) == q
        assert is_in_format(q, BINARY32)


def test_is_in_format_boundaries():
    # 2^24 + 1 needs 25 significand bits
    assert is_in_format(Fraction(2**24), BINARY32)
    assert not is_in_format(Fraction(2**24 + 1), BINARY32)
    assert is_in_format(Fraction(2**24 + 2), BINARY32)


def _neighbors(q: Fraction, fmt: FloatFormat):
    """Enclosing format values via an independent exponent search.

    The exponent comes from float log2 and is corrected by comparison, so
    this does not share code with the implementation's integer log.
    """
    assert q > 0
    e = int(math.floor(math.log2(float(q)))) - fmt.precision + 1
    lo = fmt.base ** (fmt.precision - 1)
    hi = fmt.base**fmt.precision
    while q / Fraction(2) ** e >= hi:
        e += 1
    while q / Fraction(2) ** e < lo:
        e -= 1
    scaled = q / Fraction(2) ** e
    below = Fraction(floor_rat(scaled), 1) * Fraction(2) ** e
    above = Fraction(ceil_rat(scaled), 1) * Fraction(2) ** e
    return below, above


@settings(max_examples=300, deadline=None)
@given(
    num=st.integers(min_value=1, max_value=10**9),
    den=st.integers(min_value=1, max_value=10**9),
)
def test_rounding_picks_nearest_neighbor(num, den):
    q = Fraction(num, den)
    r = round_to_format(q, BINARY32)
    below, above = _neighbors(q, BINARY32)
    assert r in (below, above)
    # nearest: neither enclosing value is strictly closer
    assert abs(r - q) <= abs(below - q)
    assert abs(r - q) <= abs(above - q)


@settings(max_examples=300, deadline=None)
@given(
    num=st.integers(min_value=1, max_value=10**12),
    den=st.integers(min_value=1, max_value=10**12),
)
def test_rounding_idempotent_and_bounded(num, den):
    q = Fraction(num, den)
    u = unit_roundoff(BINARY32)
    r = round_to_format(q, BINARY32)
    assert round_to_format(r, BINARY32) == r
    assert abs(r - q) <= u / (1 + u) * q  # optimal E1 bound


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-6, max_value=1e12, allow_nan=False))
def test_binary64_floats_are_fixed_points(x):
    assert round_to_format(Fraction(x), BINARY64) == Fraction(x)


def test_matches_hardware_float32():
    import numpy as np

    import random

    rng = random.Random(99)
    for _ in range(2000):
        x = rng.uniform(1e-6, 1e9)
        assert round_to_format(Fraction(x), BINARY32) == Fraction(float(np.float32(x)))


def test_small_precision_format():
    # round 13/10 at p=11: significand grid is 2^-10 in [1, 2)
    r = round_to_format(Fraction(13, 10), P11)
    assert r == Fraction(1331, 1024)
    assert is_in_format(r, P11)


def test_base_ten_rounding():
    dec = FloatFormat(10, 3)
    assert round_to_format(Fraction(12345, 10), dec) == Fraction(1230)
    # ties land on the even significand from both sides
    assert round_to_format(Fraction(1235), dec) == Fraction(1240)
    assert round_to_format(Fraction(1245), dec) == Fraction(1240)
    assert round_to_format(Fraction(1, 3), dec) == Fraction(333, 1000)
