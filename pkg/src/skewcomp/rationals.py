"""Exact rational arithmetic and round-to-nearest emulation.

Everything downstream of this module manipulates `fractions.Fraction`
values; floats only appear at the hardware boundary.  `round_to_format`
emulates an idealized IEEE-754 binary format with unbounded exponent
(no overflow, no subnormals), which is the model the error bounds are
proved against.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = [
    "ZeroDenominator",
    "rat",
    "floor_rat",
    "ceil_rat",
    "round_half_up_rat",
    "round_to_format",
    "is_in_format",
]


class ZeroDenominator(ValueError):
    """Raised when a rational is constructed with denominator zero."""


def rat(num: int, den: int = 1) -> Fraction:
    """Exact rational num/den, normalized with positive denominator."""
    if den == 0:
        raise ZeroDenominator(f"rational {num}/0 is undefined")
    return Fraction(num, den)


def floor_rat(x: Rational) -> int:
    return x.numerator // x.denominator


def ceil_rat(x: Rational) -> int:
    return -((-x.numerator) // x.denominator)


def round_half_up_rat(x: Rational) -> int:
    """Nearest integer, ties toward +inf: floor(x + 1/2)."""
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


def _ilog(num: int, den: int, base: int) -> int:
    """floor(log_base(num/den)) for positive num, den."""
    if base == 2:
        k = num.bit_length() - den.bit_length()
        # k or k-1; settle by one exact comparison (shifts must not truncate)
        if k >= 0:
            return k if num >> k >= den else k - 1
        return k if num << -k >= den else k - 1
    # exact integer walk; cheap at the magnitudes used here
    k = 0
    if num >= den:
        while num >= den * base:
            den *= base
            k += 1
        return k
    while num < den:
        num *= base
        k -= 1
    return k


def round_to_format(x: Rational, fmt) -> Fraction:
    """Round x to the nearest member of fmt's value set, ties to even.

    fmt is anything exposing integer attributes `base` and `precision`.
    The emulated set is {0} union {M * base**e : base**(p-1) <= |M| < base**p},
    e unbounded.  Returns an exact Fraction equal to the rounded value.
    """
    num, den = x.numerator, x.denominator
    if num == 0:
        return Fraction(0)
    beta, p = fmt.base, fmt.precision
    sign = 1
    if num < 0:
        sign, num = -1, -num

    # exponent e such that beta**(p-1) <= (num/den) / beta**e < beta**p
    e = _ilog(num, den, beta) - (p - 1)

    # scale so the significand is scaled_num/scaled_den, then round to int
    if e >= 0:
        scaled_num, scaled_den = num, den * beta**e
    else:
        scaled_num, scaled_den = num * beta**-e, den
    mant, rem = divmod(scaled_num, scaled_den)
    twice = 2 * rem
    if twice > scaled_den or (twice == scaled_den and mant & 1):
        mant += 1
    # a carry to beta**p stays representable as beta**(p-1) * beta**(e+1)

    if e >= 0:
        return Fraction(sign * mant * beta**e)
    return Fraction(sign * mant, beta**-e)


def is_in_format(x: Rational, fmt) -> bool:
    """True iff x is exactly representable in fmt (zero included)."""
    return x == round_to_format(x, fmt)
