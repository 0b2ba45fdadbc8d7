"""Floating-point format descriptions and optimal rounding-error bounds.

A format is a pair (base, precision) with an unbounded exponent range.
Bounds come in two flavors per operation: E1 is measured against the
exact value, E2 against the rounded value.  The optimal bounds are

    rounding, multiply:   E1 <= u/(1+u),          E2 <= u
    divide, base 2:       E1 <= u - 2u^2,         E2 <= (u-2u^2)/(1+u-2u^2)
    divide, base > 2:     E1 <= u/(1+u),          E2 <= u

with u the unit roundoff of the format.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .rationals import round_to_format

__all__ = [
    "FloatFormat",
    "BINARY32",
    "BINARY64",
    "FORMATS",
    "resolve_format",
    "format_label",
    "unit_roundoff",
    "op_error_bound",
    "relative_errors",
    "ErrorBudget",
    "error_budget",
]


@dataclass(frozen=True)
class FloatFormat:
    """Value set {0} union {M * base**e : base**(precision-1) <= |M| < base**precision}."""

    base: int
    precision: int

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        if self.precision < 2:
            raise ValueError(f"precision must be >= 2, got {self.precision}")


BINARY32 = FloatFormat(base=2, precision=24)
BINARY64 = FloatFormat(base=2, precision=53)

FORMATS = {"binary32": BINARY32, "binary64": BINARY64}


def resolve_format(precision) -> FloatFormat:
    """Accept a FloatFormat or one of the registered labels."""
    if isinstance(precision, FloatFormat):
        return precision
    try:
        return FORMATS[precision]
    except KeyError:
        raise ValueError(
            f"unknown precision {precision!r}; expected FloatFormat or one of {sorted(FORMATS)}"
        ) from None


def format_label(fmt: FloatFormat) -> str:
    for name, known in FORMATS.items():
        if known == fmt:
            return name
    return f"b{fmt.base}p{fmt.precision}"


def unit_roundoff(fmt: FloatFormat) -> Fraction:
    """u = (1/2) * base**(1-precision), exactly."""
    return Fraction(1, 2 * fmt.base ** (fmt.precision - 1))


def op_error_bound(kind: str, which: str, fmt: FloatFormat) -> Fraction:
    """Optimal bound on the relative error of one correctly rounded operation.

    kind is one of "rounding", "multiply", "divide"; which is "E1" or "E2".
    """
    if kind not in ("rounding", "multiply", "divide"):
        raise ValueError(f"unknown operation kind {kind!r}")
    if which not in ("E1", "E2"):
        raise ValueError(f"unknown error measure {which!r}")
    u = unit_roundoff(fmt)
    if kind == "divide" and fmt.base == 2:
        e1 = u - 2 * u * u
        return e1 if which == "E1" else e1 / (1 + e1)
    return u / (1 + u) if which == "E1" else u


def relative_errors(t: Rational, fmt: FloatFormat) -> tuple[Fraction, Fraction]:
    """Realized (E1, E2) of rounding t; (0, 0) at t = 0 by convention."""
    if t == 0:
        return Fraction(0), Fraction(0)
    rounded = round_to_format(t, fmt)
    err = abs(t - rounded)
    # rounded == 0 would need t == 0: the exponent never underflows here
    return err / abs(t), err / abs(rounded)


@dataclass(frozen=True)
class ErrorBudget:
    """Per-stage E1 bounds for fl(fl(i) * fl(fl(D) / fl(A))).

    Stages: the three input roundings, the division, the multiplication.
    """

    round_i: Fraction
    round_d: Fraction
    round_a: Fraction
    divide: Fraction
    multiply: Fraction


def error_budget(fmt: FloatFormat) -> ErrorBudget:
    rounding = op_error_bound("rounding", "E1", fmt)
    return ErrorBudget(
        round_i=rounding,
        round_d=rounding,
        round_a=rounding,
        divide=op_error_bound("divide", "E1", fmt),
        multiply=op_error_bound("multiply", "E1", fmt),
    )
