"""Candidate intervals for the skew-compensated clock.

The pipeline value is t_hat = fl(fl(i) * fl(fl(D) / fl(A))), the working
precision estimate of t = i*D/A.  Three interval constructions bracket
the true compensated clock around t_hat:

    theoretical: floor/ceil of c_lo * t_hat, c_hi * t_hat with the exactly
        derived coefficients evaluated in working precision, the final
        products exact;
    practical:   same shape, with the looser but cheaply computable
        coefficients (1-u)/(1+2u)^3 and (1+2u)^3;
    approximate: floor/ceil of t_hat -/+ (1 + eps_hat), eps_hat = fl(eps_coeff * i).

The reference interval applies the theoretical coefficients to the exact
t in exact rational arithmetic; it is what the candidates are judged
against.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .formats import FloatFormat, format_label, resolve_format, unit_roundoff
from .rationals import ceil_rat, floor_rat, round_to_format

__all__ = [
    "UnsupportedBase",
    "ZeroDivisor",
    "InvalidSlope",
    "CandidateInterval",
    "theoretical_coefficients",
    "practical_coefficients",
    "rounded_coefficients",
    "clock_estimate",
    "emulated_clock_estimate",
    "candidate_interval",
    "reference_interval",
    "interval_deltas",
    "METHODS",
    "DEFAULT_EPS_COEFF",
]

METHODS = ("theoretical", "practical", "approximate")
DEFAULT_EPS_COEFF = Fraction(1, 10**7)

# int -> binary64 -> binary32 is a single correct rounding below this
_HW_EXACT_INT = 2**53


class UnsupportedBase(ValueError):
    """Coefficient derivations hold for base-2 formats only."""


class ZeroDivisor(ZeroDivisionError):
    """A = 0 in the clock ratio D/A."""


class InvalidSlope(ValueError):
    """Interval construction needs 0 <= D < A and i >= 0."""


@dataclass(frozen=True)
class CandidateInterval:
    """Integer range [lb, ub] guaranteed (or claimed) to contain the clock."""

    lb: int
    ub: int
    method: str
    precision: str

    def __post_init__(self) -> None:
        if self.lb > self.ub:
            raise ValueError(f"empty interval [{self.lb}, {self.ub}]")

    @property
    def width(self) -> int:
        return self.ub - self.lb


def _require_base2(fmt: FloatFormat) -> Fraction:
    if fmt.base != 2:
        raise UnsupportedBase(f"coefficients are derived for base 2, got base {fmt.base}")
    return unit_roundoff(fmt)


@functools.lru_cache(maxsize=None)
def theoretical_coefficients(fmt: FloatFormat) -> tuple[Fraction, Fraction]:
    """Exact bracket coefficients: c_lo * t <= t_hat <= c_hi * t.

    Tightest product of the five per-stage optimal bounds of the pipeline.
    """
    u = _require_base2(fmt)
    c_lo = (1 - u + 2 * u * u) / ((1 + u) ** 2 * (1 + 2 * u))
    c_hi = (1 + 2 * u) ** 3 * (1 + u - 2 * u * u) / (1 + u) ** 2
    return c_lo, c_hi


@functools.lru_cache(maxsize=None)
def practical_coefficients(fmt: FloatFormat) -> tuple[Fraction, Fraction]:
    """Loosened coefficients (1-u)/(1+2u)^3 and (1+2u)^3.

    Both are built from 1-u and 1+2u, which are exactly representable in
    the format, so the working-precision evaluation is cheap and tight.
    """
    u = _require_base2(fmt)
    cube = (1 + 2 * u) ** 3
    return (1 - u) / cube, cube


@functools.lru_cache(maxsize=None)
def rounded_coefficients(method: str, fmt: FloatFormat) -> tuple[Fraction, Fraction]:
    """Coefficients as evaluated in working precision, as exact values.

    Every operand and every intermediate is rounded to fmt, mirroring a
    float implementation.  The evaluation order is fixed so results are
    reproducible: numerator first, one division last.
    """
    u = _require_base2(fmt)
    rtf = lambda q: round_to_format(q, fmt)
    one_minus = rtf(1 - u)  # exact: (2^p - 1) * 2^-p
    w = rtf(1 + 2 * u)  # exact: (2^(p-1) + 1) * 2^(1-p)
    if method == "practical":
        c_hi = rtf(rtf(w * w) * w)
        c_lo = rtf(one_minus / c_hi)
        return c_lo, c_hi
    if method == "theoretical":
        two_usq = rtf(2 * rtf(u * u))
        one_plus = rtf(1 + u)  # rounds to 1: the tie 1 + u goes to the even side
        sq = rtf(one_plus * one_plus)
        n_lo = rtf(one_minus + two_usq)
        d_lo = rtf(sq * w)
        c_lo = rtf(n_lo / d_lo)
        cube = rtf(rtf(w * w) * w)
        n_hi = rtf(cube * rtf(one_plus - two_usq))
        c_hi = rtf(n_hi / sq)
        return c_lo, c_hi
    raise ValueError(f"no working-precision coefficients for method {method!r}")


def _validate_inputs(i: int, D: int, A: int) -> None:
    if A == 0:
        raise ZeroDivisor("A = 0")
    if i < 0 or D < 0 or A < 0:
        raise InvalidSlope(f"need i, D, A >= 0, got i={i} D={D} A={A}")
    if D >= A:
        raise InvalidSlope(f"need D < A after decomposition, got D={D} A={A}")


def clock_estimate(i: int, D: int, A: int, precision="binary32") -> float:
    """Working-precision t_hat = fl(fl(i) * fl(fl(D) / fl(A))) on hardware.

    binary32 runs on numpy float32, binary64 on the native float; both
    are correctly rounded per operation, which the emulated pipeline
    cross-checks.  Inputs beyond 2^53 fall back to the emulated route.
    """
    fmt = resolve_format(precision)
    if A == 0:
        raise ZeroDivisor("A = 0")
    if i < 0 or D < 0 or A < 0:
        raise ValueError(f"need i, D, A >= 0, got i={i} D={D} A={A}")
    if max(i, D, A) >= _HW_EXACT_INT:
        return float(emulated_clock_estimate(i, D, A, fmt))
    if fmt.base == 2 and fmt.precision == 53:
        return float(i) * (float(D) / float(A))
    if fmt.base == 2 and fmt.precision == 24:
        q = np.float32(D) / np.float32(A)
        return float(np.float32(i) * q)
    raise ValueError(f"no hardware path for {fmt}; use emulated_clock_estimate")


def emulated_clock_estimate(i: int, D: int, A: int, fmt: FloatFormat) -> Fraction:
    """Same pipeline via round_to_format; exact value of the final float."""
    if A == 0:
        raise ZeroDivisor("A = 0")
    i_r = round_to_format(Fraction(i), fmt)
    d_r = round_to_format(Fraction(D), fmt)
    a_r = round_to_format(Fraction(A), fmt)
    q = round_to_format(d_r / a_r, fmt)
    return round_to_format(i_r * q, fmt)


def _estimate_fraction(i: int, D: int, A: int, fmt: FloatFormat) -> Fraction:
    """t_hat as an exact Fraction, hardware-accelerated where possible."""
    if fmt.base == 2 and fmt.precision in (24, 53) and max(i, D, A) < _HW_EXACT_INT:
        return Fraction(clock_estimate(i, D, A, fmt))
    return emulated_clock_estimate(i, D, A, fmt)


def _as_eps(eps_coeff) -> Fraction:
    if isinstance(eps_coeff, float):
        raise TypeError(
            "eps_coeff must be exact (int, Fraction, or decimal string); "
            f"a float like {eps_coeff!r} carries binary conversion error"
        )
    return Fraction(eps_coeff)


def candidate_interval(
    i: int,
    D: int,
    A: int,
    method: str = "practical",
    precision="binary32",
    eps_coeff=DEFAULT_EPS_COEFF,
) -> CandidateInterval:
    """Integer interval for the compensated clock from the t_hat pipeline.

    Callers pass the decomposed slope: 0 <= D < A.  D = 0 yields the
    degenerate interval around t = 0.
    """
    _validate_inputs(i, D, A)
    fmt = resolve_format(precision)
    t_hat = _estimate_fraction(i, D, A, fmt)
    if method in ("theoretical", "practical"):
        c_lo, c_hi = rounded_coefficients(method, fmt)
        # floor/ceil of the exact products: re-rounding c_hi * t_hat to the
        # working grid can pull the upper bound a few integers under the
        # guarantee near t ~ 1e8 (grid spacing 8), so the last multiply is
        # kept exact and only the coefficients live on the float grid
        lb = floor_rat(c_lo * t_hat)
        ub = ceil_rat(c_hi * t_hat)
    elif method == "approximate":
        eps_hat = round_to_format(_as_eps(eps_coeff) * i, fmt)
        margin = 1 + eps_hat
        # the margin is applied exactly: rounding t_hat -/+ margin again in
        # working precision would quantize the interval ends to the float
        # grid (64 at t ~ 1e9 in binary32) and inflate the interval
        lb = floor_rat(t_hat - margin)
        ub = ceil_rat(t_hat + margin)
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return CandidateInterval(lb=lb, ub=ub, method=method, precision=format_label(fmt))


def reference_interval(i: int, D: int, A: int, fmt: FloatFormat = None) -> CandidateInterval:
    """Theoretical interval evaluated on the exact t = i*D/A.

    fmt selects whose unit roundoff the coefficients use (default binary32);
    the arithmetic itself is exact.
    """
    _validate_inputs(i, D, A)
    if fmt is None:
        fmt = resolve_format("binary32")
    c_lo, c_hi = theoretical_coefficients(fmt)
    t = Fraction(i * D, A)
    return CandidateInterval(
        lb=floor_rat(c_lo * t),
        ub=ceil_rat(c_hi * t),
        method="reference",
        precision="exact",
    )


def interval_deltas(
    candidate: CandidateInterval, reference: CandidateInterval
) -> tuple[int, int]:
    """(reference.lb - candidate.lb, candidate.ub - reference.ub).

    Positive values mean the candidate is conservative; a negative value
    means it violated the guaranteed bound on that side.
    """
    return reference.lb - candidate.lb, candidate.ub - reference.ub
