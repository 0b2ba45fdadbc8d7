"""Sample generation and table-style statistics for the two experiments.

One experiment compares candidate intervals against the exact reference
(bound deltas), the other compares compensated clocks against the
binary64 floor baseline (errors and iteration counts).  Samples draw a
skew uniformly from a lattice with 1e-9 ppm steps, which keeps every
draw an exact rational and makes runs reproducible from the seed alone.

Distinct (D, A) pairs are evaluated once and weighted by multiplicity:
with the default 100 ppm range there are only 201 possible A values, so
this turns desk-scale sample counts into a few hundred evaluations.
"""

from __future__ import annotations

import os
import random
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Sequence

from .bounds import DEFAULT_EPS_COEFF, candidate_interval, interval_deltas, reference_interval
from .compensator import compensate, naive_compensate
from .formats import format_label, resolve_format

__all__ = [
    "ClockSample",
    "StatSummary",
    "BoundsRow",
    "CompRow",
    "generate_samples",
    "bounds_experiment",
    "compensation_experiment",
    "TABLE2_CONFIGS",
    "TABLE3_ALGORITHMS",
    "DEFAULT_I_LIST",
    "DEFAULT_D",
    "DEFAULT_N",
    "DEFAULT_SEED",
    "DEFAULT_RANGE_PPM",
]

DEFAULT_D = 10**6
DEFAULT_N = 10**5
DEFAULT_SEED = 42
DEFAULT_RANGE_PPM = 100
DEFAULT_I_LIST = (10**6, 10**7, 10**8, 10**9)

TABLE2_CONFIGS = (
    ("theoretical", "binary64"),
    ("theoretical", "binary32"),
    ("practical", "binary32"),
    ("approximate", "binary32"),
)

TABLE3_ALGORITHMS = (
    ("naive", "binary32"),
    ("practical", "binary32"),
    ("approximate", "binary32"),
)

# ppm values live on a lattice with this many steps per ppm
_PPM_STEPS = 10**9


@dataclass(frozen=True)
class ClockSample:
    """One draw: D reference ticks vs A local ticks per interval."""

    D: int
    A: int
    skew_ppm: Fraction


@dataclass(frozen=True)
class StatSummary:
    min: int
    max: int
    avg: Fraction
    count: int


@dataclass(frozen=True)
class BoundsRow:
    method: str
    precision: str
    i: int
    dlb: StatSummary
    dub: StatSummary


@dataclass(frozen=True)
class CompRow:
    algorithm: str
    precision: str
    i: int
    err: StatSummary
    iterations: StatSummary
    violations: int


def generate_samples(
    seed: int,
    n: int,
    D: int = DEFAULT_D,
    range_ppm: Rational = DEFAULT_RANGE_PPM,
) -> list[ClockSample]:
    """n samples with A = round-half-up(D * (1 + skew_ppm * 1e-6)).

    Deterministic for a fixed seed; draws use the stdlib Mersenne
    Twister, whose integer methods are stable across Python versions.
    """
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    if D <= 0:
        raise ValueError(f"need D > 0, got {D}")
    limit = Fraction(range_ppm) * _PPM_STEPS
    if limit < 0 or limit.denominator != 1:
        raise ValueError(f"range_ppm must be a nonnegative multiple of 1e-9, got {range_ppm}")
    reach = int(limit)
    rng = random.Random(seed)
    scale = _PPM_STEPS * 10**6  # lattice steps per unit of skew
    samples = []
    for _ in range(n):
        m = rng.randint(-reach, reach)
        A = (2 * (D * scale + D * m) + scale) // (2 * scale)
        samples.append(ClockSample(D=D, A=A, skew_ppm=Fraction(m, _PPM_STEPS)))
    return samples


def _decompose(D: int, A: int) -> int:
    """delta_b for the slope delta_b/A with delta_b < A."""
    if D == A:
        return 0
    return D if D < A else D - A


def _thread_count() -> int:
    raw = os.environ.get("SKEWCOMP_THREADS", "1")
    try:
        count = int(raw)
    except ValueError:
        raise ValueError(f"SKEWCOMP_THREADS must be an integer, got {raw!r}") from None
    return max(count, 1)


def _map_cases(fn: Callable, cases: Sequence) -> list:
    threads = _thread_count()
    if threads > 1 and len(cases) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, cases))
    return [fn(case) for case in cases]


def _collect(values_weights: Iterable[tuple[int, int]]) -> StatSummary:
    vmin = vmax = None
    total = 0
    count = 0
    for value, weight in values_weights:
        if vmin is None or value < vmin:
            vmin = value
        if vmax is None or value > vmax:
            vmax = value
        total += value * weight
        count += weight
    if count == 0:
        raise ValueError("no values to summarize")
    return StatSummary(min=vmin, max=vmax, avg=Fraction(total, count), count=count)


def _case_counts(samples: Sequence[ClockSample]) -> tuple[list, Counter]:
    if not samples:
        raise ValueError("samples must be nonempty")
    counts = Counter((s.D, s.A) for s in samples)
    return sorted(counts), counts


def bounds_experiment(
    samples: Sequence[ClockSample],
    i_list: Sequence[int] = DEFAULT_I_LIST,
    configs: Sequence[tuple[str, str]] = TABLE2_CONFIGS,
    eps_coeff=DEFAULT_EPS_COEFF,
) -> list[BoundsRow]:
    """Bound deltas per (method, precision, i) over the sample set.

    Case 2 samples (D > A) are decomposed to the remainder slope for the
    candidate and the reference alike, so deltas compare like with like.
    """
    cases, counts = _case_counts(samples)
    rows = []
    for method, precision in configs:
        fmt = resolve_format(precision)

        def deltas_for(case, i):
            D, A = case
            db = _decompose(D, A)
            cand = candidate_interval(i, db, A, method, precision, eps_coeff)
            ref = reference_interval(i, db, A, fmt)
            return interval_deltas(cand, ref)

        for i in i_list:
            pairs = _map_cases(lambda case, i=i: deltas_for(case, i), cases)
            weights = [counts[case] for case in cases]
            rows.append(
                BoundsRow(
                    method=method,
                    precision=format_label(fmt),
                    i=i,
                    dlb=_collect((d[0], w) for d, w in zip(pairs, weights)),
                    dub=_collect((d[1], w) for d, w in zip(pairs, weights)),
                )
            )
    return rows


def compensation_experiment(
    samples: Sequence[ClockSample],
    i_list: Sequence[int] = DEFAULT_I_LIST,
    algorithms: Sequence[tuple[str, str]] = TABLE3_ALGORITHMS,
    eps_coeff=DEFAULT_EPS_COEFF,
) -> list[CompRow]:
    """Compensation error and iteration stats per (algorithm, i).

    err = floor(t_hat in binary64) - j, so err = 0 means agreement with
    the double-precision floor baseline.  Interval misses are counted in
    violations, never silently dropped.
    """
    cases, counts = _case_counts(samples)
    baseline = {
        (i, case): naive_compensate(i, case[0], case[1], "binary64")
        for i in i_list
        for case in cases
    }
    rows = []
    for algorithm, precision in algorithms:
        label = format_label(resolve_format(precision))

        def outcome_for(case, i):
            D, A = case
            if algorithm == "naive":
                j = naive_compensate(i, D, A, precision)
                iters, violated = 0, False
            else:
                res = compensate(i, D, A, algorithm, precision, eps_coeff)
                j, iters, violated = res.j, res.iterations, res.bounds_violated
            return baseline[(i, (D, A))] - j, iters, violated

        for i in i_list:
            outcomes = _map_cases(lambda case, i=i: outcome_for(case, i), cases)
            weights = [counts[case] for case in cases]
            rows.append(
                CompRow(
                    algorithm=algorithm,
                    precision=label,
                    i=i,
                    err=_collect((o[0], w) for o, w in zip(outcomes, weights)),
                    iterations=_collect((o[1], w) for o, w in zip(outcomes, weights)),
                    violations=sum(w for o, w in zip(outcomes, weights) if o[2]),
                )
            )
    return rows
