"""Growth-exponent estimation for bounded-continuant counts.

The even-length count F(x) grows like x^(2 delta) where delta is the
Hausdorff dimension of the set of irrationals whose partial quotients
stay in the alphabet.  A least-squares fit of log F against log x over
a grid estimates delta; a closed-form approximation and the three
dimension cutoffs used downstream live here as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from mpmath import mp

from .continuants import Alphabet
from .enumeration import count_grid

__all__ = [
    "DimensionEstimate",
    "ThresholdVerdict",
    "estimate_delta",
    "hensley_formula",
    "threshold_check",
]


@dataclass(frozen=True)
class DimensionEstimate:
    alphabet: Alphabet
    grid: Tuple[int, ...]
    counts: Tuple[int, ...]
    slope: float
    intercept: float
    delta: float
    stderr: float


def estimate_delta(
    alphabet: Alphabet,
    grid: Sequence[int],
    counts: Optional[Sequence[int]] = None,
) -> DimensionEstimate:
    """Fit log F(x) = slope * log x + intercept and return delta = slope / 2.

    The grid must be strictly increasing with at least three points and
    start at or above 4 A^2 so the window analysis applies.  counts may
    be passed in when the caller already enumerated (they are checked
    for length only); otherwise one traversal computes all of them.
    stderr is the usual residual-based standard error of the slope,
    halved along with it.
    """
    xs = [int(x) for x in grid]
    if len(xs) < 3:
        raise ValueError("need at least three grid points, got %d" % len(xs))
    if any(a >= b for a, b in zip(xs, xs[1:])):
        raise ValueError("grid must be strictly increasing, got %r" % (xs,))
    floor = 4 * alphabet.a_max ** 2
    if xs[0] < floor:
        raise ValueError("grid must start at or above 4*A^2 = %d, got %d" % (floor, xs[0]))
    if counts is None:
        counts = count_grid(alphabet, xs, "even")
    counts = [int(c) for c in counts]
    if len(counts) != len(xs):
        raise ValueError("counts length %d does not match grid length %d" % (len(counts), len(xs)))
    if any(c <= 0 for c in counts):
        raise ValueError("zero count in grid %r; raise the smallest point" % (xs,))

    lx = [math.log(x) for x in xs]
    ly = [math.log(c) for c in counts]
    n = len(xs)
    mx = sum(lx) / n
    my = sum(ly) / n
    sxx = sum((u - mx) ** 2 for u in lx)
    sxy = sum((u - mx) * (v - my) for u, v in zip(lx, ly))
    slope = sxy / sxx
    intercept = my - slope * mx
    residuals = [v - (slope * u + intercept) for u, v in zip(lx, ly)]
    sse = sum(r * r for r in residuals)
    slope_se = math.sqrt(sse / ((n - 2) * sxx))
    delta = slope / 2.0

    if 1 in alphabet.digits and 2 in alphabet.digits and delta <= 0.5:
        raise ValueError(
            "fitted delta %.4f <= 1/2 for an alphabet containing 1 and 2; "
            "the grid is too coarse or the counts are wrong" % delta
        )
    return DimensionEstimate(
        alphabet=alphabet,
        grid=tuple(xs),
        counts=tuple(counts),
        slope=slope,
        intercept=intercept,
        delta=delta,
        stderr=slope_se / 2.0,
    )


def hensley_formula(a: int):
    """Closed-form dimension approximation for the full alphabet {1..a}.

    Returns 1 - 6/(pi^2 a) - 72 ln(a) / (pi^4 a^2) as an mpmath float
    at 50 digits.  The dropped remainder is of order 1/a^2, so for
    small a this is a guide, not a truth source.
    """
    if not isinstance(a, int) or a < 2:
        raise ValueError("alphabet size must be an integer >= 2, got %r" % (a,))
    with mp.workdps(50):
        aa = mp.mpf(a)
        return 1 - 6 / (mp.pi**2 * aa) - 72 * mp.log(aa) / (mp.pi**4 * aa**2)


@dataclass(frozen=True)
class ThresholdVerdict:
    """Which of the three nested dimension cutoffs a value clears.

    The cutoffs decrease, so each later flag is implied by the earlier
    one being true.  gamma = 1 - delta is echoed since the downstream
    exponent bookkeeping runs on it.
    """

    delta: float
    gamma: float
    cutoff_classical: float
    cutoff_improved: float
    cutoff_refined: float
    above_classical: bool
    above_improved: bool
    above_refined: bool


def threshold_check(delta) -> ThresholdVerdict:
    """Compare delta against the three cutoffs, computed from radicals.

    Cutoffs at 60 digits: 1 - 5/312, then 1 - (27 - sqrt(633))/16,
    then 1 - 25/(114 + 2 sqrt(2274)).  Printed decimals are never used.
    """
    with mp.workdps(60):
        d = mp.mpf(delta)
        t_classical = 1 - mp.mpf(5) / 312
        t_improved = 1 - (27 - mp.sqrt(633)) / 16
        t_refined = 1 - 25 / (114 + 2 * mp.sqrt(2274))
        return ThresholdVerdict(
            delta=float(d),
            gamma=float(1 - d),
            cutoff_classical=float(t_classical),
            cutoff_improved=float(t_improved),
            cutoff_refined=float(t_refined),
            above_classical=bool(d > t_classical),
            above_improved=bool(d > t_improved),
            above_refined=bool(d > t_refined),
        )
