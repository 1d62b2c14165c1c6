"""Exponential sums over norm spectra, arcs, and smoothing kernels.

The spectrum of a word set or ensemble maps each norm to its
multiplicity.  S(theta) = sum of multiplicity * e(n theta) is a finite
trigonometric polynomial, so its mean square over [0,1] is the exact
integer sum of squared multiplicities; quadrature appears only in a
cross-check.  Arc machinery: Dirichlet decomposition theta = a/q + K/N
with minimal convergent denominator, triangle and squared-sinc kernels
with a Poisson-summation identity check, and a nine-domain (q, K)
measurement harness.  The harness measures and reports; it asserts no
inequality, since those are statements about all sufficiently large
scales.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .continuants import Word, continuant
from .ensembles import Ensemble

__all__ = [
    "Spectrum",
    "ArcPoint",
    "ArcFamily",
    "PoissonReport",
    "spectrum",
    "eval_S",
    "parseval",
    "density_lower_bound",
    "dirichlet_decompose",
    "kernel_T",
    "kernel_S",
    "kernel_S2",
    "poisson_check",
    "nine_domain_report",
]


@dataclass(frozen=True)
class Spectrum:
    """Norm -> multiplicity, with the source cardinality as total."""

    entries: Dict[int, int]
    total: int

    def __post_init__(self) -> None:
        for n, m in self.entries.items():
            if not isinstance(n, int) or n < 1:
                raise ValueError("norms must be positive integers, got %r" % (n,))
            if not isinstance(m, int) or m < 1:
                raise ValueError("multiplicities must be positive integers, got %r" % (m,))
        if self.total != sum(self.entries.values()):
            raise ValueError("total %d does not match multiplicity sum" % self.total)

    @property
    def support(self) -> int:
        return len(self.entries)

    def items(self) -> List[Tuple[int, int]]:
        return sorted(self.entries.items())


def spectrum(source: Union[Ensemble, Iterable[Word]]) -> Spectrum:
    """Multiplicity map of product norms (ensemble) or continuants (words)."""
    entries: Dict[int, int] = {}
    total = 0
    if isinstance(source, Ensemble):
        norms: Iterable[int] = source.norms()
    else:
        norms = (continuant(w) for w in source)
    for n in norms:
        entries[n] = entries.get(n, 0) + 1
        total += 1
    return Spectrum(entries=entries, total=total)


def eval_S(theta, spec: Spectrum) -> complex:
    """sum over norms of multiplicity * exp(2 pi i n theta)."""
    t = float(theta)
    if t == 0.0:
        return complex(spec.total, 0.0)
    return sum(m * cmath.exp(2j * math.pi * n * t) for n, m in spec.items())


def parseval(spec: Spectrum) -> int:
    """Exact mean square of S over [0,1]: the sum of squared multiplicities.

    Equals the number of ordered element pairs sharing a norm.
    """
    return sum(m * m for m in spec.entries.values())


def density_lower_bound(spec: Spectrum) -> Fraction:
    """total^2 / parseval, an exact lower bound for the support size."""
    if spec.total == 0:
        raise ValueError("empty spectrum has no density bound")
    bound = Fraction(spec.total**2, parseval(spec))
    if bound > spec.support:
        raise AssertionError("density bound %s exceeds support %d" % (bound, spec.support))
    return bound


@dataclass(frozen=True)
class ArcPoint:
    """theta = a/q + K/n_scale with the standard arc constraints."""

    a: int
    q: int
    K: Fraction
    n_scale: int

    def __post_init__(self) -> None:
        if self.q < 1 or not 0 <= self.a <= self.q:
            raise ValueError("need 0 <= a <= q with q >= 1, got a=%r q=%r" % (self.a, self.q))
        if math.gcd(self.a, self.q) != 1 and not (self.a == 0 and self.q == 1):
            raise ValueError("a and q must be coprime, got %r/%r" % (self.a, self.q))
        if self.a in (0, self.q) and self.q != 1:
            raise ValueError("a = 0 or a = q requires q = 1, got %r/%r" % (self.a, self.q))
        if self.q * self.q > self.n_scale:
            raise ValueError("q = %d exceeds sqrt(%d)" % (self.q, self.n_scale))
        k = Fraction(self.K)
        if k * k * self.q * self.q > self.n_scale:
            raise ValueError("|K| = %s exceeds sqrt(N)/q" % (abs(k),))

    @property
    def k_bar(self) -> Fraction:
        return max(Fraction(1), abs(Fraction(self.K)))

    @property
    def theta(self) -> Fraction:
        return Fraction(self.a, self.q) + Fraction(self.K) / self.n_scale


@dataclass(frozen=True)
class ArcFamily:
    """Arc points sharing one K/N offset, with denominators in [q_lo, q_hi]."""

    q_lo: int
    q_hi: int
    beta: Fraction
    points: Tuple[ArcPoint, ...]

    def __post_init__(self) -> None:
        for pt in self.points:
            if not self.q_lo <= pt.q <= self.q_hi:
                raise ValueError("point q=%d outside [%d, %d]" % (pt.q, self.q_lo, self.q_hi))
            if Fraction(pt.K) / pt.n_scale != self.beta:
                raise ValueError("point offset %r differs from shared beta %r" % (pt.K, self.beta))


def dirichlet_decompose(theta, n_scale: int) -> ArcPoint:
    """Write theta in [0,1] as a/q + K/N with q <= sqrt(N), |K| <= sqrt(N)/q.

    q is the smallest convergent denominator of theta satisfying
    |theta - a/q| <= 1/(q sqrt(N)); the boundary case is accepted.  All
    comparisons are exact on rationals (floats enter exactly via their
    binary value).
    """
    if n_scale < 1:
        raise ValueError("scale must be >= 1, got %r" % (n_scale,))
    f = Fraction(theta)
    if not 0 <= f <= 1:
        raise ValueError("theta must lie in [0, 1], got %r" % (theta,))
    x, y = f.numerator, f.denominator
    quotients: List[int] = []
    while y:
        a, x, y = x // y, y, x % y
        quotients.append(a)

    h_prev, k_prev = 1, 0
    h, k = quotients[0], 1
    idx = 1
    while True:
        # exact test of |f - h/k| <= 1/(k sqrt(N)): square it
        diff = f - Fraction(h, k)
        if (diff.numerator**2) * n_scale * k * k <= diff.denominator**2:
            return ArcPoint(a=h, q=k, K=diff * n_scale, n_scale=n_scale)
        if idx >= len(quotients):
            # the last convergent is theta itself with diff 0, so this
            # line is unreachable; kept as a tripwire
            raise AssertionError("no convergent of %r qualified" % (theta,))
        a = quotients[idx]
        idx += 1
        h, h_prev = a * h + h_prev, h
        k, k_prev = a * k + k_prev, k


def kernel_T(x) -> float:
    """Triangle kernel max(0, 1 - |x|)."""
    return max(0.0, 1.0 - abs(float(x)))


def kernel_S(x) -> float:
    """Squared sinc (sin(pi x)/(pi x))^2 with the continuous value 1 at 0."""
    t = float(x)
    if t == 0.0:
        return 1.0
    return (math.sin(math.pi * t) / (math.pi * t)) ** 2


def kernel_S2(x) -> float:
    """3 S(x/2); exceeds 1 everywhere on [-1, 1]."""
    return 3.0 * kernel_S(float(x) / 2.0)


@dataclass(frozen=True)
class PoissonReport:
    h: float
    z: float
    n_max: int
    lhs: float
    rhs: float
    residual: float
    tail_bound: float

    @property
    def ok(self) -> bool:
        return self.residual <= self.tail_bound + 1e-8


def poisson_check(h, z, n_max: int = 10**6) -> PoissonReport:
    """Truncated Poisson identity for the S2 kernel.

    LHS = sum over |n| <= n_max of S2(n/H) e(nz); being even in n it is
    real and computed as S2(0) + 2 sum cos.  RHS = 6H sum_k T(2(k-z)H),
    finitely many k by the triangle kernel's support.  The truncation
    tail obeys sum_{|n|>n_max} S2(n/H) <= 24 H^2 / (pi^2 n_max).
    """
    hh = float(h)
    zz = float(z)
    if hh < 1:
        raise ValueError("width H must be >= 1, got %r" % (h,))
    n = np.arange(1, n_max + 1, dtype=np.float64)
    half = n / (2.0 * hh)
    vals = 3.0 * (np.sin(math.pi * half) / (math.pi * half)) ** 2
    lhs = 3.0 + 2.0 * float(np.sum(vals * np.cos(2.0 * math.pi * zz * n)))

    k_lo = math.ceil(zz - 1.0 / (2.0 * hh))
    k_hi = math.floor(zz + 1.0 / (2.0 * hh))
    rhs = 6.0 * hh * sum(kernel_T(2.0 * (k - zz) * hh) for k in range(k_lo, k_hi + 1))

    tail = 24.0 * hh * hh / (math.pi**2 * n_max)
    return PoissonReport(
        h=hh, z=zz, n_max=n_max, lhs=lhs, rhs=rhs, residual=abs(lhs - rhs), tail_bound=tail
    )


def _domain_windows(n_scale, gamma, eps0, q0, nu):
    """(q_lo, q_hi, K_lo(q), K_hi(q)) per domain index, exponent form."""
    sqn = math.sqrt(n_scale)

    def power(expo: float) -> float:
        return float(n_scale) ** expo

    xi1 = power(2 * gamma + 6 * eps0)
    qc = xi1 ** (1.0 / (nu + 1.0))
    return {
        1: (q0, sqn, lambda q: xi1, lambda q: sqn / q),
        2: (
            power(2 * gamma + 9 * eps0),
            power(4 * gamma + 14 * eps0),
            lambda q: power(4 * gamma + 15 * eps0) / q,
            lambda q: sqn / q,
        ),
        3: (power(4 * gamma + 14 * eps0), sqn, lambda q: q0 / q, lambda q: sqn / q),
        4: (
            power(gamma + 6 * eps0),
            power(2 * gamma + 9 * eps0),
            lambda q: power(3 * gamma + 12 * eps0) / q,
            lambda q: xi1,
        ),
        5: (
            power(2 * gamma + 9 * eps0),
            power(3 * gamma + 11 * eps0),
            lambda q: power(gamma + 4 * eps0),
            lambda q: power(4 * gamma + 15 * eps0) / q,
        ),
        6: (
            xi1,
            power(4 * gamma + 14 * eps0),
            lambda q: q0 / q,
            lambda q: min(power(gamma + 6 * eps0), power(4 * gamma + 15 * eps0) / q),
        ),
        7: (
            q0,
            xi1,
            lambda q: xi1 / q,
            lambda q: min(xi1, power(3 * gamma + 12 * eps0) / q),
        ),
        8: (q0, xi1, lambda q: q0 / q, lambda q: min(q**nu, xi1 / q)),
        9: (q0, qc, lambda q: q**nu, lambda q: xi1 / q),
    }


def nine_domain_report(
    spec: Spectrum,
    n_scale: int,
    delta: float,
    eps0: float = 1e-3,
    q0: float = 1.0,
    samples_per_domain: int = 64,
    seed: int = 0,
) -> Dict[str, object]:
    """Measure |S|^2 on sampled arc points across the nine (q, K) domains.

    Domains are rectangles (in log coordinates) between exponent
    boundaries built from gamma = 1 - delta and eps0.  The literal
    lower cutoff for q and |K| q is astronomically large, so a
    configurable stand-in q0 (default 1) takes its place and is
    recorded.  Overlapping regions are resolved by first match in
    domain order.  Sampling is log-uniform with a fixed seed; empty
    windows at small scales simply report zero samples.  Also reports
    R = N * parseval / total^2 and flags R >= N/2 as
    non-equidistributed (a one-norm spectrum hits R = N exactly).
    """
    if spec.total == 0:
        raise ValueError("empty spectrum")
    gamma = 1.0 - float(delta)
    nu = (math.sqrt(369) - 7.0) / 20.0
    windows = _domain_windows(n_scale, gamma, eps0, q0, nu)
    rng = random.Random(seed)
    sqn = isqrt(n_scale)

    domains: Dict[str, Dict[str, object]] = {}
    for d in range(1, 10):
        q_lo, q_hi, k_lo_fn, k_hi_fn = windows[d]
        q_min = max(1, math.floor(q_lo) + 1)
        q_max = min(math.floor(q_hi), sqn)
        row: Dict[str, object] = {
            "q_window": [float(q_lo), float(q_hi)],
            "samples": 0,
            "sum_sq": 0.0,
            "max_sq": 0.0,
        }
        if q_max >= q_min:
            total_sq = 0.0
            max_sq = 0.0
            got = 0
            for _ in range(samples_per_domain):
                u = rng.random()
                q = round(math.exp(math.log(q_min) + u * (math.log(q_max) - math.log(q_min))))
                q = min(max(q, q_min), q_max)
                k_lo = max(k_lo_fn(q), 1e-12)
                k_hi = min(k_hi_fn(q), sqn / q)
                if k_hi < k_lo:
                    continue
                v = rng.random()
                k_abs = math.exp(math.log(k_lo) + v * (math.log(k_hi) - math.log(k_lo)))
                sign = 1 if rng.random() < 0.5 else -1
                if q == 1:
                    a = rng.choice([0, 1])
                else:
                    a = rng.randrange(1, q)
                    while math.gcd(a, q) != 1:
                        a = rng.randrange(1, q)
                theta = a / q + sign * k_abs / n_scale
                val = abs(eval_S(theta, spec)) ** 2
                got += 1
                total_sq += val
                max_sq = max(max_sq, val)
            row["samples"] = got
            row["sum_sq"] = total_sq
            row["max_sq"] = max_sq
            row["mean_sq"] = total_sq / got if got else 0.0
        else:
            row["mean_sq"] = 0.0
        domains[str(d)] = row

    par = parseval(spec)
    ratio = n_scale * par / spec.total**2
    report: Dict[str, object] = {
        "n_scale": int(n_scale),
        "delta": float(delta),
        "gamma": gamma,
        "eps0": float(eps0),
        "q0": float(q0),
        "nu": nu,
        "seed": int(seed),
        "samples_per_domain": int(samples_per_domain),
        "total": spec.total,
        "parseval": par,
        "support": spec.support,
        "ratio_R": ratio,
        "non_equidistributed": bool(ratio >= n_scale / 2),
        "exponents": {
            "xi1": 2 * gamma + 6 * eps0,
            "q_d2_lo": 2 * gamma + 9 * eps0,
            "q_d2_hi": 4 * gamma + 14 * eps0,
            "k_d2_lo_over_q": 4 * gamma + 15 * eps0,
            "q_d4_lo": gamma + 6 * eps0,
            "k_d4_lo_over_q": 3 * gamma + 12 * eps0,
            "q_d5_hi": 3 * gamma + 11 * eps0,
            "k_d5_lo": gamma + 4 * eps0,
            "nu": nu,
        },
        "domains": domains,
    }
    return report
