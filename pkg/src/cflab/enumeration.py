"""Enumeration and counting of words with bounded continuant.

The central counting function F(x) counts even-length words over a
fixed alphabet whose continuant is at most x.  Denominator tables
record which integers up to a bound occur as continuants at all.

Pruning rests on strict growth: appending a digit to a nonempty word
strictly increases the continuant, so a subtree can be dropped as soon
as one node exceeds the bound.  The root is special (the empty word
has continuant 1 and appending the digit 1 keeps it at 1), so every
single digit is expanded unconditionally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

from mpmath import mp

from .continuants import Alphabet, Word

try:
    import numpy as _np

    from . import _fast
except ImportError:  # pragma: no cover
    _np = None
    _fast = None

__all__ = [
    "EnumerationQuery",
    "DenominatorTable",
    "WindowReport",
    "enumerate_bounded",
    "count_FA",
    "count_words",
    "count_grid",
    "denominator_set",
    "density",
    "verify_hensley_window",
]

PARITIES = ("even", "any")


@dataclass(frozen=True)
class EnumerationQuery:
    """What to enumerate: alphabet, continuant bound, length parity."""

    alphabet: Alphabet
    bound: int
    parity: str = "even"

    def __post_init__(self) -> None:
        if not isinstance(self.bound, int) or self.bound < 1:
            raise ValueError("bound must be an integer >= 1, got %r" % (self.bound,))
        if self.parity not in PARITIES:
            raise ValueError("parity must be one of %r, got %r" % (PARITIES, self.parity))


def _fits_fast(alphabet: Alphabet, bound: int) -> bool:
    if _fast is None:
        return False
    # child values reach at most bound * (a_max + 1) before pruning
    return bound * (alphabet.a_max + 1) < 2**62


def _iter_nodes(digits: Sequence[int], maxb: int) -> Iterator[Tuple[int, int]]:
    """Yield (continuant, length) for every nonempty word with value <= maxb."""
    nd = len(digits)
    prev: List[int] = [0]
    cur: List[int] = [1]
    idx: List[int] = [0]
    depth = 0
    while depth >= 0:
        i = idx[depth]
        if i < nd:
            idx[depth] += 1
            c = cur[depth] * digits[i] + prev[depth]
            if c <= maxb:
                yield c, depth + 1
                depth += 1
                if depth == len(cur):
                    prev.append(0)
                    cur.append(0)
                    idx.append(0)
                prev[depth] = cur[depth - 1]
                cur[depth] = c
                idx[depth] = 0
        else:
            depth -= 1


def enumerate_bounded(query: EnumerationQuery) -> Iterator[Tuple[Word, int]]:
    """Yield (word, continuant) pairs in depth-first lexicographic order.

    Deterministic: digits are tried in increasing order, so the stream
    is reproducible and cacheable.
    """
    digits = query.alphabet.digits
    nd = len(digits)
    maxb = query.bound
    even_only = query.parity == "even"
    word: List[int] = []
    prev: List[int] = [0]
    cur: List[int] = [1]
    idx: List[int] = [0]
    depth = 0
    while depth >= 0:
        i = idx[depth]
        if i < nd:
            idx[depth] += 1
            d = digits[i]
            c = cur[depth] * d + prev[depth]
            if c <= maxb:
                word.append(d)
                if (not even_only) or (len(word) % 2 == 0):
                    yield tuple(word), c
                depth += 1
                if depth == len(cur):
                    prev.append(0)
                    cur.append(0)
                    idx.append(0)
                prev[depth] = cur[depth - 1]
                cur[depth] = c
                idx[depth] = 0
        else:
            if depth > 0:
                word.pop()
            depth -= 1


def count_grid(alphabet: Alphabet, xs: Sequence[int], parity: str = "even") -> Tuple[int, ...]:
    """Counts of words with continuant <= x for each grid point x.

    One tree traversal serves the whole grid.  The grid must be
    strictly increasing positive integers.
    """
    grid = list(xs)
    if not grid:
        raise ValueError("grid must not be empty")
    if any((not isinstance(x, int)) or x < 1 for x in grid):
        raise ValueError("grid entries must be integers >= 1, got %r" % (grid,))
    if any(a >= b for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing, got %r" % (grid,))
    if parity not in PARITIES:
        raise ValueError("parity must be one of %r" % (PARITIES,))
    even_only = parity == "even"
    if _fits_fast(alphabet, grid[-1]):
        buckets = _fast.count_buckets(
            _np.asarray(alphabet.digits, dtype=_np.int64),
            _np.asarray(grid, dtype=_np.int64),
            even_only,
        ).tolist()
    else:
        buckets = [0] * len(grid)
        for c, length in _iter_nodes(alphabet.digits, grid[-1]):
            if even_only and length % 2 == 1:
                continue
            for g, x in enumerate(grid):
                if c <= x:
                    buckets[g] += 1
                    break
    counts = []
    running = 0
    for b in buckets:
        running += b
        counts.append(running)
    return tuple(counts)


def count_words(alphabet: Alphabet, x: int, parity: str = "even") -> int:
    """Number of words with the given parity and continuant <= x."""
    if x < 1:
        return 0
    return count_grid(alphabet, [x], parity)[0]


def count_FA(alphabet: Alphabet, x: int) -> int:
    """The headline counter: even-length words with continuant <= x.

    count_FA(alphabet, 1) == 0 since the shortest even word has
    continuant at least 2.
    """
    return count_words(alphabet, x, "even")


@dataclass
class DenominatorTable:
    """Membership table of continuants in [1, bound]."""

    alphabet: Alphabet
    bound: int
    parity: str
    bits: bytearray = field(repr=False)

    @property
    def count(self) -> int:
        return sum(self.bits)

    def __contains__(self, n: int) -> bool:
        return 0 < n <= self.bound and self.bits[n] == 1

    def denominators(self) -> Iterator[int]:
        for n in range(1, self.bound + 1):
            if self.bits[n]:
                yield n

    def runs(self) -> List[Tuple[int, int]]:
        """Membership as inclusive (lo, hi) runs, for compact storage."""
        out: List[Tuple[int, int]] = []
        start = None
        for n in range(1, self.bound + 2):
            inside = n <= self.bound and self.bits[n] == 1
            if inside and start is None:
                start = n
            elif not inside and start is not None:
                out.append((start, n - 1))
                start = None
        return out

    @classmethod
    def from_runs(
        cls, alphabet: Alphabet, bound: int, parity: str, runs: Sequence[Tuple[int, int]]
    ) -> "DenominatorTable":
        bits = bytearray(bound + 1)
        for lo, hi in runs:
            if not (1 <= lo <= hi <= bound):
                raise ValueError("run (%r, %r) outside [1, %r]" % (lo, hi, bound))
            for n in range(lo, hi + 1):
                bits[n] = 1
        return cls(alphabet=alphabet, bound=bound, parity=parity, bits=bits)


def denominator_set(query: EnumerationQuery) -> DenominatorTable:
    """Table of the integers <= bound that occur as continuants."""
    even_only = query.parity == "even"
    if _fits_fast(query.alphabet, query.bound):
        arr = _fast.mark_denominators(
            _np.asarray(query.alphabet.digits, dtype=_np.int64),
            query.bound,
            even_only,
        )
        bits = bytearray(arr.tobytes())
    else:
        bits = bytearray(query.bound + 1)
        for c, length in _iter_nodes(query.alphabet.digits, query.bound):
            if even_only and length % 2 == 1:
                continue
            bits[c] = 1
    return DenominatorTable(
        alphabet=query.alphabet, bound=query.bound, parity=query.parity, bits=bits
    )


def density(alphabet: Alphabet, bound: int, parity: str = "any") -> Fraction:
    """Fraction of [1, bound] covered by continuants, exact."""
    table = denominator_set(EnumerationQuery(alphabet, bound, parity))
    return Fraction(table.count, bound)


@dataclass(frozen=True)
class WindowReport:
    """Two-sided check of the counting function against its growth window."""

    x: int
    shrink: int
    count_at_x: int
    count_at_shrunk: int
    delta: float
    lower_side: float
    upper_side: float
    lower_ok: bool
    window_le_total: bool
    upper_ok: bool

    @property
    def window(self) -> int:
        return self.count_at_x - self.count_at_shrunk

    @property
    def all_ok(self) -> bool:
        return self.lower_ok and self.window_le_total and self.upper_ok


def verify_hensley_window(alphabet: Alphabet, x: int, delta: float) -> WindowReport:
    """Check (x^(2 delta))/(32 A^4) <= F(x) - F(x / 4A^2) <= F(x) <= 8 x^(2 delta).

    Needs x >= 4 A^2 and delta > 1/2.  Power sides are evaluated at 50
    digits; the counts are exact.
    """
    a = alphabet.a_max
    shrink = 4 * a * a
    if x < shrink:
        raise ValueError("x must be at least 4*A^2 = %d, got %d" % (shrink, x))
    if not delta > 0.5:
        raise ValueError("delta must exceed 1/2, got %r" % (delta,))
    f_x, = count_grid(alphabet, [x], "even")
    shrunk_point = int(Fraction(x, shrink))
    f_shrunk = count_FA(alphabet, shrunk_point) if shrunk_point >= 1 else 0
    with mp.workdps(50):
        power = mp.mpf(x) ** (2 * mp.mpf(delta))
        lower_side = power / (32 * mp.mpf(a) ** 4)
        upper_side = 8 * power
        lower_ok = bool(lower_side <= (f_x - f_shrunk))
        upper_ok = bool(f_x <= upper_side)
        return WindowReport(
            x=x,
            shrink=shrink,
            count_at_x=f_x,
            count_at_shrunk=f_shrunk,
            delta=float(delta),
            lower_side=float(lower_side),
            upper_side=float(upper_side),
            lower_ok=lower_ok,
            window_le_total=(f_x - f_shrunk) <= f_x,
            upper_ok=upper_ok,
        )
