"""Numba kernels for the hot loops.

Importing this module raises ImportError when numba is absent; callers
guard the import and fall back to pure-Python paths that produce
identical results.  Kernels stay in int64, so dispatchers must check
that intermediate values fit (see enumeration._fits_fast).
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def count_buckets(digits: np.ndarray, grid: np.ndarray, even_only: bool) -> np.ndarray:
    """Bucket counts of words by continuant over a sorted grid.

    out[g] counts words whose continuant c satisfies grid[g-1] < c <= grid[g]
    (with grid[-1] read as 0).  Depth-first over the word tree; a child
    is pruned as soon as its continuant exceeds grid[-1].
    """
    nd = digits.shape[0]
    ng = grid.shape[0]
    out = np.zeros(ng, dtype=np.int64)
    maxb = grid[ng - 1]
    cap = 128
    prev = np.zeros(cap, dtype=np.int64)
    cur = np.zeros(cap, dtype=np.int64)
    idx = np.zeros(cap, dtype=np.int64)
    prev[0] = 0
    cur[0] = 1
    idx[0] = 0
    depth = 0
    while depth >= 0:
        i = idx[depth]
        if i < nd:
            idx[depth] += 1
            c = cur[depth] * digits[i] + prev[depth]
            if c <= maxb:
                if (not even_only) or ((depth + 1) % 2 == 0):
                    for g in range(ng):
                        if c <= grid[g]:
                            out[g] += 1
                            break
                depth += 1
                prev[depth] = cur[depth - 1]
                cur[depth] = c
                idx[depth] = 0
        else:
            depth -= 1
    return out


@njit(cache=True)
def mark_denominators(digits: np.ndarray, bound: int, even_only: bool) -> np.ndarray:
    """0/1 table over [0, bound]: which integers occur as continuants."""
    nd = digits.shape[0]
    out = np.zeros(bound + 1, dtype=np.uint8)
    cap = 128
    prev = np.zeros(cap, dtype=np.int64)
    cur = np.zeros(cap, dtype=np.int64)
    idx = np.zeros(cap, dtype=np.int64)
    prev[0] = 0
    cur[0] = 1
    idx[0] = 0
    depth = 0
    while depth >= 0:
        i = idx[depth]
        if i < nd:
            idx[depth] += 1
            c = cur[depth] * digits[i] + prev[depth]
            if c <= bound:
                if (not even_only) or ((depth + 1) % 2 == 0):
                    out[c] = 1
                depth += 1
                prev[depth] = cur[depth - 1]
                cur[depth] = c
                idx[depth] = 0
        else:
            depth -= 1
    return out


@njit(cache=True)
def quotient_sums(bmax: int) -> np.ndarray:
    """out[b] = sum of s(a/b) over 1 <= a <= b with gcd(a, b) = 1.

    s(a/b) is the sum of the canonical partial quotients of a/b, equal
    to the number of subtractive Euclid steps.  Plain Euclid on (b, a)
    produces the canonical quotients and its last nonzero remainder is
    the gcd, so one pass yields both.
    """
    out = np.zeros(bmax + 1, dtype=np.int64)
    for b in range(1, bmax + 1):
        tot = np.int64(0)
        for a in range(1, b + 1):
            x = b
            y = a
            s = np.int64(0)
            while y > 0:
                q = x // y
                s += q
                r = x - q * y
                x = y
                y = r
            if x == 1:
                tot += s
        out[b] = tot
    return out
