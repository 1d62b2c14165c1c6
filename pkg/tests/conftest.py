"""Shared fixtures.

The expensive enumeration counts (alphabets up to {1..7} at bounds up
to 1e5) are computed once per session and shared between the dimension
fit and the counting-window checks.
"""

from __future__ import annotations

import random

import pytest

from cflab.continuants import Alphabet
from cflab.dimension import estimate_delta
from cflab.enumeration import count_grid

FIT_GRID = (10**3, 10**4, 10**5)


@pytest.fixture(scope="session")
def fitted_deltas():
    """label -> (alphabet, counts on FIT_GRID, fitted delta)."""
    out = {}
    for top in range(2, 8):
        alpha = Alphabet(tuple(range(1, top + 1)))
        counts = tuple(count_grid(alpha, FIT_GRID))
        est = estimate_delta(alpha, FIT_GRID, counts)
        out[alpha.label()] = (alpha, counts, est.delta)
    return out


@pytest.fixture(scope="session")
def word_corpus():
    """10,000 seeded random word pairs over {1..7}, lengths 1..20."""
    rng = random.Random(20260817)
    pairs = []
    for _ in range(10_000):
        left = tuple(rng.randint(1, 7) for _ in range(rng.randint(1, 20)))
        right = tuple(rng.randint(1, 7) for _ in range(rng.randint(1, 20)))
        pairs.append((left, right))
    return pairs


@pytest.fixture(scope="session")
def toy_ensemble():
    from cflab.ensembles import ConstantsMode, build_omega

    return build_omega(10**11, 0.5, Alphabet((1, 2)), ConstantsMode("relaxed", {"J": 1}))
