import math

import pytest
from mpmath import mp

from cflab.continuants import Alphabet
from cflab.dimension import estimate_delta, hensley_formula, threshold_check

A12 = Alphabet((1, 2))


def test_synthetic_power_law_recovered_exactly():
    grid = (100, 1000, 10000, 100000)
    counts = tuple(round(x**1.7) for x in grid)
    est = estimate_delta(Alphabet((1, 5)), grid, counts)
    # counts are rounded to integers, which moves the fit a little
    assert abs(est.slope - 1.7) < 1e-4
    assert abs(est.delta - 0.85) < 1e-4
    assert est.stderr < 1e-4


def test_known_small_alphabet_exponent():
    est = estimate_delta(A12, (100, 1000, 10000))
    # the {1,2} digit set has dimension 0.5312805...
    assert 0.51 < est.delta < 0.55
    assert est.counts[-1] > est.counts[0] > 0
    assert est.stderr < 0.01


def test_estimate_validation():
    with pytest.raises(ValueError):
        estimate_delta(A12, (100, 1000))  # need 3 points
    with pytest.raises(ValueError):
        estimate_delta(A12, (1000, 100, 10000))
    with pytest.raises(ValueError):
        estimate_delta(A12, (4, 100, 1000))  # first point below 4 A^2
    with pytest.raises(ValueError):
        estimate_delta(A12, (100, 1000, 10000), (10, 0, 50))


def test_degenerate_fit_guard():
    # {1,2} is in the scope where the exponent must exceed 1/2; flat
    # counts would put the fitted value at 0 and must be refused
    with pytest.raises(ValueError):
        estimate_delta(A12, (100, 1000, 10000), (7, 7, 7))


def test_hensley_closed_form():
    got = hensley_formula(50)
    with mp.workdps(50):
        want = 1 - 6 / (mp.pi**2 * 50) - 72 * mp.log(50) / (mp.pi**4 * 50**2)
    assert abs(got - want) < mp.mpf(10) ** -40
    assert float(hensley_formula(2)) < float(hensley_formula(3)) < 1
    with pytest.raises(ValueError):
        hensley_formula(1)


def test_threshold_cutoff_values():
    v = threshold_check(0.9)
    assert abs(float(v.cutoff_classical) - (1 - 5 / 312)) < 1e-12
    assert abs(float(v.cutoff_improved) - (1 - (27 - math.sqrt(633)) / 16)) < 1e-12
    assert abs(float(v.cutoff_refined) - (1 - 25 / (114 + 2 * math.sqrt(2274)))) < 1e-12
    # cutoffs are ordered: refined below improved below classical
    assert v.cutoff_refined < v.cutoff_improved < v.cutoff_classical


def test_threshold_verdicts():
    v = threshold_check(0.8889)
    assert (v.above_classical, v.above_improved, v.above_refined) == (False, True, True)
    v = threshold_check(0.8849)
    assert (v.above_classical, v.above_improved, v.above_refined) == (False, False, True)
    v = threshold_check(0.99)
    assert (v.above_classical, v.above_improved, v.above_refined) == (True, True, True)
    v = threshold_check(0.5)
    assert (v.above_classical, v.above_improved, v.above_refined) == (False, False, False)
