import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cflab.dedekind import (
    NEAR_ZERO_C,
    V,
    calibrate_c,
    congruence_count_check,
    ded_bound_check,
    ded_sweep,
    knuth_yao_max_ratio,
    knuth_yao_ratio,
    near_zero_pair_count,
    quotient_sum,
    rho,
    s_alpha,
    sawtooth_sum,
    v_reduction_remainder,
)

fractions_st = st.fractions(min_value=-20, max_value=20, max_denominator=97)


def test_rho_base_values():
    assert rho(0) == 0
    assert rho(5) == 0
    assert rho(Fraction(1, 4)) == Fraction(1, 4)
    assert rho(Fraction(3, 4)) == Fraction(-1, 4)


@given(fractions_st)
def test_rho_periodic_and_odd(x):
    assert rho(x + 1) == rho(x)
    assert rho(-x) == -rho(x)
    assert abs(rho(x)) < Fraction(1, 2)


@given(
    q=st.integers(min_value=1, max_value=40),
    p=st.integers(min_value=1, max_value=40),
    j=st.integers(min_value=0, max_value=59),
)
@settings(max_examples=150, deadline=None)
def test_sawtooth_distribution_identity(q, p, j):
    if math.gcd(p, q) != 1:
        return
    x = Fraction(j, 60)
    assert sawtooth_sum(p, q, x) == rho(q * x)


def test_sawtooth_hand_values():
    assert sawtooth_sum(1, 3, Fraction(1, 6)) == 0
    assert sawtooth_sum(1, 2, Fraction(1, 8)) == Fraction(1, 4)


def test_V_hand_value_and_symmetry():
    assert V(5, 2, 1) == Fraction(1, 20)
    assert V(5, 2, -1) == Fraction(1, 20)
    for p2 in (7, 12, 13):
        for c in range(1, p2):
            if math.gcd(c, p2) != 1:
                continue
            for z in range(0, p2 + 1):
                assert V(p2, c, z) == V(p2, c, -z)


def test_V_validation():
    with pytest.raises(ValueError):
        V(10, 5, 0)  # gcd 5
    with pytest.raises(ValueError):
        V(5, 5, 0)
    with pytest.raises(ValueError):
        V(5, 0, 0)


def test_reduction_remainder_small_grid():
    assert v_reduction_remainder(5, 2, 1) == Fraction(-1, 20)
    for p2 in (5, 8, 9, 11):
        for c in range(1, p2):
            if math.gcd(c, p2) != 1:
                continue
            for z in range(0, p2 + 1):
                assert abs(v_reduction_remainder(p2, c, z)) <= 1


def test_near_zero_oracle_and_preconditions():
    assert near_zero_pair_count(1, 1, 10, 20) == 1
    with pytest.raises(ValueError, match="size"):
        near_zero_pair_count(3, 5, 10, 20)  # 3 not < 2
    with pytest.raises(ValueError, match="coprimality"):
        near_zero_pair_count(2, 4, 10, 100)
    with pytest.raises(ValueError, match="window"):
        near_zero_pair_count(1, 1, 10, 0)
    with pytest.raises(ValueError, match="range"):
        near_zero_pair_count(1, 1, 0, 20)


def test_bound_report_structure():
    rep = ded_bound_check(1, 3, 97, 50)
    assert rep.lhs == near_zero_pair_count(1, 3, 97, 50)
    assert rep.slack == rep.rhs - rep.lhs
    assert rep.c_const == NEAR_ZERO_C


def test_frozen_constant_closes_prime_calibration_grid():
    # the value frozen in code must dominate the worst case it was
    # calibrated against (small primes keep this test quick)
    worst = calibrate_c([97, 211], [50, 100])
    assert NEAR_ZERO_C >= worst


def test_sweep_is_nonnegative_on_composites():
    rows = ded_sweep([100, 250], [50, 100])
    assert rows and all(row.slack >= 0 for row in rows)


def test_s_alpha_values():
    assert [s_alpha(a, 5) for a in (1, 2, 3, 4)] == [5, 4, 4, 5]
    assert s_alpha(3, 7) == 5
    assert s_alpha(1, 1) == 1
    assert quotient_sum(5) == 18
    with pytest.raises(ValueError):
        s_alpha(2, 4)
    with pytest.raises(ValueError):
        s_alpha(5, 3)


def test_knuth_yao_ratio():
    assert knuth_yao_ratio(2) == pytest.approx(2 / (2 * math.log(2) ** 2))
    best, at = knuth_yao_max_ratio(100)
    assert at == 2
    assert best == pytest.approx(knuth_yao_ratio(2))


def test_quotient_sum_matches_fast_kernel():
    numba = pytest.importorskip("numba")
    from cflab import _fast

    sums = _fast.quotient_sums(60)
    for b in range(2, 61):
        assert sums[b] == quotient_sum(b)


def test_congruence_count():
    count, expected, ratio = congruence_count_check(3, 7, 5, 6)
    assert count == 5
    assert expected == Fraction(30, 7)
    brute = sum(
        1
        for x3 in range(1, 6)
        for x4 in range(1, 7)
        if (x3 - 3 * x4) % 7 == 0
    )
    assert count == brute
    assert ratio > 0
