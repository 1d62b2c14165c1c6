import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cflab.continuants import Alphabet
from cflab.enumeration import EnumerationQuery, enumerate_bounded
from cflab.expsum import (
    ArcPoint,
    Spectrum,
    density_lower_bound,
    dirichlet_decompose,
    eval_S,
    kernel_S2,
    kernel_T,
    nine_domain_report,
    parseval,
    poisson_check,
    spectrum,
)

A12 = Alphabet((1, 2))


def small_spectrum():
    words = [w for w, _ in enumerate_bounded(EnumerationQuery(A12, 10, "even"))]
    return spectrum(words)


def test_spectrum_oracle():
    spec = small_spectrum()
    assert dict(spec.items()) == {2: 1, 3: 2, 5: 2, 7: 2, 8: 2, 10: 1}
    assert spec.total == 10
    assert spec.support == 6
    assert parseval(spec) == 18


def test_spectrum_from_ensemble_matches_norms(toy_ensemble):
    spec = spectrum(toy_ensemble)
    assert spec.total == toy_ensemble.size()
    assert parseval(spec) >= spec.total


def test_spectrum_validation():
    with pytest.raises(ValueError):
        Spectrum(entries={0: 1}, total=1)
    with pytest.raises(ValueError):
        Spectrum(entries={3: 0}, total=0)


def test_eval_S_at_zero_is_exact():
    spec = small_spectrum()
    val = eval_S(0.0, spec)
    assert val == complex(spec.total, 0)


def test_eval_S_triangle_bound_and_conjugacy():
    spec = small_spectrum()
    for theta in [0.1, 0.25, 1 / 3, 0.77]:
        v = eval_S(theta, spec)
        assert abs(v) <= spec.total + 1e-9
        w = eval_S(-theta, spec)
        assert cmath.isclose(v, w.conjugate(), rel_tol=1e-12, abs_tol=1e-12)


def test_parseval_equals_quadrature():
    # |S|^2 is a trig polynomial of degree max norm, so sampling past
    # the Nyquist rate integrates it exactly
    spec = small_spectrum()
    t = 2 * max(n for n, _ in spec.items()) + 1
    approx = sum(abs(eval_S(i / t, spec)) ** 2 for i in range(t)) / t
    assert abs(approx - parseval(spec)) / parseval(spec) < 1e-12


def test_parseval_counts_equal_norm_pairs():
    spec = small_spectrum()
    pairs = sum(m1 * m2 for n1, m1 in spec.items() for n2, m2 in spec.items() if n1 == n2)
    assert parseval(spec) == pairs


def test_density_lower_bound():
    spec = small_spectrum()
    bound = density_lower_bound(spec)
    assert bound == Fraction(100, 18)
    assert bound <= spec.support
    with pytest.raises(ValueError):
        density_lower_bound(Spectrum(entries={}, total=0))


def test_dirichlet_spot_values():
    for theta, want in [(0, (0, 1, 0)), (1, (1, 1, 0)), (Fraction(1, 2), (1, 2, 0))]:
        arc = dirichlet_decompose(theta, 100)
        assert (arc.a, arc.q, arc.K) == want


@given(
    num=st.integers(min_value=0, max_value=10**6),
    den=st.integers(min_value=1, max_value=10**6),
    n_scale=st.sampled_from([10**2, 10**4, 10**6]),
)
@settings(max_examples=200, deadline=None)
def test_dirichlet_constraints(num, den, n_scale):
    theta = Fraction(num % (den + 1), den) if num % (den + 1) <= den else Fraction(1)
    arc = dirichlet_decompose(theta, n_scale)
    assert math.gcd(arc.a, arc.q) == 1
    assert arc.q * arc.q <= n_scale
    assert arc.K**2 * arc.q**2 <= n_scale
    # the decomposition is exact, not rounded
    assert Fraction(arc.a, arc.q) + arc.K / n_scale == theta


def test_arcpoint_validation():
    with pytest.raises(ValueError):
        ArcPoint(a=2, q=4, K=Fraction(0), n_scale=100)  # gcd 2
    with pytest.raises(ValueError):
        ArcPoint(a=1, q=11, K=Fraction(0), n_scale=100)  # q^2 > N
    with pytest.raises(ValueError):
        ArcPoint(a=1, q=2, K=Fraction(6), n_scale=100)  # K^2 q^2 > N
    with pytest.raises(ValueError):
        ArcPoint(a=0, q=3, K=Fraction(0), n_scale=100)  # a=0 forces q=1


def test_kernels():
    assert kernel_T(0) == 1 and kernel_T(1) == 0 and kernel_T(-1) == 0
    assert kernel_T(0.5) == pytest.approx(0.5)
    assert kernel_S2(1.0) == pytest.approx(12 / math.pi**2, rel=1e-12)
    assert kernel_S2(0.0) == pytest.approx(3.0)
    xs = [i / 500 - 1 for i in range(1001)]
    assert all(kernel_S2(x) > 1 for x in xs)


@pytest.mark.parametrize("h", [2, 4])
@pytest.mark.parametrize("z", [0.0, 1 / 3])
def test_poisson_identity(h, z):
    rep = poisson_check(h, z, 10**5)
    assert rep.residual <= rep.tail_bound + 1e-8
    assert rep.ok


def test_poisson_validation():
    with pytest.raises(ValueError):
        poisson_check(0, 0.0)


def test_nine_domain_determinism():
    spec = small_spectrum()
    a = nine_domain_report(spec, n_scale=100, delta=0.54, seed=3)
    b = nine_domain_report(spec, n_scale=100, delta=0.54, seed=3)
    assert a == b
    c = nine_domain_report(spec, n_scale=100, delta=0.54, seed=4)
    assert c != a


def test_nine_domain_shape_and_ratio():
    words = [w for w, _ in enumerate_bounded(EnumerationQuery(A12, 2000, "even"))]
    spec = spectrum(words)
    rep = nine_domain_report(spec, n_scale=2000, delta=0.54, seed=7)
    assert sorted(rep["domains"]) == [str(d) for d in range(1, 10)]
    want_r = 2000 * parseval(spec) / spec.total**2
    assert rep["ratio_R"] == pytest.approx(want_r, rel=1e-12)
    assert rep["non_equidistributed"] == (rep["ratio_R"] >= 2000 / 2)
    for row in rep["domains"].values():
        assert row["samples"] >= 0
        if row["samples"]:
            assert row["max_sq"] <= spec.total**2 + 1e-9
