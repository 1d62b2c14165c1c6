import warnings

import pytest

from cflab.continuants import Alphabet, continuant
from cflab.ensembles import (
    ConstantsMode,
    InfeasibleParameters,
    NoSplitWindow,
    PreEnsemble,
    ScheduleTooShort,
    build_omega,
    build_xi,
    fibonacci_index,
    golden_ratio_check,
    measure_norm_windows,
    schedule,
    split,
    verify_split_reconstruction,
    verify_unique_expansion,
)

A12 = Alphabet((1, 2))
RELAXED = ConstantsMode("relaxed", {})


def test_constants_mode_rules():
    m = ConstantsMode("relaxed", {"J": 3})
    assert not m.literal
    assert m.get("J", 7) == 3
    assert m.get("other", 7) == 7
    assert any("J=3" in line for line in m.applied)
    with pytest.raises(ValueError):
        ConstantsMode("literal", {"J": 3})
    ConstantsMode("literal", {"A": 4, "delta": 0.9})  # allowed knobs
    with pytest.raises(ValueError):
        ConstantsMode("strict", {})


def test_fibonacci_index_known_points():
    assert fibonacci_index(10**6) == 5
    # index never decreases with scale
    vals = [fibonacci_index(10**k) for k in range(1, 12)]
    assert vals == sorted(vals)


def test_schedule_toy_levels_exact():
    s = schedule(10**6, 0.5, ConstantsMode("relaxed", {"J": 1}))
    assert s.depth == 1
    lv = {j: float(s.level(j)) for j in s.levels}
    assert lv[1] == pytest.approx(10**4, rel=1e-12)
    assert lv[0] == pytest.approx(100, rel=1e-12)
    assert lv[-1] == pytest.approx(10, rel=1e-12)
    assert lv[2] == 10**6
    rep = s.identity_report()
    for key, val in rep.items():
        if key.endswith("rel_err"):
            assert val <= 1e-12, key
    assert rep["floor_min_slack"] >= -1e-12


def test_schedule_errors():
    with pytest.raises(ScheduleTooShort):
        schedule(1000, 0.5, RELAXED)  # J formula is negative here
    with pytest.raises(ValueError):
        schedule(10**6, 1.5, RELAXED)
    with pytest.raises(ValueError):
        schedule(10**6, 0.01, ConstantsMode("literal", {}))  # eps too big for literal


def test_build_xi_structure():
    xi = build_xi(3359, A12, RELAXED)
    assert xi.p >= 1 and xi.k >= 2 * xi.p
    s1, s2, s3, s4 = xi.stage_sizes
    assert s1 >= s2 >= s3 >= s4 == len(xi.members) > 0
    ones = (1,) * xi.p
    for w in xi.members:
        assert len(w) == xi.k and len(w) % 2 == 0
        assert w[: xi.p] == ones and w[-xi.p :] == ones
        assert xi.shell_lo <= continuant(w) <= xi.shell_top
    assert xi.shell_top <= xi.m_scale
    assert xi.shell_lo >= xi.shell_top * (1 - 1.0 / __import__("math").log(xi.shell_top)) - 1


def test_build_xi_requires_ones():
    with pytest.raises(ValueError):
        build_xi(1000, Alphabet((2, 3)), RELAXED)


def test_build_xi_reports_empty_padding_stage():
    # forcing a huge ones padding empties the second stage (p = 8 still
    # admits the all-ones word of length 8, so go one further)
    with pytest.raises(InfeasibleParameters) as exc:
        build_xi(40, A12, ConstantsMode("relaxed", {"p": 9}))
    assert exc.value.stage == "ones-padding"


def test_toy_ensemble_shape(toy_ensemble):
    ens = toy_ensemble
    assert len(ens.layers) == 2 * ens.schedule.depth + 1 == 3
    sizes = [len(l.pre.members) for l in ens.layers]
    assert all(s >= 5 for s in sizes)
    assert ens.size() == sizes[0] * sizes[1] * sizes[2]
    for lay in ens.layers:
        assert 1.0 / (64 * A12.a_max**2) - 1e-12 <= lay.alpha <= 1 + 1e-12


def test_unique_expansion(toy_ensemble):
    products, distinct = verify_unique_expansion(toy_ensemble)
    assert products == distinct == toy_ensemble.size()


def test_norm_windows(toy_ensemble):
    rows = measure_norm_windows(toy_ensemble)
    assert len(rows) == 3
    for row in rows:
        assert row["low_ok"] and row["high_ok"]


def test_golden_ratio_reports(toy_ensemble):
    for lay in toy_ensemble.layers:
        rep = golden_ratio_check(lay.pre, RELAXED)
        assert not rep.skipped
        assert rep.mechanism_ok
        assert max(rep.max_dev_tail, rep.max_dev_head) <= rep.mechanism_bound


def test_golden_ratio_skips_without_padding():
    bare = PreEnsemble(
        alphabet=A12,
        m_scale=100.0,
        window_lo=1.0,
        p=0,
        shell_top=50,
        shell_lo=40,
        k=4,
        members=((2, 1, 1, 2),),
        stage_sizes=(1, 1, 1, 1),
        shells=(),
        checks={},
    )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rep = golden_ratio_check(bare, RELAXED)
    assert rep.skipped
    assert any("skipped" in str(w.message) for w in caught)


def test_split_toy(toy_ensemble):
    ens = toy_ensemble
    m = float(ens.schedule.level(0))
    cut = split(ens, m, RELAXED)
    assert cut.j_left + cut.h_right == 2 * ens.schedule.depth + 1
    assert cut.window_flags["left"] and cut.window_flags["right_tail"]
    assert cut.level_window_ok
    assert not cut.eligible_literal  # toy is far below the literal scale floor
    assert verify_split_reconstruction(ens, cut)


def test_split_out_of_range(toy_ensemble):
    with pytest.raises(NoSplitWindow):
        split(toy_ensemble, 2.0, RELAXED)


def test_build_omega_infeasible_layer_is_attributed():
    # N large enough for the schedule but layers starve at small scales
    with pytest.raises((InfeasibleParameters, ScheduleTooShort)) as exc:
        build_omega(10**4, 0.5, A12, ConstantsMode("relaxed", {"J": 2}))
    assert "layer" in str(exc.value) or "depth" in str(exc.value)


def test_literal_mode_depth_guard():
    with pytest.raises(ScheduleTooShort):
        schedule(10**6, 0.0003, ConstantsMode("literal", {}))
