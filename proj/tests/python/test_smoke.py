import math

import pytest

import _dail as d


def test_mols_family():
    fam = d.generate_mols(7)
    assert fam.order == 7
    assert len(fam) == 6
    for i in range(6):
        for j in range(i + 1, 6):
            assert d.are_orthogonal(fam.square(i), fam.square(j))


def test_mols_rejects_non_prime():
    with pytest.raises(ValueError):
        d.generate_mols(12)


def test_patterns_and_overlap():
    fam = d.generate_mols(5)
    ra = d.cut_rectangle(fam.square(0), 5, 5)
    rb = d.cut_rectangle(fam.square(2), 5, 5)
    pa = d.pattern_of(ra, 1)
    pb = d.pattern_of(rb, 3)
    assert len(pa.hops) == 5
    assert d.overlap_count(pa, pb) == 1
    assert d.overlap_count(pa, d.pattern_of(ra, 2)) == 0


def test_rectangle_text_round_trip():
    fam = d.generate_mols(17)
    rect = d.cut_rectangle(fam.square(3), 16, 12, 3)
    text = d.rectangle_to_text(rect)
    back = d.rectangle_from_text(text)
    assert back == rect
    assert d.rectangle_to_text(back) == text


def test_collision_bounds():
    assert d.collision_bounds(5, 12) == (0, 5)
    assert d.collision_bounds(20, 12) == (9, 20)


def test_success_probability_and_oracles():
    p = d.AnalyticalParams(Q=2, M=4, K=5, omega=1.0, m=2)
    exact = d.exact_lambda(p)
    assert exact == pytest.approx(7.0 / 9.0)
    est, se = d.monte_carlo_lambda(p, trials=100_000, seed=4)
    assert abs(est - exact) < 4 * max(se, 1e-9)
    lam = d.success_probability(p)
    assert 0.0 <= lam.value <= 1.0


def test_theorem_check():
    pairs, violations = d.theorem_check(11, 11, 11)
    assert violations == []
    assert pairs > 0


def test_simulate():
    rep = d.simulate(n_wbans=3, superframes=30, seed=2, area_side=4.0)
    assert rep["total_tx"] > 0
    assert 0.0 <= rep["mcp"] <= 1.0
    again = d.simulate(n_wbans=3, superframes=30, seed=2, area_side=4.0)
    assert again == rep
    sms = d.simulate(n_wbans=3, superframes=30, seed=2, area_side=4.0,
                     scheme="SMS")
    assert sms["total_tx"] > 0
    assert math.isfinite(sms["pc"])
