"""Tests for the large-order prediction assembly and theorem constants."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besselsix.bessel import CertifiedValue
from besselsix.certify import (
    NORMALIZATION,
    Prediction,
    THEOREM_MAP,
    check_theorem,
    predict,
    theorem_constants,
)
from besselsix.core_integrals import e1_bound, e2_bound, estimate_B, main_term
from besselsix.exactnum import ExactScalar
from besselsix.expansions import estimate_A

NORM = 4.0 / math.pi**2

# printed roll-ups of the budget constants
ROLLED = {
    (0, "I0"): (0.0030, 4),
    (0, "I1"): (0.0028, 4),
    (2, "I0"): (0.0028, 4),
    (2, "I1"): (0.0015, 4),
    (4, "I0"): (0.197, 6),
    (4, "I1"): (0.264, 6),
    (6, "I0"): (0.0022, 4),
    (6, "I1"): (0.0020, 4),
}


# ---------------------------------------------------------------------------
# prediction assembly
# ---------------------------------------------------------------------------


def test_radius_below_printed_rollup():
    for (m, variant), (c, tau) in ROLLED.items():
        for n in (20, 25, 40):
            p = predict(m, n, variant)
            assert p.radius <= c * NORM * float(n) ** -tau
            # and not absurdly below: the printed constants are sharp
            assert p.radius >= 0.9 * c * NORM * float(n) ** -tau


def test_budget_itemization_m0():
    p = predict(0, 20, "I0")
    names = [name for name, _ in p.budget]
    assert names == ["estimate_A", "estimate_B", "e1", "e2"]
    scale = NORM * 20.0**-4
    items = dict(p.budget)
    assert items["estimate_A"] == pytest.approx(0.74 * 20**-2.5 * scale)
    assert items["estimate_B"] == pytest.approx(0.022 / 20 * scale)
    assert items["e1"] == pytest.approx((0.026 + 0.0016) / 20 * scale)
    assert items["e2"] == pytest.approx(0.78 * 0.6**20 * scale)
    assert p.radius == sum(v for _, v in p.budget)


def test_budget_itemization_m4_uses_slower_pair():
    p = predict(4, 20, "I1")
    scale = NORM * 20.0**-6
    items = dict(p.budget)
    assert items["estimate_A"] == pytest.approx(1.12 * 20**-0.5 * scale)
    assert items["estimate_B"] == pytest.approx(2.885 / 20**3 * scale)
    assert items["e1"] == pytest.approx((0.11 + 0.063) / 20 * scale)
    assert items["e2"] == pytest.approx(0.60 * 0.75**20 * scale)


def test_radius_dominates_sharp_parts():
    # the anchored budget must sit above the per-part bounds it relaxes
    for variant in ("I0", "I1"):
        for m, n in ((0, 20), (0, 37), (2, 21), (4, 20), (6, 28), (12, 60)):
            p = predict(m, n, variant)
            sharp = estimate_B(m, n, variant)
            sharp += estimate_A(m, n, variant)
            for kind in ("cos", "sin"):
                sharp += e1_bound(m, n, variant, kind)
                sharp += e2_bound(m, n, variant, kind)
            assert p.radius >= NORM * sharp


def test_main_is_normalized_core_term():
    p = predict(2, 24, "I0")
    assert p.main == NORMALIZATION * main_term(2, 24, "I0")
    assert p.main.sqrtpi_power == -4
    assert predict(8, 30, "I1").main == ExactScalar(0)


def test_main_m0_limit():
    # main(n) * 4 pi^2 n -> 3, checked in exact arithmetic at n = 10^6
    p = predict(0, 10**6, "I0")
    value = 4 * 10**6 * p.main.coeff  # pi-powers cancel against 4 pi^2 n
    assert abs(value - 3) / 3 < Fraction(1, 10**9)


def test_prediction_validation():
    with pytest.raises(ValueError):
        Prediction("I0", 0, 20, ExactScalar(0), 1.0, (("e1", -1.0), ("e2", 2.0)))
    with pytest.raises(ValueError):
        Prediction("I0", 0, 20, ExactScalar(0), 1.0, (("e1", 0.5), ("e2", 0.25)))


def test_predict_domain():
    with pytest.raises(ValueError):
        predict(0, 19, "I0")
    with pytest.raises(ValueError):
        predict(3, 20, "I0")
    with pytest.raises(ValueError):
        predict(22, 20, "I0")
    with pytest.raises(ValueError):
        predict(0, 20, "I9")


@given(st.integers(20, 10**5), st.sampled_from([0, 2, 4, 6]), st.sampled_from(["I0", "I1"]))
@settings(max_examples=40, deadline=None)
def test_radius_positive_and_decreasing(n, m, variant):
    p = predict(m, n, variant)
    q = predict(m, n + 1, variant)
    assert 0 < q.radius < p.radius


# ---------------------------------------------------------------------------
# theorem constants
# ---------------------------------------------------------------------------


def test_constant_map_spot_values():
    assert theorem_constants(0, 5, "I0") == 0.01
    assert theorem_constants(4, 4, "I1") == 0.0015
    assert theorem_constants(2, 2, "I0") == 0.002


def test_constant_map_m0_ranges():
    for n in (2, 3, 4, 5, 6):
        assert theorem_constants(0, n, "I0") == 0.01
    for n in (7, 8, 20, 1000):
        assert theorem_constants(0, n, "I0") == 0.002
    for n in (2, 3):
        assert theorem_constants(0, n, "I1") == 0.01
    for n in (4, 5, 19, 500):
        assert theorem_constants(0, n, "I1") == 0.002
    assert theorem_constants(0, 1, "I0") is None
    assert theorem_constants(0, 0, "I1") is None


def test_constant_map_higher_m():
    for v in ("I0", "I1"):
        for n in (2, 3, 10):
            assert theorem_constants(2, n, v) == 0.002
        for n in (4, 7, 100):
            assert theorem_constants(4, n, v) == 0.0015
        for m in (6, 8, 18):
            assert theorem_constants(m, m, v) == 0.0015
            assert theorem_constants(m, m + 7, v) == 0.0015


def test_constant_map_absent_above_diagonal():
    assert theorem_constants(6, 4, "I0") is None
    assert theorem_constants(10, 9, "I1") is None
    assert theorem_constants(2, 1, "I0") is None


def test_constant_map_domain():
    with pytest.raises(ValueError):
        theorem_constants(1, 5, "I0")
    with pytest.raises(ValueError):
        theorem_constants(0, -1, "I0")
    with pytest.raises(ValueError):
        theorem_constants(0, 5, "Ix")


def test_map_rows_are_well_formed():
    assert len(THEOREM_MAP) == 10
    for variant, m_lo, m_hi, n_lo, n_hi, c in THEOREM_MAP:
        assert variant in ("I0", "I1")
        assert c in (0.01, 0.002, 0.0015)
        assert m_hi is None or m_hi >= m_lo


def test_prediction_radius_within_theorem_allowance():
    # the assembled budget is what proves the theorem at large order
    for variant in ("I0", "I1"):
        for m in (0, 2, 4, 6, 8):
            for n in (20, 21, 50, 400):
                allowance = theorem_constants(m, n, variant) * n**-4.0
                assert predict(m, n, variant).radius <= allowance


# ---------------------------------------------------------------------------
# theorem checking
# ---------------------------------------------------------------------------


def test_check_passes_on_truthful_enclosure():
    main = (NORMALIZATION * main_term(2, 20, "I0")).to_real()
    report = check_theorem(2, 20, "I0", CertifiedValue(main, 1e-12))
    assert report.passed
    assert report.allowance == pytest.approx(0.002 * 20.0**-4)
    assert report.slack > 0


def test_check_fails_on_wide_enclosure():
    main = (NORMALIZATION * main_term(2, 20, "I0")).to_real()
    report = check_theorem(2, 20, "I0", CertifiedValue(main, 1.0))
    assert not report.passed
    assert report.slack < 0


def test_check_counts_deviation_and_width():
    report = check_theorem(6, 30, "I0", CertifiedValue(2e-9, 1e-9))
    assert report.deviation == pytest.approx(3e-9)  # main is zero here
    assert report.passed == (report.deviation <= report.allowance)


def test_check_requires_applicable_cell():
    with pytest.raises(ValueError):
        check_theorem(0, 1, "I0", CertifiedValue(0.0, 0.0))
    with pytest.raises(ValueError):
        check_theorem(8, 6, "I1", CertifiedValue(0.0, 0.0))
