"""Tests for the exact scalar / Gamma arithmetic layer."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besselsix.exactnum import (
    ExactScalar,
    a_coeff,
    a_m4_bound,
    gamma_half,
    gamma_ratio,
    gaussian_binomial_bound,
    stirling_gamma_bounds,
)

# ---------------------------------------------------------------------------
# ExactScalar algebra
# ---------------------------------------------------------------------------


def test_scalar_add_requires_matching_pi_power():
    a = ExactScalar(Fraction(1, 2), 1)
    b = ExactScalar(Fraction(1, 3), 1)
    assert (a + b).coeff == Fraction(5, 6)
    with pytest.raises(ValueError):
        a + ExactScalar(Fraction(1, 3), 0)


def test_scalar_zero_is_absorbing_for_add():
    z = ExactScalar(Fraction(0), 0)
    a = ExactScalar(Fraction(-3, 8), -2)
    assert (z + a) == a
    assert (a + z) == a
    assert (a - a).is_zero()


def test_scalar_mul_adds_powers():
    a = ExactScalar(Fraction(2, 3), 1)
    b = ExactScalar(Fraction(9, 4), -2)
    c = a * b
    assert c.coeff == Fraction(3, 2)
    assert c.sqrtpi_power == -1
    assert (a * 0).is_zero()


def test_scalar_to_real():
    assert ExactScalar(Fraction(1), 2).to_real() == pytest.approx(math.pi)
    assert ExactScalar(Fraction(1), -2).to_real() == pytest.approx(1 / math.pi)
    assert ExactScalar(Fraction(7, 2)).to_real() == 3.5


@given(
    num=st.integers(-10**6, 10**6),
    den=st.integers(1, 10**6),
    power=st.integers(-6, 6),
)
def test_serialize_parse_roundtrip(num, den, power):
    s = ExactScalar(Fraction(num, den), power)
    assert ExactScalar.parse(s.serialize()) == s


def test_serialize_format():
    assert ExactScalar(Fraction(-3, 8), -2).serialize() == "-3/8*sqrtpi^-2"
    assert ExactScalar(Fraction(5, 1), 0).serialize() == "5/1"


# ---------------------------------------------------------------------------
# gamma_half / gamma_ratio
# ---------------------------------------------------------------------------


def test_gamma_half_sqrt_pi():
    g = gamma_half(1)
    assert g.coeff == 1 and g.sqrtpi_power == 1


def test_gamma_half_negative_seven_halves():
    g = gamma_half(-7)
    assert g.coeff == Fraction(16, 105) and g.sqrtpi_power == 1


def test_gamma_half_five_halves():
    # (2n)!/(4^n n!) at n = 2 gives 24/(16*2) = 3/4
    g = gamma_half(5)
    assert g.coeff == Fraction(3, 4) and g.sqrtpi_power == 1


def test_gamma_half_integer_arguments_are_factorials():
    assert gamma_half(10).coeff == math.factorial(4)
    assert gamma_half(10).sqrtpi_power == 0
    with pytest.raises(ValueError):
        gamma_half(0)
    with pytest.raises(ValueError):
        gamma_half(-4)


@given(two_x=st.integers(-31, 41).filter(lambda t: t % 2 == 1))
def test_gamma_half_functional_equation(two_x):
    """gamma(x+1) = x * gamma(x), exactly, including negative half-integers."""
    lhs = gamma_half(two_x + 2)
    rhs = gamma_half(two_x) * Fraction(two_x, 2)
    assert lhs == rhs


def test_gamma_ratio_identity_and_pole_cases():
    assert gamma_ratio(6, 6).coeff == 1
    assert gamma_ratio(2, -2).is_zero()  # 1/Gamma(0) = 0
    assert gamma_ratio(7, 3).coeff == Fraction(15, 4)
    assert gamma_ratio(7, 3).sqrtpi_power == 0
    with pytest.raises(ValueError):
        gamma_ratio(-2, 5)  # pole in the numerator
    with pytest.raises(ValueError):
        gamma_ratio(-2, -4)  # two poles do not cancel here


@given(
    y2=st.integers(1, 40).filter(lambda t: t % 2 == 1),
    dx=st.integers(0, 20),
    w=st.integers(0, 15),
)
def test_gamma_ratio_monotone_under_shift(y2, dx, w):
    """Gamma(x)/Gamma(y) <= Gamma(x+w)/Gamma(y+w) for x >= y, exactly."""
    x2 = y2 + 2 * dx
    r1 = gamma_ratio(x2, y2)
    r2 = gamma_ratio(x2 + 2 * w, y2 + 2 * w)
    assert r1.sqrtpi_power == 0 and r2.sqrtpi_power == 0
    assert r1.coeff <= r2.coeff


# ---------------------------------------------------------------------------
# Stirling enclosures
# ---------------------------------------------------------------------------


def test_stirling_contains_small_values():
    lo, hi = stirling_gamma_bounds(1.0)
    assert lo <= 1.0 <= hi
    lo, hi = stirling_gamma_bounds(0.5)
    assert lo <= math.sqrt(math.pi) <= hi


def test_stirling_contains_19_factorial():
    lo, hi = stirling_gamma_bounds(20.0)
    assert lo <= float(math.factorial(19)) <= hi


def test_stirling_contains_exact_half_integer_points():
    """Enclosure holds at Gamma(k/2) for k = 1..50."""
    for k in range(1, 51):
        lo, hi = stirling_gamma_bounds(k / 2)
        exact = gamma_half(k).to_real()
        assert lo <= exact <= hi, f"k/2 = {k / 2}"


def test_stirling_rejects_nonpositive():
    with pytest.raises(ValueError):
        stirling_gamma_bounds(0.0)
    with pytest.raises(ValueError):
        stirling_gamma_bounds(-3.0)


def test_log_convexity_bracket():
    """sqrt(x - 1/2) <= Gamma(x+1/2)/Gamma(x) <= sqrt(x), certified.

    The enclosure widths (~1/(144 x^2) relative) are far smaller than the
    inequality's own margin (~1/(8x)), so the certified version holds.
    """
    x = 0.5
    while x <= 25.0:
        num_lo, num_hi = stirling_gamma_bounds(x + 0.5)
        den_lo, den_hi = stirling_gamma_bounds(x)
        assert math.sqrt(x - 0.5) <= num_lo / den_hi
        assert num_hi / den_lo <= math.sqrt(x)
        x += 0.5


# ---------------------------------------------------------------------------
# a_j(n) and its uniform bound
# ---------------------------------------------------------------------------


def test_a_coeff_known_values():
    assert a_coeff(0, 7).coeff == 1
    assert a_coeff(1, 0).coeff == Fraction(-1, 8)
    assert a_coeff(3, 0).coeff == Fraction(-75, 1024)
    assert a_coeff(3, 1).coeff == Fraction(105, 1024)


@given(n=st.integers(0, 40), j=st.integers(0, 44))
def test_a_coeff_is_pure_rational(n, j):
    assert a_coeff(j, n).sqrtpi_power == 0


@given(n=st.integers(0, 40), j=st.integers(1, 44))
@settings(max_examples=60)
def test_a_coeff_matches_product_formula(n, j):
    """Independent re-derivation: prod_{i=1..j}(4n^2-(2i-1)^2) / (j! 8^j)."""
    num = 1
    for i in range(1, j + 1):
        num *= 4 * n * n - (2 * i - 1) ** 2
    assert a_coeff(j, n).coeff == Fraction(num, math.factorial(j) * 8**j)


def test_a_m4_bound_small_cases():
    b1 = a_m4_bound(1)
    assert b1 == pytest.approx(105 / 16 * math.sqrt(2 / math.pi) * 2 * math.exp(-1))
    assert abs(a_coeff(5, 1).to_real()) == pytest.approx(72765 / 262144)
    assert abs(a_coeff(5, 1).to_real()) <= b1
    assert abs(a_coeff(16, 12).to_real()) <= a_m4_bound(12)


def test_a_m4_bound_dominates_through_m_40():
    for m in range(1, 41):
        exact = abs(a_coeff(m + 4, m).coeff)
        # compare in exact arithmetic against a float lower bound of the bound
        assert exact <= Fraction(a_m4_bound(m)) * Fraction(100001, 100000), f"m = {m}"
        assert float(exact) <= a_m4_bound(m), f"m = {m}"
    with pytest.raises(ValueError):
        a_m4_bound(0)


# ---------------------------------------------------------------------------
# Gaussian binomial bound
# ---------------------------------------------------------------------------


def test_gaussian_binomial_bound_values():
    v = gaussian_binomial_bound(1.0, 0.0)
    assert v == pytest.approx(math.exp(1 / 24) * 4 / (2 * math.sqrt(math.pi)))
    assert v >= 1.0  # Gamma(2)/Gamma(1)^2 = 1
    # central binomial comparison at (10, 3): Gamma(20)/(Gamma(7)Gamma(13))
    exact = Fraction(math.factorial(19), math.factorial(6) * math.factorial(12))
    assert float(exact) <= gaussian_binomial_bound(10.0, 3.0)


@given(
    x=st.floats(1.0, 50.0),
    d1=st.floats(0.0, 1.0),
    d2=st.floats(0.0, 1.0),
)
def test_gaussian_binomial_bound_monotone_in_d(x, d1, d2):
    lo_d, hi_d = sorted((d1 * x * 0.99, d2 * x * 0.99))
    assert gaussian_binomial_bound(x, hi_d) <= gaussian_binomial_bound(x, lo_d)


def test_gaussian_binomial_bound_domain():
    with pytest.raises(ValueError):
        gaussian_binomial_bound(0.5, 0.0)
    with pytest.raises(ValueError):
        gaussian_binomial_bound(4.0, 4.0)
