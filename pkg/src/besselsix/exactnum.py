"""Exact rational arithmetic, half-integer Gamma values, and Gamma inequalities.

Everything here is either exact (arbitrary-precision rationals, optionally
carrying a power of sqrt(pi)) or a rigorous two-sided enclosure (the Stirling
bounds).  These are the scalars that all closed-form integral values and
asymptotic-series coefficients are built from; keeping them exact is what lets
the higher layers compare recomputed constants against their stored
counterparts with ``==`` instead of a tolerance.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Rational",
    "ExactScalar",
    "gamma_half",
    "gamma_ratio",
    "stirling_gamma_bounds",
    "a_coeff",
    "gaussian_binomial_bound",
    "a_m4_bound",
]

#: Exact rational numbers (arbitrary precision, always in lowest terms).
Rational = Fraction

# sqrt(pi) to 45 digits; used only to convert ExactScalar to a float, so the
# approximation error (~1e-45 relative) is far below half an ulp of the result.
_SQRTPI = Fraction(
    "1.77245385090551602729816748334114518279754945612238712821380778985291"
)


@dataclass(frozen=True)
class ExactScalar:
    """A rational number times an integer power of sqrt(pi).

    ``coeff * pi**(sqrtpi_power/2)`` is the represented value.  Multiplication
    adds exponents; addition is only defined between equal exponents (adding
    incommensurable pi-powers would silently lose exactness, so it raises).
    The zero value is normalized to ``sqrtpi_power == 0``.
    """

    coeff: Fraction
    sqrtpi_power: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.coeff, Fraction):
            object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.coeff == 0 and self.sqrtpi_power != 0:
            object.__setattr__(self, "sqrtpi_power", 0)

    # -- algebra ---------------------------------------------------------

    def __add__(self, other: "ExactScalar") -> "ExactScalar":
        if not isinstance(other, ExactScalar):
            return NotImplemented
        if self.coeff == 0:
            return other
        if other.coeff == 0:
            return self
        if self.sqrtpi_power != other.sqrtpi_power:
            raise ValueError(
                "cannot add ExactScalars with different sqrt(pi) powers "
                f"({self.sqrtpi_power} vs {other.sqrtpi_power})"
            )
        return ExactScalar(self.coeff + other.coeff, self.sqrtpi_power)

    def __sub__(self, other: "ExactScalar") -> "ExactScalar":
        return self + (-other)

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.coeff, self.sqrtpi_power)

    def __mul__(self, other):
        if isinstance(other, ExactScalar):
            return ExactScalar(
                self.coeff * other.coeff, self.sqrtpi_power + other.sqrtpi_power
            )
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.coeff * other, self.sqrtpi_power)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ExactScalar):
            if other.coeff == 0:
                raise ZeroDivisionError("division by zero ExactScalar")
            return ExactScalar(
                self.coeff / other.coeff, self.sqrtpi_power - other.sqrtpi_power
            )
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.coeff / other, self.sqrtpi_power)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.coeff == 0

    # -- conversion ------------------------------------------------------

    def to_real(self) -> float:
        """The value as a float, correct to within 2 ulp."""
        if self.sqrtpi_power == 0:
            return float(self.coeff)
        # One exact rational product with a 45-digit sqrt(pi), then a single
        # correctly rounded conversion.
        return float(self.coeff * _SQRTPI ** self.sqrtpi_power)

    # -- serialization ---------------------------------------------------

    def serialize(self) -> str:
        """Lossless text form: ``p/q`` or ``p/q*sqrtpi^k`` for k != 0."""
        base = f"{self.coeff.numerator}/{self.coeff.denominator}"
        if self.sqrtpi_power == 0:
            return base
        return f"{base}*sqrtpi^{self.sqrtpi_power}"

    _PARSE_RE = re.compile(
        r"^(?P<num>-?\d+)/(?P<den>\d+)(?:\*sqrtpi\^(?P<pow>-?\d+))?$"
    )

    @classmethod
    def parse(cls, text: str) -> "ExactScalar":
        m = cls._PARSE_RE.match(text.strip())
        if m is None:
            raise ValueError(f"not a serialized ExactScalar: {text!r}")
        coeff = Fraction(int(m.group("num")), int(m.group("den")))
        power = int(m.group("pow") or 0)
        return cls(coeff, power)

    def __str__(self) -> str:
        return self.serialize()


def _gamma_factor(two_x: int) -> tuple[Fraction, int] | None:
    """Decompose Gamma(two_x/2) = poch * Gamma(base), base in {1/2, 1}.

    Returns ``(poch, base_two)`` with ``base_two`` in {1, 2}, or ``None`` if
    the argument is a pole (a nonpositive integer).  Uses only the functional
    equation Gamma(x+1) = x*Gamma(x), so the factor is exact and carries the
    correct sign for negative half-integer arguments.
    """
    if two_x % 2 == 0 and two_x <= 0:
        return None  # pole of Gamma
    x = Fraction(two_x, 2)
    poch = Fraction(1)
    while x > 1:
        x -= 1
        poch *= x
    while x <= 0:
        poch /= x
        x += 1
    # x is now 1/2 or 1
    return poch, x.numerator * 2 // x.denominator


def gamma_half(two_x: int) -> ExactScalar:
    """Gamma(two_x/2), exact, for integer and half-integer arguments.

    Half-integer arguments (odd ``two_x``, of either sign) give a rational
    multiple of sqrt(pi); positive even ``two_x`` gives the exact factorial.
    Nonpositive integer arguments are poles and raise ValueError.
    """
    decomposed = _gamma_factor(int(two_x))
    if decomposed is None:
        raise ValueError(f"Gamma pole at argument {two_x}/2")
    poch, base_two = decomposed
    return ExactScalar(poch, 1 if base_two == 1 else 0)


def gamma_ratio(two_a: int, two_b: int) -> ExactScalar:
    """Gamma(two_a/2) / Gamma(two_b/2), exact.

    Both arguments are reduced to the base interval (0, 1] with the
    functional equation, so no large intermediate values ever appear.  A pole
    in the denominator yields exact zero (1/Gamma vanishes there); a pole in
    the numerator -- alone or together with one in the denominator -- raises,
    since the ratio is then not determined by this reduction.
    """
    fa = _gamma_factor(int(two_a))
    fb = _gamma_factor(int(two_b))
    if fa is None:
        raise ValueError(
            f"Gamma pole in numerator at argument {two_a}/2; ratio undefined here"
        )
    if fb is None:
        return ExactScalar(Fraction(0))
    poch_a, base_a = fa
    poch_b, base_b = fb
    power = (1 if base_a == 1 else 0) - (1 if base_b == 1 else 0)
    return ExactScalar(poch_a / poch_b, power)


def stirling_gamma_bounds(x: float) -> tuple[float, float]:
    """A rigorous two-sided enclosure of Gamma(x) for x > 0.

    Stirling's formula with the classical correction-term bounds
    ``1/(12x+1) < mu(x) < 1/(12x)`` gives

        sqrt(2 pi) x^(x-1/2) e^(-x) e^(1/(12x+1))  <  Gamma(x)
                                     <  sqrt(2 pi) x^(x-1/2) e^(-x) e^(1/(12x)).

    The endpoints are evaluated in floating point and widened by 4 ulp each to
    absorb the evaluation rounding.
    """
    if not (x > 0) or not math.isfinite(x):
        raise ValueError(f"stirling_gamma_bounds requires x > 0, got {x}")
    common = math.sqrt(2.0 * math.pi) * x ** (x - 0.5) * math.exp(-x)
    lo = common * math.exp(1.0 / (12.0 * x + 1.0))
    hi = common * math.exp(1.0 / (12.0 * x))
    for _ in range(4):
        lo = math.nextafter(lo, -math.inf)
        hi = math.nextafter(hi, math.inf)
    return lo, hi


def a_coeff(j: int, n: int) -> ExactScalar:
    """Coefficient a_j(n) of the large-argument asymptotic series of J_n.

    a_j(n) = Gamma(n+j+1/2) / (Gamma(n-j+1/2) j! 2^j), always a pure rational
    (both Gamma arguments are half-integers, so the sqrt(pi) factors cancel).
    For j > n the denominator Gamma is evaluated at a negative half-integer,
    which contributes the alternating sign of the reflected value.
    """
    if j < 0 or n < 0:
        raise ValueError("a_coeff requires j >= 0 and n >= 0")
    ratio = gamma_ratio(2 * (n + j) + 1, 2 * (n - j) + 1)
    assert ratio.sqrtpi_power == 0
    return ExactScalar(ratio.coeff / (math.factorial(j) * 2**j))


def gaussian_binomial_bound(x: float, d: float) -> float:
    """Upper bound (e^(1/24)/(2 sqrt(pi))) x^(1/2) 2^(2x) e^(-d^2/x).

    Dominates the central-binomial-type quotient
    Gamma(2x)/(Gamma(x+d)Gamma(x-d)) for x >= 1, 0 <= d < x; the Gaussian
    factor e^(-d^2/x) captures the decay away from the central term.
    """
    if not (x >= 1.0) or not (0.0 <= d < x):
        raise ValueError(f"gaussian_binomial_bound requires x >= 1, 0 <= d < x; got {x=}, {d=}")
    return (
        math.exp(1.0 / 24.0)
        / (2.0 * math.sqrt(math.pi))
        * math.sqrt(x)
        * 2.0 ** (2.0 * x)
        * math.exp(-d * d / x)
    )


def a_m4_bound(m: int) -> float:
    """Closed-form dominating bound for |a_{m+4}(m)|, any integer m >= 1.

    Returns (105/16) sqrt(2/pi) (2m-1)^(-1/2) 2^m m^m e^(-m).  The growth of
    the asymptotic-series coefficient four past the diagonal is captured by
    the factor (2m/e)^m; the test suite verifies dominance for 1 <= m <= 40
    against the exact a_coeff values.
    """
    if m < 1:
        raise ValueError("a_m4_bound requires m >= 1")
    # exp/log form so the bound stays evaluable well past m = 40
    log_core = m * (math.log(2.0) + math.log(float(m)) - 1.0)
    return (
        105.0 / 16.0
        * math.sqrt(2.0 / math.pi)
        / math.sqrt(2.0 * m - 1.0)
        * math.exp(log_core)
    )
