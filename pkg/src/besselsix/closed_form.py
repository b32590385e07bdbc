"""Exact closed forms and bounds for integrals of two Bessel functions.

The building blocks: the Kapteyn value of int J_n J_m / r, the
Weber-Schafheitlin Gamma-quotient for int J_n J_m r^(-k), the exact-zero
test for frequency-2 trigonometric weights, and the descent-method bound
dominating the frequency-4 integrals.  Everything is exact rational (or
rational times a power of sqrt(pi)) arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import ExactScalar, Rational, gamma_ratio

__all__ = [
    "CoreIntegralKey",
    "kapteyn",
    "weber_schafheitlin",
    "vanishes_freq2",
    "descent_bound",
]

_FREQS = ("zero", "two", "four")
_TRIGS = ("cos", "sin", "none")


@dataclass(frozen=True)
class CoreIntegralKey:
    """Parameters (n, m, k, freq, trig) of a core two-Bessel integral

        int_0^inf J_n(r) J_m(r) * w(freq*r) * r^(-k) dr

    where w is cos, sin, or absent (freq "zero")."""

    n: int
    m: int
    k: int
    freq: str = "zero"
    trig: str = "none"

    def __post_init__(self) -> None:
        if self.n < 0 or self.m < 0:
            raise ValueError("orders must be nonnegative")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.freq not in _FREQS:
            raise ValueError(f"freq must be one of {_FREQS}")
        if self.trig not in _TRIGS:
            raise ValueError(f"trig must be one of {_TRIGS}")
        if self.freq == "zero" and self.trig != "none":
            raise ValueError("a frequency-zero integral carries no trig factor")
        if self.freq != "zero" and self.trig == "none":
            raise ValueError("an oscillatory integral needs cos or sin")


def kapteyn(n: int, m: int) -> ExactScalar:
    """int_0^inf J_n J_m / r dr = (2/pi) sin((m-n)pi/2) / (m^2 - n^2),
    read as 1/(2n) in the confluent case n = m."""
    if n < 0 or m < 0:
        raise ValueError("orders must be nonnegative")
    if n == m:
        if n == 0:
            raise ValueError("the integral diverges for n = m = 0")
        return ExactScalar(Fraction(1, 2 * n))
    d = (m - n) % 4
    if d % 2 == 0:  # even nonzero difference: the sine vanishes
        return ExactScalar(Fraction(0))
    sign = 1 if d == 1 else -1
    return ExactScalar(Fraction(2 * sign, m * m - n * n), -2)


def weber_schafheitlin(n: int, m: int, k: int) -> ExactScalar:
    """int_0^inf J_n J_m r^(-k) dr as an exact Gamma quotient,

        2^(-k) G(k) G((m+n+1-k)/2) /
            [G((m+n+1+k)/2) G((n-m+k+1)/2) G((m-n+k+1)/2)]

    for 1 <= k <= n + m.  Parity makes the result either rational or
    rational/pi; a 1/Gamma zero in the denominator yields exact 0.
    """
    if n < 0 or m < 0:
        raise ValueError("orders must be nonnegative")
    if not (1 <= k <= n + m):
        raise ValueError(f"k must satisfy 1 <= k <= n + m, got k={k}, n+m={n + m}")
    head = ExactScalar(Fraction(math.factorial(k - 1), 2**k))
    # the numerator Gamma((m+n+1-k)/2) can never hit a pole since k <= n+m
    value = (
        head
        * gamma_ratio(m + n + 1 - k, m + n + 1 + k)
        * gamma_ratio(2, n - m + k + 1)
        * gamma_ratio(2, m - n + k + 1)
    )
    assert value.sqrtpi_power in (0, -2), value
    return value


def vanishes_freq2(key: CoreIntegralKey) -> bool:
    """Exact-zero test for int J_n J_m {cos,sin}(2r) r^(-k) dr.

    True precisely under the hypotheses that force the value to vanish:
    n, m of equal parity, 1 <= k <= n+m, and the trig factor matching the
    parity of k (cos with even k, sin with odd k).  False makes no claim
    about the value.
    """
    if key.freq != "two":
        raise ValueError("the vanishing test applies to frequency-2 keys only")
    if (key.n - key.m) % 2 != 0:
        return False
    if not (1 <= key.k <= key.n + key.m):
        return False
    if key.k % 2 == 0:
        return key.trig == "cos"
    return key.trig == "sin"


def descent_bound(n: int, m: int, k: int) -> Rational:
    """Bound 2^(k-1) 4^(-(n+m)) (n+m-k)! / (n! m!) dominating the modulus
    of the frequency-4 integral int J_n J_m r^(-k) e^(4ir) dr."""
    if n < 0 or m < 0:
        raise ValueError("orders must be nonnegative")
    if not (1 <= k < n + m):
        raise ValueError(f"k must satisfy 1 <= k < n + m, got k={k}, n+m={n + m}")
    return Fraction(
        2 ** (k - 1) * math.factorial(n + m - k),
        4 ** (n + m) * math.factorial(n) * math.factorial(m),
    )
