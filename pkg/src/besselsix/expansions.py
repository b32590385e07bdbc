"""Truncated asymptotic expansions with tracked remainder coefficients.

The rescaled Bessel function sqrt(pi r/2) J_n(r) admits a six-term
expansion in t = 1/(16r) whose coefficients are trigonometric monomials in
c = cos(r - pi/4) and s = sin(r - pi/4).  This module implements that
calculus: the polynomials, the two base expansions, the product rule that
propagates remainder bounds through multiplication (building the triple
products needed downstream), certified evaluation, and the Cauchy-Schwarz
tail estimate for the sixth-order remainder integrated against r^(-6).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bessel import CertifiedValue, phase
from .exactnum import Rational, a_coeff, gamma_ratio

__all__ = [
    "TrigPoly",
    "RemainderedExpansion",
    "base_expansion",
    "identity_expansion",
    "multiply",
    "product_expansion",
    "eval_expansion",
    "estimate_A",
    "estimate_A_recomputed",
]


@dataclass(frozen=True)
class TrigPoly:
    """Finitely supported polynomial sum of q * c^i s^j t^k monomials.

    Keys are (i, j, k) exponent triples for c = cos(r - pi/4),
    s = sin(r - pi/4), t = 1/(16r); values are exact rationals.
    """

    coeffs: tuple[tuple[tuple[int, int, int], Rational], ...]

    @staticmethod
    def from_dict(d: dict) -> "TrigPoly":
        items = tuple(sorted((k, Fraction(v)) for k, v in d.items() if v != 0))
        return TrigPoly(items)

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        d = self.as_dict()
        for key, v in other.coeffs:
            d[key] = d.get(key, Fraction(0)) + v
        return TrigPoly.from_dict(d)

    def __mul__(self, other: "TrigPoly") -> "TrigPoly":
        d: dict = {}
        for (i1, j1, k1), v1 in self.coeffs:
            for (i2, j2, k2), v2 in other.coeffs:
                key = (i1 + i2, j1 + j2, k1 + k2)
                d[key] = d.get(key, Fraction(0)) + v1 * v2
        return TrigPoly.from_dict(d)

    def scale(self, q) -> "TrigPoly":
        q = Fraction(q)
        return TrigPoly(tuple((key, v * q) for key, v in self.coeffs))

    def norm(self) -> Rational:
        """Sum of absolute coefficient values (bounding |c^i s^j| by 1)."""
        return sum((abs(v) for _, v in self.coeffs), Fraction(0))

    def degree_t(self) -> int:
        return max((k for (_, _, k), _ in self.coeffs), default=0)

    def evaluate(self, c: float, s: float, t: float) -> float:
        total = 0.0
        for (i, j, k), v in self.coeffs:
            total += float(v) * c**i * s**j * t**k
        return total

    def is_zero(self) -> bool:
        return not self.coeffs


def _mono(q, i: int, j: int, k: int) -> TrigPoly:
    return TrigPoly.from_dict({(i, j, k): Fraction(q)})


@dataclass(frozen=True)
class RemainderedExpansion:
    """Six expansion terms (term k homogeneous of degree k in t) plus seven
    remainder coefficients: truncating after K terms deviates from the
    target function by at most remainders[K] * (16r)^(-K)."""

    terms: tuple[TrigPoly, ...]
    remainders: tuple[Rational, ...]

    def __post_init__(self) -> None:
        if len(self.terms) != 6 or len(self.remainders) != 7:
            raise ValueError("expected 6 terms and 7 remainder coefficients")
        if any(r < 0 for r in self.remainders):
            raise ValueError("remainder coefficients must be nonnegative")
        for k, term in enumerate(self.terms):
            if any(kt != k for (_, _, kt), _ in term.coeffs):
                raise ValueError(f"term {k} must be homogeneous of t-degree {k}")


# the uniform zeroth-order amplitude bounds: |J_0| <= (9/8) sqrt(2/(pi r)),
# |J_1| <= (11/8) sqrt(2/(pi r))
_R0 = {"J0": Fraction(9, 8), "J1": Fraction(11, 8)}


@lru_cache(maxsize=None)
def base_expansion(which: str) -> RemainderedExpansion:
    """The six-term expansion of sqrt(pi r/2) J_n(r) for n = 0 ("J0") or
    n = 1 ("J1").

    Term k carries the coefficient 16^k a_k(n) against the alternating
    cos/sin pattern of the asymptotic series; remainder k equals
    16^k |a_k(n)| for k >= 1 and the uniform amplitude bound for k = 0.
    """
    if which not in ("J0", "J1"):
        raise ValueError('which must be "J0" or "J1"')
    n = 0 if which == "J0" else 1
    # (cos w_n, sin w_n) in terms of (c, s): w_n = w_0 - n pi/2
    cos_w = {0: _mono(1, 1, 0, 0), 1: _mono(1, 0, 1, 0)}[n]
    sin_w = {0: _mono(1, 0, 1, 0), 1: _mono(-1, 1, 0, 0)}[n]
    terms = []
    for k in range(6):
        a_k = a_coeff(k, n).coeff * 16**k  # r^-k = (16t)^k
        sign = -1 if (k // 2) % 2 else 1  # the (-1)^j of the P/Q sums
        carrier = cos_w if k % 2 == 0 else sin_w.scale(-1)
        term = (carrier * _mono(1, 0, 0, k)).scale(sign * a_k)
        terms.append(term)
    remainders = [_R0[which]]
    remainders += [abs(a_coeff(k, n).coeff) * 16**k for k in range(1, 7)]
    return RemainderedExpansion(tuple(terms), tuple(remainders))


def identity_expansion() -> RemainderedExpansion:
    """The multiplicative unit: terms (1, 0, ..., 0), remainders (1, 0, ..., 0)."""
    terms = [_mono(1, 0, 0, 0)] + [TrigPoly(()) for _ in range(5)]
    return RemainderedExpansion(tuple(terms), (Fraction(1),) + (Fraction(0),) * 6)


def multiply(a: RemainderedExpansion, b: RemainderedExpansion) -> RemainderedExpansion:
    """Product expansion with propagated remainders.

    terms_k = sum_{i<=k} a_i b_{k-i};
    remainder_k = r_0 s_k + sum_{i=1..k} r_i ||b_{k-i}||,
    where r/s are the remainder arrays of a/b and ||.|| is the coefficient
    norm of a term (trig monomials bounded by one).  This is exactly the
    convention that reproduces the printed remainder tables.
    """
    for e in (a, b):
        if any(t.degree_t() > 5 for t in e.terms):
            raise ValueError("operand terms exceed the tracked degree")
    terms = []
    for k in range(6):
        acc = TrigPoly(())
        for i in range(k + 1):
            acc = acc + a.terms[i] * b.terms[k - i]
        terms.append(acc)
    r = a.remainders
    s = b.remainders
    bnorm = [t.norm() for t in b.terms]
    remainders = []
    for k in range(7):
        total = r[0] * s[k]
        for i in range(1, k + 1):
            total += r[i] * bnorm[k - i]
        remainders.append(total)
    return RemainderedExpansion(tuple(terms), tuple(remainders))


@lru_cache(maxsize=None)
def product_expansion(tag: str) -> RemainderedExpansion:
    """The two triple products: "J000" = J0*J0*J0 and "J110" = J1*J1*J0,
    built by left-associated multiplication (the canonical order for the
    remainder bookkeeping)."""
    if tag == "J000":
        j0 = base_expansion("J0")
        return multiply(multiply(j0, j0), j0)
    if tag == "J110":
        j1 = base_expansion("J1")
        return multiply(multiply(j1, j1), base_expansion("J0"))
    raise ValueError('tag must be "J000" or "J110"')


def eval_expansion(e: RemainderedExpansion, r: float, K: int) -> CertifiedValue:
    """Evaluate the first K terms at r; radius = remainders[K] * (16r)^(-K).

    The trig arguments come from the certified phase reduction, so the
    midpoint is accurate to a few 1e-16 relative; the radius is the
    expansion's own truncation bound (it does not include that float dust).
    """
    if not (r > 0):
        raise ValueError("r must be positive")
    if not (0 <= K <= 6):
        raise ValueError("K must lie in 0..6")
    w = phase(0, r)
    c, s = math.cos(w), math.sin(w)
    t = 1.0 / (16.0 * r)
    mid = 0.0
    for k in range(K - 1, -1, -1):  # smallest contributions accumulated first
        mid += e.terms[k].evaluate(c, s, t)
    rad = float(e.remainders[K]) * (16.0 * r) ** float(-K)
    return CertifiedValue(mid, rad)


# ---------------------------------------------------------------------------
# Estimate A: the Cauchy-Schwarz bound on the integrated sixth remainder
# ---------------------------------------------------------------------------

_A_PRINTED = {"I0": Fraction("0.74"), "I1": Fraction("1.12")}


def _sqrt_upper(x: Fraction, bits: int = 80) -> Fraction:
    return Fraction(math.isqrt((x.numerator << (2 * bits)) // x.denominator) + 2, 1 << bits)


@lru_cache(maxsize=None)
def estimate_A_recomputed(variant: str) -> Fraction:
    """The proof's sharp pre-constant: (remainder_6 / 16^6) * sqrt(a0) *
    sqrt(64/693), with a0 = Gamma(29/2)/Gamma(53/2) * 20^12 <= 1.21,
    evaluated as a rigorous rational upper bound."""
    tag = {"I0": "J000", "I1": "J110"}[variant]
    r6 = product_expansion(tag).remainders[6]
    a0 = gamma_ratio(29, 53).coeff * 20**12
    assert a0 <= Fraction("1.21")
    return (r6 / 16**6) * _sqrt_upper(a0) * _sqrt_upper(Fraction(64, 693))


def estimate_A(m: int, n: int, variant: str) -> float:
    """The tail bound c * n0^(-1/2) * (n+m)^(-6) with c = 0.74 (I0) or
    1.12 (I1), for n >= 20; the recomputed proof constant is checked
    against the printed one on every call (cached)."""
    if variant not in _A_PRINTED:
        raise ValueError('variant must be "I0" or "I1"')
    if n < 20:
        raise ValueError("the certified regime needs n >= 20")
    if m < 0:
        raise ValueError("m must be nonnegative")
    printed = _A_PRINTED[variant]
    assert estimate_A_recomputed(variant) <= printed
    return float(printed) / math.sqrt(20.0) * (n + m) ** -6.0
