"""Truncated formal power series in t with exact polynomial coefficients.

A series of order N stores coefficients for t^0 .. t^N; every operation
truncates consistently at N.  Coefficients are `MomentPoly` values over a
fixed variable set — the empty set for fully numeric series, ("q3","q4","q6")
for symbolic ones — so symbolic and numeric builds share one code path.

Builders cover every generating function the package needs:

  sixth_moment_gf     F(t) with (n!)^2 [t^n] F = sixth determinant moment
  fourth_moment_gf    Y(t) = (1-t)^(-3) exp(q4 t); n! * (n! [t^n] Y) = f4(n)
  asym_correction_gf  C(t) whose Taylor coefficients drive the asymptotic
                      expansion of the sixth moment
  derangement_cycle_gf   exp(-u*x)/(1-x)^u: n! [x^n] = sum over derangements
                      of u^(number of cycles)
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

from .exact import MomentPoly, MomentSpec, Q_VARS, Rat


class TruncatedSeries:
    """Formal power series truncated at a fixed order, exact coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence[MomentPoly]):
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        vs = coeffs[0].vars
        if any(c.vars != vs for c in coeffs):
            raise ValueError("mixed coefficient variable sets")
        object.__setattr__(self, "order", len(coeffs) - 1)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def vars(self) -> tuple:
        return self.coeffs[0].vars

    @classmethod
    def constant(cls, value: Rat, order: int, variables=()) -> "TruncatedSeries":
        zero = MomentPoly.constant(0, variables)
        c0 = MomentPoly.constant(value, variables)
        return cls([c0] + [zero] * order)

    @classmethod
    def from_coeffs(cls, coeffs, order: int, variables=()) -> "TruncatedSeries":
        """Build from rationals/polynomials, zero-padding or truncating to order."""
        out = []
        for k in range(order + 1):
            c = coeffs[k] if k < len(coeffs) else 0
            out.append(c if isinstance(c, MomentPoly) else MomentPoly.constant(c, variables))
        return cls(out)

    def coeff(self, n: int) -> MomentPoly:
        """Exact coefficient of t^n (raises beyond the truncation order)."""
        if n < 0 or n > self.order:
            raise ValueError(f"coefficient {n} outside truncation order {self.order}")
        return self.coeffs[n]

    def coeff_rational(self, n: int) -> Fraction:
        """Coefficient of t^n as a rational (constant polynomials only)."""
        return self.coeff(n).constant_value()

    def _check(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")
        if self.vars != other.vars:
            raise ValueError(f"variable sets differ: {self.vars} vs {other.vars}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs])
        self._check(other)
        n = self.order
        zero = MomentPoly.constant(0, self.vars)
        out = [zero] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def shift(self, k: int = 1) -> "TruncatedSeries":
        """Multiply by t^k (truncated)."""
        zero = MomentPoly.constant(0, self.vars)
        return TruncatedSeries(([zero] * k + list(self.coeffs))[: self.order + 1])

    def exp(self) -> "TruncatedSeries":
        """exp of a series with zero constant term, via (exp a)' = a' exp a."""
        if not self.coeffs[0].is_zero():
            raise ValueError("series exp requires zero constant term")
        n = self.order
        out = [MomentPoly.constant(1, self.vars)]
        for m in range(1, n + 1):
            acc = MomentPoly.constant(0, self.vars)
            for k in range(1, m + 1):
                ak = self.coeffs[k]
                if not ak.is_zero():
                    acc = acc + (ak * k) * out[m - k]
            out.append(acc * Fraction(1, m))
        return TruncatedSeries(out)

    def __str__(self) -> str:
        return "\n".join(f"{n}: {c}" for n, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, vars={self.vars})"


def linear_power(c, exponent: int, order: int, variables=()) -> TruncatedSeries:
    """(1 + c*t)^exponent for a signed integer exponent, exactly truncated.

    Negative exponents give the reciprocal power via the generalized binomial
    series; c may be a rational or a polynomial.
    """
    if not isinstance(c, MomentPoly):
        c = MomentPoly.constant(c, variables)
    coeffs = []
    binom = Fraction(1)
    cpow = MomentPoly.constant(1, c.vars)
    for k in range(order + 1):
        coeffs.append(cpow * binom)
        binom *= Fraction(exponent - k, k + 1)
        cpow = cpow * c
    return TruncatedSeries(coeffs)


def _q_elements(spec: Optional[MomentSpec]):
    """Symbolic q3/q4/q6 when spec is None, exact constants otherwise."""
    if spec is None:
        vs = Q_VARS
        return (
            vs,
            MomentPoly.variable("q3", vs),
            MomentPoly.variable("q4", vs),
            MomentPoly.variable("q6", vs),
        )
    vs = ()
    return (
        vs,
        MomentPoly.constant(spec.q3),
        MomentPoly.constant(spec.q4),
        MomentPoly.constant(spec.q6),
    )


def sixth_moment_gf(order: int, spec: Optional[MomentSpec] = None) -> TruncatedSeries:
    """Generating function F(t) of sixth determinant moments.

    (n!)^2 [t^n] F equals the sixth moment for an entry law with the given
    moments (symbolic over q3,q4,q6 when spec is None):

        F(t) = (1+q3 t)^10 * exp(q6 t)/48 * (1-q4 t)^(-15)
               * sum_i (1+i)(2+i)(4+i)! t^i (1-q4 t)^(-3i).

    The i-sum stops at i = order because the i-th term has valuation i.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    vs, q3, q4, q6 = _q_elements(spec)
    expo = TruncatedSeries.from_coeffs([MomentPoly.constant(0, vs), q6], order, vs)
    factor = linear_power(q3, 10, order, vs) * expo.exp() * linear_power(-q4, -15, order, vs)
    recip3 = linear_power(-q4, -3, order, vs)
    total = TruncatedSeries.constant(0, order, vs)
    term = TruncatedSeries.constant(1, order, vs)  # t^i (1-q4 t)^(-3i)
    for i in range(order + 1):
        total = total + term * ((1 + i) * (2 + i) * math.factorial(4 + i))
        if i < order:
            term = (term * recip3).shift()
    return factor * total * Fraction(1, 48)


def fourth_moment_gf(order: int, m4: Optional[Rat] = None) -> TruncatedSeries:
    """Y(t) = (1-t)^(-3) exp((m4-3) t); the fourth moment is n! * (n! [t^n] Y)."""
    if order < 0:
        raise ValueError("order must be >= 0")
    if m4 is None:
        vs = Q_VARS
        q4 = MomentPoly.variable("q4", vs)
    else:
        vs = ()
        q4 = MomentPoly.constant(Fraction(m4) - 3)
    expo = TruncatedSeries.from_coeffs([MomentPoly.constant(0, vs), q4], order, vs)
    return linear_power(-1, -3, order, vs) * expo.exp()


def asym_correction_gf(order: int, spec: Optional[MomentSpec] = None) -> TruncatedSeries:
    """C(t) whose Taylor coefficients feed the sixth-moment asymptotic expansion:

        C(t) = exp((q6 - 3 q4^2) t + q4^3 t^2) * (1+q3 t)^10
               * (1 - 2(3 q4+4) t + 3(5 q4^2+8 q4+4) t^2 - 4 q4^2 (5 q4+6) t^3
                  + q4^3 (15 q4+8) t^4 - 6 q4^5 t^5 + q4^6 t^6).

    The bracket equals (1-q4 t)^6 - 8 t (1-q4 t)^3 + 12 t^2.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    vs, q3, q4, q6 = _q_elements(spec)
    zero = MomentPoly.constant(0, vs)
    expo = TruncatedSeries.from_coeffs([zero, q6 - q4 * q4 * 3, q4**3], order, vs)
    bracket = TruncatedSeries.from_coeffs(
        [
            MomentPoly.constant(1, vs),
            (q4 * 3 + 4) * -2,
            (q4 * q4 * 5 + q4 * 8 + 4) * 3,
            q4 * q4 * (q4 * 5 + 6) * -4,
            q4**3 * (q4 * 15 + 8),
            q4**5 * -6,
            q4**6,
        ],
        order,
        vs,
    )
    return expo.exp() * linear_power(q3, 10, order, vs) * bracket


def derangement_cycle_gf(order: int) -> TruncatedSeries:
    """exp(-u x)/(1-x)^u over the symbolic variable u.

    n! [x^n] is the polynomial summing u^(cycle count) over all derangements
    of n elements.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    vs = ("u",)
    u = MomentPoly.variable("u", vs)
    # -u*x + u*sum_{k>=1} x^k/k  =  u * sum_{k>=2} x^k/k
    coeffs = [MomentPoly.constant(0, vs), MomentPoly.constant(0, vs)]
    for k in range(2, order + 1):
        coeffs.append(u * Fraction(1, k))
    return TruncatedSeries.from_coeffs(coeffs, order, vs).exp()
