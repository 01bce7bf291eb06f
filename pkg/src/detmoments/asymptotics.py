"""Asymptotic expansion of the sixth determinant moment.

For a truncation order R the expansion reads

    E[det^6](n)  ~  exp(3 q4) (n!)^2 / 48 * sum_{k=0}^R c_k (n+6-k)!

with c_k the Taylor coefficients of the correction function C(t) built in
`series.asym_correction_gf`.  Everything is exact except the single factor
exp(3 q4), which is evaluated to a requested number of decimal digits with
`decimal` and a rigorously bounded Taylor tail.  No error bound is claimed
for the truncated expansion itself; `ratio_table` exposes measured ratios
against the exact values instead.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import NamedTuple, Optional

from .exact import MomentPoly, MomentSpec, M_VARS
from .series import asym_correction_gf
from .moments import sixth_moment_closed

DEFAULT_DIGITS = 50
MIN_DIGITS = 10
_GUARD_DIGITS = 12


class HighPrecisionValue(NamedTuple):
    """A decimal approximation together with its working precision."""

    value: Decimal
    digits: int

    def __str__(self) -> str:
        return str(self.value)


def expansion_coefficients(spec: Optional[MomentSpec], order: int) -> list:
    """Coefficients c_0..c_order of the correction function C(t).

    Returns Fractions for a concrete spec, polynomials over (q3,q4,q6) when
    spec is None.  c_0 is always 1.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    gf = asym_correction_gf(order, spec)
    if spec is None:
        return [gf.coeff(k) for k in range(order + 1)]
    return [gf.coeff_rational(k) for k in range(order + 1)]


def exp_fraction(x: Fraction, digits: int) -> Decimal:
    """exp(x) for rational x, correct to the requested decimal precision.

    Scales the argument so |x| / 2^s <= 1/2, sums the Taylor series with a
    geometric tail bound below half an ulp of the guarded working precision,
    then squares s times.
    """
    if digits < MIN_DIGITS:
        raise ValueError(f"precision must be at least {MIN_DIGITS} digits")
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits + _GUARD_DIGITS
        s = 0
        while abs(x) > Fraction(1, 2):
            x /= 2
            s += 1
        y = Decimal(x.numerator) / Decimal(x.denominator)
        threshold = Decimal(1).scaleb(-(digits + _GUARD_DIGITS) - 1)
        total = Decimal(1)
        term = Decimal(1)
        k = 1
        while True:
            term = term * y / k
            total += term
            # |y| <= 1/2 so the tail is below 2*|term|
            if abs(term) < threshold:
                break
            k += 1
        for _ in range(s):
            total = total * total
    with localcontext() as ctx:
        ctx.prec = digits
        return +total


def fraction_to_decimal(x: Fraction, digits: int) -> Decimal:
    """Round an exact rational to a decimal at the given precision."""
    with localcontext() as ctx:
        ctx.prec = digits
        return Decimal(x.numerator) / Decimal(x.denominator)


def evaluate_expansion(
    n: int, spec: MomentSpec, order: int = 7, digits: int = DEFAULT_DIGITS
) -> HighPrecisionValue:
    """The order-R expansion value at size n.

    The rational part exp(-3 q4) * value is exact; the one irrational factor
    exp(3 q4) is applied in a single high-precision multiplication.  Requires
    n >= order - 6 so every factorial argument n+6-k is non-negative; the
    exact evaluators own the small-n regime.
    """
    if digits < MIN_DIGITS:
        raise ValueError(f"precision must be at least {MIN_DIGITS} digits")
    if n < order - 6:
        raise ValueError(f"n={n} too small for order {order}: need n >= {order - 6}")
    coeffs = expansion_coefficients(spec, order)
    tail = sum(coeffs[k] * math.factorial(n + 6 - k) for k in range(order + 1))
    rational_part = Fraction(math.factorial(n) ** 2, 48) * tail
    with localcontext() as ctx:
        ctx.prec = digits + _GUARD_DIGITS
        value = exp_fraction(3 * spec.q4, digits + _GUARD_DIGITS) * Decimal(
            rational_part.numerator
        ) / Decimal(rational_part.denominator)
    with localcontext() as ctx:
        ctx.prec = digits
        return HighPrecisionValue(+value, digits)


def expansion_poly_form(spec: Optional[MomentSpec] = None, order: int = 7) -> tuple:
    """The expansion rewritten as a degree-6 polynomial in n plus a 1/n term.

    Dividing the factorial sum by n! turns (n+6-k)! into the product
    (n+1)...(n+6-k) for k <= 6 and into 1/n at k = 7, so

        E[det^6](n) ~ exp(3 q4) (n!)^3 / 48 * (P(n) + c_7/n).

    Returns (coefficients of n^6 .. n^0, coefficient of 1/n).  Symbolic
    results are polynomials over (m3, m4, m6).  Orders above 7 would add
    1/n^2 and beyond and are rejected.
    """
    if order > 7:
        raise ValueError("poly form supports order <= 7 (one 1/n term)")
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = expansion_coefficients(spec, order)
    if spec is None:
        coeffs = [_q_poly_to_m(c) for c in coeffs]
        zero = MomentPoly.constant(0, M_VARS)
    else:
        zero = Fraction(0)
    poly = [zero] * 7  # poly[d] = coefficient of n^d
    for k in range(min(order, 6) + 1):
        prod = [Fraction(1)]  # (n+1)(n+2)...(n+6-k), ascending powers of n
        for i in range(1, 6 - k + 1):
            nxt = [Fraction(0)] * (len(prod) + 1)
            for d, c in enumerate(prod):
                nxt[d + 1] += c
                nxt[d] += c * i
            prod = nxt
        for d, c in enumerate(prod):
            poly[d] = poly[d] + coeffs[k] * c
    inv_n = coeffs[7] if order >= 7 else zero
    return (poly[::-1], inv_n)


def _q_poly_to_m(p: MomentPoly) -> MomentPoly:
    """Rewrite a polynomial over (q3,q4,q6) in the raw-moment basis (m3,m4,m6)."""
    m3 = MomentPoly.variable("m3", M_VARS)
    m4 = MomentPoly.variable("m4", M_VARS)
    m6 = MomentPoly.variable("m6", M_VARS)
    return p.substitute(
        {
            "q3": m3 * m3,
            "q4": m4 - 3,
            "q6": m6 - m3 * m3 * 10 - m4 * 15 + 30,
        }
    )


def ratio_table(
    spec: MomentSpec,
    n_from: int,
    n_to: int,
    order: int = 7,
    digits: int = DEFAULT_DIGITS,
) -> list:
    """Rows (n, exact sixth moment, expansion value, ratio expansion/exact).

    Empty when n_from > n_to.  The exact column uses the closed sum.
    """
    if n_from < 1:
        raise ValueError("n_from must be >= 1")
    rows = []
    for n in range(n_from, n_to + 1):
        exact = sixth_moment_closed(n, spec)
        approx = evaluate_expansion(n, spec, order, digits)
        with localcontext() as ctx:
            ctx.prec = digits
            ratio = approx.value / (
                Decimal(exact.numerator) / Decimal(exact.denominator)
            )
        rows.append((n, exact, approx.value, ratio))
    return rows


def gamma_factorial_identity_holds(i_max: int) -> bool:
    """Check (1+i)(2+i)(4+i)! = (i+6)! - 8 (i+5)! + 12 (i+4)! for 0 <= i <= i_max."""
    if i_max < 0:
        raise ValueError("i_max must be >= 0")
    for i in range(i_max + 1):
        lhs = (1 + i) * (2 + i) * math.factorial(4 + i)
        rhs = math.factorial(i + 6) - 8 * math.factorial(i + 5) + 12 * math.factorial(i + 4)
        if lhs != rhs:
            return False
    return True
