"""Closed-form and recursive evaluators for determinant power moments.

All results are exact rationals.  The sixth moment has four independent
routes that must agree everywhere (and do; the test suite enforces it):

  closed       triple sum over (j, i, k) with binomial weights
  recursive    inclusion-exclusion over restricted column sets, built from
               the pairing count P_n, the cycle-table count C_n, and the
               path-weight rising factorial (requires m3 = 0)
  series       coefficient extraction from the generating function
  convolution  reduction of the m3 != 0 case to the m3 = 0 case through a
               signed derangement-cycle sum

Heavy inner sums run over plain integers (numerators over a common power of
the denominator) and produce a single Fraction at the end.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .exact import MomentSpec, Rat
from . import series as _series

F6_METHODS = ("closed", "recursive", "series", "convolution")
F4_METHODS = ("closed", "recurrence", "series")


def _comb0(n: int, k: int) -> int:
    """Binomial coefficient that is 0 for out-of-range arguments."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


# ---------------------------------------------------------------------------
# second and fourth moments
# ---------------------------------------------------------------------------

def second_moment(n: int) -> int:
    """E[det^2] = n! for any mean-zero, variance-one entry law."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return math.factorial(n)


def fourth_moment(n: int, m4: Rat, method: str = "closed") -> Fraction:
    """E[det^4] as a function of the entry law's fourth moment."""
    if n < 0:
        raise ValueError("n must be >= 0")
    m4 = Fraction(m4)
    if method == "closed":
        q4 = m4 - 3
        total = Fraction(0)
        for k in range(n + 1):
            total += Fraction((n - k + 1) * (n - k + 2), math.factorial(k)) * q4**k
        return Fraction(math.factorial(n) ** 2, 2) * total
    if method == "recurrence":
        y_prev, y = Fraction(1), m4  # y_0, y_1
        if n == 0:
            return Fraction(1)
        for i in range(2, n + 1):
            y_prev, y = y, (i + m4 - 1) * y + (3 - m4) * (i - 1) * y_prev
        return math.factorial(n) * y
    if method == "series":
        gf = _series.fourth_moment_gf(n, m4)
        return math.factorial(n) ** 2 * gf.coeff_rational(n)
    raise ValueError(f"unknown fourth-moment method {method!r}; choose from {F4_METHODS}")


# ---------------------------------------------------------------------------
# combinatorial building blocks
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def signed_pairing_count(n: int) -> int:
    """P_n: signed, pairing-weighted count of even 6-row tables.

    Satisfies P_n = n(n+2)(n+4) P_{n-1} with P_0 = 1, which closes to
    n!(n+2)!(n+4)!/48; equals the Gaussian sixth moment.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1
    return n * (n + 2) * (n + 4) * signed_pairing_count(n - 1)


def signed_pairing_count_factorial(n: int) -> int:
    """The closed form n!(n+2)!(n+4)!/48 of `signed_pairing_count`."""
    return math.factorial(n) * math.factorial(n + 2) * math.factorial(n + 4) // 48


@lru_cache(maxsize=None)
def cycle_table_count(n: int) -> int:
    """C_n: weighted count of all-cycle 4-column tables.

    C_n = (n-1)(C_{n-1} + 15 C_{n-2}) with C_0 = 1, C_1 = 0; equivalently the
    sum of 15^(cycle count) over all derangements of n elements.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1
    if n == 1:
        return 0
    return (n - 1) * (cycle_table_count(n - 1) + 15 * cycle_table_count(n - 2))


def derangement_weight_sum(n: int, u: Rat):
    """Sum of u^(cycle count) over derangements of n elements.

    Same recurrence shape as `cycle_table_count` but with a generic weight u
    per cycle: a_n = (n-1)(a_{n-1} + u a_{n-2}), a_0 = 1, a_1 = 0.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return u**0  # 1 in u's own ring (empty derangement, empty product)
    prev, cur = u**0, 0 * u
    for i in range(2, n + 1):
        prev, cur = cur, (i - 1) * (cur + u * prev)
    return cur


def rising_factorial(z: int, j: int) -> int:
    """z (z+1) ... (z+j-1): weight of j path-elements fed by 3z spare pairs.

    The empty product gives 1 at j = 0; a zero base gives 0 for j >= 1.
    """
    if j < 0:
        raise ValueError("j must be >= 0")
    result = 1
    for y in range(j):
        result *= z + y
    return result


def path_weight_by_count(z: int, j: int) -> int:
    """Path-structure sum equal to `rising_factorial(z, j)` (Chu-Vandermonde).

    Sums over the number x of disjoint paths: binom(j-1, x-1)/x! * j! graphs,
    each weighted by the falling factorial z(z-1)...(z-x+1) pair choices.
    Kept as an independent cross-check of the closed form.
    """
    total = Fraction(0)
    for x in range(1, j + 1):
        falling = 1
        for y in range(x):
            falling *= z - y
        total += Fraction(math.comb(j - 1, x - 1), math.factorial(x)) * math.factorial(j) * falling
    if j == 0:
        total = Fraction(1)  # empty path structure
    assert total.denominator == 1
    return total.numerator


@lru_cache(maxsize=None)
def restricted_table_sum(n: int, a: int, b: int) -> int:
    """Signed, partially-paired table count with a forced 6-value columns and
    b forced 4-value columns.

    Equals (n!/(n-a-b)!) * sum_i binom(b,i) C_i H(3(n-a-b), b-i) * P_{n-a-b}
    where H is the rising factorial.
    """
    if a < 0 or b < 0 or a + b > n:
        raise ValueError("need a, b >= 0 and a + b <= n")
    placements = 1
    for j in range(a + b):
        placements *= n - j
    z = 3 * (n - a - b)
    inner = sum(
        math.comb(b, i) * cycle_table_count(i) * rising_factorial(z, b - i)
        for i in range(b + 1)
    )
    return placements * inner * signed_pairing_count(n - a - b)


# ---------------------------------------------------------------------------
# sixth moment, four routes
# ---------------------------------------------------------------------------

def sixth_moment_closed(n: int, spec: MomentSpec) -> Fraction:
    """Closed triple sum for E[det^6]; handles m3 != 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    q3, q4, q6 = spec.q3, spec.q4, spec.q6
    den = math.lcm(q3.denominator, q4.denominator, q6.denominator)
    a = int(q3 * den)
    b = int(q4 * den)
    c = int(q6 * den)
    apow = [a**k for k in range(n + 1)]
    bpow = [b**k for k in range(n + 1)]
    cpow = [c**k for k in range(n + 1)]
    dpow = [den**k for k in range(n + 1)]
    nfact = math.factorial(n)
    total = 0
    for j in range(n + 1):
        for i in range(j + 1):
            head = (1 + i) * (2 + i) * math.factorial(4 + i) * _comb0(14 + j + 2 * i, j - i)
            bterm = head * bpow[j - i] * dpow[i]
            for k in range(n - j + 1):
                perm = nfact // math.factorial(n - j - k)  # n!/(n-j-k)!
                total += perm * bterm * _comb0(10, k) * cpow[n - j - k] * apow[k]
    return Fraction(nfact * total, 48 * dpow[n])


def sixth_moment_recursive(n: int, spec: MomentSpec) -> Fraction:
    """Inclusion-exclusion route built on restricted table sums (m3 = 0 only)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if spec.m3 != 0:
        raise ValueError("the recursive route requires m3 = 0")
    e6 = spec.m6 - 15
    e4 = spec.m4 - 3
    den = math.lcm(e6.denominator, e4.denominator)
    u = int(e6 * den)
    v = int(e4 * den)
    upow = [u**k for k in range(n + 1)]
    vpow = [v**k for k in range(n + 1)]
    dpow = [den**k for k in range(n + 1)]
    total = 0
    for j in range(n + 1):
        for a in range(j + 1):
            total += (
                math.comb(n, j)
                * math.comb(j, a)
                * upow[a]
                * vpow[j - a]
                * dpow[n - j]
                * restricted_table_sum(n, a, j - a)
            )
    return Fraction(total, dpow[n])


def sixth_moment_series(n: int, spec: MomentSpec) -> Fraction:
    """(n!)^2 times the t^n coefficient of the generating function."""
    if n < 0:
        raise ValueError("n must be >= 0")
    gf = _series.sixth_moment_gf(n, spec)
    return math.factorial(n) ** 2 * gf.coeff_rational(n)


def sixth_moment_convolution(n: int, spec: MomentSpec) -> Fraction:
    """m3 != 0 route: convolve the m3 = 0 values against signed derangement sums.

    E[det^6](n) = sum_j binom(n,j)^2 f(n-j) j! m3^(2j) (-1)^j D_j where f is
    the sixth moment of the m3-censored spec and D_j sums (-10)^(cycles) over
    derangements of j elements.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    censored = MomentSpec(0, spec.m4, spec.m6)
    base = [sixth_moment_closed(m, censored) for m in range(n + 1)]
    m3sq = spec.m3 * spec.m3
    total = Fraction(0)
    for j in range(n + 1):
        total += (
            math.comb(n, j) ** 2
            * base[n - j]
            * math.factorial(j)
            * m3sq**j
            * (-1) ** j
            * derangement_weight_sum(j, Fraction(-10))
        )
    return total


_F6_DISPATCH = {
    "closed": sixth_moment_closed,
    "recursive": sixth_moment_recursive,
    "series": sixth_moment_series,
    "convolution": sixth_moment_convolution,
}


def sixth_moment(n: int, spec: MomentSpec, method: str = "closed") -> Fraction:
    """E[det^6] by the chosen route; all routes agree on their domains."""
    try:
        fn = _F6_DISPATCH[method]
    except KeyError:
        raise ValueError(f"unknown sixth-moment method {method!r}; choose from {F6_METHODS}")
    return fn(n, spec)


def det_moment(k: int, n: int, spec: MomentSpec, method: str = "closed") -> Fraction:
    """E[det^k] for k in {2, 4, 6}."""
    if k == 2:
        return Fraction(second_moment(n))
    if k == 4:
        f4_method = {"closed": "closed", "series": "series", "recursive": "recurrence"}.get(method)
        if f4_method is None:
            raise ValueError(f"method {method!r} not available for the fourth moment")
        return fourth_moment(n, spec.m4, f4_method)
    if k == 6:
        return sixth_moment(n, spec, method)
    raise ValueError("k must be 2, 4, or 6")
