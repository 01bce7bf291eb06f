"""Exact arithmetic substrate: rationals and sparse multivariate polynomials.

Rationals are `fractions.Fraction` (arbitrary precision, always reduced,
positive denominator).  Polynomials are sparse dictionaries mapping exponent
tuples to Fraction coefficients over a fixed, named variable set.  Nothing in
this module ever rounds.

The default variable basis is the centered moment combinations

    q3 = m3^2,  q4 = m4 - 3,  q6 = m6 - 10*m3^2 - 15*m4 + 30,

which all vanish for the standard Gaussian.  `MomentSpec` holds raw entry
moments (m3, m4, m6) with m1 = 0 and m2 = 1 implied, and exposes the q-image.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rat = Union[int, Fraction]

Q_VARS = ("q3", "q4", "q6")
M_VARS = ("m3", "m4", "m6")


def parse_rational(text: str) -> Fraction:
    """Parse exact rational text `p/q` or `p` (also accepts plain decimals)."""
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    """Render a rational as `p/q`, or just `p` when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class MomentPoly:
    """Sparse multivariate polynomial with exact rational coefficients.

    Immutable once constructed; no zero coefficients are stored.  Binary
    operations require both operands to share the same variable set (plain
    numbers are lifted to constants automatically).
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, Rat]):
        vs = tuple(variables)
        clean = {}
        for expo, coeff in terms.items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != len(vs):
                raise ValueError(f"exponent {expo} does not match variables {vs}")
            if any(e < 0 for e in expo):
                raise ValueError(f"negative exponent in {expo}")
            c = Fraction(coeff)
            if c != 0:
                clean[expo] = clean.get(expo, Fraction(0)) + c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c != 0})

    def __setattr__(self, name, value):
        raise AttributeError("MomentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value: Rat, variables: Iterable[str] = ()) -> "MomentPoly":
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): Fraction(value)})

    @classmethod
    def variable(cls, name: str, variables: Iterable[str]) -> "MomentPoly":
        vs = tuple(variables)
        expo = [0] * len(vs)
        expo[vs.index(name)] = 1
        return cls(vs, {tuple(expo): Fraction(1)})

    # -- predicates / accessors -------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in expo) for expo in self.terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (raises if non-constant)."""
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"polynomial {self} is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def coefficient(self, expo: tuple) -> Fraction:
        return self.terms.get(tuple(expo), Fraction(0))

    # -- arithmetic --------------------------------------------------------

    def _lift(self, other) -> "MomentPoly":
        if isinstance(other, MomentPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable sets differ: {self.vars} vs {other.vars}")
            return other
        return MomentPoly.constant(other, self.vars)

    def __add__(self, other) -> "MomentPoly":
        other = self._lift(other)
        terms = dict(self.terms)
        for expo, coeff in other.terms.items():
            terms[expo] = terms.get(expo, Fraction(0)) + coeff
        return MomentPoly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MomentPoly":
        return MomentPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MomentPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MomentPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MomentPoly":
        if not isinstance(other, MomentPoly):
            c = Fraction(other)
            return MomentPoly(self.vars, {e: k * c for e, k in self.terms.items()})
        other = self._lift(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                terms[expo] = terms.get(expo, Fraction(0)) + c1 * c2
        return MomentPoly(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MomentPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = MomentPoly.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MomentPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- evaluation --------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, Rat]) -> Fraction:
        """Substitute a rational for every variable; exact result."""
        missing = [v for v in self.vars if v not in assignment]
        if missing:
            raise ValueError(f"unbound variables: {missing}")
        values = [Fraction(assignment[v]) for v in self.vars]
        total = Fraction(0)
        for expo, coeff in self.terms.items():
            term = coeff
            for val, e in zip(values, expo):
                if e:
                    term *= val**e
            total += term
        return total

    def substitute(self, assignment: Mapping[str, "MomentPoly"]) -> "MomentPoly":
        """Substitute a polynomial (over a common new basis) for each variable."""
        missing = [v for v in self.vars if v not in assignment]
        if missing:
            raise ValueError(f"unbound variables: {missing}")
        images = [assignment[v] for v in self.vars]
        new_vars = images[0].vars if images else ()
        total = MomentPoly.constant(0, new_vars)
        for expo, coeff in self.terms.items():
            term = MomentPoly.constant(coeff, new_vars)
            for img, e in zip(images, expo):
                if e:
                    term = term * img**e
            total = total + term
        return total

    # -- rendering ---------------------------------------------------------

    def _monomial_str(self, expo: tuple) -> str:
        parts = []
        for name, e in zip(self.vars, expo):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        # graded-lex: ascending total degree, then descending lexicographic
        # exponent order so earlier-declared variables print first
        ordered = sorted(
            self.terms.items(),
            key=lambda item: (sum(item[0]), tuple(-e for e in item[0])),
        )
        pieces = []
        for i, (expo, coeff) in enumerate(ordered):
            mono = self._monomial_str(expo)
            mag = format_rational(abs(coeff))
            if mono:
                body = mono if abs(coeff) == 1 else f"{mag}*{mono}"
            else:
                body = mag
            if i == 0:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"MomentPoly({self.vars!r}, {self})"


@dataclass(frozen=True)
class MomentSpec:
    """Entry-distribution moments m3, m4, m6 (with m1 = 0, m2 = 1 implied)."""

    m3: Fraction
    m4: Fraction
    m6: Fraction

    def __init__(self, m3: Rat, m4: Rat, m6: Rat):
        object.__setattr__(self, "m3", Fraction(m3))
        object.__setattr__(self, "m4", Fraction(m4))
        object.__setattr__(self, "m6", Fraction(m6))

    @classmethod
    def gaussian(cls) -> "MomentSpec":
        return cls(0, 3, 15)

    @classmethod
    def bernoulli(cls) -> "MomentSpec":
        """Uniform law on {-1, +1}."""
        return cls(0, 1, 1)

    @property
    def q3(self) -> Fraction:
        return self.m3 * self.m3

    @property
    def q4(self) -> Fraction:
        return self.m4 - 3

    @property
    def q6(self) -> Fraction:
        return self.m6 - 10 * self.m3 * self.m3 - 15 * self.m4 + 30


def moments_to_q(spec: MomentSpec) -> tuple:
    """The centered image (q3, q4, q6) of a moment spec."""
    return (spec.q3, spec.q4, spec.q6)


def q_to_moments(q3: Rat, q4: Rat, q6: Rat) -> tuple:
    """Invert the q-map up to the sign of m3: returns (m3^2, m4, m6)."""
    q3, q4, q6 = Fraction(q3), Fraction(q4), Fraction(q6)
    m4 = q4 + 3
    m6 = q6 + 10 * q3 + 15 * m4 - 30
    return (q3, m4, m6)


def scale_moments(m2: Rat, m3: Rat, m4: Rat, m6: Rat, m1: Rat = 0) -> tuple:
    """Standardize a mean-zero law with variance m2 to variance one.

    Returns (spec, m2) where spec holds m_k' = m_k / m2^(k/2).  The sixth
    determinant moment of the raw law at size n is m2^(3n) times that of the
    scaled law; see `det6_rescale`.
    """
    m1, m2 = Fraction(m1), Fraction(m2)
    if m1 != 0:
        raise ValueError("scaling requires mean zero (m1 = 0)")
    if m2 <= 0:
        raise ValueError("variance m2 must be positive")
    # m2 may be a non-square rational: odd moments scale by m2^(3/2), so m3
    # stays exact only through its square.  Store m3' as a signed square root
    # of q3' when it exists, otherwise reject.
    q3_scaled = Fraction(m3) ** 2 / m2**3
    m3_scaled = _exact_sqrt(q3_scaled)
    if m3_scaled is None:
        raise ValueError(f"m3/m2^(3/2) is irrational for m2={m2}, m3={m3}")
    if Fraction(m3) < 0:
        m3_scaled = -m3_scaled
    spec = MomentSpec(m3_scaled, Fraction(m4) / m2**2, Fraction(m6) / m2**3)
    return (spec, m2)


def det6_rescale(m2: Rat, n: int) -> Fraction:
    """Factor recovering the raw law's sixth determinant moment at size n."""
    return Fraction(m2) ** (3 * n)


def _exact_sqrt(x: Fraction):
    if x < 0:
        return None
    num = _isqrt_exact(x.numerator)
    den = _isqrt_exact(x.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _isqrt_exact(n: int):
    import math

    r = math.isqrt(n)
    return r if r * r == n else None
