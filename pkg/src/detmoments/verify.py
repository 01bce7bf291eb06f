"""Self-verification checks wired into the CLI `verify` command.

`quick` runs the exact identities plus the small-table oracle comparisons;
`full` adds the 5x5 matrix enumerations, the table-correspondence cases, the
skewed two-point law, and the n = 4 table census.  Each check returns a
boolean plus a short detail string naming what was compared.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import asymptotics, moments, oracle
from .exact import MomentSpec
from .series import derangement_cycle_gf

TWO_POINT = ((Fraction(2), Fraction(1, 5)), (Fraction(-1, 2), Fraction(4, 5)))

TABLE1 = {
    1: (1, 1, 1, 1, 1, 1),
    2: (2, 8, 32, 2, 8, 32),
    3: (6, 96, 1536, 6, 96, 2976),
    4: (24, 2112, 282624, 24, 2112, 513024),
    5: (120, 68160, 66846720, 120, 68160, 157854720),
}

BERNOULLI_POLY = [
    Fraction(1),
    Fraction(29),
    Fraction(335),
    Fraction(5861, 3),
    Fraction(17944, 3),
    Fraction(44036, 5),
    Fraction(167536, 45),
]
BERNOULLI_INV_N = Fraction(-210176, 63)

# expected symbolic expansion coefficients as (m3, m4, m6) exponent -> coefficient
SYMBOLIC_N5 = {
    (0, 0, 1): Fraction(1),
    (0, 2, 0): Fraction(-3),
    (0, 1, 0): Fraction(-3),
    (0, 0, 0): Fraction(34),
}
SYMBOLIC_N4 = {
    (0, 0, 2): Fraction(1, 2),
    (4, 0, 0): Fraction(-5),
    (0, 4, 0): Fraction(9, 2),
    (0, 3, 0): Fraction(10),
    (0, 2, 0): Fraction(-183, 2),
    (0, 1, 0): Fraction(-63),
    (0, 2, 1): Fraction(-3),
    (0, 1, 1): Fraction(-3),
    (0, 0, 1): Fraction(28),
    (0, 0, 0): Fraction(905, 2),
}


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


def _check_gamma_identity(threads=1):
    ok = asymptotics.gamma_factorial_identity_holds(50)
    return ok, "(1+i)(2+i)(4+i)! = (i+6)! - 8(i+5)! + 12(i+4)! for i <= 50"


def _check_path_weight(threads=1):
    for z in range(1, 31):
        for j in range(13):
            if moments.rising_factorial(z, j) != moments.path_weight_by_count(z, j):
                return False, f"mismatch at z={z}, j={j}"
    return True, "rising factorial equals the path-count sum for z <= 30, j <= 12"


def _check_cycle_routes(threads=1):
    gf = derangement_cycle_gf(7)
    for n in range(8):
        recurrence = moments.cycle_table_count(n)
        enumerated = oracle.derangement_cycle_sum(n, 15)
        extracted = math.factorial(n) * gf.coeff(n).evaluate({"u": 15})
        if not recurrence == enumerated == extracted:
            return False, f"mismatch at n={n}"
    return True, "recurrence = derangement enumeration = GF extraction for n <= 7"


def _check_derangement_gf_symbolic(threads=1):
    gf = derangement_cycle_gf(6)
    for n in range(7):
        if math.factorial(n) * gf.coeff(n) != oracle.derangement_cycle_polynomial(n):
            return False, f"mismatch at n={n}"
    return True, "bivariate GF matches enumerated cycle polynomials for n <= 6"


def _check_gaussian_collapse(threads=1):
    spec = MomentSpec.gaussian()
    for n in range(51):
        if moments.sixth_moment_closed(n, spec) != moments.signed_pairing_count(n):
            return False, f"mismatch at n={n}"
    return True, "Gaussian sixth moment equals n!(n+2)!(n+4)!/48 for n <= 50"


def _check_cross_methods(threads=1):
    rng = random.Random(20260810)
    for trial in range(6):
        m3 = 0 if trial % 2 == 0 else Fraction(rng.randint(-20, 20), rng.randint(1, 20))
        spec = MomentSpec(
            m3,
            Fraction(rng.randint(-20, 20), rng.randint(1, 20)),
            Fraction(rng.randint(-20, 20), rng.randint(1, 20)),
        )
        for n in range(11):
            closed = moments.sixth_moment_closed(n, spec)
            if closed != moments.sixth_moment_series(n, spec):
                return False, f"series mismatch at n={n}, spec={spec}"
            if closed != moments.sixth_moment_convolution(n, spec):
                return False, f"convolution mismatch at n={n}, spec={spec}"
            if spec.m3 == 0 and closed != moments.sixth_moment_recursive(n, spec):
                return False, f"recursive mismatch at n={n}, spec={spec}"
    return True, "closed = series = convolution (= recursive at m3=0) on sampled specs, n <= 10"


def _check_asymptotic_coefficients(threads=1):
    poly, inv_n = asymptotics.expansion_poly_form(MomentSpec.bernoulli(), 7)
    if poly != BERNOULLI_POLY or inv_n != BERNOULLI_INV_N:
        return False, "Bernoulli polynomial-in-n coefficients deviate"
    sym_poly, _ = asymptotics.expansion_poly_form(None, 7)
    if sym_poly[1].terms != SYMBOLIC_N5 or sym_poly[2].terms != SYMBOLIC_N4:
        return False, "symbolic n^5 / n^4 coefficients deviate"
    return True, "Bernoulli expansion and symbolic n^5, n^4 coefficients verified"


def _check_table1_small(threads=1):
    dist = oracle.FiniteDistribution.uniform_pm1()
    spec = MomentSpec.bernoulli()
    for n in range(1, 5):
        f2 = moments.second_moment(n)
        f4 = moments.fourth_moment(n, spec.m4)
        f6 = moments.sixth_moment_closed(n, spec)
        p6 = oracle.per_power_moment(6, n, dist, symmetry=True, threads=threads)
        if (f2, f4, f6, f2, f4, p6) != TABLE1[n]:
            return False, f"cell mismatch at n={n}"
        if oracle.det_power_moment(6, n, dist, symmetry=True, threads=threads) != f6:
            return False, f"determinant oracle mismatch at n={n}"
    return True, "formula columns and enumeration oracles reproduce the small table"


def _check_table1_row5(threads=1):
    dist = oracle.FiniteDistribution.uniform_pm1()
    spec = MomentSpec.bernoulli()
    f6 = oracle.det_power_moment(6, 5, dist, symmetry=True, threads=threads)
    p6 = oracle.per_power_moment(6, 5, dist, symmetry=True, threads=threads)
    ok = f6 == moments.sixth_moment_closed(5, spec) == 66846720 and p6 == 157854720
    return ok, "5x5 enumeration reproduces 66846720 / 157854720"


def _check_correspondence(threads=1):
    expected = {1: (8, 48), 2: (4, 24), 3: (-2, -12), 4: (0, 0)}
    for case, want in expected.items():
        got = oracle.correspondence_case_sums(case)
        if got != want or got[1] != 6 * got[0]:
            return False, f"case {case}: got {got}, want {want}"
    return True, "all four cases match and the 3-column sum is 6x the 2-column sum"


def _check_two_point(threads=1):
    dist = oracle.FiniteDistribution(TWO_POINT)
    spec = dist.moment_spec()
    for n in range(1, 5):
        if oracle.det_power_moment(6, n, dist, threads=threads) != moments.sixth_moment_closed(n, spec):
            return False, f"mismatch at n={n}"
    return True, "skewed two-point law: enumeration equals the closed sum for n <= 4"


def _check_pairing_sums(threads=1):
    for n in range(5):
        if oracle.pairing_sum(n) != moments.signed_pairing_count(n):
            return False, f"mismatch at n={n}"
    return True, "table pairing census equals n!(n+2)!(n+4)!/48 for n <= 4"


def _check_table_census(threads=1):
    rng = random.Random(31415)
    for n in range(4):
        census = oracle.table_weight_sum(n, signed=True)
        for _ in range(3):
            spec = MomentSpec(
                Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
            )
            value = census.evaluate({"m3": spec.m3, "m4": spec.m4, "m6": spec.m6})
            if value != moments.sixth_moment_closed(n, spec):
                return False, f"mismatch at n={n}, spec={spec}"
    return True, "symbolic table census equals the closed sum at sampled specs, n <= 3"


_CHECKS = (
    ("gamma-identity", "quick", _check_gamma_identity),
    ("path-weight-identity", "quick", _check_path_weight),
    ("cycle-count-routes", "quick", _check_cycle_routes),
    ("derangement-gf-symbolic", "quick", _check_derangement_gf_symbolic),
    ("gaussian-collapse", "quick", _check_gaussian_collapse),
    ("cross-method-sample", "quick", _check_cross_methods),
    ("asymptotic-coefficients", "quick", _check_asymptotic_coefficients),
    ("table1-small", "quick", _check_table1_small),
    ("table-census-symbolic", "quick", _check_table_census),
    ("table1-row5", "full", _check_table1_row5),
    ("correspondence-cases", "full", _check_correspondence),
    ("two-point-oracle", "full", _check_two_point),
    ("pairing-sums", "full", _check_pairing_sums),
)


def run_checks(level: str = "quick", threads: int = 1) -> list:
    """Run the verification suite; `full` includes everything `quick` does."""
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    results = []
    for name, tier, fn in _CHECKS:
        if tier == "full" and level != "full":
            continue
        try:
            ok, detail = fn(threads)
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name, ok, detail))
    return results
