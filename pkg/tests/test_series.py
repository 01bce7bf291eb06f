import math
import random
from fractions import Fraction as F

import pytest

from detmoments.exact import MomentPoly, MomentSpec, Q_VARS
from detmoments.series import (
    TruncatedSeries,
    asym_correction_gf,
    derangement_cycle_gf,
    fourth_moment_gf,
    linear_power,
    sixth_moment_gf,
)


def ts(coeffs, order):
    return TruncatedSeries.from_coeffs(coeffs, order)


def rationals(series):
    return [series.coeff_rational(n) for n in range(series.order + 1)]


def test_product_examples():
    one_plus_t = ts([1, 1], 2)
    one_minus_t = ts([1, -1], 2)
    assert rationals(one_plus_t * one_minus_t) == [1, 0, -1]
    a = ts([3, F(1, 2), 7], 2)
    assert a * ts([1], 2) == a


def test_product_against_hand_convolution():
    ones = ts([1, 1, 1, 1], 3)
    assert rationals(ones * ones) == [1, 2, 3, 4]
    rng = random.Random(5)
    for _ in range(10):
        a = [F(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(5)]
        b = [F(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(5)]
        product = ts(a, 4) * ts(b, 4)
        for n in range(5):
            assert product.coeff_rational(n) == sum(a[i] * b[n - i] for i in range(n + 1))


def test_order_mismatch_raises():
    with pytest.raises(ValueError):
        _ = ts([1, 1], 1) * ts([1, 1, 1], 2)
    with pytest.raises(ValueError):
        _ = ts([1, 1], 1) + ts([1, 1, 1], 2)


def test_coeff_out_of_range_raises():
    with pytest.raises(ValueError):
        ts([1, 2], 1).coeff(2)


def test_exp_basics():
    assert rationals(TruncatedSeries.constant(0, 4).exp()) == [1, 0, 0, 0, 0]
    e_t = ts([0, 1], 6).exp()
    assert rationals(e_t) == [F(1, math.factorial(n)) for n in range(7)]
    q6 = MomentPoly.variable("q6", Q_VARS)
    zero = MomentPoly.constant(0, Q_VARS)
    e_q6t = TruncatedSeries([zero, q6, zero]).exp()
    assert e_q6t.coeff(2) == q6 * q6 * F(1, 2)


def test_exp_requires_zero_constant_term():
    with pytest.raises(ValueError):
        ts([1, 1], 3).exp()


def test_exp_is_a_homomorphism():
    rng = random.Random(6)
    for _ in range(8):
        a = ts([0] + [F(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(5)], 5)
        b = ts([0] + [F(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(5)], 5)
        assert (a + b).exp() == a.exp() * b.exp()


def test_linear_power_geometric_series():
    q4 = MomentPoly.variable("q4", Q_VARS)
    geo = linear_power(-q4, -1, 5, Q_VARS)
    for n in range(6):
        assert geo.coeff(n) == q4**n


def test_linear_power_top_coefficient():
    q3 = MomentPoly.variable("q3", Q_VARS)
    p = linear_power(q3, 10, 10, Q_VARS)
    assert p.coeff(10) == q3**10


def test_linear_power_negative_binomial():
    q4 = MomentPoly.variable("q4", Q_VARS)
    p = linear_power(-q4, -3, 2, Q_VARS)
    assert p.coeff(2) == q4 * q4 * 6


def test_linear_power_inverse_pairs():
    rng = random.Random(7)
    for order in (1, 3, 6):
        for e in (1, 2, 5, -1, -4):
            c = F(rng.randint(-6, 6), rng.randint(1, 6))
            prod = linear_power(c, e, order) * linear_power(c, -e, order)
            assert rationals(prod) == [1] + [0] * order


def test_sixth_moment_gf_constant_term():
    assert sixth_moment_gf(0, MomentSpec.bernoulli()).coeff_rational(0) == 1
    assert sixth_moment_gf(3).coeff(0) == 1


def test_sixth_moment_gf_gaussian_factorials():
    gf = sixth_moment_gf(8, MomentSpec.gaussian())
    for n in range(9):
        expected = F(
            math.factorial(n) * math.factorial(n + 2) * math.factorial(n + 4), 48
        )
        assert math.factorial(n) ** 2 * gf.coeff_rational(n) == expected


def test_sixth_moment_gf_bernoulli_table():
    gf = sixth_moment_gf(5, MomentSpec.bernoulli())
    values = [math.factorial(n) ** 2 * gf.coeff_rational(n) for n in range(6)]
    assert values == [1, 1, 32, 1536, 282624, 66846720]
    assert gf.coeff_rational(3) == F(1536, 36)


def test_fourth_moment_gf_values():
    gf = fourth_moment_gf(5, 1)
    f4 = [math.factorial(n) * math.factorial(n) * gf.coeff_rational(n) for n in range(6)]
    assert f4 == [1, 1, 8, 96, 2112, 68160]
    gauss = fourth_moment_gf(6, 3)
    for n in range(7):
        assert math.factorial(n) ** 2 * gauss.coeff_rational(n) == F(
            math.factorial(n) * math.factorial(n + 2), 2
        )


def test_correction_gf_constant_term_is_one():
    rng = random.Random(8)
    for _ in range(5):
        spec = MomentSpec(
            F(rng.randint(-9, 9), rng.randint(1, 9)),
            F(rng.randint(-9, 9), rng.randint(1, 9)),
            F(rng.randint(-9, 9), rng.randint(1, 9)),
        )
        assert asym_correction_gf(2, spec).coeff_rational(0) == 1
    assert asym_correction_gf(0).coeff(0) == 1


def test_correction_gf_gaussian_terminates():
    # all q vanish, so C(t) is exactly the quadratic bracket 1 - 8t + 12t^2
    gf = asym_correction_gf(6, MomentSpec.gaussian())
    assert rationals(gf) == [1, -8, 12, 0, 0, 0, 0]


def test_correction_gf_symbolic_linear_coefficient():
    gf = asym_correction_gf(1)
    q3 = MomentPoly.variable("q3", Q_VARS)
    q4 = MomentPoly.variable("q4", Q_VARS)
    q6 = MomentPoly.variable("q6", Q_VARS)
    assert gf.coeff(1) == q6 - q4 * q4 * 3 - q4 * 6 - 8 + q3 * 10


def test_derangement_gf_small_cases():
    gf = derangement_cycle_gf(3)
    u = MomentPoly.variable("u", ("u",))
    assert gf.coeff(0) == 1
    assert gf.coeff(1).is_zero()
    assert 2 * gf.coeff(2) == u
    assert 6 * gf.coeff(3) == 2 * u


def test_derangement_gf_matches_census():
    from detmoments.oracle import derangement_cycle_polynomial

    gf = derangement_cycle_gf(7)
    for n in range(8):
        assert math.factorial(n) * gf.coeff(n) == derangement_cycle_polynomial(n)


def test_derangement_gf_weighted_extractions():
    from detmoments.moments import cycle_table_count, derangement_weight_sum

    gf = derangement_cycle_gf(7)
    for n in range(8):
        poly = math.factorial(n) * gf.coeff(n)
        assert poly.evaluate({"u": 15}) == cycle_table_count(n)
        assert poly.evaluate({"u": -10}) == derangement_weight_sum(n, F(-10))


def test_negative_order_rejected():
    with pytest.raises(ValueError):
        sixth_moment_gf(-1)
    with pytest.raises(ValueError):
        derangement_cycle_gf(-2)
