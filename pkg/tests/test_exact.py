import math
import random
from fractions import Fraction as F

import pytest

from detmoments.exact import (
    MomentPoly,
    MomentSpec,
    Q_VARS,
    det6_rescale,
    format_rational,
    moments_to_q,
    parse_rational,
    q_to_moments,
    scale_moments,
)


def q_var(name):
    return MomentPoly.variable(name, Q_VARS)


def q_const(value):
    return MomentPoly.constant(value, Q_VARS)


def random_poly(rng, max_terms=4, max_exp=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        expo = tuple(rng.randint(0, max_exp) for _ in Q_VARS)
        terms[expo] = F(rng.randint(-9, 9), rng.randint(1, 9))
    return MomentPoly(Q_VARS, terms)


def test_rational_text_round_trip():
    for text in ("3", "-7", "9/4", "-455/16", "0"):
        assert format_rational(parse_rational(text)) == text
    assert parse_rational("04/8") == F(1, 2)
    assert format_rational(F(4, 8)) == "1/2"


def test_difference_of_squares():
    q4 = q_var("q4")
    assert (q4 + 1) * (q4 - 1) == q4 * q4 - 1


def test_multiply_by_zero_is_empty():
    rng = random.Random(1)
    p = random_poly(rng)
    assert (p * 0).terms == {}
    assert (p * q_const(0)).is_zero()


def test_binomial_coefficient_in_tenth_power():
    # (1 + q3)^10: the q3^5 coefficient must be C(10,5), computed independently
    p = (q_var("q3") + 1) ** 10
    assert p.coefficient((5, 0, 0)) == math.comb(10, 5) == 252
    assert p.coefficient((0, 0, 0)) == 1
    assert p.coefficient((10, 0, 0)) == 1


def test_ring_axioms_on_random_triples():
    rng = random.Random(2)
    for _ in range(25):
        a, b, c = (random_poly(rng) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a + b == b + a


def test_eval_is_multiplicative():
    rng = random.Random(3)
    for _ in range(25):
        a, b = random_poly(rng), random_poly(rng)
        point = {v: F(rng.randint(-5, 5), rng.randint(1, 5)) for v in Q_VARS}
        assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
        assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)


def test_eval_examples():
    q3, q4, q6 = (q_var(v) for v in Q_VARS)
    bernoulli = {"q3": 0, "q4": F(1) - 3, "q6": F(1) - 15 + 30}
    assert q6.evaluate(bernoulli) == 16
    assert q4.evaluate({"q3": 0, "q4": F(3) - 3, "q6": 0}) == 0
    assert (q3.evaluate({"q3": F(3, 2) ** 2, "q4": 0, "q6": 0})) == F(9, 4)


def test_eval_unbound_variable_raises():
    with pytest.raises(ValueError):
        q_var("q3").evaluate({"q4": 1, "q6": 1})


def test_variable_set_mismatch_raises():
    p = MomentPoly.variable("u", ("u",))
    with pytest.raises(ValueError):
        _ = p + q_var("q3")
    with pytest.raises(ValueError):
        _ = p * q_var("q4")


def test_zero_power_zero_is_one():
    zero = q_const(0)
    assert zero**0 == 1
    assert F(0) ** 0 == 1


def test_printing_graded_lex():
    q3, q4 = q_var("q3"), q_var("q4")
    p = q_const(16) - 2 * q4 + F(9, 4) * q3 * q3
    assert str(p) == "16 - 2*q4 + 9/4*q3^2"
    assert str(q_const(0)) == "0"
    assert str(-q4) == "-q4"


def test_moments_to_q_examples():
    assert moments_to_q(MomentSpec(0, 3, 15)) == (0, 0, 0)
    assert moments_to_q(MomentSpec(0, 1, 1)) == (0, -2, 16)
    # the skewed two-point law, cross-checked by explicit rational arithmetic
    spec = MomentSpec(F(3, 2), F(13, 4), F(205, 16))
    expected_q6 = F(205, 16) - 10 * F(3, 2) ** 2 - 15 * F(13, 4) + 30
    assert expected_q6 == F(-455, 16)
    assert moments_to_q(spec) == (F(9, 4), F(1, 4), F(-455, 16))


def test_q_round_trip_on_random_specs():
    rng = random.Random(4)
    for _ in range(50):
        spec = MomentSpec(
            F(rng.randint(-20, 20), rng.randint(1, 20)),
            F(rng.randint(-20, 20), rng.randint(1, 20)),
            F(rng.randint(-20, 20), rng.randint(1, 20)),
        )
        m3_sq, m4, m6 = q_to_moments(*moments_to_q(spec))
        assert (m3_sq, m4, m6) == (spec.m3**2, spec.m4, spec.m6)


def test_scale_moments_identity_at_unit_variance():
    spec, m2 = scale_moments(1, F(1, 2), 2, 9)
    assert m2 == 1
    assert spec == MomentSpec(F(1, 2), 2, 9)


def test_scale_moments_fourth_moment():
    spec, m2 = scale_moments(4, 0, 48, 960)
    assert spec.m4 == 3
    assert det6_rescale(m2, 2) == 4**6


def test_scale_moments_two_point_law():
    # uniform on {-2, 2}: m2 = 4, scaled law is +-1
    spec, m2 = scale_moments(4, 0, 16, 64)
    assert spec == MomentSpec.bernoulli()
    # raw sixth moment at n=2 recovers 4^6 * 32 = 131072
    from detmoments.moments import sixth_moment_closed

    assert det6_rescale(m2, 2) * sixth_moment_closed(2, spec) == 131072


def test_scale_moments_rejects_bad_inputs():
    with pytest.raises(ValueError):
        scale_moments(0, 0, 3, 15)
    with pytest.raises(ValueError):
        scale_moments(-1, 0, 3, 15)
    with pytest.raises(ValueError):
        scale_moments(1, 0, 3, 15, m1=F(1, 2))


def test_spec_constructors():
    assert MomentSpec.gaussian().q4 == 0
    assert MomentSpec.bernoulli().q6 == 16
    assert MomentSpec(F(3, 2), F(13, 4), F(205, 16)).q3 == F(9, 4)
