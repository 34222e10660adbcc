"""Exact scalar, polynomial, and rational-function arithmetic."""

from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from gammacf.rational import (
    PoleError,
    RationalFunction,
    RationalPolynomial,
    ZeroDenominatorError,
    poly_gcd,
    rat_arith,
    ratfun_equal,
    ratfun_eval,
    ratfun_normalize,
)

P = RationalPolynomial
RF = RationalFunction


def rand_fraction(rng, span=50):
    num = rng.randint(-span, span)
    den = rng.randint(1, span)
    return F(num, den)


# --- scalars ------------------------------------------------------------------


def test_scalar_examples():
    assert rat_arith(F(1, 2), F(1, 6), "add") == F(2, 3)
    assert rat_arith(F(7230, 6241), F(6241, 7230), "mul") == 1
    # the log-series m=11 term combined with the depth-9 tail coefficient
    assert rat_arith(F(-10, 11), F(736265, 836136), "add") == F(-262445, 9197496)


def test_scalar_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        rat_arith(1, 0, "div")


def test_scalar_rejects_floats():
    with pytest.raises(TypeError):
        rat_arith(0.5, 1, "add")


def test_field_laws_on_random_triples():
    rng = random.Random(424242)
    for _ in range(200):
        a, b, c = (rand_fraction(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == 0
        if a != 0:
            assert a * (1 / a) == 1


# --- polynomials --------------------------------------------------------------


def test_polynomial_normalizes_trailing_zeros():
    assert P((1, 2, 0, 0)).coeffs == (F(1), F(2))
    assert P((0, 0)).is_zero
    assert P(()).degree == -1


def test_polynomial_arithmetic_and_eval():
    a = P((1, 2))  # 1 + 2n
    b = P((0, 0, 3))  # 3n^2
    assert (a + b).coeffs == (F(1), F(2), F(3))
    assert (a * b).coeffs == (F(0), F(0), F(3), F(6))
    assert (a - a).is_zero
    assert (a * b).evaluate(F(1, 2)) == a.evaluate(F(1, 2)) * b.evaluate(F(1, 2))


def test_polynomial_shift_matches_pointwise():
    rng = random.Random(7)
    for _ in range(25):
        p = P([rand_fraction(rng) for _ in range(rng.randint(1, 7))])
        shifted = p.shifted()
        for x in (0, 1, F(5, 3), -2, 10):
            assert shifted.evaluate(x) == p.evaluate(F(x) + 1)


def test_polynomial_derivative():
    p = P((5, 3, 0, 2))  # 5 + 3n + 2n^3
    assert p.derivative().coeffs == (F(3), F(0), F(6))
    assert P((7,)).derivative().is_zero


def test_polynomial_division():
    num = P((-1, 0, 1))  # n^2 - 1
    den = P((-1, 1))  # n - 1
    q, r = num.divmod(den)
    assert q.coeffs == (F(1), F(1)) and r.is_zero
    q, r = P((1, 1)).divmod(P((0, 0, 1)))
    assert q.is_zero and r.coeffs == (F(1), F(1))


def test_poly_gcd_primitive_positive():
    a = P((-1, 0, 1)) * P((2, 4))  # (n^2-1)(4n+2)
    b = P((-1, 1)) * P((6,))
    g = poly_gcd(a, b)
    assert g.coeffs == (F(-1), F(1))  # primitive n-1, positive leading
    assert poly_gcd(P(()), b).coeffs == (F(-1), F(1))


# --- rational functions -------------------------------------------------------


def test_normalize_clears_denominators():
    # (n/2 - 1/12) / n^2 must come out as (6n - 1)/(12 n^2)
    rf = ratfun_normalize(P((F(-1, 12), F(1, 2))), P((0, 0, 1)))
    assert rf.num.coeffs == (F(-1), F(6))
    assert rf.den.coeffs == (F(0), F(0), F(12))


def test_normalize_zero_numerator():
    rf = ratfun_normalize(P(()), P((1, 1)))
    assert rf.num.is_zero and rf.den.coeffs == (F(1),)


def test_normalize_cancels_common_factor():
    rf = ratfun_normalize(P((-1, 0, 1)), P((-1, 1)))  # (n^2-1)/(n-1)
    assert rf.num.coeffs == (F(1), F(1)) and rf.den.coeffs == (F(1),)


def test_normalize_sign_convention():
    rf = ratfun_normalize(P((1,)), P((0, -2)))  # 1/(-2n)
    assert rf.den.coeffs[-1] > 0
    assert rf.num.coeffs == (F(-1),)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDenominatorError):
        ratfun_normalize(P((1,)), P(()))


def test_canonical_form_idempotent():
    rng = random.Random(11)
    for _ in range(30):
        num = P([rand_fraction(rng) for _ in range(rng.randint(0, 5))])
        den = P([rand_fraction(rng) for _ in range(rng.randint(1, 5))])
        if den.is_zero:
            continue
        rf = RF(num, den)
        again = RF(rf.num, rf.den)
        assert rf == again


def test_eval_examples():
    r2 = RF(P((3,)), P((1, 6)))
    assert ratfun_eval(r2, 1) == F(3, 7)
    r1 = RF(P((1,)), P((0, 2)))
    assert ratfun_eval(r1, 2) == F(1, 4)


def test_eval_pole():
    rf = RF(P((1,)), P((-1, 1)))
    with pytest.raises(PoleError):
        ratfun_eval(rf, 1)


def test_ratfun_equal_examples():
    assert ratfun_equal(RF(P((1,)), P((0, 2))), RF(P((2,)), P((0, 4))))
    assert not ratfun_equal(RF(P((1,)), P((0, 2))), RF(P((3,)), P((1, 6))))


def test_ratfun_equal_iff_pointwise_agreement():
    rng = random.Random(99)
    for _ in range(40):
        a = RF(
            P([rand_fraction(rng) for _ in range(rng.randint(1, 4))]),
            P([rand_fraction(rng, 5) + 6 for _ in range(rng.randint(1, 4))]),
        )
        b = RF(
            P([rand_fraction(rng) for _ in range(rng.randint(1, 4))]),
            P([rand_fraction(rng, 5) + 6 for _ in range(rng.randint(1, 4))]),
        )
        needed = 1 + max(
            a.num.degree + b.den.degree, b.num.degree + a.den.degree, 0
        )
        points = []
        x = 1
        while len(points) < needed:
            if a.den.evaluate(x) != 0 and b.den.evaluate(x) != 0:
                points.append(x)
            x += 1
        agree = all(a.evaluate(x) == b.evaluate(x) for x in points)
        assert agree == ratfun_equal(a, b)


def test_ratfun_arithmetic_matches_pointwise():
    rng = random.Random(3)
    for _ in range(25):
        a = RF(
            P([rand_fraction(rng) for _ in range(rng.randint(1, 4))]),
            P([rand_fraction(rng, 5) + 7 for _ in range(rng.randint(1, 3))]),
        )
        b = RF(
            P([rand_fraction(rng) for _ in range(rng.randint(1, 4))]),
            P([rand_fraction(rng, 5) + 7 for _ in range(rng.randint(1, 3))]),
        )
        for x in (1, 2, 3):
            if a.den.evaluate(x) == 0 or b.den.evaluate(x) == 0:
                continue
            assert (a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x)
            assert (a - b).evaluate(x) == a.evaluate(x) - b.evaluate(x)
            assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)
            if not b.is_zero and b.evaluate(x) != 0:
                assert (a / b).evaluate(x) == a.evaluate(x) / b.evaluate(x)


def test_ratfun_derivative_quotient_rule():
    rf = RF(P((1, 1)), P((0, 0, 2)))  # (1+n)/(2n^2)
    d = rf.derivative()
    # d/dn [(1+n)/(2n^2)] = (2n^2 - (1+n) 4n) / 4n^4 = (-n - 2)/(2 n^3)
    assert d == RF(P((-2, -1)), P((0, 0, 0, 2)))
