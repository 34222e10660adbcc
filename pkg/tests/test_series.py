"""Truncated series arithmetic and asymptotic expansion."""

from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from gammacf.approximant import cf_for_depth, reference_coefficients
from gammacf.rational import RationalFunction, RationalPolynomial
from gammacf.series import (
    DivisorNotUnitError,
    OrderTooSmallError,
    TruncatedSeries,
    UnboundedAtInfinityError,
    difference_expansion,
    expand_at_infinity,
    log_term_series,
    series_arith,
    shift_argument,
)

P = RationalPolynomial
RF = RationalFunction
TS = TruncatedSeries


def test_constructor_pads_and_truncates():
    s = TS((1, 2), order=4)
    assert s.coeffs == (F(1), F(2), F(0), F(0), F(0))
    assert TS((1, 2, 3), order=1).coeffs == (F(1), F(2))
    with pytest.raises(IndexError):
        _ = TS((1,), order=2)[3]


def test_product_difference_of_squares():
    one_plus = TS((1, 1), order=4)
    one_minus = TS((1, -1), order=4)
    assert (one_plus * one_minus).coeffs == (F(1), F(0), F(-1), F(0), F(0))


def test_geometric_inverse():
    geom = TS((1,), order=3) / TS((1, -1), order=3)
    assert geom.coeffs == (F(1), F(1), F(1), F(1))


def test_mul_div_roundtrip_random():
    rng = random.Random(17)
    for _ in range(30):
        f = TS([F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(6)])
        g = TS([F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(6)])
        if g.coeffs[0] == 0:
            continue
        assert (f * g) / g == f


def test_division_needs_unit():
    with pytest.raises(DivisorNotUnitError):
        series_arith(TS((1,), order=2), TS((0, 1), order=2), "div")


def test_order_is_min_of_operands():
    a = TS((1, 1, 1), order=2)
    b = TS((1,), order=5)
    assert (a + b).order == 2
    assert (a * b).order == 2


def test_log_term_series_values():
    s = log_term_series(4)
    assert s.coeffs == (F(0), F(0), F(1, 2), F(-2, 3), F(3, 4))
    assert log_term_series(15)[15] == F(-14, 15)
    with pytest.raises(OrderTooSmallError):
        log_term_series(1)


def test_expand_monomial():
    s = expand_at_infinity(RF(P((1,)), P((0, 2))), 3)
    assert s.coeffs == (F(0), F(1, 2), F(0), F(0))


def test_expand_r2_against_geometric_oracle():
    # 3/(6n+1) = (1/2n) * 1/(1 + 1/(6n)): coefficient of 1/n^m is
    # (1/2) * (-1/6)^(m-1), an independent closed form
    s = expand_at_infinity(RF(P((3,)), P((1, 6))), 9)
    for m in range(1, 10):
        assert s[m] == F(1, 2) * F(-1, 6) ** (m - 1)
    assert s[0] == 0


def test_expand_rejects_unbounded():
    with pytest.raises(UnboundedAtInfinityError):
        expand_at_infinity(RF(P((0, 0, 1)), P((1, 1))), 3)


def test_expand_zero_function():
    z = expand_at_infinity(RF(P(()), P((1, 1))), 4)
    assert all(c == 0 for c in z.coeffs)


def test_shift_examples():
    assert shift_argument(RF(P((1,)), P((0, 2)))) == RF(P((1,)), P((2, 2)))
    assert shift_argument(RF(P((3,)), P((1, 6)))) == RF(P((3,)), P((7, 6)))


def test_double_shift_is_shift_by_two():
    rng = random.Random(5)
    for _ in range(10):
        rf = RF(
            P([F(rng.randint(-9, 9)) for _ in range(rng.randint(1, 4))]),
            P([F(rng.randint(1, 9)) for _ in range(rng.randint(1, 4))]),
        )
        twice = shift_argument(shift_argument(rf))
        for x in (0, 1, 2, F(7, 2), 11):
            if rf.den.evaluate(F(x) + 2) == 0 or twice.den.evaluate(x) == 0:
                continue
            assert twice.evaluate(x) == rf.evaluate(F(x) + 2)


def test_difference_expansion_r1_oracle():
    # 1/(2(n+1)) - 1/(2n) = -1/(2n(n+1)); expanding via the geometric
    # series gives coefficients -(1/2)(-1)^m starting at m = 2
    d = difference_expansion(RF(P((1,)), P((0, 2))), 8)
    assert d[0] == 0 and d[1] == 0
    for m in range(2, 9):
        assert d[m] == F(-1, 2) * F(-1) ** m


def test_difference_expansion_depth9_display():
    d = difference_expansion(cf_for_depth(9), 11)
    expected = [
        F(-1, 2), F(2, 3), F(-3, 4), F(4, 5), F(-5, 6),
        F(6, 7), F(-7, 8), F(8, 9), F(-9, 10), F(736265, 836136),
    ]
    assert [d[m] for m in range(2, 12)] == expected


def test_difference_expansion_depth13_tail():
    d = difference_expansion(cf_for_depth(13), 15)
    assert d[15] == F(1903648586623, 2576034146400)


def test_difference_vanishes_at_low_order_for_decaying_functions():
    rng = random.Random(23)
    for _ in range(20):
        num = P([F(rng.randint(-9, 9)) for _ in range(rng.randint(1, 3))])
        den = P([F(rng.randint(1, 9)) for _ in range(rng.randint(2, 5))])
        if den.degree <= num.degree:
            continue
        d = difference_expansion(RF(num, den), 6)
        assert d[0] == 0 and d[1] == 0


def test_truncation_error_band():
    # |rf(n0) - partial sum| <= 2 |c_N| 2^N / n0^(N+1), a sanity band for
    # expansions whose last kept coefficient is nonzero
    cases = [cf_for_depth(k) for k in (2, 5, 8, 13)]
    order = 8
    checked = 0
    for rf in cases:
        s = expand_at_infinity(rf, order)
        if s[order] == 0:
            continue
        band = 2 * abs(s[order]) * 2**order
        for n0 in (10, 100, 1000):
            err = abs(rf.evaluate(n0) - s.evaluate(n0))
            assert err <= band * F(1, n0 ** (order + 1))
            checked += 1
    assert checked >= 9


def test_cancellation_signature_all_depths():
    # with the right coefficients, the log term and the telescoped
    # correction cancel exactly through order k+1, first surviving at k+2
    for k in range(1, 14):
        order = k + 4
        total = log_term_series(order) + difference_expansion(cf_for_depth(k), order)
        for m in range(2, k + 2):
            assert total[m] == 0, f"depth {k} order {m}"
        assert total[k + 2] != 0, f"depth {k}"
