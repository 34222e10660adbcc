"""Continued-fraction construction and the stored reference tables."""

from __future__ import annotations

from fractions import Fraction as F

import pytest

from gammacf.approximant import (
    ApproximantFamily,
    MAX_REFERENCE_DEPTH,
    OutOfTableError,
    build_cf,
    cf_for_depth,
    closed_form,
    reference_coefficients,
    reference_rate_constants,
    validate_closed_forms,
)
from gammacf.rational import RationalFunction, RationalPolynomial, ratfun_equal

P = RationalPolynomial
RF = RationalFunction


def test_build_depth_one_convention():
    assert build_cf((F(1, 2),)) == RF(P((1,)), P((0, 2)))


def test_build_depth_two():
    assert build_cf((F(1, 2), F(1, 6))) == RF(P((3,)), P((1, 6)))


def test_build_depth_three():
    assert build_cf((F(1, 2), F(1, 6), F(-1, 6))) == RF(P((-1, 6)), P((0, 0, 12)))


def test_build_depth_eight_polynomials():
    rf = build_cf(reference_coefficients(8))
    assert rf.num.coeffs == (F(964337), F(2646000), F(2599730), F(2621220))
    assert rf.den.coeffs == (
        F(380780), F(2892000), F(6304200), F(6073200), F(5242440),
    )


def test_build_requires_coefficients():
    with pytest.raises(ValueError):
        build_cf(())


def test_reference_coefficient_entries():
    a = reference_coefficients()
    assert len(a) == 13
    assert a[0] == F(1, 2)
    assert a[7] == F(7230, 6241)
    assert a[8] == F(-7230, 6241)
    assert a[12] == F(-306232774533, 179081182865)


def test_reference_rate_constant_entries():
    c = reference_rate_constants()
    assert len(c) == 13
    assert c[0] == F(-1, 12)
    assert c[7] == F(58081, 22018248)
    assert c[12] == F(-71521421431, 5152068292800)


def test_reference_sign_pattern():
    # the observed sign layout of the stored rate constants
    signs = [1 if c > 0 else -1 for c in reference_rate_constants()]
    assert signs == [-1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1]


def test_reference_depth_bounds():
    with pytest.raises(ValueError):
        reference_coefficients(0)
    with pytest.raises(ValueError):
        reference_coefficients(14)


def test_closed_form_five_matches_hand_sum():
    # 1/(2n) - 5/(6(1+10n^2)) evaluated with plain Fraction arithmetic
    rf = closed_form(5)
    for n in (1, 2, 3, 10):
        expected = F(1, 2 * n) - F(5, 6 * (1 + 10 * n * n))
        assert rf.evaluate(n) == expected
    assert rf.evaluate(1) == F(14, 33)


def test_closed_form_out_of_table():
    with pytest.raises(OutOfTableError):
        closed_form(14)


def test_closed_forms_all_match_recursive_build():
    report = validate_closed_forms()
    assert sorted(report) == list(range(1, 14))
    assert all(report.values()), report


def test_closed_form_pointwise_against_direct_fractions():
    # independent route: evaluate the published partial fractions with
    # nothing but Fraction arithmetic and compare to the combined form
    def r9(n):
        return F(1, 2 * n) - F(7 * (871 + 790 * n * n),
                               20 * (241 + 3990 * n**2 + 3318 * n**4))

    def r10(n):
        num = 7 * (108237701 + 208886046 * n + 523341290 * n**2
                   + 210464400 * n**3 + 230000760 * n**4)
        den = 20 * (12649849 + 107768934 * n + 209431110 * n**2
                    + 395365320 * n**3 + 174158502 * n**4 + 161000532 * n**5)
        return F(num, den)

    for n in (1, 2, 7, 50):
        assert closed_form(9).evaluate(n) == r9(n)
        assert closed_form(10).evaluate(n) == r10(n)


def test_depth_degeneration():
    # a vanishing innermost coefficient collapses to the previous depth
    a = reference_coefficients()
    for k in range(2, MAX_REFERENCE_DEPTH + 1):
        collapsed = build_cf(a[: k - 1] + (F(0),))
        assert collapsed == build_cf(a[: k - 1]), f"depth {k}"


def test_positivity_on_scan_range():
    # exact integer sign checks: canonical forms have integer coefficients
    for k in range(1, MAX_REFERENCE_DEPTH + 1):
        rf = cf_for_depth(k)
        num = [c.numerator for c in rf.num.coeffs]
        den = [c.numerator for c in rf.den.coeffs]
        for n in range(1, 10**4 + 1):
            nv = 0
            for c in reversed(num):
                nv = nv * n + c
            dv = 0
            for c in reversed(den):
                dv = dv * n + c
            assert nv * dv > 0, f"depth {k} at n={n}"


def test_degree_pattern():
    for k in range(1, MAX_REFERENCE_DEPTH + 1):
        rf = cf_for_depth(k)
        assert rf.den.degree - rf.num.degree == 1, f"depth {k}"


def test_family_consistency():
    fam = ApproximantFamily.from_coefficients(reference_coefficients(6))
    assert fam.depth == 6
    for k in range(1, 7):
        assert fam.closed_forms[k - 1] == build_cf(fam.coeffs[:k])


def test_canonical_equality_agrees_with_cross_multiplication():
    for k in range(1, MAX_REFERENCE_DEPTH + 1):
        assert ratfun_equal(cf_for_depth(k), closed_form(k))
        assert cf_for_depth(k) == closed_form(k)
