"""Continued-fraction correction terms for the harmonic-minus-log sequence.

The depth-k correction R_k(n) is the nested fraction

    R_k(n) = a1 / (n + a2*n / (n + a3*n / (... / (n + a_k))))

with the depth-1 convention R_1(n) = a1/n.  ``reference_coefficients``
holds the known exact values a1..a13 and ``reference_rate_constants`` the
matching limits C_k of n^(k+1) * (H_n - ln n - R_k(n) - gamma); both are
re-derived from scratch by :mod:`gammacf.solver`, never trusted blindly.
``closed_form`` stores the published minimal-denominator expressions for
R_1..R_13 exactly as written (partial-fraction style, combined on demand)
so that a transcription slip is caught by ``validate_closed_forms`` rather
than silently normalized away.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .rational import (
    RationalFunction,
    RationalLike,
    RationalPolynomial,
    as_rational,
    ratfun_equal,
)

__all__ = [
    "CFCoefficients",
    "ApproximantFamily",
    "build_cf",
    "reference_coefficients",
    "reference_rate_constants",
    "closed_form",
    "validate_closed_forms",
    "cf_for_depth",
    "MAX_REFERENCE_DEPTH",
    "DegenerateTailError",
    "OutOfTableError",
]

CFCoefficients = tuple[Fraction, ...]

MAX_REFERENCE_DEPTH = 13


class DegenerateTailError(ZeroDivisionError):
    """A tail of the continued fraction collapsed to the zero function."""


class OutOfTableError(KeyError):
    """No stored closed form at this depth."""


_A_EVEN = {
    1: Fraction(1, 2),
    2: Fraction(1, 6),
    4: Fraction(3, 5),
    6: Fraction(79, 126),
    8: Fraction(7230, 6241),
    10: Fraction(4146631, 3833346),
    12: Fraction(306232774533, 179081182865),
}


def reference_coefficients(depth: int = MAX_REFERENCE_DEPTH) -> CFCoefficients:
    """The known exact coefficients a1..a_depth (depth <= 13).

    Odd entries beyond a1 are the negatives of their even predecessors,
    which is exactly the observed pairing the solver re-checks.
    """
    if not 1 <= depth <= MAX_REFERENCE_DEPTH:
        raise ValueError(f"reference table covers depths 1..{MAX_REFERENCE_DEPTH}")
    out = []
    for k in range(1, depth + 1):
        if k in _A_EVEN:
            out.append(_A_EVEN[k])
        else:
            out.append(-_A_EVEN[k - 1])
    return tuple(out)


_C_TABLE = (
    Fraction(-1, 12),
    Fraction(-1, 72),
    Fraction(1, 120),
    Fraction(1, 200),
    Fraction(-79, 25200),
    Fraction(-6241, 3175200),
    Fraction(241, 105840),
    Fraction(58081, 22018248),
    Fraction(-262445, 91974960),
    Fraction(-2755095121, 892586949408),
    Fraction(20169451, 3821257440),
    Fraction(406806753641401, 45071152103463200),
    Fraction(-71521421431, 5152068292800),
)


def reference_rate_constants(depth: int = MAX_REFERENCE_DEPTH) -> tuple[Fraction, ...]:
    """The known limits C_1..C_depth of n^(k+1)(r_k(n) - gamma)."""
    if not 1 <= depth <= MAX_REFERENCE_DEPTH:
        raise ValueError(f"reference table covers depths 1..{MAX_REFERENCE_DEPTH}")
    return _C_TABLE[:depth]


def build_cf(coeffs: Sequence[RationalLike]) -> RationalFunction:
    """Assemble the depth-k nested fraction bottom-up.

    The innermost level is n + a_k with no further n multiplier; every
    outer level j contributes n + a_j * n / tail.  Depth 1 is a1/n.
    """
    a = [as_rational(c) for c in coeffs]
    if not a:
        raise ValueError("need at least one coefficient")
    n = RationalFunction(RationalPolynomial((0, 1)))
    if len(a) == 1:
        return RationalFunction(RationalPolynomial((a[0],)), RationalPolynomial((0, 1)))
    tail = n + a[-1]
    for j in range(len(a) - 2, 0, -1):
        if tail.is_zero:
            raise DegenerateTailError(f"tail vanished below level {j + 1}")
        tail = n + (a[j] * n) / tail
    if tail.is_zero:
        raise DegenerateTailError("tail vanished at the outermost level")
    return a[0] / tail


@lru_cache(maxsize=32)
def cf_for_depth(depth: int) -> RationalFunction:
    """R_depth built from the reference coefficients (cached)."""
    return build_cf(reference_coefficients(depth))


@dataclass(frozen=True)
class ApproximantFamily:
    """A coefficient list together with every truncation's closed form."""

    coeffs: CFCoefficients
    closed_forms: tuple[RationalFunction, ...]

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[RationalLike]) -> "ApproximantFamily":
        a = tuple(as_rational(c) for c in coeffs)
        forms = tuple(build_cf(a[:k]) for k in range(1, len(a) + 1))
        return cls(a, forms)

    @property
    def depth(self) -> int:
        return len(self.coeffs)


def _p(*coeffs) -> RationalPolynomial:
    return RationalPolynomial(coeffs)


def _rf(num, den) -> RationalFunction:
    return RationalFunction(num, den)


@lru_cache(maxsize=None)
def closed_form(depth: int) -> RationalFunction:
    """The published minimal-denominator expression for R_depth, 1 <= depth <= 13.

    Entries are written exactly as published (sums of partial fractions)
    and combined here, so any transcription error survives normalization
    and trips ``validate_closed_forms``.
    """
    half_over_n = _rf(1, _p(0, 2))
    if depth == 1:
        return half_over_n
    if depth == 2:
        return _rf(3, _p(1, 6))
    if depth == 3:
        return half_over_n - _rf(1, 12) * _rf(1, _p(0, 0, 1))
    if depth == 4:
        return _rf(_p(13, 30), 6 * _p(1, 6, 10))
    if depth == 5:
        return half_over_n - _rf(5, 6 * _p(1, 0, 10))
    if depth == 6:
        return _rf(5 * _p(281, 348, 756), 6 * _p(79, 600, 790, 1260))
    if depth == 7:
        return (
            half_over_n
            - _rf(79, 1200) * _rf(1, _p(0, 0, 1))
            - _rf(147, 400 * _p(10, 0, 21))
        )
    if depth == 8:
        return _rf(
            _p(964337, 2646000, 2599730, 2621220),
            20 * _p(19039, 144600, 315210, 303660, 262122),
        )
    if depth == 9:
        return half_over_n - _rf(
            7 * _p(871, 0, 790), 20 * _p(241, 0, 3990, 0, 3318)
        )
    if depth == 10:
        return _rf(
            7 * _p(108237701, 208886046, 523341290, 210464400, 230000760),
            20
            * _p(12649849, 107768934, 209431110, 395365320, 174158502, 161000532),
        )
    if depth == 11:
        return (
            half_over_n
            - _rf(52489, 894348) * _rf(1, _p(0, 0, 1))
            - _rf(_p(1237227621, 0, 584280400), 4471740 * _p(3549, 0, 13020, 0, 5302))
        )
    if depth == 12:
        return _rf(
            _p(
                3604759235968501,
                11032319618513046,
                17366281558290420,
                19958033982902400,
                7661417445218460,
                4964130389017800,
            ),
            1260
            * _p(
                1058674313539,
                9019254081474,
                22801779033180,
                33088387754520,
                33925126033722,
                13474242079452,
                7879572046060,
            ),
        )
    if depth == 13:
        return half_over_n - _rf(
            _p(39577260671, 0, 66288226620, 0, 15762446700),
            1260 * _p(20169451, 0, 434410620, 0, 646328298, 0, 150118540),
        )
    raise OutOfTableError(f"no stored closed form at depth {depth}")


def validate_closed_forms() -> dict[int, bool]:
    """Compare the recursive build against every stored closed form.

    Returns {depth: equal} for depths 1..13; all entries are expected to
    be True, and a single False indicates a transcription error in the
    stored table (or a bug in the builder).
    """
    report = {}
    for k in range(1, MAX_REFERENCE_DEPTH + 1):
        report[k] = ratfun_equal(cf_for_depth(k), closed_form(k))
    return report
