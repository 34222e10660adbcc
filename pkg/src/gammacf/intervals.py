"""Outward-rounded interval arithmetic with dyadic endpoints.

Endpoints are Fractions whose denominators are powers of two, produced by
directed rounding at a stated number of significant bits; every operation
computes exact rational endpoint candidates and then rounds the lower end
down and the upper end up, so each interval contains the exact image of
its operands.  The one transcendental entry point, ``ln_interval``, works
entirely in exact rationals (argument reduction by powers of two, then an
odd-power series with an explicit tail bound) and rounds outward exactly
once, which makes the enclosure argument a three-line proof rather than
an accounting exercise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .rational import RationalLike, as_rational

__all__ = [
    "PrecisionInterval",
    "ln_interval",
    "round_down",
    "round_up",
    "decimal_lower",
    "decimal_upper",
    "NonpositiveArgumentError",
    "IntervalDomainError",
    "PrecisionExhausted",
    "DEFAULT_BITS",
    "ESCALATION_CAP_BITS",
]

DEFAULT_BITS = 256
ESCALATION_CAP_BITS = 1 << 14

_ZERO = Fraction(0)


class NonpositiveArgumentError(ValueError):
    """ln is only defined for positive arguments."""


class IntervalDomainError(ZeroDivisionError):
    """Interval division by an interval containing zero."""


class PrecisionExhausted(ArithmeticError):
    """Escalation reached the configured bit cap without resolving."""


def round_down(x: Fraction, bits: int) -> Fraction:
    """Largest dyadic number with ~bits significant bits that is <= x."""
    if x == 0:
        return _ZERO
    e = x.numerator.bit_length() - x.denominator.bit_length()
    shift = bits - e
    if shift >= 0:
        return Fraction((x.numerator << shift) // x.denominator, 1 << shift)
    return Fraction((x.numerator // (x.denominator << -shift)) << -shift)


def round_up(x: Fraction, bits: int) -> Fraction:
    return -round_down(-x, bits)


IntervalLike = Union["PrecisionInterval", Fraction, int]


@dataclass(frozen=True)
class PrecisionInterval:
    """[lo, hi] with dyadic endpoints; the true value lies inside."""

    lo: Fraction
    hi: Fraction
    bits: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    @classmethod
    def from_fraction(cls, x: RationalLike, bits: int) -> "PrecisionInterval":
        x = as_rational(x)
        return cls(round_down(x, bits), round_up(x, bits), bits)

    @classmethod
    def hull(cls, a: "PrecisionInterval", b: "PrecisionInterval") -> "PrecisionInterval":
        return cls(min(a.lo, b.lo), max(a.hi, b.hi), min(a.bits, b.bits))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: RationalLike) -> bool:
        x = as_rational(x)
        return self.lo <= x <= self.hi

    def encloses(self, other: "PrecisionInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def _coerce(self, other: IntervalLike) -> "PrecisionInterval":
        if isinstance(other, PrecisionInterval):
            return other
        x = as_rational(other)
        return PrecisionInterval(x, x, self.bits)

    def __add__(self, other: IntervalLike) -> "PrecisionInterval":
        o = self._coerce(other)
        bits = min(self.bits, o.bits)
        return PrecisionInterval(
            round_down(self.lo + o.lo, bits), round_up(self.hi + o.hi, bits), bits
        )

    __radd__ = __add__

    def __neg__(self) -> "PrecisionInterval":
        return PrecisionInterval(-self.hi, -self.lo, self.bits)

    def __sub__(self, other: IntervalLike) -> "PrecisionInterval":
        return self + (-self._coerce(other))

    def __rsub__(self, other: IntervalLike) -> "PrecisionInterval":
        return (-self) + other

    def __mul__(self, other: IntervalLike) -> "PrecisionInterval":
        o = self._coerce(other)
        bits = min(self.bits, o.bits)
        cands = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return PrecisionInterval(
            round_down(min(cands), bits), round_up(max(cands), bits), bits
        )

    __rmul__ = __mul__

    def __truediv__(self, other: IntervalLike) -> "PrecisionInterval":
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise IntervalDomainError("division by an interval containing zero")
        bits = min(self.bits, o.bits)
        cands = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return PrecisionInterval(
            round_down(min(cands), bits), round_up(max(cands), bits), bits
        )

    def abs_bounds(self) -> tuple[Fraction, Fraction]:
        """Exact lower and upper bounds for |value|."""
        if self.lo >= 0:
            return self.lo, self.hi
        if self.hi <= 0:
            return -self.hi, -self.lo
        return _ZERO, max(-self.lo, self.hi)

    def strictly_below(self, other: IntervalLike) -> bool:
        """Certified: every value here < every value there."""
        o = self._coerce(other)
        return self.hi < o.lo

    def strictly_above(self, other: IntervalLike) -> bool:
        o = self._coerce(other)
        return self.lo > o.hi

    def __repr__(self) -> str:
        return f"PrecisionInterval({self.lo}, {self.hi}, bits={self.bits})"


# --- certified natural logarithm -------------------------------------------

# ln 2 = 2*atanh(1/3); exact rational bounds cached per working precision
_LN2_CACHE: dict[int, tuple[Fraction, Fraction]] = {}


def _atanh_bounds(z: Fraction, wp: int) -> tuple[Fraction, Fraction]:
    """Exact rational [lo, hi] for atanh(z), |z| < 1/2, tail <= 2^-(wp+2)."""
    if z == 0:
        return _ZERO, _ZERO
    threshold = Fraction(1, 1 << (wp + 2))
    z2 = z * z
    tail_scale = 1 / (1 - z2)
    term = z
    j = 0
    total = Fraction(0)
    while True:
        total += term / (2 * j + 1)
        term *= z2
        j += 1
        bound = abs(term) * tail_scale / (2 * j + 1)
        if bound <= threshold:
            break
    # every tail term shares the sign of z
    if z > 0:
        return total, total + bound
    return total - bound, total


def _ln2_bounds(wp: int) -> tuple[Fraction, Fraction]:
    cached = _LN2_CACHE.get(wp)
    if cached is None:
        lo, hi = _atanh_bounds(Fraction(1, 3), wp + 2)
        cached = (2 * lo, 2 * hi)
        _LN2_CACHE[wp] = cached
    return cached


def _reduce_pow2(x: Fraction) -> tuple[int, Fraction]:
    """x = 2^e * m with m in [2/3, 4/3]."""
    e = x.numerator.bit_length() - x.denominator.bit_length()
    m = x / Fraction(1 << e) if e >= 0 else x * (1 << -e)
    while m > Fraction(4, 3):
        m /= 2
        e += 1
    while m < Fraction(2, 3):
        m *= 2
        e -= 1
    return e, m


def _ln_bounds(x: Fraction, wp: int) -> tuple[Fraction, Fraction]:
    """Exact rational bounds for ln x, error < 2^-(wp-1) plus scaled ln2 slack."""
    e, m = _reduce_pow2(x)
    z = (m - 1) / (m + 1)  # |z| <= 1/5
    alo, ahi = _atanh_bounds(z, wp + 1)
    mlo, mhi = 2 * alo, 2 * ahi
    if e == 0:
        return mlo, mhi
    l2lo, l2hi = _ln2_bounds(wp + max(0, e.bit_length()))
    if e > 0:
        return e * l2lo + mlo, e * l2hi + mhi
    return e * l2hi + mlo, e * l2lo + mhi


def ln_interval(x: RationalLike, bits: int = DEFAULT_BITS) -> PrecisionInterval:
    """Certified enclosure of ln x for exact rational x > 0.

    Width is at most 2^(-bits+2) * max(1, |ln x|).  Arguments with very
    large numerators or denominators are first rounded outward at the
    working precision; ln is monotone, so the enclosure survives.
    """
    x = as_rational(x)
    if x <= 0:
        raise NonpositiveArgumentError(f"ln needs a positive argument, got {x}")
    if x == 1:
        return PrecisionInterval(_ZERO, _ZERO, bits)
    wp = bits + 8
    if x.numerator.bit_length() + x.denominator.bit_length() > 4 * wp:
        xlo, xhi = round_down(x, wp), round_up(x, wp)
        lo = _ln_bounds(xlo, wp)[0]
        hi = _ln_bounds(xhi, wp)[1]
    else:
        lo, hi = _ln_bounds(x, wp)
    return PrecisionInterval(round_down(lo, bits), round_up(hi, bits), bits)


# --- deterministic decimal rendering ----------------------------------------


def _decimal_directed(x: Fraction, digits: int, toward_plus: bool) -> str:
    scaled = x * 10**digits
    if toward_plus:
        m = -((-scaled.numerator) // scaled.denominator)
    else:
        m = scaled.numerator // scaled.denominator
    sign = "-" if m < 0 else ""
    s = str(abs(m)).rjust(digits + 1, "0")
    if digits == 0:
        return f"{sign}{s}"
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def decimal_lower(x: Fraction, digits: int) -> str:
    """Decimal string rounded toward minus infinity (safe as a lower bound)."""
    return _decimal_directed(x, digits, toward_plus=False)


def decimal_upper(x: Fraction, digits: int) -> str:
    """Decimal string rounded toward plus infinity (safe as an upper bound)."""
    return _decimal_directed(x, digits, toward_plus=True)
