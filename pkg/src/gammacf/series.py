"""Truncated power series in x = 1/n over exact rationals.

This is the workhorse behind every asymptotic statement in the package:
a series stores exact coefficients c_0..c_N of 1/n^m up to a declared
order N and refuses to claim anything beyond it (arithmetic truncates to
the weaker operand).  The two nonstandard entry points are
``expand_at_infinity`` (asymptotic expansion of a rational function that
stays bounded as n grows) and ``log_term_series`` (the expansion of
ln(1+1/n) - 1/(n+1), the only transcendental ingredient anywhere).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .rational import RationalFunction, RationalLike, as_rational

__all__ = [
    "TruncatedSeries",
    "series_arith",
    "log_term_series",
    "expand_at_infinity",
    "shift_argument",
    "difference_expansion",
    "OrderTooSmallError",
    "DivisorNotUnitError",
    "UnboundedAtInfinityError",
]


class OrderTooSmallError(ValueError):
    """The requested truncation order cannot hold the defining terms."""


class DivisorNotUnitError(ZeroDivisionError):
    """Series division needs a divisor with nonzero constant term."""


class UnboundedAtInfinityError(ValueError):
    """Only rational functions bounded at infinity have 1/n expansions."""


class TruncatedSeries:
    """Exact coefficients of x^0..x^N in x = 1/n, immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike], order: int | None = None):
        cs = [as_rational(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise OrderTooSmallError("order must be >= 0")
            if len(cs) > order + 1:
                cs = cs[: order + 1]
            else:
                cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        elif not cs:
            cs = [Fraction(0)]
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, m: int) -> Fraction:
        if not 0 <= m <= self.order:
            raise IndexError(f"coefficient {m} beyond stated order {self.order}")
        return self.coeffs[m]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def truncated(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise OrderTooSmallError(
                f"cannot extend order {self.order} series to {order}"
            )
        return TruncatedSeries(self.coeffs, order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)]
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            scalar = as_rational(other)
            return TruncatedSeries([c * scalar for c in self.coeffs])
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            scalar = as_rational(other)
            if scalar == 0:
                raise ZeroDivisionError("series division by zero scalar")
            return TruncatedSeries([c / scalar for c in self.coeffs])
        if other.coeffs[0] == 0:
            raise DivisorNotUnitError("divisor has zero constant term")
        n = min(self.order, other.order)
        inv0 = 1 / other.coeffs[0]
        out = [Fraction(0)] * (n + 1)
        for m in range(n + 1):
            acc = self.coeffs[m]
            for j in range(m):
                bj = other.coeffs[m - j]
                if bj:
                    acc -= out[j] * bj
            out[m] = acc * inv0
        return TruncatedSeries(out)

    def evaluate(self, n0: RationalLike) -> Fraction:
        """Exact partial sum sum_m c_m / n0^m."""
        x = 1 / as_rational(n0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def first_nonzero(self, start: int = 0) -> int | None:
        """Index of the first nonzero coefficient at or after ``start``."""
        for m in range(start, self.order + 1):
            if self.coeffs[m]:
                return m
        return None

    def __repr__(self) -> str:
        return f"TruncatedSeries({[str(c) for c in self.coeffs]})"


def series_arith(a: TruncatedSeries, b: TruncatedSeries, op: str) -> TruncatedSeries:
    """Dispatch form of series arithmetic; ``op`` in add/sub/mul/div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def log_term_series(order: int) -> TruncatedSeries:
    """Expansion of ln(1 + 1/n) - 1/(n+1) in powers of 1/n.

    The coefficient of 1/n^m is (-1)^m (m-1)/m for m >= 2; the constant
    and 1/n terms vanish, which is exactly why the continued-fraction
    correction can cancel order after order.
    """
    if order < 2:
        raise OrderTooSmallError("log term starts at order 2")
    coeffs = [Fraction(0), Fraction(0)]
    for m in range(2, order + 1):
        c = Fraction(m - 1, m)
        coeffs.append(c if m % 2 == 0 else -c)
    return TruncatedSeries(coeffs)


def expand_at_infinity(rf: RationalFunction, order: int) -> TruncatedSeries:
    """Exact expansion of rf(n) in powers of 1/n up to the given order.

    Requires deg(num) <= deg(den).  Implemented by reversing both
    polynomials (n -> 1/x, cleared by x^deg(den)) and series-dividing.
    """
    if order < 0:
        raise OrderTooSmallError("order must be >= 0")
    q = rf.den.degree
    if rf.num.degree > q:
        raise UnboundedAtInfinityError(
            f"deg num {rf.num.degree} > deg den {q}: no expansion in 1/n"
        )
    num_rev = [Fraction(0)] * (q + 1)
    for i, c in enumerate(rf.num.coeffs):
        num_rev[q - i] = c
    den_rev = [rf.den.coeffs[q - i] for i in range(q + 1)]
    return TruncatedSeries(num_rev, order) / TruncatedSeries(den_rev, order)


def shift_argument(rf: RationalFunction) -> RationalFunction:
    """rf(n+1) as a canonical rational function of n."""
    return rf.shifted()


def difference_expansion(rf: RationalFunction, order: int) -> TruncatedSeries:
    """Expansion of rf(n+1) - rf(n), formed exactly before expanding.

    Building the difference as a single rational function first keeps the
    low-order cancellations exact by construction instead of relying on
    coefficient subtraction.
    """
    return expand_at_infinity(shift_argument(rf) - rf, order)
