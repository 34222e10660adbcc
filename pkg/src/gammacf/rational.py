"""Exact arithmetic substrate: rational scalars, dense polynomials in n,
and canonically normalized rational functions.

Nothing in this module rounds.  Scalars are ``fractions.Fraction`` (aliased
``Rational``), polynomials are dense coefficient tuples over those scalars,
and rational functions are kept in a unique canonical form: numerator and
denominator are coprime integer-coefficient polynomials with no common
integer factor across the two of them, and the denominator has a positive
leading coefficient.  All values are immutable, so everything here is safe
to share across threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

__all__ = [
    "Rational",
    "RationalLike",
    "as_rational",
    "rat_arith",
    "RationalPolynomial",
    "RationalFunction",
    "poly_gcd",
    "ratfun_normalize",
    "ratfun_eval",
    "ratfun_equal",
    "ZeroDenominatorError",
    "PoleError",
]

Rational = Fraction

RationalLike = Union[Fraction, int, str]


class ZeroDenominatorError(ZeroDivisionError):
    """A rational function was given an identically zero denominator."""


class PoleError(ZeroDivisionError):
    """A rational function was evaluated at a zero of its denominator."""


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, strings like ``"7230/6241"``, or Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction, int, or 'p/q' string")
    return Fraction(value)


def rat_arith(a: RationalLike, b: RationalLike, op: str) -> Fraction:
    """One exact scalar operation; ``op`` is one of add/sub/mul/div."""
    x, y = as_rational(a), as_rational(b)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if y == 0:
            raise ZeroDivisionError("exact division by zero")
        return x / y
    raise ValueError(f"unknown op {op!r}")


class RationalPolynomial:
    """Dense univariate polynomial over exact rationals.

    ``coeffs[i]`` multiplies n**i; the tuple never ends in a zero, and the
    zero polynomial is the empty tuple (degree -1).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # immutability guard
        raise AttributeError("RationalPolynomial is immutable")

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPolynomial(out)

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalPolynomial):
            if self.is_zero or other.is_zero:
                return RationalPolynomial()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return RationalPolynomial(out)
        scalar = as_rational(other)
        return RationalPolynomial(c * scalar for c in self.coeffs)

    __rmul__ = __mul__

    def evaluate(self, x: RationalLike) -> Fraction:
        """Exact Horner evaluation."""
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def shifted(self) -> "RationalPolynomial":
        """The polynomial p(n+1), by Horner over polynomial arithmetic."""
        step = RationalPolynomial((1, 1))
        acc = RationalPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * step + RationalPolynomial((c,))
        return acc

    def divmod(self, other: "RationalPolynomial"):
        """Exact polynomial division with remainder over the rationals."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return RationalPolynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for i in range(dq, -1, -1):
            c = rem[i + len(other.coeffs) - 1] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return RationalPolynomial(quot), RationalPolynomial(rem)

    def div_exact(self, other: "RationalPolynomial") -> "RationalPolynomial":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ValueError("inexact polynomial division")
        return q

    def __repr__(self) -> str:
        return f"RationalPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("n" if c == 1 else f"{c}*n")
            else:
                parts.append(f"n^{i}" if c == 1 else f"{c}*n^{i}")
        return " + ".join(parts).replace("+ -", "- ")


def _int_coeffs(p: RationalPolynomial) -> tuple[list[int], int]:
    """Return (integer coefficient list, common scale) with p = ints/scale."""
    scale = 1
    for c in p.coeffs:
        scale = lcm(scale, c.denominator)
    return [int(c * scale) for c in p.coeffs], scale


def _content(ints: Sequence[int]) -> int:
    g = 0
    for c in ints:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _primitive(ints: list[int]) -> list[int]:
    """Divide out the content and force a positive leading coefficient."""
    g = _content(ints)
    if g == 0:
        return []
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials (lc(b)^k * a mod b)."""
    rem = list(a)
    lead = b[-1]
    while len(rem) >= len(b) and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(b):
            break
        c = rem[-1]
        shift = len(rem) - len(b)
        rem = [x * lead for x in rem]
        for j, bc in enumerate(b):
            rem[shift + j] -= c * bc
        rem.pop()
    while rem and rem[-1] == 0:
        rem.pop()
    return rem


def poly_gcd(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    """Greatest common divisor, returned primitive with positive leading
    coefficient.  Uses a primitive pseudo-remainder sequence on integer
    images, which keeps coefficient growth in check for the degrees seen
    here (<= ~25)."""
    if a.is_zero:
        return RationalPolynomial(_primitive(_int_coeffs(b)[0]))
    if b.is_zero:
        return RationalPolynomial(_primitive(_int_coeffs(a)[0]))
    fa = _primitive(_int_coeffs(a)[0])
    fb = _primitive(_int_coeffs(b)[0])
    if len(fa) < len(fb):
        fa, fb = fb, fa
    while fb:
        fa, fb = fb, _primitive(_int_prem(fa, fb))
    return RationalPolynomial(fa)


_ONE_POLY = RationalPolynomial((1,))


class RationalFunction:
    """Ratio of polynomials in n, always held in canonical form.

    Canonical form: numerator and denominator are coprime polynomials with
    integer coefficients, the two share no integer factor (joint content 1),
    and the denominator's leading coefficient is positive.  Equal values
    therefore have identical representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=_ONE_POLY):
        if not isinstance(num, RationalPolynomial):
            num = RationalPolynomial((as_rational(num),))
        if not isinstance(den, RationalPolynomial):
            den = RationalPolynomial((as_rational(den),))
        num, den = _canonical_pair(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _as_ratfun(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_ratfun(other))

    def __rsub__(self, other):
        return _as_ratfun(other) + (-self)

    def __mul__(self, other):
        other = _as_ratfun(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfun(other)
        if other.is_zero:
            raise ZeroDenominatorError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_ratfun(other) / self

    def evaluate(self, x: RationalLike) -> Fraction:
        """Exact value at the point x; raises PoleError on a denominator zero."""
        x = as_rational(x)
        d = self.den.evaluate(x)
        if d == 0:
            raise PoleError(f"pole at {x}")
        return self.num.evaluate(x) / d

    def shifted(self) -> "RationalFunction":
        """The rational function evaluated at n+1, renormalized."""
        return RationalFunction(self.num.shifted(), self.den.shifted())

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"


def _as_ratfun(value) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    return RationalFunction(value)


def _canonical_pair(num: RationalPolynomial, den: RationalPolynomial):
    if den.is_zero:
        raise ZeroDenominatorError("zero denominator polynomial")
    if num.is_zero:
        return RationalPolynomial(), _ONE_POLY
    g = poly_gcd(num, den)
    if g.degree > 0:
        num = num.div_exact(g)
        den = den.div_exact(g)
    inum, snum = _int_coeffs(num)
    iden, sden = _int_coeffs(den)
    # value = (inum/snum) / (iden/sden); clear both scales, then the joint content
    inum = [c * sden for c in inum]
    iden = [c * snum for c in iden]
    joint = gcd(_content(inum), _content(iden))
    if iden[-1] < 0:
        joint = -joint
    return (
        RationalPolynomial(c // joint for c in inum),
        RationalPolynomial(c // joint for c in iden),
    )


def ratfun_normalize(num: RationalPolynomial, den: RationalPolynomial) -> RationalFunction:
    """Combine a numerator/denominator pair into canonical form."""
    return RationalFunction(num, den)


def ratfun_eval(rf: RationalFunction, x: RationalLike) -> Fraction:
    return rf.evaluate(x)


def ratfun_equal(a: RationalFunction, b: RationalFunction) -> bool:
    """Value equality by cross-multiplication, independent of normalization."""
    return a.num * b.den == b.num * a.den
