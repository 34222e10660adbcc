"""Re-derivation of the continued-fraction coefficients from scratch.

The driving identity: with r_k(n) = H_n - ln n - R_k(n),

    r_k(n) - r_k(n+1) = [ln(1+1/n) - 1/(n+1)] + [R_k(n+1) - R_k(n)],

an exact power series in 1/n.  A correct depth-k coefficient list makes
every coefficient through order k+1 vanish; the first surviving term sits
at order k+2, and its coefficient l yields the convergence-rate constant
C_k = l/(k+1) (if n^s(x_n - x_{n+1}) -> l with x_n -> 0 then
n^(s-1) x_n -> l/(s-1)).

Each new coefficient is found numerically-symbolically: the first
uncancelled series coefficient is observed to be affine in the unknown,
so three samples pin the line (the third sample is a consistency check
that fails loudly if affinity ever breaks), the root is solved exactly,
and full cancellation at the root is re-verified before it is accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .approximant import CFCoefficients, build_cf
from .rational import RationalLike, as_rational
from .series import TruncatedSeries, difference_expansion, log_term_series

__all__ = [
    "DifferenceReport",
    "SolveStep",
    "SolveResult",
    "difference_series",
    "difference_report",
    "compute_rate_constant",
    "solve_next",
    "solve_next_detailed",
    "solve_all",
    "AllZeroWithinOrderError",
    "CancellationFailure",
    "AffineCheckFailed",
    "NoRootError",
    "VerificationFailed",
    "DEFAULT_GUARD",
]

DEFAULT_GUARD = 3


class AllZeroWithinOrderError(ArithmeticError):
    """Every computed coefficient vanished; increase the guard order."""


class CancellationFailure(ArithmeticError):
    """A coefficient below the expected leading order is nonzero."""

    def __init__(self, depth: int, order: int, value: Fraction):
        self.depth = depth
        self.order = order
        self.value = value
        super().__init__(
            f"depth {depth}: coefficient {value} survives at order {order}, "
            f"expected cancellation through order {depth + 1}"
        )


class AffineCheckFailed(ArithmeticError):
    """The sampled target coefficient is not affine in the unknown."""


class NoRootError(ArithmeticError):
    """The target coefficient is a nonzero constant; nothing to solve."""


class VerificationFailed(ArithmeticError):
    """The solved value failed the exact re-cancellation check."""


@dataclass(frozen=True)
class DifferenceReport:
    """Leading behaviour of r_k(n) - r_k(n+1) for one coefficient list."""

    depth: int
    series: TruncatedSeries
    leading_order: int
    leading_coeff: Fraction
    rate_constant: Fraction


def difference_series(coeffs: Sequence[RationalLike], order: int) -> TruncatedSeries:
    """Exact series of r_k(n) - r_k(n+1) through the given order."""
    rf = build_cf(coeffs)
    return log_term_series(order) + difference_expansion(rf, order)


def _leading_term(series: TruncatedSeries) -> tuple[int, Fraction]:
    m = series.first_nonzero(start=2)
    if m is None:
        raise AllZeroWithinOrderError(
            f"all coefficients through order {series.order} vanish; "
            "increase the guard order"
        )
    return m, series[m]


def difference_report(
    coeffs: Sequence[RationalLike], guard: int = DEFAULT_GUARD
) -> DifferenceReport:
    """Locate the leading term of r_k(n) - r_k(n+1) and its rate constant.

    Raises CancellationFailure if anything survives below order k+2 (the
    signature of a wrong coefficient) and AllZeroWithinOrderError if even
    order k+2+guard shows nothing.
    """
    if guard < 2:
        raise ValueError("guard must be >= 2")
    depth = len(coeffs)
    order = depth + 2 + guard
    series = difference_series(coeffs, order)
    s, lead = _leading_term(series)
    if s < depth + 2:
        raise CancellationFailure(depth, s, lead)
    return DifferenceReport(
        depth=depth,
        series=series,
        leading_order=s,
        leading_coeff=lead,
        rate_constant=lead / (s - 1),
    )


def compute_rate_constant(report: DifferenceReport) -> Fraction:
    """C_k = l/(s-1) from the leading term l/n^s of the telescoped step."""
    return report.leading_coeff / (report.leading_order - 1)


@dataclass(frozen=True)
class SolveStep:
    """One solved coefficient with the affine evidence behind it."""

    depth: int
    value: Fraction
    intercept: Fraction  # target coefficient at a = 0
    slope: Fraction  # change per unit of a
    samples: tuple[Fraction, Fraction, Fraction]
    method: str  # "affine" or "conjectured"


_SAMPLE_POINTS = (Fraction(0), Fraction(1), Fraction(2))


def solve_next_detailed(
    prefix: Sequence[RationalLike], guard: int = DEFAULT_GUARD
) -> SolveStep:
    """Solve for the next coefficient a_k given a valid depth-(k-1) prefix.

    Samples the order-(k+1) coefficient of r_k(n) - r_k(n+1) at
    a in {0, 1, 2}; 0 collapses the new level gracefully and small
    integers keep the exact arithmetic light.  Affinity is asserted via
    the third sample, the root is solved, and the cancellation signature
    at the root is re-verified exactly.
    """
    prefix = tuple(as_rational(c) for c in prefix)
    depth = len(prefix) + 1
    target = depth + 1
    samples = tuple(
        difference_series(prefix + (a,), target + 1)[target] for a in _SAMPLE_POINTS
    )
    c0, c1, c2 = samples
    slope = c1 - c0
    if c2 != c0 + 2 * slope:
        raise AffineCheckFailed(
            f"depth {depth}: order-{target} coefficient is not affine in the "
            f"unknown (samples {c0}, {c1}, {c2})"
        )
    if slope == 0:
        if c0 == 0:
            raise AffineCheckFailed(
                f"depth {depth}: order-{target} coefficient vanishes identically; "
                "no unique solution"
            )
        raise NoRootError(
            f"depth {depth}: order-{target} coefficient is constant {c0}"
        )
    value = -c0 / slope
    try:
        difference_report(prefix + (value,), guard)
    except CancellationFailure as exc:
        raise VerificationFailed(
            f"depth {depth}: solved value {value} does not cancel order {exc.order}"
        ) from exc
    return SolveStep(
        depth=depth,
        value=value,
        intercept=c0,
        slope=slope,
        samples=samples,
        method="affine",
    )


def solve_next(prefix: Sequence[RationalLike], guard: int = DEFAULT_GUARD) -> Fraction:
    return solve_next_detailed(prefix, guard).value


@dataclass(frozen=True)
class SolveResult:
    """Everything the iterative solve produced, depth by depth."""

    coefficients: CFCoefficients
    rate_constants: tuple[Fraction, ...]
    steps: tuple[SolveStep, ...]
    reports: tuple[DifferenceReport, ...]

    @property
    def pairing_flags(self) -> tuple[bool, ...]:
        """Whether a_(2j+1) == -a_(2j) for each odd index present."""
        a = self.coefficients
        return tuple(
            a[2 * j] == -a[2 * j - 1] for j in range(1, (len(a) - 1) // 2 + 1)
        )

    @property
    def methods(self) -> tuple[str, ...]:
        return tuple(step.method for step in self.steps)


def solve_all(k_max: int, guard: int = DEFAULT_GUARD) -> SolveResult:
    """Derive a_1..a_k_max and C_1..C_k_max from nothing but the recursion.

    The affine solve is attempted at every depth, odd or even.  If it
    fails at an odd depth, the negated predecessor is tried as a
    candidate and verified exactly; the step records which path was
    taken.  Failures of both paths propagate.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    coeffs: tuple[Fraction, ...] = ()
    steps: list[SolveStep] = []
    reports: list[DifferenceReport] = []
    constants: list[Fraction] = []
    for depth in range(1, k_max + 1):
        try:
            step = solve_next_detailed(coeffs, guard)
        except (AffineCheckFailed, NoRootError, VerificationFailed):
            if depth % 2 == 0 or depth < 3:
                raise
            candidate = -coeffs[-1]
            difference_report(coeffs + (candidate,), guard)  # raises if wrong
            step = SolveStep(
                depth=depth,
                value=candidate,
                intercept=Fraction(0),
                slope=Fraction(0),
                samples=(Fraction(0),) * 3,
                method="conjectured",
            )
        coeffs = coeffs + (step.value,)
        report = difference_report(coeffs, guard)
        steps.append(step)
        reports.append(report)
        constants.append(report.rate_constant)
    return SolveResult(
        coefficients=coeffs,
        rate_constants=tuple(constants),
        steps=tuple(steps),
        reports=tuple(reports),
    )
