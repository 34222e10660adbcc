"""Continued-fraction corrections of the harmonic series and certified
enclosures of the Euler-Mascheroni constant.

The package derives the correction coefficients exactly from first
principles, cross-checks them against the published closed forms, and
verifies every stated inequality with outward-rounded interval
arithmetic.  See the README for the command-line interface.
"""

from .approximant import (
    ApproximantFamily,
    CFCoefficients,
    DegenerateTailError,
    MAX_REFERENCE_DEPTH,
    OutOfTableError,
    build_cf,
    cf_for_depth,
    closed_form,
    reference_coefficients,
    reference_rate_constants,
    validate_closed_forms,
)
from .evaluate import (
    DERIV_BOUND_R10,
    DERIV_BOUND_R11,
    MORTICI_CHEN_LIMIT,
    ComparisonSequence,
    DerivativeBoundReport,
    GammaBracket,
    InvalidIndexError,
    InvalidRangeError,
    ScanReport,
    ScanRow,
    comparison_table,
    comparison_value,
    derivative_bound_check,
    empirical_rate,
    eval_rk,
    gamma_bracket,
    gamma_interval,
    harmonic,
    mortici_variant_report,
    order_check,
    residual_gap_positive,
    scaled_error,
    scan_inequalities,
    scan_monotonicity,
    standard_comparisons,
    transcription_report,
)
from .intervals import (
    DEFAULT_BITS,
    ESCALATION_CAP_BITS,
    IntervalDomainError,
    NonpositiveArgumentError,
    PrecisionExhausted,
    PrecisionInterval,
    decimal_lower,
    decimal_upper,
    ln_interval,
)
from .rational import (
    PoleError,
    Rational,
    RationalFunction,
    RationalPolynomial,
    ZeroDenominatorError,
    as_rational,
    poly_gcd,
    rat_arith,
    ratfun_equal,
    ratfun_eval,
    ratfun_normalize,
)
from .series import (
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
from .solver import (
    AffineCheckFailed,
    AllZeroWithinOrderError,
    CancellationFailure,
    DifferenceReport,
    NoRootError,
    SolveResult,
    SolveStep,
    VerificationFailed,
    compute_rate_constant,
    difference_report,
    difference_series,
    solve_all,
    solve_next,
    solve_next_detailed,
)

__version__ = "0.1.0"
