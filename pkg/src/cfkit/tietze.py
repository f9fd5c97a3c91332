"""Semi-regular continued fractions: validation, growth certificates, evaluation.

A CF is semi-regular when a(n) is +1 or -1, b(n) >= 1 and b(n) + a(n+1) >= 1
for every n >= 1 (b(0) is unconstrained).  Under these conditions the
denominators B(n) grow without bound, which makes the convergents a Cauchy
sequence with the fully explicit window bound

    |A(n+k)/B(n+k) - A(n-1)/B(n-1)|  <=  1/B(n-1)      (n >= 1, k >= 0),

so a value can be returned together with a certified error bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Literal

from .cfcore import CFSpec, shifted_table
from .errors import (
    CertificateFailure,
    EvaluationCancelled,
    InvalidSpec,
    IterationCap,
    TowerMismatch,
)
from .scalars import Scalar, is_rational, scalar_div

DEFAULT_ITERATION_CAP = 1_000_000

ViolationKind = Literal["a_not_unit", "b_below_one", "sum_below_one"]


@dataclass(frozen=True)
class Violation:
    n: int
    which: ViolationKind


@dataclass(frozen=True)
class SemiRegularReport:
    valid: bool
    first_violation: Violation | None
    checked_up_to: int


@dataclass(frozen=True)
class BoundRecord:
    k: int
    bound_type: Literal["plus_case", "minus_case"]
    bound: int


@dataclass(frozen=True)
class BoundedValue:
    """Certified evaluation: |true limit - value| <= error_bound."""

    value: Scalar
    n_used: int
    error_bound: Fraction


def _rational_coeff(value, index: int, name: str):
    if not is_rational(value):
        raise TowerMismatch(
            f"semi-regular analysis needs rational coefficients; "
            f"{name}({index}) is {type(value).__name__}"
        )
    return value


def validate_semiregular(spec: CFSpec, n_max: int) -> SemiRegularReport:
    """Check the semi-regular conditions for 1 <= n <= n_max.

    Reads coefficients up to index n_max + 1 and reports the first violated
    condition, if any.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    spec.require(n_max + 1)
    a_next = _rational_coeff(spec.a(1), 1, "a")
    for n in range(1, n_max + 1):
        a_n = a_next
        b_n = _rational_coeff(spec.b(n), n, "b")
        a_next = _rational_coeff(spec.a(n + 1), n + 1, "a")
        if a_n != 1 and a_n != -1:
            return SemiRegularReport(False, Violation(n, "a_not_unit"), n_max)
        if b_n < 1:
            return SemiRegularReport(False, Violation(n, "b_below_one"), n_max)
        if b_n + a_next < 1:
            return SemiRegularReport(False, Violation(n, "sum_below_one"), n_max)
    return SemiRegularReport(True, None, n_max)


def _denominators(spec: CFSpec, n_max: int) -> list[Scalar]:
    """B(-1) .. B(n_max) as a flat list (index shift +1)."""
    dens: list[Scalar] = [0, 1]
    b_prev2, b_prev = 0, 1
    for n in range(1, n_max + 1):
        b_cur = spec.b(n) * b_prev + spec.a(n) * b_prev2
        dens.append(b_cur)
        b_prev2, b_prev = b_prev, b_cur
    return dens


def _chain_sample(n_max: int) -> list[tuple[int, int]]:
    """Deterministic spread of (k, n) pairs with k >= 1, n >= 0, k+n <= n_max."""
    ks = sorted({1, 2, 3, n_max // 4 or 1, n_max // 2 or 1, max(n_max - 1, 1)})
    pairs = []
    for k in ks:
        if k > n_max:
            continue
        span = n_max - k
        ns = sorted({0, 1, span // 3, 2 * span // 3, span})
        pairs.extend((k, n) for n in ns if n >= 0)
    return pairs


def denominator_bounds_certificate(
    spec: CFSpec, n_max: int
) -> list[BoundRecord]:
    """Verify the linear lower bounds on B and the interleaving chain.

    For each k the applicable bound is checked against the exact table:
    a(k+1) = +1 forces B(k+n) >= k+1 for every n >= 1, and a(k+1) = -1
    forces B(k) >= k+1.  On sampled (k, n) the chain
    1 <= B(k,n) <= B(k-1,n+1) <= B(k+n) is also verified.  These are
    theorems for semi-regular input, so any failure is raised as a bug.
    """
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    report = validate_semiregular(spec, n_max)
    if not report.valid:
        v = report.first_violation
        raise InvalidSpec(f"not semi-regular: {v.which} at n = {v.n}")
    dens = _denominators(spec, n_max)

    # suffix minima of B over indices 0..n_max for the plus-case check
    suffix_min = list(dens[1:])
    for i in range(len(suffix_min) - 2, -1, -1):
        if suffix_min[i + 1] < suffix_min[i]:
            suffix_min[i] = suffix_min[i + 1]

    records: list[BoundRecord] = []
    for k in range(1, n_max):
        bound = k + 1
        if spec.a(k + 1) == 1:
            worst = suffix_min[k + 1]  # min over B(k+n), n >= 1
            if worst < bound:
                raise CertificateFailure(k, -1, f"B(k+n) = {worst} < {bound}")
            records.append(BoundRecord(k, "plus_case", bound))
        else:
            if dens[k + 1] < bound:
                raise CertificateFailure(k, 0, f"B({k}) = {dens[k + 1]} < {bound}")
            records.append(BoundRecord(k, "minus_case", bound))

    shifted_cache: dict[int, list] = {}

    def tail_den(k: int, n: int):
        if k not in shifted_cache:
            shifted_cache[k] = shifted_table(spec, k, n_max - k)
        return shifted_cache[k][n + 1].den

    for k, n in _chain_sample(n_max):
        b_kn = tail_den(k, n)
        b_up = tail_den(k - 1, n + 1)
        b_full = dens[k + n + 1]
        if not (1 <= b_kn <= b_up <= b_full):
            raise CertificateFailure(
                k, n, f"chain broken: 1 <= {b_kn} <= {b_up} <= {b_full}"
            )
    return records


def evaluate_tietze(
    spec: CFSpec,
    epsilon: Fraction | int,
    max_terms: int = DEFAULT_ITERATION_CAP,
    should_cancel: Callable[[], bool] | None = None,
) -> BoundedValue:
    """Iterate convergents until the window bound certifies accuracy epsilon.

    Stops at the first index n where both B(n-1) and B(n) exceed 1/epsilon
    and returns A(n)/B(n).  The reported error bound is the larger of
    1/B(n-1) and 1/B(n), which dominates the true error of the returned
    convergent.  Assumes the spec has passed `validate_semiregular`.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    a_prev2, a_prev = 1, spec.b(0)
    b_prev2, b_prev = 0, 1
    for n in range(1, max_terms + 1):
        if should_cancel is not None and n % 1024 == 0 and should_cancel():
            raise EvaluationCancelled(f"cancelled after {n} terms")
        an, bn = spec.a(n), spec.b(n)
        a_cur = bn * a_prev + an * a_prev2
        b_cur = bn * b_prev + an * b_prev2
        if b_prev > 0 and b_cur > 0 and b_prev * epsilon > 1 and b_cur * epsilon > 1:
            bound = max(Fraction(1, 1) / b_prev, Fraction(1, 1) / b_cur)
            return BoundedValue(
                value=scalar_div(a_cur, b_cur), n_used=n, error_bound=bound
            )
        a_prev2, a_prev = a_prev, a_cur
        b_prev2, b_prev = b_prev, b_cur
    raise IterationCap(max_terms)
