"""Coefficient sequences and the fundamental convergent recurrences.

A continued fraction b0 + a1/b1 + a2/b2 + ... is described by a CFSpec that
serves partial numerators a(n) for n >= 1 and partial denominators b(n) for
n >= 0.  Convergent numerators and denominators follow

    A(n) = b(n) A(n-1) + a(n) A(n-2),      A(-1) = 1, A(0) = b(0),
    B(n) = b(n) B(n-1) + a(n) B(n-2),      B(-1) = 0, B(0) = 1,

and every operation here is exact: values never leave the tower of the
coefficients that produced them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import CoefficientUnavailable, InvalidSpec, ZeroDenominator
from .scalars import Scalar, is_zero, scalar_div


class CFSpec:
    """Coefficient source; subclasses provide `a(n)` (n>=1) and `b(n)` (n>=0)."""

    #: largest index n for which b(n) exists, or None when unbounded
    max_index: int | None = None

    def a(self, n: int) -> Scalar:
        raise NotImplementedError

    def b(self, n: int) -> Scalar:
        raise NotImplementedError

    def require(self, n: int) -> None:
        """Fail fast when coefficients up to index n are not available."""
        if self.max_index is not None and n > self.max_index:
            raise CoefficientUnavailable(n)


def _check_index(n: int, low: int, name: str = "n"):
    if n < low:
        raise ValueError(f"{name} must be >= {low}, got {n}")


@dataclass(frozen=True)
class FiniteCF(CFSpec):
    """Finite coefficient lists: a holds indices 1..N, b holds 0..N."""

    a_list: tuple
    b_list: tuple

    def __post_init__(self):
        object.__setattr__(self, "a_list", tuple(self.a_list))
        object.__setattr__(self, "b_list", tuple(self.b_list))
        if len(self.b_list) != len(self.a_list) + 1:
            raise InvalidSpec(
                f"need |b| = |a| + 1, got |a| = {len(self.a_list)}, "
                f"|b| = {len(self.b_list)}"
            )

    @property
    def max_index(self) -> int:  # type: ignore[override]
        return len(self.a_list)

    def a(self, n: int) -> Scalar:
        _check_index(n, 1)
        if n > len(self.a_list):
            raise CoefficientUnavailable(n, "partial numerator a")
        return self.a_list[n - 1]

    def b(self, n: int) -> Scalar:
        _check_index(n, 0)
        if n >= len(self.b_list):
            raise CoefficientUnavailable(n, "partial denominator b")
        return self.b_list[n]


@dataclass(frozen=True)
class PeriodicCF(CFSpec):
    """Purely periodic coefficients: a repeats 1..p, b repeats 0..p-1.

    Every stored coefficient must be nonzero; the classification theory
    needs nonzero a(n) to keep the period matrix invertible, and nonzero
    b(n) is part of the same hypothesis.
    """

    a_block: tuple
    b_block: tuple

    def __post_init__(self):
        object.__setattr__(self, "a_block", tuple(self.a_block))
        object.__setattr__(self, "b_block", tuple(self.b_block))
        if not self.a_block:
            raise InvalidSpec("period must be >= 1")
        if len(self.a_block) != len(self.b_block):
            raise InvalidSpec(
                f"period blocks must have equal length, got "
                f"|a| = {len(self.a_block)}, |b| = {len(self.b_block)}"
            )
        for i, value in enumerate(self.a_block):
            if is_zero(value):
                raise InvalidSpec(f"a[{i + 1}] = 0 is not allowed in a periodic CF")
        for i, value in enumerate(self.b_block):
            if is_zero(value):
                raise InvalidSpec(f"b[{i}] = 0 is not allowed in a periodic CF")

    @property
    def period(self) -> int:
        return len(self.a_block)

    def a(self, n: int) -> Scalar:
        _check_index(n, 1)
        return self.a_block[(n - 1) % self.period]

    def b(self, n: int) -> Scalar:
        _check_index(n, 0)
        return self.b_block[n % self.period]


@dataclass(frozen=True)
class RuleCF(CFSpec):
    """Unbounded coefficients produced by explicit index rules."""

    a_rule: Callable[[int], Scalar]
    b_rule: Callable[[int], Scalar]
    label: str = "rule"

    def a(self, n: int) -> Scalar:
        _check_index(n, 1)
        return self.a_rule(n)

    def b(self, n: int) -> Scalar:
        _check_index(n, 0)
        return self.b_rule(n)


def _make_regular(params: dict) -> CFSpec:
    b = params["b"]
    return FiniteCF(a_list=(1,) * (len(b) - 1), b_list=tuple(b))


def _make_negative(params: dict) -> CFSpec:
    b = params["b"]
    return FiniteCF(a_list=(-1,) * (len(b) - 1), b_list=tuple(b))


def _make_sqrt2(params: dict) -> CFSpec:
    return RuleCF(
        a_rule=lambda n: 1,
        b_rule=lambda n: 1 if n == 0 else 2,
        label="sqrt2",
    )


def _make_golden(params: dict) -> CFSpec:
    return PeriodicCF(a_block=(1,), b_block=(1,))


#: fixed registry of named coefficient generators usable from spec files
GENERATORS: dict[str, Callable[[dict], CFSpec]] = {
    "regular": _make_regular,
    "negative": _make_negative,
    "sqrt2": _make_sqrt2,
    "golden": _make_golden,
}


def make_generator(name: str, params: dict | None = None) -> CFSpec:
    if name not in GENERATORS:
        raise InvalidSpec(
            f"unknown generator {name!r}; known: {', '.join(sorted(GENERATORS))}"
        )
    try:
        return GENERATORS[name](params or {})
    except KeyError as exc:
        raise InvalidSpec(f"generator {name!r} is missing parameter {exc}") from None


# -- convergent tables --------------------------------------------------------


@dataclass(frozen=True)
class ConvergentPair:
    """Numerator/denominator pair (A(n), B(n)) at index n >= -1."""

    n: int
    num: Scalar
    den: Scalar

    def value(self) -> Scalar:
        if is_zero(self.den):
            raise ZeroDenominator(self.n)
        return scalar_div(self.num, self.den)


@dataclass(frozen=True)
class ShiftedPair:
    """Pair (A(k,n), B(k,n)) of the tail CF starting at coefficient index k."""

    k: int
    n: int
    num: Scalar
    den: Scalar


def convergent_table(spec: CFSpec, n_max: int) -> list[ConvergentPair]:
    """All pairs (A(n), B(n)) for n = -1 .. n_max, computed exactly."""
    _check_index(n_max, 0, "n_max")
    spec.require(n_max)
    pairs = [ConvergentPair(-1, 1, 0), ConvergentPair(0, spec.b(0), 1)]
    a_prev2, b_prev2 = 1, 0
    a_prev, b_prev = spec.b(0), 1
    for n in range(1, n_max + 1):
        an, bn = spec.a(n), spec.b(n)
        a_cur = bn * a_prev + an * a_prev2
        b_cur = bn * b_prev + an * b_prev2
        pairs.append(ConvergentPair(n, a_cur, b_cur))
        a_prev2, b_prev2 = a_prev, b_prev
        a_prev, b_prev = a_cur, b_cur
    return pairs


def convergent_pair(spec: CFSpec, n: int) -> ConvergentPair:
    return convergent_table(spec, max(n, 0))[n + 1]


def evaluate_convergent(spec: CFSpec, n: int) -> Scalar:
    """Value A(n)/B(n) of the n-th convergent; exact in exact towers."""
    _check_index(n, 0)
    return convergent_pair(spec, n).value()


def coefficient_product(spec: CFSpec, n: int) -> Scalar:
    """Product a(1) a(2) ... a(n)."""
    product: Scalar = 1
    for i in range(1, n + 1):
        product = product * spec.a(i)
    return product


def cross_determinant(spec: CFSpec, n: int) -> Scalar:
    """A(n)B(n-1) - A(n-1)B(n); equals (-1)^(n-1) a(1)...a(n) exactly."""
    _check_index(n, 1)
    table = convergent_table(spec, n)
    cur, prev = table[n + 1], table[n]
    return cur.num * prev.den - prev.num * cur.den


def successive_difference(spec: CFSpec, n: int) -> Scalar:
    """A(n)/B(n) - A(n-1)/B(n-1), defined only when both denominators are nonzero."""
    _check_index(n, 1)
    table = convergent_table(spec, n)
    cur, prev = table[n + 1], table[n]
    if is_zero(prev.den):
        raise ZeroDenominator(n - 1)
    if is_zero(cur.den):
        raise ZeroDenominator(n)
    return scalar_div(cur.num, cur.den) - scalar_div(prev.num, prev.den)


def shifted_table(spec: CFSpec, k: int, n_max: int) -> list[ShiftedPair]:
    """Pairs of the shifted CF b(k) + a(k+1)/b(k+1) + ... for n = -1 .. n_max."""
    _check_index(k, 0, "k")
    _check_index(n_max, -1, "n_max")
    pairs = [ShiftedPair(k, -1, 1, 0)]
    if n_max < 0:
        return pairs
    spec.require(k + n_max)
    b_k = spec.b(k)
    pairs.append(ShiftedPair(k, 0, b_k, 1))
    a_prev2, b_prev2 = 1, 0
    a_prev, b_prev = b_k, 1
    for n in range(1, n_max + 1):
        an, bn = spec.a(k + n), spec.b(k + n)
        a_cur = bn * a_prev + an * a_prev2
        b_cur = bn * b_prev + an * b_prev2
        pairs.append(ShiftedPair(k, n, a_cur, b_cur))
        a_prev2, b_prev2 = a_prev, b_prev
        a_prev, b_prev = a_cur, b_cur
    return pairs


def shifted_pair(spec: CFSpec, k: int, n: int) -> ShiftedPair:
    return shifted_table(spec, k, max(n, -1))[n + 1]
