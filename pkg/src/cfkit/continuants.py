"""Continuants: tridiagonal determinants that generate convergent pairs.

K(a1..an; b0..bn) is the determinant of the (n+1) x (n+1) matrix with
diagonal b0..bn, superdiagonal -1 and subdiagonal a1..an.  The fast path is
the three-term expansion along the last row; `continuant_oracle` recomputes
the same value by naive cofactor expansion of the explicit matrix so the two
routes share no code.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cfcore import CFSpec, ConvergentPair, convergent_table, shifted_pair
from .errors import InvalidSpec, SizeLimit
from .scalars import Scalar

ORACLE_MAX_TERMS = 12


@dataclass(frozen=True)
class ContinuantArgs:
    """Coefficient lists for one continuant; needs |b| = |a| + 1 >= 1."""

    a: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.b) != len(self.a) + 1:
            raise InvalidSpec(
                f"need |b| = |a| + 1, got |a| = {len(self.a)}, |b| = {len(self.b)}"
            )

    @property
    def n(self) -> int:
        return len(self.a)


def continuant(args: ContinuantArgs) -> Scalar:
    """Continuant value via the last-row expansion K_m = b_m K_{m-1} + a_m K_{m-2}."""
    prev2: Scalar = 1          # empty determinant
    prev: Scalar = args.b[0]
    for m in range(1, len(args.b)):
        cur = args.b[m] * prev + args.a[m - 1] * prev2
        prev2, prev = prev, cur
    return prev


def _det_cofactor(matrix: list[list[Scalar]]) -> Scalar:
    """Determinant by expansion along the first row, skipping exact zeros."""
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    total: Scalar = 0
    for col, entry in enumerate(matrix[0]):
        if entry == 0:
            continue
        minor = [row[:col] + row[col + 1 :] for row in matrix[1:]]
        term = entry * _det_cofactor(minor)
        total = total + term if col % 2 == 0 else total - term
    return total


def continuant_oracle(args: ContinuantArgs) -> Scalar:
    """Independent check value: build the tridiagonal matrix and expand cofactors.

    Deliberately does not reuse the recurrence; capped because cofactor
    expansion cost explodes with size.
    """
    n = args.n
    if n > ORACLE_MAX_TERMS:
        raise SizeLimit(f"oracle supports at most {ORACLE_MAX_TERMS} terms, got {n}")
    size = n + 1
    matrix: list[list[Scalar]] = [[0] * size for _ in range(size)]
    for i in range(size):
        matrix[i][i] = args.b[i]
        if i + 1 < size:
            matrix[i][i + 1] = -1
            matrix[i + 1][i] = args.a[i]
    return _det_cofactor(matrix)


def first_column_expansion(args: ContinuantArgs) -> Scalar:
    """Continuant via the first-column split b0*K(tail from 1) + a1*K(tail from 2)."""
    if args.n < 2:
        raise SizeLimit("first-column expansion needs at least two a-coefficients")
    head = ContinuantArgs(a=args.a[1:], b=args.b[1:])
    tail = ContinuantArgs(a=args.a[2:], b=args.b[2:])
    return args.b[0] * continuant(head) + args.a[0] * continuant(tail)


def reversed_args(args: ContinuantArgs) -> ContinuantArgs:
    """Both coefficient lists reversed; the symmetric continuant has equal value."""
    return ContinuantArgs(a=args.a[::-1], b=args.b[::-1])


@dataclass(frozen=True)
class ReversedConvergents:
    """Last two convergent pairs of the reversed finite CF b(n) + a(n)/b(n-1) + ..."""

    num_n: Scalar
    den_n: Scalar
    num_prev: Scalar
    den_prev: Scalar


def reverse_relations(spec: CFSpec, n: int) -> ReversedConvergents:
    """Convergents of the order-reversed CF, computed by direct recurrence.

    They coincide with forward values: A'(n) = A(n), B'(n) = A(n-1),
    A'(n-1) = B(n), B'(n-1) = B(n-1).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    spec.require(n)
    # reversed coefficients: b'(k) = b(n-k), a'(k) = a(n+1-k)
    a_prev2, a_prev = 1, spec.b(n)
    b_prev2, b_prev = 0, 1
    for k in range(1, n + 1):
        ak = spec.a(n + 1 - k)
        bk = spec.b(n - k)
        a_cur = bk * a_prev + ak * a_prev2
        b_cur = bk * b_prev + ak * b_prev2
        a_prev2, a_prev = a_prev, a_cur
        b_prev2, b_prev = b_prev, b_cur
    return ReversedConvergents(
        num_n=a_prev, den_n=b_prev, num_prev=a_prev2, den_prev=b_prev2
    )


def tail_combination(spec: CFSpec, n: int, k: int) -> ConvergentPair:
    """Pair at index n+k assembled from the tail table and the (n-1), (n-2) pairs:

        A(n+k) = A(n,k) A(n-1) + a(n) B(n,k) A(n-2)
        B(n+k) = A(n,k) B(n-1) + a(n) B(n,k) B(n-2)
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    table = convergent_table(spec, n - 1)
    prev, prev2 = table[n], table[n - 1]
    tail = shifted_pair(spec, n, k)
    an = spec.a(n)
    num = tail.num * prev.num + an * tail.den * prev2.num
    den = tail.num * prev.den + an * tail.den * prev2.den
    return ConvergentPair(n + k, num, den)


def generalized_cross_determinant(spec: CFSpec, n: int, k: int) -> Scalar:
    """A(n+k)B(n-1) - A(n-1)B(n+k); equals (-1)^(n-1) a(1)..a(n) B(n,k)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    table = convergent_table(spec, n + k)
    far, prev = table[n + k + 1], table[n]
    return far.num * prev.den - prev.num * far.den


def continuant_of_convergent(spec: CFSpec, n: int) -> tuple[Scalar, Scalar]:
    """(A(n), B(n)) recomputed as continuants of the coefficient slices."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    a = tuple(spec.a(i) for i in range(1, n + 1))
    b = tuple(spec.b(i) for i in range(0, n + 1))
    num = continuant(ContinuantArgs(a=a, b=b))
    den = continuant(ContinuantArgs(a=a[1:], b=b[1:])) if n >= 1 else 1
    return num, den
