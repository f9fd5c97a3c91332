from fractions import Fraction

import pytest

from cfkit import (
    ComplexFloat,
    FiniteCF,
    PeriodicCF,
    denominator_bounds_certificate,
    evaluate_tietze,
    make_generator,
    validate_semiregular,
)
from cfkit.errors import (
    EvaluationCancelled,
    InvalidSpec,
    IterationCap,
    TowerMismatch,
)
from conftest import footnote_cf, golden_cf, random_semiregular


class TestValidation:
    def test_regular_cf_is_valid(self):
        report = validate_semiregular(golden_cf(), 50)
        assert report.valid and report.first_violation is None
        assert report.checked_up_to == 50

    def test_negative_twos_is_valid(self):
        # b + a_next = 2 - 1 = 1 meets the boundary exactly
        assert validate_semiregular(footnote_cf(), 50).valid

    def test_three_halves_negative_fails_on_sum(self):
        spec = PeriodicCF(a_block=(-1,), b_block=(Fraction(3, 2),))
        report = validate_semiregular(spec, 10)
        assert not report.valid
        assert report.first_violation.n == 1
        assert report.first_violation.which == "sum_below_one"

    def test_non_unit_numerator(self):
        spec = PeriodicCF(a_block=(2,), b_block=(3,))
        report = validate_semiregular(spec, 10)
        assert report.first_violation.which == "a_not_unit"
        assert report.first_violation.n == 1

    def test_small_denominator(self):
        spec = PeriodicCF(a_block=(1,), b_block=(Fraction(1, 2),))
        report = validate_semiregular(spec, 10)
        assert report.first_violation.which == "b_below_one"

    def test_violation_order_prefers_a_check(self):
        spec = PeriodicCF(a_block=(3,), b_block=(Fraction(1, 2),))
        assert validate_semiregular(spec, 5).first_violation.which == "a_not_unit"

    def test_later_violation_index(self):
        spec = FiniteCF(a_list=(1, 1, 1, -1, 1), b_list=(1, 2, 2, 1, 2, 2))
        # b(3) = 1 with a(4) = -1 breaks the sum condition at n = 3
        report = validate_semiregular(spec, 4)
        assert report.first_violation.n == 3
        assert report.first_violation.which == "sum_below_one"

    def test_complex_tower_rejected(self):
        spec = PeriodicCF(a_block=(ComplexFloat(1, 0),), b_block=(ComplexFloat(2, 0),))
        with pytest.raises(TowerMismatch):
            validate_semiregular(spec, 3)

    def test_b0_unconstrained(self):
        spec = FiniteCF(a_list=(1, 1), b_list=(-7, 1, 1))
        assert validate_semiregular(spec, 1).valid


class TestCertificate:
    def test_footnote_meets_minus_bound_with_equality(self):
        records = denominator_bounds_certificate(footnote_cf(), 60)
        assert all(r.bound_type == "minus_case" for r in records)
        assert [r.bound for r in records] == [k + 1 for k in range(1, 60)]
        # B(k) = k + 1 exactly: the bound is met with equality, so any
        # off-by-one in the certificate would raise

    def test_golden_plus_bounds(self):
        records = denominator_bounds_certificate(golden_cf(), 40)
        assert all(r.bound_type == "plus_case" for r in records)

    def test_random_semiregular(self, rng):
        for _ in range(10):
            spec = random_semiregular(rng, 80)
            records = denominator_bounds_certificate(spec, 60)
            assert len(records) == 59

    def test_invalid_input_rejected(self):
        spec = PeriodicCF(a_block=(-1,), b_block=(Fraction(3, 2),))
        with pytest.raises(InvalidSpec):
            denominator_bounds_certificate(spec, 10)


class TestEvaluate:
    def test_footnote_tenth(self):
        bounded = evaluate_tietze(footnote_cf(), Fraction(1, 10))
        assert bounded.value == Fraction(13, 12)
        assert bounded.n_used == 11
        assert bounded.error_bound == Fraction(1, 11)
        # the limit is exactly 1
        assert abs(bounded.value - 1) <= bounded.error_bound

    def test_sqrt2(self):
        bounded = evaluate_tietze(make_generator("sqrt2"), Fraction(1, 10**6))
        square_error = bounded.value * bounded.value - 2
        assert abs(square_error) < Fraction(3, 10**6)
        assert bounded.error_bound < Fraction(1, 10**6)

    def test_coarse_epsilon_returns_quickly(self):
        bounded = evaluate_tietze(footnote_cf(), Fraction(1))
        assert bounded.n_used == 2
        assert bounded.error_bound == Fraction(1, 2)

    def test_refinement_consistency(self, rng):
        for _ in range(10):
            spec = random_semiregular(rng, 400)
            eps = Fraction(1, 10**6)
            coarse = evaluate_tietze(spec, eps)
            fine = evaluate_tietze(spec, eps / 10)
            assert abs(coarse.value - fine.value) <= eps + eps / 10

    def test_bound_dominates_true_error_against_deep_value(self, rng):
        for _ in range(10):
            spec = random_semiregular(rng, 400)
            bounded = evaluate_tietze(spec, Fraction(1, 1000))
            deep = evaluate_tietze(spec, Fraction(1, 10**9))
            assert abs(bounded.value - deep.value) <= bounded.error_bound + deep.error_bound

    def test_iteration_cap(self):
        with pytest.raises(IterationCap):
            evaluate_tietze(footnote_cf(), Fraction(1, 10**6), max_terms=100)

    def test_cancellation(self):
        with pytest.raises(EvaluationCancelled):
            evaluate_tietze(
                footnote_cf(), Fraction(1, 10**9), should_cancel=lambda: True
            )

    def test_rejects_nonpositive_epsilon(self):
        with pytest.raises(ValueError):
            evaluate_tietze(footnote_cf(), Fraction(0))


class TestCauchyEnvelope:
    def test_window_bound_exact(self, rng):
        # |A(n+k)/B(n+k) - A(n-1)/B(n-1)| <= 1/B(n-1) in exact arithmetic
        from cfkit import convergent_table

        for _ in range(10):
            spec = random_semiregular(rng, 60)
            table = convergent_table(spec, 60)
            for n in range(1, 30):
                b_prev = table[n].den
                for k in (0, 1, 2, 7, 20):
                    far = table[n + k + 1]
                    lhs = abs(
                        Fraction(far.num, far.den) - Fraction(table[n].num, b_prev)
                    )
                    assert lhs <= Fraction(1, 1) / b_prev
