"""Hilbert symbols over Q_p: closed formulas against the certified conic oracle."""

from fractions import Fraction

import pytest

from chatelet.hilbert import hilbert, hilbert_2, hilbert_odd, hilbert_oracle, symbol_route
from chatelet.padic import rational_is_square, square_class_reps
from chatelet.quadratic import build_extension

PRIMES = [2, 3, 5, 7, 13]


class TestKnownValues:
    def test_minus1_minus1_at_2(self):
        # z^2 + x^2 + y^2 = 0 has no nontrivial 2-adic solution
        assert hilbert(2, -1, -1) == -1

    def test_minus1_minus1_at_odd(self):
        assert hilbert(5, -1, -1) == 1
        assert hilbert(3, -1, -1) == 1

    def test_2_minus1_at_2(self):
        # witness 1^2 - 2*1^2 = -1
        assert hilbert(2, 2, -1) == 1

    def test_5_2_at_2(self):
        assert hilbert(2, 5, 2) == -1

    def test_p_nonresidue_at_odd(self):
        assert hilbert(3, 3, 2) == -1
        assert hilbert(7, 7, 3) == -1

    def test_square_argument_is_trivial(self):
        for b in (-1, 2, 5, -10):
            assert hilbert(2, 4, b) == 1
            assert hilbert(5, 9, b) == 1


class TestAlgebraicLaws:
    @pytest.mark.parametrize("p", PRIMES)
    def test_symmetry(self, p):
        reps = square_class_reps(p)
        for a in reps:
            for b in reps:
                assert hilbert(p, a, b) == hilbert(p, b, a)

    @pytest.mark.parametrize("p", PRIMES)
    def test_bilinearity(self, p):
        reps = square_class_reps(p)
        for a1 in reps:
            for a2 in reps:
                for b in reps:
                    assert hilbert(p, a1 * a2, b) == \
                        hilbert(p, a1, b) * hilbert(p, a2, b)

    @pytest.mark.parametrize("p", PRIMES)
    def test_a_with_one_minus_a(self, p):
        for a in [Fraction(n, m) for n in range(-9, 10) for m in (1, 2, 3)]:
            if a == 0 or a == 1:
                continue
            assert hilbert(p, a, 1 - a) == 1

    @pytest.mark.parametrize("p", PRIMES)
    def test_a_with_minus_a(self, p):
        for a in range(-9, 10):
            if a == 0:
                continue
            assert hilbert(p, a, -a) == 1

    @pytest.mark.parametrize("p", PRIMES)
    def test_invariance_under_squares(self, p):
        reps = square_class_reps(p)
        for a in reps:
            for b in reps:
                assert hilbert(p, a * 49, b * Fraction(1, 4)) == \
                    hilbert(p, a, b)


class TestOracleAgreement:
    @pytest.mark.parametrize("p", PRIMES)
    def test_all_class_pairs(self, p):
        reps = square_class_reps(p)
        for a in reps:
            for b in reps:
                assert hilbert(p, a, b) == hilbert_oracle(p, a, b), (p, a, b)

    def test_oracle_on_scaled_inputs(self):
        assert hilbert_oracle(2, 20, -8) == hilbert(2, 20, -8)
        assert hilbert_oracle(3, Fraction(2, 3), 12) == \
            hilbert(3, Fraction(2, 3), 12)


class TestNormLink:
    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_symbol_detects_norms(self, p):
        # (x, d) = 1 exactly when x is a norm from Q_p(sqrt d)
        for d in square_class_reps(p):
            if d == 1:
                continue
            ext = build_extension(p, d)
            for x in square_class_reps(p):
                assert (hilbert(p, x, d) == 1) == ext.is_norm(x)

    def test_symbol_trivial_when_d_square(self):
        for x in square_class_reps(2):
            assert hilbert(2, x, 9) == 1


class TestRoutesAndErrors:
    def test_route_names(self):
        assert symbol_route(2) == "2-adic closed formula"
        assert symbol_route(7) == "odd-p norm criterion"

    def test_odd_routine_rejects_two(self):
        with pytest.raises(ValueError):
            hilbert_odd(2, 3, 5)

    def test_zero_arguments_rejected(self):
        with pytest.raises((ValueError, ZeroDivisionError)):
            hilbert(5, 0, 3)

    def test_dichotomy(self):
        for p in PRIMES:
            for a in square_class_reps(p):
                for b in square_class_reps(p):
                    assert hilbert(p, a, b) in (-1, 1)

    def test_2adic_formula_direct(self):
        # units: symbol is -1 exactly when both are 3 mod 4
        for u in (1, 3, 5, 7):
            for v in (1, 3, 5, 7):
                expect = -1 if (u % 4 == 3 and v % 4 == 3) else 1
                assert hilbert_2(u, v) == expect
