"""Tests for exact rational/complex-rational arithmetic and terminating
hypergeometric sums."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from su2chan.exactnum import (
    CRational,
    NonTerminatingError,
    binomial,
    factorial,
    falling_pochhammer,
    hyp2f1_terminating,
    hyp3f2_terminating,
    rising_pochhammer,
)

rationals = st.builds(
    Fraction, st.integers(-10**6, 10**6), st.integers(1, 10**3))
crationals = st.builds(CRational, rationals, rationals)


class TestCombinatorics:

    def test_binomial_matches_math_comb(self):
        for n in range(0, 25):
            for k in range(0, n + 1):
                assert binomial(n, k) == math.comb(n, k)

    def test_binomial_out_of_range_is_zero(self):
        assert binomial(5, 6) == 0
        assert binomial(5, -1) == 0

    def test_binomial_negative_n_raises(self):
        with pytest.raises(ValueError):
            binomial(-1, 0)

    def test_factorial(self):
        for n in range(0, 12):
            assert factorial(n) == math.factorial(n)

    @given(st.integers(-8, 8), st.integers(0, 8))
    def test_rising_product_definition(self, a, n):
        prod = 1
        for i in range(n):
            prod *= a + i
        assert rising_pochhammer(a, n) == prod

    @given(st.integers(-8, 8), st.integers(0, 8))
    def test_falling_vs_rising(self, a, n):
        assert falling_pochhammer(a, n) == \
            (-1) ** n * rising_pochhammer(-a, n)

    def test_rising_rational_argument(self):
        assert rising_pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)


class TestHypergeometric:

    @given(st.integers(0, 10), st.integers(-10, 10), st.integers(11, 25))
    @settings(max_examples=200, deadline=None)
    def test_gauss_summation_property(self, n, b, c):
        lhs = hyp2f1_terminating(n, b, c)
        rhs = rising_pochhammer(c - b, n) / rising_pochhammer(c, n)
        assert lhs == rhs

    def test_gauss_summation_negative_c(self):
        # c a negative integer with |c| >= n keeps every term finite
        for n in range(0, 8):
            for c in range(-20, -max(n, 1) + 1):
                for b in (-3, 2, 7):
                    if rising_pochhammer(c, n) == 0:
                        continue
                    assert hyp2f1_terminating(n, b, c) == \
                        rising_pochhammer(c - b, n) / rising_pochhammer(c, n)

    def test_2f1_rational_parameters(self):
        # 2F1(-2, 1/2; 3/2; 1) = 1 - 2*(1/2)/(3/2) + (1/2)(3/2)/((3/2)(5/2))/2 * 2
        val = hyp2f1_terminating(2, Fraction(1, 2), Fraction(3, 2))
        expected = 1 - Fraction(2, 1) * Fraction(1, 2) / Fraction(3, 2) \
            + Fraction(2 * 1, 2) * (Fraction(1, 2) * Fraction(3, 2)) \
            / (Fraction(3, 2) * Fraction(5, 2))
        assert val == expected

    def test_3f2_terminates_on_first_negative_parameter(self):
        # a1 = -1 truncates after two terms
        val = hyp3f2_terminating(-1, 4, 5, 2, 3)
        assert val == 1 + Fraction(-1 * 4 * 5, 2 * 3)

    def test_3f2_unit_value_when_numerator_zero(self):
        assert hyp3f2_terminating(0, 7, -3, 2, 2) == 1

    def test_3f2_nonterminating_raises(self):
        with pytest.raises(NonTerminatingError):
            hyp3f2_terminating(Fraction(1, 2), 1, 1, 3, 3)


class TestCRational:

    @given(crationals, crationals)
    @settings(max_examples=100, deadline=None)
    def test_field_operations(self, x, y):
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) - y == x
        if not (y.re == 0 and y.im == 0):
            assert (x * y) / y == x

    @given(crationals)
    def test_conjugation_and_modulus(self, x):
        assert x.conj().conj() == x
        assert (x * x.conj()).re == x.abs2()
        assert (x * x.conj()).im == 0

    def test_mixed_scalar_arithmetic(self):
        z = CRational(Fraction(1, 2), Fraction(3, 4))
        assert z + 1 == CRational(Fraction(3, 2), Fraction(3, 4))
        assert 2 * z == CRational(1, Fraction(3, 2))
        assert z - Fraction(1, 2) == CRational(0, Fraction(3, 4))
        assert complex(z) == 0.5 + 0.75j

    def test_equality_with_plain_scalars(self):
        assert CRational(3, 0) == 3
        assert CRational(Fraction(1, 3), 0) == Fraction(1, 3)
        assert CRational(0, 1) != 1
