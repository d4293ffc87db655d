from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quadchab.padic import (
    PadicNumber, PrecisionError, padic_log, padic_log_rational, padic_sqrt,
    teichmuller, val_of_rational,
)


def Z7(x, n=12):
    return PadicNumber.from_rational(x, 7, n)


def series_log_oracle(a, p, prec):
    """Independent oracle: sum (-1)^(k+1) a^k / k for v_p(a) >= 1, exact Fractions."""
    a = Fraction(a)
    acc = Fraction(0)
    term = Fraction(1)
    for k in range(1, 12 * prec):
        term *= a
        acc += term * Fraction((-1) ** (k + 1), k)
    return PadicNumber.from_rational(acc, p, prec)


class TestArithmetic:
    def test_roundtrip_digits(self):
        x = Z7(Fraction(2, 3))
        assert x.same(Fraction(2, 3))

    def test_add_precision(self):
        a = PadicNumber.from_int(1, 7, 5)
        b = PadicNumber.from_int(7 ** 6, 7, 10)
        assert (a + b).abs_prec == 5

    def test_mul_precision_shift(self):
        a = PadicNumber.from_int(7 ** 2 * 3, 7, 10)  # rel prec 8
        b = PadicNumber.from_int(5, 7, 4)            # rel prec 4
        c = a * b
        assert c.val == 2
        assert c.abs_prec == 2 + 4

    def test_zero_times_unit(self):
        z = PadicNumber.zero(7, 6)
        u = PadicNumber.from_int(7 * 2, 7, 12)
        assert (z * u).abs_prec == 7

    def test_negative_valuation_print(self):
        x = PadicNumber.from_rational(Fraction(8, 11), 11, 3)
        s = str(x)
        assert "11^-1" in s

    def test_division(self):
        x = Z7(10) / Z7(5)
        assert x.same(2)

    def test_paper_digit_style(self):
        # 4*7 + 4*7^2 + O(7^3)
        x = PadicNumber.from_int(4 * 7 + 4 * 49, 7, 3)
        assert str(x) == "4*7 + 4*7^2 + O(7^3)"

    def test_compare_insufficient_precision(self):
        a = PadicNumber.from_int(1, 7, 3)
        with pytest.raises(PrecisionError):
            a.same(1, prec=5)

    @given(st.integers(-1000, 1000), st.integers(-1000, 1000))
    @settings(max_examples=60, deadline=None)
    def test_ring_laws_vs_exact(self, a, b):
        pa, pb = Z7(a, 15), Z7(b, 15)
        assert (pa + pb).same(a + b, prec=12)
        assert (pa * pb).same(a * b, prec=12)
        assert (pa - pb).same(a - b, prec=12)


class TestLog:
    def test_log_one(self):
        assert padic_log(Z7(1)).is_zero()

    def test_log7_of_2_series_oracle(self):
        # 2^6 = 1 + 63, so 6*log(2) = log(1 + 63); oracle sums the series at 7^10
        lhs = padic_log(PadicNumber.from_int(2, 7, 10)) * 6
        rhs = series_log_oracle(63, 7, 10)
        assert lhs.same(rhs, prec=9)

    def test_log_one_plus_p(self):
        # log(1+p) = p - p^2/2 + p^3/3 - ... (direct series oracle)
        for p in (5, 7, 11):
            got = padic_log(PadicNumber.from_int(1 + p, p, 10))
            want = series_log_oracle(p, p, 10)
            assert got.same(want, prec=9)

    def test_iwasawa_branch(self):
        # log(p) = 0 means log(p^k * u) = log(u)
        x = padic_log_rational(Fraction(7 ** 3 * 2), 7, 10)
        y = padic_log_rational(2, 7, 10)
        assert x.same(y, prec=9)

    def test_log_of_teichmuller_is_zero(self):
        for a in (2, 3, 4, 5):
            t = teichmuller(a, 7, 12)
            assert padic_log(t).is_zero()

    @given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6))
    @settings(max_examples=40, deadline=None)
    def test_log_homomorphism(self, a, b):
        p = 7
        if a % p == 0 or b % p == 0:
            return
        la = padic_log(PadicNumber.from_int(a, p, 10))
        lb = padic_log(PadicNumber.from_int(b, p, 10))
        lab = padic_log(PadicNumber.from_int(a * b, p, 10))
        assert (la + lb).same(lab, prec=8)


class TestTeichmuller:
    def test_teich_one(self):
        assert teichmuller(1, 7, 10).same(1)

    def test_teich_3_in_Q7(self):
        # Hensel oracle: the root of x^6 = 1 congruent to 3 mod 7
        t = teichmuller(3, 7, 12)
        assert t.residue() == 3
        assert (t ** 6).same(1, prec=12)

    def test_teich_fixed_by_p_power(self):
        t = teichmuller(5, 11, 10)
        assert (t ** 11).same(t, prec=10)


class TestSqrt:
    def test_sqrt_square(self):
        x = Z7(2, 14)
        s = padic_sqrt(x * x, sign_residue=2)
        assert s.same(x, prec=14)

    def test_sqrt_branch(self):
        s = padic_sqrt(Z7(4, 10), sign_residue=5)
        assert s.same(-2, prec=10)

    def test_sqrt_even_valuation(self):
        s = padic_sqrt(Z7(4 * 49, 10))
        assert s.val == 1


def test_val_of_rational():
    assert val_of_rational(Fraction(7, 3), 7) == 1
    assert val_of_rational(Fraction(3, 49), 7) == -2
