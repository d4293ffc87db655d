import random
from fractions import Fraction

import pytest

from quadchab.curve import (
    CurveValidationError, HyperellipticCurve, poly_eval, poly_is_square_mod,
    validate_curve,
)
from quadchab.linalg import RationalMatrix
from quadchab.padic import PadicNumber

F57A1 = [70416, -3024, 0, 1]         # y^2 = x^3 - 3024 x + 70416
FG2 = [1, 0, 0, 1, -2, 1]            # y^2 = x^3 (x-1)^2 + 1

PREC = 12


class TestValidate:
    def test_57a1(self):
        X = validate_curve(F57A1, 7)
        assert X.g == 1
        bad = X.bad_primes()
        assert 2 in bad and 3 in bad and 7 not in bad

    def test_genus2(self):
        X = validate_curve(FG2, 11)
        assert X.g == 2
        assert X.bad_primes() == [2]

    def test_even_degree_rejected(self):
        with pytest.raises(CurveValidationError):
            HyperellipticCurve([1, 0, 0, 0, 1], 7)

    def test_nonseparable_rejected(self):
        # x^3: disc = 0
        with pytest.raises(CurveValidationError):
            HyperellipticCurve([0, 0, 0, 1], 7)

    def test_disc_divisibility(self):
        # disc(x^3 + x) = -4, so p = 3 has good reduction but p = 2 is rejected
        HyperellipticCurve([0, 1, 0, 1], 3)
        with pytest.raises(CurveValidationError):
            HyperellipticCurve([0, 1, 0, 1], 2)

    def test_square_mod_q_detected(self):
        # x^2 (degree loss mod 3: 3x^3 + x^2 = x^2 mod 3 is a square)
        assert poly_is_square_mod([0, 0, 1, 3], 3)
        assert not poly_is_square_mod([1, 0, 0, 1], 5)


class TestInfinityExpansions:
    def test_omega_gminus1_leading(self):
        for f, p in ((F57A1, 7), (FG2, 11)):
            X = HyperellipticCurve(f, p)
            w = X.omega_expansion_exact(X.g - 1, 8)
            assert w.order() == 0
            assert w.coeff(0) == 1  # w_{g-1} = (1 + O(z)) dz

    def test_x_leading(self):
        X = HyperellipticCurve(F57A1, 7)
        x, y, s = X.infinity_expansions_exact(10)
        assert x.order() == -2
        assert x.coeff(-2) == Fraction(1, X.lead)

    def test_omega0_genus2(self):
        X = HyperellipticCurve(FG2, 11)
        w = X.omega_expansion_exact(0, 8)
        # w_0 = lead * z^2 (1 + O(z)) dz for g = 2
        assert w.order() == 2
        assert w.coeff(2) == X.lead

    def test_curve_equation_at_infinity(self):
        X = HyperellipticCurve(FG2, 11)
        x, y, s = X.infinity_expansions_exact(14)
        lhs = y * y
        rhs = 0
        xi = None
        for i, c in enumerate(X.f):
            xi = xi * x if xi is not None else None
        # Horner instead
        acc = None
        for c in reversed(X.f):
            acc = (acc * x if acc is not None else None)
            acc = acc + c if acc is not None else _const(c, lhs.cutoff)
        diff = lhs - acc
        for k in range(diff.shift, diff.cutoff):
            assert diff.coeff(k) == 0


def _const(c, cutoff):
    from quadchab.series import FracSeries
    return FracSeries([c], 0, cutoff)


class TestCup:
    def test_genus2_paper_matrix(self):
        X = HyperellipticCurve(FG2, 11)
        C = X.cup_product_matrix()
        expected = RationalMatrix([
            [0, 0, 0, Fraction(1, 3)],
            [0, 0, 1, Fraction(4, 3)],
            [0, -1, 0, Fraction(1, 3)],
            [Fraction(-1, 3), Fraction(-4, 3), Fraction(-1, 3), 0],
        ])
        assert C == expected

    def test_antisymmetry_random(self):
        rng = random.Random(2)
        tried = 0
        while tried < 5:
            f = [rng.randint(-4, 4) for _ in range(3)] + [1]
            try:
                X = HyperellipticCurve(f, 7)
            except CurveValidationError:
                continue
            tried += 1
            C = X.cup_product_matrix()
            assert (C + C.transpose()) == RationalMatrix.zero(2, 2)

    def test_closed_form(self):
        # [w_i'] cup [w_i] = 1/(lead (2i+1-2g)); zero above the antidiagonal block
        X = HyperellipticCurve([1, 1, 0, 2], 5)  # lead 2, g = 1
        C = X.cup_product_matrix()
        g = X.g
        for i in range(g):
            ip = 2 * g - 1 - i
            assert C[(ip, i)] == Fraction(1, X.lead * (2 * i + 1 - 2 * g))
        for j in range(g):
            for i in range(g):
                if g - 1 >= j > i:
                    assert C[(2 * g - 1 - j, i)] == 0


class TestDisks:
    def test_genus2_disk_multiset(self):
        X = HyperellipticCurve(FG2, 11)
        disks = X.enumerate_disks()
        reds = {d.reduction for d in disks}
        for pt in [(0, 1), (0, 10), (1, 1), (1, 10), (2, 3), (2, 8),
                   (8, 3), (8, 8), (4, 4), (4, 7), (6, 0), "inf"]:
            assert pt in reds
        assert len(disks) == X.count_points_fp()

    def test_involution(self):
        X = HyperellipticCurve(F57A1, 7)
        P = X.point(60, -324)
        assert P.involution() == X.point(60, 324)
        assert X.infinity().involution() == X.infinity()

    def test_parametrization_on_curve(self):
        X = HyperellipticCurve(F57A1, 7)
        P = X.point(60, -324)
        disk = X.disk_of(P)
        x_t, y_t = X.disk_parametrization(disk, P, 18, PREC)
        # t = 0 gives the base point
        assert x_t.coeff(0).same(60)
        assert y_t.coeff(0).same(-324)
        # evaluate at t = p and check the equation
        t = PadicNumber.from_int(7, 7, PREC)
        xv = x_t.evaluate(t)
        yv = y_t.evaluate(t)
        diff = yv * yv - poly_eval(X.f, xv)
        assert diff.is_zero()
        assert diff.abs_prec >= 10

    def test_parametrization_involution(self):
        X = HyperellipticCurve(F57A1, 7)
        P = X.point(60, -324)
        xt1, yt1 = X.disk_parametrization(X.disk_of(P), P, 10, PREC)
        Pw = P.involution()
        xt2, yt2 = X.disk_parametrization(X.disk_of(Pw), Pw, 10, PREC)
        for k in range(8):
            assert xt2.coeff(k).same(xt1.coeff(k), prec=9)
            assert yt2.coeff(k).same(-yt1.coeff(k), prec=9)

    def test_weierstrass_parametrization(self):
        X = HyperellipticCurve(FG2, 11)
        disk = [d for d in X.enumerate_disks() if d.kind == "weierstrass"][0]
        A = X.weierstrass_root(disk, PREC)
        assert poly_eval(X.f, A).is_zero()
        from quadchab.curve import PadicCurvePoint
        base = PadicCurvePoint(X, A, PadicNumber.zero(11, PREC))
        x_t, y_t = X.disk_parametrization(disk, base, 14, PREC)
        t = PadicNumber.from_int(11, 11, PREC)
        xv = x_t.evaluate(t)
        diff = t * t - poly_eval(X.f, xv)
        assert diff.is_zero()

    def test_teichmuller_point_fixed(self):
        X = HyperellipticCurve(F57A1, 7)
        P = X.point(60, -324)
        T = X.teichmuller_point(X.disk_of(P), PREC)
        # x^p = x and same disk
        assert (T.x ** 7).same(T.x, prec=PREC)
        assert T.reduction() == P.reduction()
        diff = T.y * T.y - poly_eval(X.f, T.x)
        assert diff.is_zero()
