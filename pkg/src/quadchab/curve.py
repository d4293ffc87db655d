"""The odd-degree hyperelliptic curve y^2 = f(x) and its local geometry.

Everything downstream hangs off HyperellipticCurve: residue disks and
their power-series parametrizations, the expansion of the basis
differentials w_i = x^i dx/2y at infinity in the parameter
z = -y/(x^(g+1) f_lead), and the exact cup product matrix computed from
residues at infinity.

Good reduction at p is enforced: p odd, p not dividing lead * disc(f).
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import RationalMatrix, discriminant
from .padic import PadicNumber, padic_sqrt, teichmuller_int, val_of_rational
from .series import FracSeries, PSeries, series_sqrt


class CurveValidationError(ValueError):
    pass


# ---------------------------------------------------------------------
# small integer / polynomial utilities
# ---------------------------------------------------------------------


def residue_of_rational(x, p):
    """Image of a p-integral rational in F_p."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ValueError("not p-integral")
    return x.numerator * pow(x.denominator, -1, p) % p


def poly_eval(coeffs, x):
    """Horner evaluation; works for Fraction, PadicNumber and PSeries x."""
    acc = None
    for c in reversed(coeffs):
        if acc is None:
            acc = _like(c, x)
        else:
            acc = acc * x + _like(c, x)
    return acc


def _like(c, x):
    if isinstance(x, PadicNumber):
        return PadicNumber.from_rational(c, x.p, x.abs_prec + 6)
    if isinstance(x, PSeries):
        prec = 6
        for cc in x.coeffs:
            prec = max(prec, 0 if cc.abs_prec >= 10 ** 9 else cc.abs_prec)
        return PSeries.from_list([c], x.p, prec + 6, 0, x.cutoff)
    return Fraction(c)


def poly_derivative(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def _pollard_rho(n, seed=2):
    import math
    if n % 2 == 0:
        return 2
    x = y = seed
    c = 1
    while True:
        x = (x * x + c) % n
        y = (y * y + c) % n
        y = (y * y + c) % n
        d = math.gcd(abs(x - y), n)
        if d == n:
            c += 1
            x = y = seed
            continue
        if d > 1:
            return d


def factor_int(n):
    """Prime factorization of |n| as a sorted dict prime -> exponent."""
    n = abs(int(n))
    out = {}
    if n in (0, 1):
        return out
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return dict(sorted(out.items()))


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _poly_mod(coeffs, q):
    return [int(c) % q for c in coeffs]


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_gcd_mod(a, b, q):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        inv = pow(b[-1], -1, q)
        r = list(a)
        while len(r) >= len(b) and _poly_trim(r):
            r = _poly_trim(r)
            if len(r) < len(b):
                break
            f = r[-1] * inv % q
            off = len(r) - len(b)
            for i, bc in enumerate(b):
                r[off + i] = (r[off + i] - f * bc) % q
            r = _poly_trim(r)
        a, b = b, r
    return _poly_trim(a)


def poly_is_square_mod(coeffs, q):
    """Is f mod q a square in F_q[x]?  (q an odd prime.)

    f is a square iff every irreducible factor has even multiplicity;
    checked via the valuation-parity of the squarefree decomposition,
    recursing through q-th powers when the derivative vanishes.
    """
    f = _poly_trim(_poly_mod(coeffs, q))
    if not f:
        return True  # zero polynomial, degenerate
    if len(f) == 1:
        if q == 2:
            return True  # every element of F_2 is a square
        return pow(f[0], (q - 1) // 2, q) in (0, 1)
    if (len(f) - 1) % 2 == 1:
        return False
    # constant multiplier must be square once the monic part is a square
    lead = f[-1]
    inv = pow(lead, -1, q)
    f = [c * inv % q for c in f]
    fp = _poly_trim([i * c % q for i, c in enumerate(f)][1:])
    if not fp:
        h = [f[i] for i in range(0, len(f), q)]
        if q == 2:
            return True  # f = h(x^2) = (h~(x))^2 in characteristic 2
        # f = h(x^q) = (h~)^q, odd q-th power: square iff h~ is
        return poly_is_square_mod(h, q) and pow(lead, (q - 1) // 2, q) in (0, 1)
    g = _poly_gcd_mod(f, fp, q)
    if len(g) == 1:
        return False  # squarefree nonconstant monic: not a square
    # f square iff f/g and g describe even multiplicities: f = s * g with
    # s the squarefree radical-ish part; f is a square iff s | g and f/g^2...
    # simplest correct route at this scale: full factorization by distinct-
    # degree + equal-degree splitting is overkill; use multiplicity probing:
    return _all_mults_even(f, q)


def _poly_divmod(a, b, q):
    a, b = list(a), _poly_trim(b)
    out = [0] * max(0, len(a) - len(b) + 1)
    inv = pow(b[-1], -1, q)
    while len(_poly_trim(a)) >= len(b):
        a = _poly_trim(a)
        f = a[-1] * inv % q
        off = len(a) - len(b)
        out[off] = f
        for i, bc in enumerate(b):
            a[off + i] = (a[off + i] - f * bc) % q
        a = _poly_trim(a)
    return out, _poly_trim(a)


def _all_mults_even(f, q):
    """Every irreducible factor of monic f in F_q[x] has even multiplicity."""
    f = _poly_trim(f)
    if len(f) <= 1:
        return True
    fp = _poly_trim([i * c % q for i, c in enumerate(f)][1:])
    if not fp:
        h = [f[i] for i in range(0, len(f), q)]
        return _all_mults_even(h, q)  # odd power q: parity preserved by h
    g = _poly_gcd_mod(f, fp, q)
    s, r = _poly_divmod(f, g, q)  # s = squarefree part (away from char division)
    if r:
        raise ArithmeticError("gcd division failed")
    # every factor of s must divide g with odd remaining multiplicity handled
    # recursively: f = s * g; factor multiplicities in f are 1 + (mult in g)
    # for factors of s, so each factor of s must appear in g with odd mult.
    if len(s) == 1:
        return _all_mults_even(g, q)
    gg = _poly_gcd_mod(s, g, q)
    if len(gg) != len(s):
        return False  # some factor has multiplicity exactly 1
    g2, r2 = _poly_divmod(g, s, q)
    if r2:
        return False
    return _all_mults_even(g2, q)


# ---------------------------------------------------------------------
# curve, points, disks
# ---------------------------------------------------------------------


class CurvePoint:
    """Affine point with exact rational coordinates, or infinity."""

    def __init__(self, curve, x=None, y=None, infinity=False):
        self.curve = curve
        self.infinity = infinity
        if infinity:
            self.x = self.y = None
            return
        self.x = Fraction(x)
        self.y = Fraction(y)
        if val_of_rational(self.x, curve.p) < 0:
            raise ValueError("point lies in the infinity disk; use infinity()")
        if self.y * self.y != poly_eval(curve.f, self.x):
            raise ValueError("point not on the curve")

    @property
    def is_weierstrass(self):
        return (not self.infinity) and self.y == 0

    def xy_padic(self, prec):
        p = self.curve.p
        return (PadicNumber.from_rational(self.x, p, prec),
                PadicNumber.from_rational(self.y, p, prec))

    def involution(self):
        if self.infinity:
            return self
        return CurvePoint(self.curve, self.x, -self.y)

    def reduction(self):
        """Residue disk label: (x mod p, y mod p) or 'inf'."""
        if self.infinity:
            return "inf"
        p = self.curve.p
        return (residue_of_rational(self.x, p), residue_of_rational(self.y, p))

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.infinity or other.infinity:
            return self.infinity and other.infinity
        return self.x == other.x and self.y == other.y

    def __repr__(self):
        if self.infinity:
            return "oo"
        return f"({self.x}, {self.y})"


class PadicCurvePoint:
    """Affine point with p-adic coordinates (e.g. Teichmueller lifts)."""

    def __init__(self, curve, x: PadicNumber, y: PadicNumber):
        self.curve = curve
        self.infinity = False
        self.x = x
        self.y = y

    @property
    def is_weierstrass(self):
        return self.y.is_zero()

    def xy_padic(self, prec):
        return self.x.with_abs_prec(prec), self.y.with_abs_prec(prec)

    def involution(self):
        return PadicCurvePoint(self.curve, self.x, -self.y)

    def reduction(self):
        return (self.x.residue(), self.y.residue())

    def __repr__(self):
        return f"({self.x}, {self.y})"


class ResidueDisk:
    """The set of Q_p-points reducing to a fixed F_p-point."""

    def __init__(self, curve, reduction):
        self.curve = curve
        self.reduction = reduction  # (x0, y0) in F_p x F_p, or "inf"
        if reduction == "inf":
            self.kind = "infinity"
        elif reduction[1] == 0:
            self.kind = "weierstrass"
        else:
            self.kind = "non-weierstrass"

    def __eq__(self, other):
        return (isinstance(other, ResidueDisk)
                and self.reduction == other.reduction)

    def __hash__(self):
        return hash(self.reduction)

    def __repr__(self):
        return f"disk{self.reduction}"

    def contains(self, point):
        return point.reduction() == self.reduction


class HyperellipticCurve:
    """y^2 = f(x), deg f = 2g+1, integral coefficients, good reduction at p."""

    def __init__(self, f_coeffs, p, check=True):
        self.f = [int(c) for c in f_coeffs]
        self.p = int(p)
        if check and (len(_poly_trim(self.f)) != len(self.f)):
            raise CurveValidationError("leading coefficient vanishes")
        deg = len(self.f) - 1
        if deg < 3 or deg % 2 == 0:
            raise CurveValidationError(
                f"need odd degree 2g+1 >= 3, got degree {deg}")
        self.g = (deg - 1) // 2
        self.lead = self.f[-1]
        self.disc = discriminant(self.f)
        if self.disc == 0:
            raise CurveValidationError("f is not separable")
        if self.p == 2 or not _is_prime(self.p):
            raise CurveValidationError("p must be an odd prime")
        if (self.lead % self.p == 0
                or val_of_rational(self.disc, self.p) != 0):
            raise CurveValidationError(f"bad reduction at p = {self.p}")
        self.fprime = poly_derivative(self.f)
        self._disk_param_cache = {}

    # -- validation report --------------------------------------------

    def bad_primes(self):
        """Primes where the plane model can fail to be regular.

        These are the candidates where fiber data may be needed: divisors
        of lead * disc(f), plus 2 always (y^2 = f is singular in
        characteristic 2 regardless of the discriminant).
        """
        n = 2 * abs(self.lead) * abs(Fraction(self.disc).numerator)
        return sorted(factor_int(n))

    def check_square_hypothesis(self, primes=None):
        """f must not reduce to a square mod q; checked at the given primes
        (defaults to the bad primes, where alone it can fail for odd deg f)."""
        bad = []
        for q in (primes if primes is not None else self.bad_primes()):
            if q == 2:
                continue  # mod 2 squares need F_2 conventions; skip per design
            if poly_is_square_mod(self.f, q):
                bad.append(q)
        if bad:
            raise CurveValidationError(
                f"f reduces to a square modulo {bad}")

    # -- points ---------------------------------------------------------

    def point(self, x, y):
        return CurvePoint(self, x, y)

    def infinity(self):
        return CurvePoint(self, infinity=True)

    def lift_x(self, x, y_residue, prec):
        """Hensel lift: the point above x with y = sqrt(f(x)) on the branch
        with residue y_residue mod p."""
        xq = (x if isinstance(x, PadicNumber)
              else PadicNumber.from_rational(x, self.p, prec))
        fx = poly_eval(self.f, xq)
        y = padic_sqrt(fx, sign_residue=y_residue)
        return PadicCurvePoint(self, xq, y)

    def teichmuller_point(self, disk, prec):
        """The Frobenius-fixed point of a non-Weierstrass affine disk.

        Its x-coordinate is the Teichmueller lift of the disk's x-residue;
        phi fixes it because x^p = x pins x and the y-branch is pinned
        mod p.
        """
        if disk.kind != "non-weierstrass":
            raise ValueError("Teichmueller points live in non-Weierstrass disks")
        x0, y0 = disk.reduction
        xt = (PadicNumber.from_int(0, self.p, prec) if x0 == 0
              else PadicNumber(self.p, 0, teichmuller_int(x0, self.p, prec), prec))
        return self.lift_x(xt, y0, prec)

    def weierstrass_root(self, disk, prec):
        """The Q_p-rational root of f in a Weierstrass disk (Hensel)."""
        if disk.kind != "weierstrass":
            raise ValueError("not a Weierstrass disk")
        p = self.p
        x = disk.reduction[0] % p
        modulus = p
        target = p ** prec
        while modulus < target:
            modulus = min(modulus * modulus, target)
            fx = int(poly_eval([Fraction(c) for c in self.f], Fraction(x)))
            fpx = int(poly_eval([Fraction(c) for c in self.fprime], Fraction(x)))
            x = (x - fx * pow(fpx, -1, modulus)) % modulus
        return PadicNumber.from_int(x, p, prec)

    # -- residue disks ---------------------------------------------------

    def count_points_fp(self):
        """#X(F_p) including the point at infinity."""
        p = self.p
        squares = {}
        for y in range(p):
            squares.setdefault(y * y % p, []).append(y)
        n = 1
        for x in range(p):
            fx = poly_eval(_poly_mod(self.f, p), Fraction(x)) % p
            n += len(squares.get(int(fx), []))
        return n

    def enumerate_disks(self):
        """All residue disks (F_p-points of the reduction), infinity last,
        affine disks sorted by (x, y) residue."""
        p = self.p
        disks = []
        for x in range(p):
            fx = int(poly_eval(_poly_mod(self.f, p), Fraction(x))) % p
            ys = sorted({y % p for y in range(p) if y * y % p == fx})
            for y in ys:
                disks.append(ResidueDisk(self, (x, y)))
        disks.append(ResidueDisk(self, "inf"))
        return disks

    def disk_of(self, point):
        return ResidueDisk(self, point.reduction())

    # -- disk parametrizations -------------------------------------------

    def disk_parametrization(self, disk, base, n_terms, prec):
        """(x(t), y(t)) sweeping the disk as t runs over pZ_p.

        Non-Weierstrass disks: plain parameter t = x - a, y by Hensel.
        Weierstrass disks: t = y, x by Newton from the root.
        The normalized parameter of eq-style height formulas is
        z = t/(2b); callers rescale when they need it.
        """
        p = self.p
        if disk.kind == "infinity":
            raise ValueError("use infinity_parametrization")
        xb, yb = base.xy_padic(prec)
        if disk.kind == "non-weierstrass":
            one = PadicNumber.from_int(1, p, prec + 6)
            x_t = PSeries(p, [xb, one], 0, n_terms)
            F = poly_eval(self.f, x_t)
            y_t = series_sqrt(F, yb)
            return x_t, y_t
        # Weierstrass disk: base must be the root (A, 0); x(t) = A + u(t^2)
        if not yb.is_zero():
            raise ValueError("Weierstrass parametrization is based at (A, 0)")
        t = PSeries(p, [PadicNumber.zero(p, prec + 6),
                        PadicNumber.from_int(1, p, prec + 6)], 0, n_terms)
        tsq = t * t
        x_t = PSeries(p, [xb], 0, 1)
        order = 1
        while order < n_terms:
            order = min(2 * order, n_terms)
            x_ext = PSeries(p, list(x_t.coeffs), x_t.shift, order)
            fx = poly_eval(self.f, x_ext).truncate(order)
            fpx = poly_eval(self.fprime, x_ext).truncate(order)
            x_t = (x_ext - (fx - tsq.truncate(order)) * fpx.reciprocal()).truncate(order)
        return x_t, t

    def infinity_expansions_exact(self, n_terms):
        """Exact z-expansions at infinity: returns (x(z), y(z), s(z)).

        z = -y/(x^(g+1) lead) and s = 1/x satisfies
        s * frev(s) = lead^2 z^2 with frev(s) = sum f_(2g+1-k) s^k.
        """
        lead = Fraction(self.lead)
        frev = [Fraction(self.f[len(self.f) - 1 - k]) for k in range(len(self.f))]
        # iterate s = lead^2 z^2 / frev(s); s has only even powers of z
        s = FracSeries([0], 0, n_terms)
        target = FracSeries([0, 0, lead * lead], 0, n_terms + 2)
        for _ in range(n_terms + 2):
            frev_s = _frac_poly_eval(frev, s, n_terms)
            s = (target * frev_s.reciprocal()).truncate(n_terms)
        x = s.reciprocal()
        # y = -lead * x^(g+1) * z
        xg1 = x
        for _ in range(self.g):
            xg1 = xg1 * x
        y = xg1 * FracSeries([0, -lead], 0, n_terms)
        return x, y, s

    def omega_expansion_exact(self, i, n_terms):
        """Exact z-expansion of w_i = x^i dx/2y at infinity (coefficient
        series of dz)."""
        x, y, s = self.infinity_expansions_exact(n_terms + 4 * self.g + 6)
        dx = x.derivative()
        xi = FracSeries([1], 0, x.cutoff)
        for _ in range(i):
            xi = xi * x
        w = xi * dx * (y * 2).reciprocal()
        return w.truncate(n_terms)

    def cup_product_matrix(self):
        """Exact 2g x 2g matrix C with C[i][j] = [w_i] cup [w_j]
        = Res_inf((int w_i) * w_j)."""
        n = 2 * self.g
        terms = 8 * self.g + 10
        omegas = [self.omega_expansion_exact(i, terms) for i in range(n)]
        prims = [w.integrate_no_log() for w in omegas]
        C = [[(prims[i] * omegas[j]).residue() for j in range(n)]
             for i in range(n)]
        return RationalMatrix(C)


def _frac_poly_eval(coeffs, s, cutoff):
    acc = FracSeries([0], 0, cutoff)
    for c in reversed(coeffs):
        acc = (acc * s).truncate(cutoff) + FracSeries([c], 0, cutoff)
    return acc


def validate_curve(f_coeffs, p):
    """Spec entry point: construct + validate, reporting bad primes."""
    curve = HyperellipticCurve(f_coeffs, p)
    curve.check_square_hypothesis()
    return curve
