"""Capped-precision arithmetic over Q_p.

Elements carry an absolute precision N: the value is known modulo p^N.
Arithmetic never claims more precision than the usual propagation rules
allow (min of absolute precisions for sums, valuation-shifted min for
products).  The p-adic logarithm is the Iwasawa branch, log(p) = 0, so
log extends to all of Q_p^* via log(p^k u) = log(u).

Zero is represented with unit part 0; its valuation is +infinity but it
still carries the absolute precision O(p^N) it was computed to.
"""

from __future__ import annotations

from fractions import Fraction

INF = float("inf")


class PrecisionError(ArithmeticError):
    pass


def val_of_int(n, p):
    """p-adic valuation of an integer (INF for 0)."""
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val_of_rational(x, p):
    x = Fraction(x)
    if x == 0:
        return INF
    return val_of_int(x.numerator, p) - val_of_int(x.denominator, p)


class PadicNumber:
    """An element of Q_p known modulo p^abs_prec.

    Stored as p^val * unit with p not dividing unit, unit reduced modulo
    p^(abs_prec - val).  Anything indistinguishable from zero at the
    working precision has unit == 0 and valuation +infinity.
    """

    __slots__ = ("p", "val", "unit", "abs_prec")

    def __init__(self, p, val, unit, abs_prec):
        self.p = p
        self.abs_prec = abs_prec
        if unit == 0:
            self.val = INF
            self.unit = 0
            return
        shift = val_of_int(unit, p)
        if shift:
            val += shift
            unit //= p ** shift
        rel = abs_prec - val
        if rel <= 0:
            self.val = INF
            self.unit = 0
            return
        self.val = val
        self.unit = unit % (p ** rel)

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(p, abs_prec):
        return PadicNumber(p, 0, 0, abs_prec)

    @staticmethod
    def from_rational(x, p, abs_prec):
        """Image of a rational number, known modulo p^abs_prec."""
        x = Fraction(x)
        if x == 0:
            return PadicNumber.zero(p, abs_prec)
        num, den = x.numerator, x.denominator
        vn = val_of_int(num, p)
        vd = val_of_int(den, p)
        v = vn - vd
        num //= p ** vn
        den //= p ** vd
        rel = abs_prec - v
        if rel <= 0:
            return PadicNumber.zero(p, abs_prec)
        m = p ** rel
        return PadicNumber(p, v, num * pow(den, -1, m) % m, abs_prec)

    @staticmethod
    def from_int(n, p, abs_prec):
        return PadicNumber.from_rational(Fraction(n), p, abs_prec)

    # -- queries -----------------------------------------------------

    def is_zero(self):
        """Indistinguishable from zero at the stored precision."""
        return self.unit == 0

    def valuation(self):
        return self.val

    def rel_prec(self):
        return 0 if self.unit == 0 else self.abs_prec - self.val

    def lift(self):
        """Integer (or Fraction, for negative valuation) representative."""
        if self.unit == 0:
            return 0
        if self.val >= 0:
            return self.unit * self.p ** self.val
        return Fraction(self.unit, self.p ** (-self.val))

    def residue(self):
        """Image in F_p; requires val >= 0."""
        if self.unit == 0:
            return 0
        if self.val < 0:
            raise ValueError("negative valuation has no residue")
        return 0 if self.val > 0 else self.unit % self.p

    def digits(self, lo, hi):
        """p-adic digits a_i for lo <= i < hi, value = sum a_i p^i."""
        if self.unit == 0:
            return [0] * (hi - lo)
        if lo > self.val:
            raise ValueError("digits requested above the valuation floor")
        n = self.unit * self.p ** (self.val - lo)
        out = []
        for _ in range(hi - lo):
            n, r = divmod(n, self.p)
            out.append(r)
        return out

    # -- arithmetic --------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            v = val_of_rational(other, self.p)
            rel = self.rel_prec() if self.unit else self.abs_prec
            base = 0 if v is INF else v
            return PadicNumber.from_rational(other, self.p,
                                             max(self.abs_prec, base + rel) + 2)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.p
        N = min(self.abs_prec, other.abs_prec)
        if self.unit == 0:
            return other.with_abs_prec(N)
        if other.unit == 0:
            return self.with_abs_prec(N)
        v = min(self.val, other.val)
        a = self.unit * p ** (self.val - v)
        b = other.unit * p ** (other.val - v)
        return PadicNumber(p, v, a + b, N)

    __radd__ = __add__

    def __neg__(self):
        if self.unit == 0:
            return self
        return PadicNumber(self.p, self.val, self.p ** self.rel_prec() - self.unit,
                           self.abs_prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.p
        if self.unit == 0 or other.unit == 0:
            if self.unit == 0 and other.unit == 0:
                return PadicNumber.zero(p, self.abs_prec + other.abs_prec)
            z, x = (self, other) if self.unit == 0 else (other, self)
            return PadicNumber.zero(p, z.abs_prec + x.val)
        v = self.val + other.val
        rel = min(self.rel_prec(), other.rel_prec())
        m = p ** rel
        return PadicNumber(p, v, (self.unit * other.unit) % m, v + rel)

    __rmul__ = __mul__

    def inverse(self):
        if self.unit == 0:
            raise ZeroDivisionError("inverting a p-adic zero")
        rel = self.rel_prec()
        m = self.p ** rel
        return PadicNumber(self.p, -self.val, pow(self.unit, -1, m), -self.val + rel)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n == 0:
            return PadicNumber.from_int(1, self.p, max(self.rel_prec(), 1))
        if n < 0:
            return self.inverse() ** (-n)
        result = self
        n -= 1
        sq = self
        while n:
            if n & 1:
                result = result * sq
            sq = sq * sq
            n >>= 1
        return result

    def shift(self, k):
        """Multiply by p^k (exact)."""
        if self.unit == 0:
            return PadicNumber.zero(self.p, self.abs_prec + k)
        return PadicNumber(self.p, self.val + k, self.unit, self.abs_prec + k)

    def with_abs_prec(self, N):
        """Truncate (never extend) the stored absolute precision."""
        if N >= self.abs_prec:
            return self
        return PadicNumber(self.p, 0 if self.unit == 0 else self.val,
                           self.unit, N)

    # -- comparisons -------------------------------------------------

    def same(self, other, prec=None):
        """Equality modulo p^prec (default: overlap of known precisions)."""
        other = self._coerce(other)
        d = self - other
        if prec is None:
            return d.unit == 0
        if d.abs_prec < prec:
            raise PrecisionError(
                f"cannot compare at O(p^{prec}): difference only known to "
                f"O(p^{d.abs_prec})")
        return d.unit == 0 or d.val >= prec

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, PadicNumber)):
            return self.same(other)
        return NotImplemented

    __hash__ = None

    # -- printing ----------------------------------------------------

    def __str__(self):
        if self.unit == 0:
            return f"O({self.p}^{self.abs_prec})"
        terms = []
        n = self.unit
        i = self.val
        while n and i < self.abs_prec:
            n, a = divmod(n, self.p)
            if a:
                if i == 0:
                    terms.append(f"{a}")
                elif i == 1:
                    terms.append(f"{self.p}" if a == 1 else f"{a}*{self.p}")
                else:
                    terms.append(f"{self.p}^{i}" if a == 1 else f"{a}*{self.p}^{i}")
            i += 1
        terms.append(f"O({self.p}^{self.abs_prec})")
        return " + ".join(terms)

    __repr__ = __str__


# -- multiplicative structure ------------------------------------------


def teichmuller(a, p=None, prec=None):
    """The (p-1)-st root of unity congruent to the unit a mod p.

    Iterating x -> x^p converges one digit per step since the p-power map
    contracts 1 + pZ_p.
    """
    if isinstance(a, PadicNumber):
        p = a.p
        prec = a.abs_prec if prec is None else prec
        if a.is_zero() or a.val != 0:
            raise ValueError("teichmuller lift needs a p-adic unit")
        x = a.unit
    else:
        if p is None:
            raise ValueError("prime required")
        prec = 20 if prec is None else prec
        x = a % p
        if x == 0:
            raise ValueError("teichmuller lift needs a p-adic unit")
    m = p ** prec
    x %= m
    for _ in range(prec + 1):
        x = pow(x, p, m)
    return PadicNumber(p, 0, x, prec)


def teichmuller_int(a, p, prec):
    """Integer representative of the Teichmuller lift of a mod p^prec."""
    return teichmuller(a, p, prec).unit % p ** prec


def padic_log(u):
    """Iwasawa-branch p-adic logarithm on Q_p^*.

    log(p) = 0 and log kills roots of unity, so for u = p^v w with w a
    unit, log(u) = log(w / teich(w)).  The principal-unit log is summed
    after one p-power boost so that v(x) >= 2 keeps the series short.
    """
    if not isinstance(u, PadicNumber):
        raise TypeError("padic_log expects a PadicNumber")
    if u.is_zero():
        raise ValueError("log of zero")
    p = u.p
    N = u.rel_prec()
    M = N + 4  # guard digits
    w = PadicNumber(p, 0, u.unit, M)
    x = w / teichmuller(w) - 1
    if x.is_zero():
        return PadicNumber.zero(p, N)
    boosts = 0
    y = x + 1
    while not (y - 1).is_zero() and (y - 1).val < 2:
        y = y ** p
        boosts += 1
    x = y - 1
    acc = PadicNumber.zero(p, M)
    if not x.is_zero():
        vx = x.val  # >= 2
        xk = x
        k = 1
        while k * vx - _floor_log(k, p) <= M:
            term = xk * PadicNumber.from_rational(Fraction(1, k), p, M + _floor_log(k, p) + 1)
            acc = acc + (term if k % 2 else -term)
            k += 1
            xk = xk * x
    for _ in range(boosts):
        acc = acc.shift(0) / p
    return acc.with_abs_prec(N - boosts)


def _floor_log(k, p):
    v = 0
    while p ** (v + 1) <= k:
        v += 1
    return v


def padic_log_rational(x, p, prec):
    """log of a nonzero rational via the Iwasawa branch (log p = 0)."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("log of zero")
    v = val_of_rational(x, p)
    unit = x / Fraction(p) ** v
    return padic_log(PadicNumber.from_rational(unit, p, prec))


def padic_sqrt(a, sign_residue=None):
    """Square root by Hensel lifting; requires even valuation, p odd.

    sign_residue picks the branch by its residue mod p.
    """
    if a.is_zero():
        return a
    p = a.p
    if a.val % 2:
        raise ValueError("no square root: odd valuation")
    if a.val:
        return padic_sqrt(a.shift(-a.val), sign_residue).shift(a.val // 2)
    rel = a.rel_prec()
    m = p ** rel
    r0 = a.unit % p
    s = None
    for c in range(1, p):
        if c * c % p == r0:
            s = c
            break
    if s is None:
        raise ValueError("not a square mod p")
    if sign_residue is not None and s % p != sign_residue % p:
        s = p - s
    x = s
    modulus = p
    while modulus < m:
        modulus = min(modulus * modulus, m)
        x = (x + a.unit * pow(x, -1, modulus)) * pow(2, -1, modulus) % modulus
    return PadicNumber(p, 0, x % m, rel)
