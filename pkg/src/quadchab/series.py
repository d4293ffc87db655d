"""Truncated power / Laurent series used for disk computations.

PSeries is a Laurent series over capped-precision p-adics: coefficients
c_k for shift <= k < cutoff, with everything at t-order >= cutoff
unknown.  LogSeries adds one formal c * Log(t) term, which is what
integrating a simple pole produces; evaluation plugs the Iwasawa-branch
p-adic log.

FracSeries is the exact-rational sibling used where the answer must be
an exact rational (cup products via residues at infinity).
"""

from __future__ import annotations

from fractions import Fraction

from .padic import INF, PadicNumber, padic_log


class PSeries:
    """sum_{k=shift}^{cutoff-1} c_k t^k + O(t^cutoff), c_k in Q_p."""

    __slots__ = ("p", "shift", "coeffs", "cutoff")

    def __init__(self, p, coeffs, shift=0, cutoff=None):
        self.p = p
        self.shift = shift
        self.coeffs = list(coeffs)
        self.cutoff = cutoff if cutoff is not None else shift + len(self.coeffs)
        n = self.cutoff - shift
        while len(self.coeffs) < n:  # absent coefficients are exact zeros
            self.coeffs.append(PadicNumber.from_int(0, p, 10 ** 9))
        del self.coeffs[n:]
        self._trim()

    def _trim(self):
        # drop leading (low-order) exact-ish zeros to keep shift honest
        while self.coeffs and self.coeffs[0].is_zero() and \
                self.coeffs[0].abs_prec >= 10 ** 9:
            self.coeffs.pop(0)
            self.shift += 1

    @staticmethod
    def zero(p, cutoff):
        return PSeries(p, [], 0, cutoff)

    @staticmethod
    def from_list(vals, p, prec, shift=0, cutoff=None):
        return PSeries(p, [v if isinstance(v, PadicNumber)
                           else PadicNumber.from_rational(v, p, prec)
                           for v in vals], shift, cutoff)

    def coeff(self, k):
        """Coefficient of t^k."""
        if k >= self.cutoff:
            raise ValueError(f"coefficient t^{k} is beyond the cutoff O(t^{self.cutoff})")
        i = k - self.shift
        if i < 0:
            return PadicNumber.from_int(0, self.p, 10 ** 9)
        return self.coeffs[i]

    def order(self):
        """t-adic order (index of first coefficient not known to be zero)."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return self.shift + i
        return self.cutoff

    def truncate(self, cutoff):
        if cutoff >= self.cutoff:
            return self
        return PSeries(self.p, self.coeffs[:max(0, cutoff - self.shift)],
                       self.shift, cutoff)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, PadicNumber)):
            other = PSeries.from_list([other], self.p, _scalar_prec(other, self),
                                      0, self.cutoff)
        shift = min(self.shift, other.shift)
        cutoff = min(self.cutoff, other.cutoff)
        n = cutoff - shift
        out = []
        for k in range(shift, cutoff):
            a = self.coeff(k) if self.shift <= k < self.cutoff else None
            b = other.coeff(k) if other.shift <= k < other.cutoff else None
            if a is None and b is None:
                out.append(PadicNumber.from_int(0, self.p, 10 ** 9))
            elif a is None:
                out.append(b)
            elif b is None:
                out.append(a)
            else:
                out.append(a + b)
        del out[n:]
        return PSeries(self.p, out, shift, cutoff)

    __radd__ = __add__

    def __neg__(self):
        return PSeries(self.p, [-c for c in self.coeffs], self.shift, self.cutoff)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, PadicNumber)):
            return self + (-PadicNumber.from_rational(
                other, self.p, _scalar_prec(other, self)))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PadicNumber)):
            if isinstance(other, (int, Fraction)):
                other = PadicNumber.from_rational(other, self.p,
                                                  _scalar_prec(other, self))
            return PSeries(self.p, [c * other for c in self.coeffs],
                           self.shift, self.cutoff)
        # Laurent multiplication; cutoff from the worst cross term
        cutoff = min(self.cutoff + other.order(), other.cutoff + self.order())
        shift = self.shift + other.shift
        n = cutoff - shift
        if n <= 0:
            return PSeries(self.p, [], 0, cutoff)
        zero = PadicNumber.from_int(0, self.p, 10 ** 9)
        out = [zero] * n
        for i, a in enumerate(self.coeffs):
            if a.is_zero() and a.abs_prec >= 10 ** 9:
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= n:
                    break
                out[k] = out[k] + a * b
        return PSeries(self.p, out, shift, cutoff)

    __rmul__ = __mul__

    def reciprocal(self):
        """1/self for a series whose lowest coefficient is a unit."""
        ordr = self.order()
        lead = self.coeff(ordr)
        if lead.is_zero():
            raise ZeroDivisionError("series reciprocal needs an invertible lead")
        n = self.cutoff - ordr
        a = [self.coeff(ordr + k) for k in range(n)]
        inv0 = lead.inverse()
        out = [inv0]
        for k in range(1, n):
            s = None
            for j in range(1, k + 1):
                t = a[j] * out[k - j]
                s = t if s is None else s + t
            out.append(-inv0 * s)
        return PSeries(self.p, out, -ordr, -ordr + n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, PadicNumber)):
            if isinstance(other, (int, Fraction)):
                other = PadicNumber.from_rational(other, self.p,
                                                  _scalar_prec(other, self))
            return self * other.inverse()
        return self * other.reciprocal()

    def derivative(self):
        out = [self.coeff(k) * k for k in range(self.shift, self.cutoff)]
        return PSeries(self.p, out, self.shift - 1, self.cutoff - 1)

    def integrate(self):
        """Term-by-term antiderivative with zero constant term.

        A t^(-1) coefficient is returned as the log part of a LogSeries.
        """
        p = self.p
        log_coeff = None
        lo = self.shift + 1
        zero = PadicNumber.from_int(0, p, 10 ** 9)
        dense = [zero] * (self.cutoff + 1 - lo)
        for k in range(self.shift, self.cutoff):
            c = self.coeff(k)
            if k == -1:
                log_coeff = c
            else:
                dense[k + 1 - lo] = c / (k + 1)
        ser = PSeries(p, dense, lo, self.cutoff + 1)
        if log_coeff is None or log_coeff.is_zero():
            return ser
        return LogSeries(ser, log_coeff)

    def evaluate(self, t, tail_floor=None):
        """Evaluate at t with v(t) >= 1 (Horner from the top).

        The result's precision accounts for the O(t^cutoff) tail: the tail
        valuation is bounded below by tail_floor + cutoff * v(t), where
        tail_floor defaults to the minimum coefficient valuation seen
        (capped at 0 from above).
        """
        p = self.p
        vt = t.valuation()
        if vt < 1:
            raise ValueError("series evaluation needs v(t) >= 1")
        if tail_floor is None:
            tail_floor = 0
            for c in self.coeffs:
                if not c.is_zero():
                    tail_floor = min(tail_floor, c.val)
        acc = PadicNumber.from_int(0, p, 10 ** 9)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        if self.shift:
            acc = acc * t ** self.shift
        if vt is INF:
            tail_prec = 10 ** 9
        else:
            tail_prec = tail_floor + self.cutoff * vt
        return acc.with_abs_prec(min(acc.abs_prec, tail_prec))

    def min_coeff_val(self):
        m = INF
        for c in self.coeffs:
            if not c.is_zero():
                m = min(m, c.val)
        return m

    def substitute_scaled(self, c):
        """Series in u where t = c * u (c a PadicNumber)."""
        out = []
        pw = c ** self.shift
        for a in self.coeffs:
            out.append(a * pw)
            pw = pw * c
        return PSeries(self.p, out, self.shift, self.cutoff)

    def __repr__(self):
        bits = []
        for i, c in enumerate(self.coeffs[:6]):
            bits.append(f"({c})*t^{self.shift + i}")
        return " + ".join(bits) + f" + ... + O(t^{self.cutoff})"


def _scalar_prec(x, series):
    cap = 0
    for c in series.coeffs:
        cap = max(cap, c.abs_prec if c.abs_prec < 10 ** 9 else 0)
    return (cap or 30) + 5


class LogSeries:
    """series + log_coeff * Log(t); the shape of int(simple pole)."""

    def __init__(self, series: PSeries, log_coeff: PadicNumber):
        self.series = series
        self.log_coeff = log_coeff
        self.p = series.p

    def evaluate(self, t, tail_floor=None):
        if t.is_zero():
            raise ZeroDivisionError("Log(t) at t = 0")
        return self.series.evaluate(t, tail_floor) + self.log_coeff * padic_log(t)

    def __add__(self, other):
        if isinstance(other, LogSeries):
            return LogSeries(self.series + other.series,
                             self.log_coeff + other.log_coeff)
        return LogSeries(self.series + other, self.log_coeff)

    __radd__ = __add__

    def __neg__(self):
        return LogSeries(-self.series, -self.log_coeff)

    def __sub__(self, other):
        return self + (-other)

    def __repr__(self):
        return f"({self.log_coeff})*Log(t) + {self.series!r}"


def series_sqrt(F: PSeries, y0: PadicNumber) -> PSeries:
    """sqrt of a unit power series with chosen branch y0 = sqrt(F(0)).

    Newton iteration y <- (y + F/y)/2, extending the candidate with exact
    zeros each step; the iteration is correct to O(t^order) and the order
    doubles per step.
    """
    p = F.p
    if F.order() != 0:
        raise ValueError("series_sqrt needs a unit series")
    n = F.cutoff
    y = PSeries(p, [y0], 0, 1)
    order = 1
    while order < n:
        order = min(2 * order, n)
        # re-declare the current approximation as a polynomial to order
        y_ext = PSeries(p, list(y.coeffs), y.shift, order)
        Ft = F.truncate(order)
        y = (y_ext + Ft * y_ext.reciprocal()) / 2
        y = y.truncate(order)
    return y


def divide_by_linear(S: PSeries, t0: PadicNumber) -> PSeries:
    """S(t) / (t - t0) for S with S(t0) = 0 and v(t0) >= 1.

    Downward recurrence k_{j-1} = s_j + t0 k_j, truncating the unknown
    tail of S above its cutoff: the tail's influence on k_j damps like
    t0^(cutoff - 1 - j), which is what the reported precision reflects.
    """
    vt0 = t0.valuation()
    if vt0 < 1:
        raise ValueError("divide_by_linear assumes v(t0) >= 1")
    p = S.p
    if S.shift < 0:
        raise ValueError("polynomial part only")
    n = S.cutoff
    floor = min(0, S.min_coeff_val() if S.coeffs else 0)
    s = [S.coeff(k) if S.shift <= k else PadicNumber.from_int(0, p, 10 ** 9)
         for k in range(0, n)]
    out = [None] * max(0, n - 1)
    nxt = PadicNumber.zero(p, 10 ** 9)
    for j in range(n - 1, 0, -1):
        cur = s[j] + t0 * nxt
        cap = (n - j) * vt0 + floor  # t0^(n-j) * (unknown tail of S)
        out[j - 1] = cur.with_abs_prec(min(cur.abs_prec, cap))
        nxt = cur
    return PSeries(p, out, 0, max(0, n - 1))


# ---------------------------------------------------------------------
# exact rational series (infinity expansions, cup products)
# ---------------------------------------------------------------------


class FracSeries:
    """Laurent series over Q, exact, truncated at a cutoff."""

    __slots__ = ("shift", "coeffs", "cutoff")

    def __init__(self, coeffs, shift=0, cutoff=None):
        self.coeffs = [Fraction(c) for c in coeffs]
        self.shift = shift
        self.cutoff = cutoff if cutoff is not None else shift + len(self.coeffs)
        n = self.cutoff - shift
        del self.coeffs[n:]
        while self.coeffs and self.coeffs[0] == 0:
            self.coeffs.pop(0)
            self.shift += 1

    def coeff(self, k):
        if k >= self.cutoff:
            raise ValueError("beyond cutoff")
        i = k - self.shift
        return self.coeffs[i] if i >= 0 else Fraction(0)

    def order(self):
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return self.shift + i
        return self.cutoff

    def truncate(self, cutoff):
        if cutoff >= self.cutoff:
            return self
        return FracSeries(self.coeffs[:max(0, cutoff - self.shift)],
                          self.shift, cutoff)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FracSeries([other], 0, self.cutoff)
        shift = min(self.shift, other.shift)
        cutoff = min(self.cutoff, other.cutoff)
        out = [Fraction(0)] * (cutoff - shift)
        for src in (self, other):
            for i, c in enumerate(src.coeffs):
                k = src.shift + i
                if k < cutoff:
                    out[k - shift] += c
        return FracSeries(out, shift, cutoff)

    __radd__ = __add__

    def __neg__(self):
        return FracSeries([-c for c in self.coeffs], self.shift, self.cutoff)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FracSeries([other], 0, self.cutoff)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FracSeries([c * other for c in self.coeffs],
                              self.shift, self.cutoff)
        cutoff = min(self.cutoff + other.order(), other.cutoff + self.order())
        shift = self.shift + other.shift
        n = cutoff - shift
        if n <= 0:
            return FracSeries([], 0, cutoff)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                out[i + j] += a * b
        return FracSeries(out, shift, cutoff)

    __rmul__ = __mul__

    def reciprocal(self):
        ordr = self.order()
        lead = self.coeff(ordr)
        n = self.cutoff - ordr
        a = [self.coeff(ordr + k) for k in range(n)]
        inv0 = 1 / lead
        out = [inv0]
        for k in range(1, n):
            out.append(-inv0 * sum(a[j] * out[k - j] for j in range(1, k + 1)))
        return FracSeries(out, -ordr, -ordr + n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * other.reciprocal()

    def derivative(self):
        out = [self.coeff(k) * k for k in range(self.shift, self.cutoff)]
        return FracSeries(out, self.shift - 1, self.cutoff - 1)

    def integrate_no_log(self):
        """Antiderivative; requires residue (t^-1 coefficient) to vanish."""
        if self.shift <= -1 < self.cutoff and self.coeff(-1) != 0:
            raise ValueError("nonzero residue: log term would appear")
        lo = self.shift if self.shift != -1 else 0
        out = [Fraction(0)] * (self.cutoff + 1 - (self.shift + 1))
        for k in range(self.shift, self.cutoff):
            if k == -1:
                continue
            out[k + 1 - (self.shift + 1)] = self.coeff(k) / (k + 1)
        return FracSeries(out, self.shift + 1, self.cutoff + 1)

    def residue(self):
        """Coefficient of t^-1."""
        if self.shift > -1:
            return Fraction(0)
        if self.cutoff <= -1:
            raise ValueError("cutoff below -1")
        return self.coeff(-1)

    def to_padic(self, p, prec, cutoff=None):
        cut = self.cutoff if cutoff is None else min(cutoff, self.cutoff)
        return PSeries(p, [PadicNumber.from_rational(self.coeff(k), p, prec)
                           for k in range(self.shift, cut)], self.shift, cut)

    def __repr__(self):
        bits = [f"({c})*t^{self.shift + i}" for i, c in enumerate(self.coeffs[:6])]
        return " + ".join(bits) + f" + O(t^{self.cutoff})"
