"""Exact rational and capped-precision p-adic linear algebra.

Everything rational is done with Fraction entries and fraction-free
pivoting; there is no floating point in this module.  The Moore-Penrose
pseudoinverse is computed exactly for the symmetric rank n-1 matrices
coming from intersection matrices of special fibers, whose kernel is
spanned by a known positive vector.
"""

from __future__ import annotations

from fractions import Fraction

from .padic import INF, PadicNumber, PrecisionError


class FiberDataError(ValueError):
    pass


class SingularSystemError(ArithmeticError):
    """Linear system indistinguishable from singular at working precision."""


# ---------------------------------------------------------------------
# rational matrices
# ---------------------------------------------------------------------


class RationalMatrix:
    """Dense matrix over Q with exact entries."""

    def __init__(self, entries):
        self.entries = [[Fraction(e) for e in row] for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged matrix")

    @staticmethod
    def identity(n):
        return RationalMatrix([[Fraction(i == j) for j in range(n)]
                               for i in range(n)])

    @staticmethod
    def zero(r, c):
        return RationalMatrix([[Fraction(0)] * c for _ in range(r)])

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def row(self, i):
        return list(self.entries[i])

    def col(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def transpose(self):
        return RationalMatrix([[self.entries[i][j] for i in range(self.rows)]
                               for j in range(self.cols)])

    def __add__(self, other):
        return RationalMatrix([[a + b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return RationalMatrix([[a - b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.entries, other.entries)])

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            ot = other.transpose().entries
            return RationalMatrix([[sum(a * b for a, b in zip(row, col))
                                    for col in ot] for row in self.entries])
        return RationalMatrix([[Fraction(other) * e for e in row]
                               for row in self.entries])

    __rmul__ = __mul__

    def apply(self, vec):
        return [sum(a * Fraction(x) for a, x in zip(row, vec))
                for row in self.entries]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.entries == other.entries

    def __repr__(self):
        return "RationalMatrix(%s)" % self.entries

    def is_symmetric(self):
        return self.entries == self.transpose().entries

    def det(self):
        if self.rows != self.cols:
            raise ValueError("det of non-square matrix")
        a = [row[:] for row in self.entries]
        n = self.rows
        det = Fraction(1)
        for j in range(n):
            piv = next((i for i in range(j, n) if a[i][j] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != j:
                a[j], a[piv] = a[piv], a[j]
                det = -det
            det *= a[j][j]
            inv = 1 / a[j][j]
            for i in range(j + 1, n):
                if a[i][j]:
                    f = a[i][j] * inv
                    a[i] = [x - f * y for x, y in zip(a[i], a[j])]
        return det

    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot columns)."""
        a = [row[:] for row in self.entries]
        pivots = []
        r = 0
        for j in range(self.cols):
            piv = next((i for i in range(r, self.rows) if a[i][j] != 0), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = 1 / a[r][j]
            a[r] = [x * inv for x in a[r]]
            for i in range(self.rows):
                if i != r and a[i][j]:
                    f = a[i][j]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(j)
            r += 1
            if r == self.rows:
                break
        return RationalMatrix(a), pivots

    def rank(self):
        return len(self.rref()[1])

    def nullspace(self):
        """Basis of the right kernel."""
        R, pivots = self.rref()
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for j in free:
            v = [Fraction(0)] * self.cols
            v[j] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -R.entries[r][j]
            basis.append(v)
        return basis

    def inverse(self):
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = [row[:] + [Fraction(i == j) for j in range(n)]
               for i, row in enumerate(self.entries)]
        R, pivots = RationalMatrix(aug).rref()
        if pivots != list(range(n)):
            raise ValueError("singular matrix")
        return RationalMatrix([row[n:] for row in R.entries])

    def solve(self, rhs):
        """Solve self * x = rhs (rhs a vector), exact; raises if singular."""
        inv = self.inverse()
        return inv.apply(rhs)


def pseudoinverse(M: RationalMatrix, kernel=None) -> RationalMatrix:
    """Moore-Penrose pseudoinverse of a symmetric matrix of rank n-1.

    The kernel must be one-dimensional; by default it is required to be
    spanned by (1,...,1)^T, matching intersection matrices in the
    multiplicity-weighted normalization.  For symmetric M with kernel
    span(k), M + k k^T is invertible and

        M^+ = (M + k k^T)^{-1} - k k^T / |k|^4 .
    """
    n = M.rows
    if n != M.cols or not M.is_symmetric():
        raise FiberDataError("pseudoinverse needs a symmetric square matrix")
    if kernel is None:
        kernel = [Fraction(1)] * n
    kernel = [Fraction(x) for x in kernel]
    if any(x != 0 for x in M.apply(kernel)):
        raise FiberDataError("claimed kernel vector is not in the kernel")
    if M.rank() != n - 1:
        raise FiberDataError("matrix must have rank n-1")
    kkT = RationalMatrix([[a * b for b in kernel] for a in kernel])
    norm2 = sum(a * a for a in kernel)
    Mplus = (M + kkT).inverse() - kkT * Fraction(1, norm2 * norm2)
    return Mplus


def resultant(f, g):
    """Resultant of two integer/rational coefficient polynomials.

    Polynomials are coefficient lists, low degree first.  Computed as the
    determinant of the Sylvester matrix over Q.
    """
    f = [Fraction(c) for c in f]
    g = [Fraction(c) for c in g]
    while f and f[-1] == 0:
        f.pop()
    while g and g[-1] == 0:
        g.pop()
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    rows = []
    frev = f[::-1]
    grev = g[::-1]
    for i in range(n):
        rows.append([Fraction(0)] * i + frev + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + grev + [Fraction(0)] * (size - n - 1 - i))
    return RationalMatrix(rows).det()


def discriminant(f):
    """disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f), f a coefficient list."""
    f = [Fraction(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    d = len(f) - 1
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    fp = [i * f[i] for i in range(1, d + 1)]
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(f, fp) / f[d]


# ---------------------------------------------------------------------
# p-adic matrices
# ---------------------------------------------------------------------


class PadicMatrix:
    """Dense matrix of PadicNumbers; solve reports achieved precision."""

    def __init__(self, entries):
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        self.p = self.entries[0][0].p if self.rows else None

    @staticmethod
    def from_rational_rows(rows, p, prec):
        return PadicMatrix([[PadicNumber.from_rational(e, p, prec) for e in row]
                            for row in rows])

    @staticmethod
    def identity(n, p, prec):
        return PadicMatrix([[PadicNumber.from_int(int(i == j), p, prec)
                             for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def transpose(self):
        return PadicMatrix([[self.entries[i][j] for i in range(self.rows)]
                            for j in range(self.cols)])

    def __add__(self, other):
        return PadicMatrix([[a + b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return PadicMatrix([[a - b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.entries, other.entries)])

    def __mul__(self, other):
        if isinstance(other, PadicMatrix):
            ot = other.transpose().entries
            return PadicMatrix([[_dot(row, col) for col in ot]
                                for row in self.entries])
        return PadicMatrix([[e * other for e in row] for row in self.entries])

    def scalar_mul(self, c):
        return PadicMatrix([[e * c for e in row] for row in self.entries])

    def apply(self, vec):
        return [_dot(row, vec) for row in self.entries]

    def power(self, n):
        if n < 0:
            raise ValueError("negative matrix power")
        result = PadicMatrix.identity(self.rows, self.p,
                                      max(e.abs_prec for e in self.entries[0]))
        sq = self
        while n:
            if n & 1:
                result = result * sq
            sq = sq * sq
            n >>= 1
        return result

    def solve(self, rhs):
        """Gaussian elimination with minimal-valuation pivoting.

        Returns the solution vector; each entry's precision already
        reflects the loss from pivot valuations.  Raises
        SingularSystemError when some pivot is indistinguishable from 0.
        """
        n = self.rows
        if n != self.cols:
            raise ValueError("solve needs a square matrix")
        a = [row[:] + [rhs[i]] for i, row in enumerate(self.entries)]
        for j in range(n):
            piv, pv = None, INF
            for i in range(j, n):
                v = a[i][j].valuation()
                if v < pv:
                    piv, pv = i, v
            if piv is None or a[piv][j].is_zero():
                raise SingularSystemError(
                    f"pivot {j} indistinguishable from zero at working precision")
            a[j], a[piv] = a[piv], a[j]
            for i in range(j + 1, n):
                if not a[i][j].is_zero():
                    f = a[i][j] / a[j][j]
                    a[i] = [x - f * y for x, y in zip(a[i], a[j])]
        x = [None] * n
        for i in range(n - 1, -1, -1):
            s = a[i][n]
            for j in range(i + 1, n):
                s = s - a[i][j] * x[j]
            x[i] = s / a[i][i]
        return x

    def inverse(self):
        n = self.rows
        cols = []
        for j in range(n):
            e = [PadicNumber.from_int(int(i == j), self.p,
                                      self.entries[i][i].abs_prec)
                 for i in range(n)]
            cols.append(self.solve(e))
        return PadicMatrix([[cols[j][i] for j in range(n)] for i in range(n)])

    def det(self):
        n = self.rows
        a = [row[:] for row in self.entries]
        det = PadicNumber.from_int(1, self.p,
                                   max(e.abs_prec for e in self.entries[0]))
        for j in range(n):
            piv, pv = None, INF
            for i in range(j, n):
                v = a[i][j].valuation()
                if v < pv:
                    piv, pv = i, v
            if piv is None or a[piv][j].is_zero():
                return PadicNumber.zero(self.p, a[j][j].abs_prec)
            if piv != j:
                a[j], a[piv] = a[piv], a[j]
                det = -det
            det = det * a[j][j]
            for i in range(j + 1, n):
                if not a[i][j].is_zero():
                    f = a[i][j] / a[j][j]
                    a[i] = [x - f * y for x, y in zip(a[i], a[j])]
        return det


def _dot(row, col):
    acc = None
    for a, b in zip(row, col):
        t = a * b
        acc = t if acc is None else acc + t
    return acc


def padic_linear_solve(A: PadicMatrix, b) -> list:
    """Solve A x = b over Q_p, reporting achieved precision in the entries."""
    return A.solve(list(b))
