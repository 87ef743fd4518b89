"""Matrices over the exact field: constant (CMat) and Laurent (LaurentMatrix).

CMat is the workhorse for residues, Stokes factors and representation
tuples; LaurentMatrix models elements of the loop group/algebra with a
shared truncation order.  Both are immutable.
"""

from __future__ import annotations

from fractions import Fraction

from .field import GaussRat
from .series import INF, LaurentSeries


def _as_gr(x) -> GaussRat:
    if isinstance(x, GaussRat):
        return x
    return GaussRat(x)


class CMat:
    """Dense n x n matrix over the Gaussian rationals."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(_as_gr(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("CMat must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, *a):
        raise AttributeError("CMat is immutable")

    @classmethod
    def zero(cls, n):
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries):
        entries = list(entries)
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n, i, j, c=1):
        """c * E_ij with 0-based indices."""
        rows = [[0] * n for _ in range(n)]
        rows[i][j] = c
        return cls(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other):
        _check_dim(self, other)
        return CMat([
            [self.rows[i][j] + other.rows[i][j] for j in range(self.n)]
            for i in range(self.n)
        ])

    def __sub__(self, other):
        _check_dim(self, other)
        return CMat([
            [self.rows[i][j] - other.rows[i][j] for j in range(self.n)]
            for i in range(self.n)
        ])

    def __neg__(self):
        return CMat([[-x for x in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, CMat):
            _check_dim(self, other)
            n = self.n
            return CMat([
                [
                    sum((self.rows[i][k] * other.rows[k][j] for k in range(n)), GaussRat(0))
                    for j in range(n)
                ]
                for i in range(n)
            ])
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = _as_gr(c)
        return CMat([[x * c for x in row] for row in self.rows])

    def bracket(self, other) -> "CMat":
        return self * other - other * self

    def transpose(self) -> "CMat":
        return CMat([[self.rows[j][i] for j in range(self.n)] for i in range(self.n)])

    def conjugate(self) -> "CMat":
        return CMat([[x.conjugate() for x in row] for row in self.rows])

    def trace(self) -> GaussRat:
        return sum((self.rows[i][i] for i in range(self.n)), GaussRat(0))

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.rows for x in row)

    def is_diagonal(self) -> bool:
        return all(
            self.rows[i][j].is_zero()
            for i in range(self.n)
            for j in range(self.n)
            if i != j
        )

    def __pow__(self, k: int):
        out = CMat.identity(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_nilpotent(self) -> bool:
        p = self
        for _ in range(self.n):
            if p.is_zero():
                return True
            p = p * self
        return p.is_zero()

    def inv(self) -> "CMat":
        """Exact inverse by Gauss-Jordan elimination."""
        n = self.n
        aug = [
            [self.rows[i][j] for j in range(n)]
            + [GaussRat(1) if i == j else GaussRat(0) for j in range(n)]
            for i in range(n)
        ]
        for col in range(n):
            piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
            if piv is None:
                raise ZeroDivisionError("matrix not invertible")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv_p = aug[col][col].inv()
            aug[col] = [x * inv_p for x in aug[col]]
            for r in range(n):
                if r != col and not aug[r][col].is_zero():
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return CMat([row[n:] for row in aug])

    def exp_nilpotent(self) -> "CMat":
        """Exact exp of a nilpotent matrix (finite sum)."""
        if not self.is_nilpotent():
            raise ValueError("exp_nilpotent requires a nilpotent matrix")
        out = CMat.identity(self.n)
        term = CMat.identity(self.n)
        k = 1
        while True:
            term = term * self
            if term.is_zero():
                return out
            out = out + term.scale(Fraction(1, _factorial(k)))
            k += 1

    def apply(self, vec):
        """Matrix times column vector (list of GaussRat)."""
        return [
            sum((self.rows[i][k] * vec[k] for k in range(self.n)), GaussRat(0))
            for i in range(self.n)
        ]

    def __eq__(self, other):
        if not isinstance(other, CMat):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(
            " ".join(_short(x) for x in row) for row in self.rows
        )
        return f"CMat[{body}]"


def _short(x: GaussRat) -> str:
    if x.im == 0:
        return str(x.re)
    return f"({x.re}+{x.im}i)"


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _check_dim(a, b):
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


class LaurentMatrix:
    """n x n matrix of Laurent series sharing a common truncation."""

    __slots__ = ("n", "rows", "trunc")

    def __init__(self, rows, trunc=None):
        rows = [list(row) for row in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("LaurentMatrix must be square")
        entries = []
        t = INF if trunc is None else trunc
        for row in rows:
            out_row = []
            for x in row:
                if not isinstance(x, LaurentSeries):
                    x = LaurentSeries.const(x)
                if trunc is None:
                    t = min(t, x.trunc)
                out_row.append(x)
            entries.append(out_row)
        norm = tuple(
            tuple(
                e if e.trunc == t else LaurentSeries._raw(e.order_min, list(e.coeffs), t)
                for e in row
            )
            for row in entries
        )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", norm)
        object.__setattr__(self, "trunc", t)

    def __setattr__(self, *a):
        raise AttributeError("LaurentMatrix is immutable")

    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, n, trunc=INF):
        return cls([[LaurentSeries.zero()] * n for _ in range(n)], trunc)

    @classmethod
    def identity(cls, n, trunc=INF):
        one = LaurentSeries.const(1)
        zero = LaurentSeries.zero()
        return cls(
            [[one if i == j else zero for j in range(n)] for i in range(n)], trunc
        )

    @classmethod
    def from_const(cls, m: CMat, trunc=INF):
        return cls(
            [[LaurentSeries.const(x) for x in row] for row in m.rows], trunc
        )

    @classmethod
    def monomial(cls, m: CMat, e: int, trunc=INF):
        """m * z^e."""
        return cls(
            [[LaurentSeries.monomial(x, e) for x in row] for row in m.rows], trunc
        )

    def coeff(self, e: int) -> CMat:
        return CMat([[x.coeff(e) for x in row] for row in self.rows])

    def val(self):
        return min((x.val() for row in self.rows for x in row), default=INF)

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.rows for x in row)

    def exponents(self):
        es = set()
        for row in self.rows:
            for x in row:
                es.update(e for e, _ in x.items())
        return sorted(es)

    # ------------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        _check_dim(self, other)
        return LaurentMatrix(
            [
                [self.rows[i][j] + other.rows[i][j] for j in range(self.n)]
                for i in range(self.n)
            ]
        )

    def __sub__(self, other):
        other = self._coerce(other)
        _check_dim(self, other)
        return LaurentMatrix(
            [
                [self.rows[i][j] - other.rows[i][j] for j in range(self.n)]
                for i in range(self.n)
            ]
        )

    def __neg__(self):
        return LaurentMatrix([[-x for x in row] for row in self.rows], self.trunc)

    def __mul__(self, other):
        if isinstance(other, (GaussRat, int, Fraction, LaurentSeries)):
            return LaurentMatrix(
                [[x * other for x in row] for row in self.rows]
            )
        other = self._coerce(other)
        return mat_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (GaussRat, int, Fraction, LaurentSeries)):
            return self * other
        return NotImplemented

    def scale_series(self, s: LaurentSeries):
        return LaurentMatrix([[x * s for x in row] for row in self.rows])

    def shift(self, e: int):
        return LaurentMatrix([[x.shift(e) for x in row] for row in self.rows])

    def zdz(self):
        return LaurentMatrix([[x.zdz() for x in row] for row in self.rows], self.trunc)

    def _coerce(self, other):
        if isinstance(other, LaurentMatrix):
            return other
        if isinstance(other, CMat):
            return LaurentMatrix.from_const(other)
        raise TypeError(f"cannot combine LaurentMatrix with {type(other).__name__}")

    def agrees(self, other) -> bool:
        other = self._coerce(other)
        if self.n != other.n:
            return False
        return all(
            self.rows[i][j].agrees(other.rows[i][j])
            for i in range(self.n)
            for j in range(self.n)
        )

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.n == other.n and self.trunc == other.trunc and self.rows == other.rows

    def __hash__(self):
        return hash((self.trunc, self.rows))

    def truncate(self, trunc):
        return LaurentMatrix(self.rows, min(self.trunc, trunc))

    def __repr__(self):
        return f"LaurentMatrix(n={self.n}, trunc={self.trunc})"


def mat_mul(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    """Exact truncated product.

    The result's truncation is min(a.trunc + val(b), b.trunc + val(a)):
    coefficients below that bound are fully determined by the known
    windows of the factors.
    """
    _check_dim(a, b)
    n = a.n
    ta = a.trunc + b.val() if a.trunc != INF else INF
    tb = b.trunc + a.val() if b.trunc != INF else INF
    trunc = min(ta, tb)
    zero = LaurentSeries.zero()
    rows = []
    for i in range(n):
        arow = a.rows[i]
        row = []
        for j in range(n):
            acc = None
            for k in range(n):
                left = arow[k]
                if not left.coeffs:
                    continue
                right = b.rows[k][j]
                if not right.coeffs:
                    continue
                term = left * right
                acc = term if acc is None else acc + term
            row.append(zero if acc is None else acc)
        rows.append(row)
    return LaurentMatrix(rows, trunc)


def laurent_det(a: LaurentMatrix) -> LaurentSeries:
    """Exact determinant by permutation expansion (desk-scale n)."""
    import itertools

    n = a.n
    out = LaurentSeries.zero()
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if seen[i]:
                continue
            j = i
            length = 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = LaurentSeries.const(sign)
        for i in range(n):
            term = term * a.rows[i][perm[i]]
        out = out + term
    return out


def mat_inv(a: LaurentMatrix, _depth: int = 0) -> LaurentMatrix:
    """Inverse of a = z^r * (unit) * z^c with diagonal cocharacter
    factors z^r, z^c pulled off the rows and columns: the remaining
    valuation-0 part must be invertible over the field.  Covers units
    of G(R) and torus monomials; raises 'not a unit in G(K)' otherwise."""
    v = a.val()
    if v == INF:
        raise ZeroDivisionError("not a unit in G(K): zero matrix")
    if _depth < 2:
        row_vals = [
            int(min((s.val() for s in row if not s.is_zero()), default=0))
            for row in a.rows
        ]
        if any(rv != 0 for rv in row_vals):
            rfac = _diag_monomial([-rv for rv in row_vals])
            return mat_mul(mat_inv(mat_mul(rfac, a), _depth + 1), rfac)
        col_vals = [
            int(min((a.rows[i][j].val() for i in range(a.n)
                     if not a.rows[i][j].is_zero()), default=0))
            for j in range(a.n)
        ]
        if any(cv != 0 for cv in col_vals):
            cfac = _diag_monomial([-cv for cv in col_vals])
            return mat_mul(cfac, mat_inv(mat_mul(a, cfac), _depth + 1))
    base = a.shift(-int(v))
    c0 = base.coeff(0)
    try:
        c0_inv = c0.inv()
    except ZeroDivisionError:
        raise ZeroDivisionError(
            "not a unit in G(K): leading coefficient is singular"
        ) from None
    # base = c0 (I + N) with val(N) >= 1; (I + N)^-1 = sum (-N)^k
    ident = LaurentMatrix.identity(a.n)
    nmat = mat_mul(LaurentMatrix.from_const(c0_inv), base) - ident
    bound = base.trunc
    if bound == INF and not nmat.is_zero() and not _is_nilpotent_series(nmat):
        raise ValueError("inverse of an exact series matrix is infinite; truncate first")
    acc = ident.truncate(bound)
    term = acc
    mneg = -nmat
    while True:
        term = mat_mul(term, mneg).truncate(bound)
        if term.is_zero():
            break
        acc = acc + term
    inv_unit = mat_mul(acc, LaurentMatrix.from_const(c0_inv))
    return inv_unit.shift(-int(v))


def mat_exp_nilpotent(m: LaurentMatrix) -> LaurentMatrix:
    """Exact exponential: requires m nilpotent (as a matrix of series)
    or val(m) >= 1 (z-adic convergence within the truncation window)."""
    n = m.n
    v = m.val()
    if v == INF:
        return LaurentMatrix.identity(n, m.trunc)
    nilpotent = _is_nilpotent_series(m)
    if not nilpotent:
        if v < 1:
            raise ValueError(
                "exponential not exactly computable: matrix is neither "
                "nilpotent nor of positive valuation"
            )
        if m.trunc == INF:
            raise ValueError(
                "exponential of an exact non-nilpotent series is infinite; truncate first"
            )
    out = LaurentMatrix.identity(n, m.trunc)
    term = out
    k = 1
    fact = 1
    while True:
        term = mat_mul(term, m).truncate(m.trunc)
        if term.is_zero():
            break
        fact *= k
        out = out + term * GaussRat(Fraction(1, fact))
        k += 1
    return out


def _diag_monomial(exps):
    n = len(exps)
    return LaurentMatrix(
        [[LaurentSeries.monomial(1, exps[i]) if i == j else LaurentSeries.zero()
          for j in range(n)] for i in range(n)]
    )


def _is_nilpotent_series(m: LaurentMatrix) -> bool:
    p = m
    for _ in range(m.n):
        if p.is_zero():
            return True
        p = mat_mul(p, m)
    return p.is_zero()
