"""Formal meromorphic connections d + B(z) dz/z and canonical-form reduction.

The reduction follows the graded normalization scheme: matrix units
E_ab z^m are graded by (theta_a - theta_b) + m, gauge transformations
exp(V z^j) with V in a single grade only modify the current grade (via
the bracket with the polar coefficient z^-j term) and strictly higher
grades.  Processing grades in ascending order therefore terminates at
the truncation order.

Two moves are used at each grade:

* polar solve: for each polar coefficient B_-j (diagonal, entries b),
  the component of the grade piece outside ker ad(B_-j) is removed by
  exp(V z^j) with V_ab = piece_ab / (b_a - b_b);
* centralizer kill: components commuting with every polar coefficient
  at z-degree m >= 1 are removed by exp(W z^m) solving
  (m + ad(R0)) W = piece against the committed Levi residue R0.
  A singular system (resonance) is reported, never approximated; it
  cannot occur when the polar part is regular semisimple.

A connection whose polar part is merely *conjugate* to a diagonal one
(e.g. after an arbitrary parahoric gauge) is first brought back to
irregular-type shape by ``recover_irregular_shape``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .field import GaussRat
from .lmatrix import CMat, LaurentMatrix, mat_inv, mat_mul
from .residues import gaussian_eigenvalues, nullspace
from .rootdata import Weight, lie_parahoric_member
from .series import INF, LaurentSeries

DEFAULT_TRUNC = 12


class MeroConnection:
    """The connection d + B(z) dz/z.

    ``pole_order`` is max(0, -val(B)); the 1-form B(z) dz/z has a pole
    of order pole_order + 1 at z = 0 (logarithmic when pole_order = 0).
    """

    __slots__ = ("B",)

    def __init__(self, B: LaurentMatrix):
        object.__setattr__(self, "B", B)

    def __setattr__(self, *a):
        raise AttributeError("MeroConnection is immutable")

    @property
    def n(self) -> int:
        return self.B.n

    @property
    def pole_order(self) -> int:
        v = self.B.val()
        if v == INF:
            return 0
        return max(0, -int(v))

    def polar_coeff(self, j: int) -> CMat:
        return self.B.coeff(-j)

    def agrees(self, other: "MeroConnection") -> bool:
        return self.B.agrees(other.B)

    def __repr__(self):
        return f"MeroConnection(n={self.n}, pole_order={self.pole_order}, trunc={self.B.trunc})"


class IrregularType:
    """Diagonal polar data Q = sum_j diag(c_j) z^-j (class of t(K)/t(R)).

    ``degree`` is the pole order of Q as a function; a trivial Q (no
    negative part) is allowed but flagged, matching the logarithmic case.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Dict[int, Tuple[GaussRat, ...]]):
        clean = {}
        for j, ent in coeffs.items():
            j = int(j)
            if j < 1:
                raise ValueError("irregular type stores exponents z^-j with j >= 1")
            ent = tuple(e if isinstance(e, GaussRat) else GaussRat(e) for e in ent)
            if len(ent) != n:
                raise ValueError("coefficient length mismatch")
            if any(not e.is_zero() for e in ent):
                clean[j] = ent
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __setattr__(self, *a):
        raise AttributeError("IrregularType is immutable")

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=0)

    @property
    def is_trivial(self) -> bool:
        return not self.coeffs

    def entry(self, i: int) -> Dict[int, GaussRat]:
        """The scalar q_i as {exponent: coefficient} with negative exponents."""
        return {-j: ent[i] for j, ent in self.coeffs.items()}

    def root_series(self, i: int, k: int) -> Dict[int, GaussRat]:
        """q_r = r(Q) for the root e_i - e_k."""
        out = {}
        for j, ent in self.coeffs.items():
            c = ent[i] - ent[k]
            if not c.is_zero():
                out[-j] = c
        return out

    def as_matrix(self, trunc=INF) -> LaurentMatrix:
        rows = [
            [LaurentSeries.zero() for _ in range(self.n)] for _ in range(self.n)
        ]
        for j, ent in self.coeffs.items():
            for i in range(self.n):
                rows[i][i] = rows[i][i] + LaurentSeries.monomial(ent[i], -j)
        return LaurentMatrix(rows, trunc)

    def half(self) -> "IrregularType":
        half = GaussRat(Fraction(1, 2))
        return IrregularType(
            self.n, {j: tuple(e * half for e in ent) for j, ent in self.coeffs.items()}
        )

    def scale(self, c) -> "IrregularType":
        c = c if isinstance(c, GaussRat) else GaussRat(c)
        return IrregularType(
            self.n, {j: tuple(e * c for e in ent) for j, ent in self.coeffs.items()}
        )

    def polar_connection_part(self) -> LaurentMatrix:
        """The polar matrix P with dQ = P dz/z, i.e. P = sum (-j c_j) z^-j."""
        rows = [
            [LaurentSeries.zero() for _ in range(self.n)] for _ in range(self.n)
        ]
        for j, ent in self.coeffs.items():
            for i in range(self.n):
                rows[i][i] = rows[i][i] + LaurentSeries.monomial(ent[i] * GaussRat(-j), -j)
        return LaurentMatrix(rows)

    def __eq__(self, other):
        if not isinstance(other, IrregularType):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        return f"IrregularType(n={self.n}, degree={self.degree})"


@dataclass(frozen=True)
class CanonicalForm:
    """Polar coefficients (diagonal) plus a commuting constant residue."""

    polar: Dict[int, CMat]  # j -> B_{-j}
    residue: CMat

    @property
    def n(self) -> int:
        return self.residue.n

    @property
    def pole_order(self) -> int:
        return max(self.polar, default=0)

    def as_connection(self, trunc=INF) -> MeroConnection:
        rows = [
            [LaurentSeries.zero() for _ in range(self.n)] for _ in range(self.n)
        ]
        for i in range(self.n):
            for k in range(self.n):
                s = LaurentSeries.const(self.residue[i, k])
                for j, mat in self.polar.items():
                    if i == k:
                        s = s + LaurentSeries.monomial(mat[i, i], -j)
                rows[i][k] = s
        return MeroConnection(LaurentMatrix(rows, trunc))

    def irregular_type(self) -> IrregularType:
        return IrregularType(
            self.n,
            {
                j: tuple(mat[i, i] / GaussRat(-j) for i in range(self.n))
                for j, mat in self.polar.items()
            },
        )

    def check_invariants(self, theta: Optional[Weight] = None) -> bool:
        """Polar coefficients diagonal, everything pairwise commuting,
        residue in the parabolic of theta."""
        mats = list(self.polar.values())
        if any(not m.is_diagonal() for m in mats):
            return False
        for m in mats:
            if not m.bracket(self.residue).is_zero():
                return False
        for a in mats:
            for b in mats:
                if not a.bracket(b).is_zero():
                    return False
        if theta is not None:
            for i in range(self.n):
                for k in range(self.n):
                    if theta.entries[i] < theta.entries[k] and not self.residue[i, k].is_zero():
                        return False
        return True


class ReductionError(ValueError):
    pass


# ----------------------------------------------------------------------
# gauge action
# ----------------------------------------------------------------------

def gauge_act(g: LaurentMatrix, conn: MeroConnection,
              g_inv: Optional[LaurentMatrix] = None) -> MeroConnection:
    """g . (d + B dz/z) = d + (-z g' g^-1 + g B g^-1) dz/z."""
    if g_inv is None:
        g_inv = mat_inv(g)
    ad_part = mat_mul(mat_mul(g, conn.B), g_inv)
    d_part = mat_mul(g.zdz(), g_inv)
    return MeroConnection(ad_part - d_part)


def gauge_orbit_equal(c1: MeroConnection, c2: MeroConnection, g: LaurentMatrix) -> bool:
    """True iff g . c1 equals c2 entrywise up to the common truncation."""
    try:
        return gauge_act(g, c1).agrees(c2)
    except (ZeroDivisionError, ValueError):
        return False


# ----------------------------------------------------------------------
# graded bookkeeping helpers
# ----------------------------------------------------------------------

def _zero_weight(n: int) -> Weight:
    return Weight([0] * n)


def _grade(theta: Weight, a: int, b: int, m: int) -> Fraction:
    return theta.entries[a] - theta.entries[b] + m


def _grade_slots(theta: Weight, n: int, mu: Fraction, m_lo: int, m_hi: int):
    """All (a, b, m) with grade mu and m in [m_lo, m_hi)."""
    out = []
    for a in range(n):
        for b in range(n):
            m = mu - theta.entries[a] + theta.entries[b]
            if m.denominator == 1 and m_lo <= m < m_hi:
                out.append((a, b, int(m)))
    return out


def _piece(B: LaurentMatrix, slots):
    """{(a, b, m): coefficient} restricted to nonzero entries."""
    out = {}
    for a, b, m in slots:
        c = B.rows[a][b].coeff(m)
        if not c.is_zero():
            out[(a, b, m)] = c
    return out


def _exp_graded(u: LaurentMatrix, cap: int) -> LaurentMatrix:
    """exp of a single-positive-grade element; terminates inside the
    truncated window because powers climb in grade.  Terms are clamped
    to u's truncation (the sum cannot be known beyond it anyway)."""
    out = LaurentMatrix.identity(u.n, u.trunc)
    term = out
    k = 1
    fact = 1
    while True:
        term = mat_mul(term, u).truncate(u.trunc)
        if term.is_zero():
            return out
        fact *= k
        out = out + term * GaussRat(Fraction(1, fact))
        k += 1
        if k > cap:
            raise ReductionError("gauge exponential did not terminate (grading violated)")


def _apply_gauge(cur: LaurentMatrix, u: LaurentMatrix, g_total: LaurentMatrix,
                 cap: int) -> Tuple[LaurentMatrix, LaurentMatrix]:
    g = _exp_graded(u, cap)
    gi = _exp_graded(-u, cap)
    new_B = mat_mul(mat_mul(g, cur), gi) - mat_mul(g.zdz(), gi)
    return new_B, mat_mul(g, g_total)


def _diag_entries(m: CMat):
    return [m[i, i] for i in range(m.n)]


# ----------------------------------------------------------------------
# canonical reduction
# ----------------------------------------------------------------------

def canonical_reduce(conn: MeroConnection, theta: Optional[Weight] = None,
                     trunc: Optional[int] = None) -> Tuple[CanonicalForm, LaurentMatrix]:
    """Reduce a connection in irregular-type shape to canonical form.

    Returns (canonical form, gauge g) with g . conn = canonical up to the
    truncation.  Preconditions: polar coefficients diagonal and the
    nonnegative part inside the theta-parahoric Lie algebra.
    """
    n = conn.n
    if theta is None:
        theta = _zero_weight(n)
    if theta.n != n:
        raise ValueError("weight dimension mismatch")
    npole = conn.pole_order
    if npole < 1:
        raise ReductionError(
            "trivial irregular type: input has no polar part "
            "(logarithmic reduction is out of scope)"
        )
    T = _resolve_trunc(conn, trunc)
    if not _off_diagonal_in_nonneg_grades(conn.B, theta):
        if any(not conn.polar_coeff(j).is_diagonal() for j in range(1, npole + 1)):
            raise ReductionError(
                "input not in irregular-type shape: off-diagonal polar content "
                "below grade zero; run recover_irregular_shape first "
                "(ramified case out of scope)"
            )
        raise ReductionError(
            "precondition violation: nonnegative part lies outside the "
            "parahoric Lie algebra of the given weight"
        )

    W = T + npole
    cur = _rebuild_trunc(conn.B, T, W)
    g_total = LaurentMatrix.identity(n, W)
    polar = {j: _diag_entries(conn.polar_coeff(j)) for j in range(1, npole + 1)}
    cap = _exp_cap(theta, T, npole)

    for mu in _grade_sequence(theta, n, T, Fraction(0)):
        cur, g_total = _normalize_grade(
            cur, g_total, theta, mu, polar, T, W, cap
        )

    canonical = CanonicalForm(
        polar={j: CMat.diag(polar[j]) for j in polar if any(not e.is_zero() for e in polar[j])},
        residue=cur.coeff(0),
    )
    _assert_reduced(cur, canonical, T)
    return canonical, g_total


def _normalize_grade(cur, g_total, theta, mu, polar, T, W, cap):
    n = cur.n
    # off-diagonal tail entries sit at z-degrees >= -1 for admissible
    # weights (theta differences at most 1); diagonal slots of grade
    # mu >= 0 are at m = mu >= 0 anyway
    slots = [
        (a, b, m) for (a, b, m) in _grade_slots(theta, n, mu, -1, T)
        if a != b or m >= 0
    ]
    if not slots:
        return cur, g_total
    # polar solves, leading coefficient first
    for j in sorted(polar, reverse=True):
        d = polar[j]
        piece = _piece(cur, slots)
        rows = [[LaurentSeries.zero() for _ in range(n)] for _ in range(n)]
        nonzero = False
        for (a, b, m), c in piece.items():
            if d[a] != d[b]:
                rows[a][b] = rows[a][b] + LaurentSeries.monomial(c / (d[a] - d[b]), m)
                nonzero = True
        if nonzero:
            v = LaurentMatrix(rows, W).shift(j)
            cur, g_total = _apply_gauge(cur, v, g_total, cap)
    # centralizer kill away from z-degree zero (the residue slot)
    guard = 0
    while True:
        piece = _piece(cur, slots)
        kill = {
            (a, b, m): c
            for (a, b, m), c in piece.items()
            if m != 0 and all(d[a] == d[b] for d in polar.values())
        }
        if not kill:
            break
        m0 = min(m for (_, _, m) in kill)
        level = {(a, b): c for (a, b, m), c in kill.items() if m == m0}
        w = _solve_kill(cur, theta, level, m0, polar)
        u = LaurentMatrix.monomial(w, m0, W)
        cur, g_total = _apply_gauge(cur, u, g_total, cap)
        guard += 1
        if guard > T + 2:
            raise ReductionError("internal error: centralizer kill did not terminate")
    return cur, g_total


def _solve_kill(cur, theta, level, m, polar) -> CMat:
    """Solve (m + ad(R0)) W = piece, where R0 is the committed Levi part
    of the residue.  The solve runs on the full ad-invariant slot space:
    all (a, b) with the same theta-difference as the piece and with equal
    eigenvalues under every polar coefficient."""
    n = cur.n
    a0, b0 = next(iter(level))
    diff = theta.entries[a0] - theta.entries[b0]
    slots = [
        (a, b)
        for a in range(n)
        for b in range(n)
        if theta.entries[a] - theta.entries[b] == diff
        and all(d[a] == d[b] for d in polar.values())
    ]
    idx = {s: i for i, s in enumerate(slots)}
    r0 = _levi_residue(cur, theta)
    k = len(slots)
    op = [[GaussRat(0)] * k for _ in range(k)]
    rhs = [GaussRat(0)] * k
    for s, i in idx.items():
        rhs[i] = level.get(s, GaussRat(0))
        op[i][i] = GaussRat(m)
    # ad(R0) E_ab = sum_c R0_ca E_cb - sum_c R0_bc E_ac
    for (a, b), col in idx.items():
        for c in range(n):
            if (c, b) in idx and not r0[c, a].is_zero():
                op[idx[(c, b)]][col] = op[idx[(c, b)]][col] + r0[c, a]
            if (a, c) in idx and not r0[b, c].is_zero():
                op[idx[(a, c)]][col] = op[idx[(a, c)]][col] - r0[b, c]
    try:
        sol = CMat(op).inv().apply(rhs)
    except ZeroDivisionError:
        raise ReductionError(
            "resonant residue: (m + ad(B0)) is singular on the centralizer; "
            "canonical reduction needs a shearing transformation (out of scope)"
        ) from None
    w_rows = [[GaussRat(0)] * n for _ in range(n)]
    for (a, b), i in idx.items():
        w_rows[a][b] = sol[i]
    return CMat(w_rows)


def _levi_residue(cur: LaurentMatrix, theta: Weight) -> CMat:
    c0 = cur.coeff(0)
    n = cur.n
    return CMat([
        [
            c0[a, b] if theta.entries[a] == theta.entries[b] else GaussRat(0)
            for b in range(n)
        ]
        for a in range(n)
    ])


def _grade_sequence(theta: Weight, n: int, T: int, start: Fraction):
    grades = set()
    for a in range(n):
        for b in range(n):
            diff = theta.entries[a] - theta.entries[b]
            for m in range(0, T):
                mu = diff + m
                if mu >= start:
                    grades.add(mu)
    return sorted(grades)


def _exp_cap(theta: Weight, T: int, npole: int) -> int:
    den = 1
    for e in theta.entries:
        den = den * e.denominator // math.gcd(den, e.denominator)
    return den * (T + npole + 2) + 4


def _resolve_trunc(conn: MeroConnection, trunc: Optional[int]) -> int:
    known = conn.B.trunc
    if trunc is not None:
        return int(min(trunc, known)) if known != INF else int(trunc)
    if known != INF:
        return int(known)
    return DEFAULT_TRUNC


def _rebuild_trunc(B: LaurentMatrix, T: int, W: int) -> LaurentMatrix:
    # connection carried at truncation T; exact inputs are windowed to T
    return B.truncate(T)


def _off_diagonal_in_nonneg_grades(B: LaurentMatrix, theta: Weight) -> bool:
    """True iff every off-diagonal entry sits at grade >= 0.  Diagonal
    content below grade zero is the (legal) polar part; off-diagonal
    content below grade zero is neither polar data nor parahoric tail."""
    n = B.n
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            for m, _c in B.rows[a][b].items():
                if _grade(theta, a, b, m) < 0:
                    return False
    return True


def _assert_reduced(cur: LaurentMatrix, canonical: CanonicalForm, T: int):
    diff = cur - canonical.as_connection(T).B
    if not diff.is_zero() and diff.val() < T:
        raise ReductionError("internal error: reduction left residual terms")


# ----------------------------------------------------------------------
# irregular-type shape recovery and extraction
# ----------------------------------------------------------------------

def recover_irregular_shape(conn: MeroConnection, theta: Optional[Weight] = None,
                            trunc: Optional[int] = None
                            ) -> Tuple[MeroConnection, LaurentMatrix]:
    """Bring a connection whose polar part is conjugate to a diagonal one
    back to irregular-type shape (diagonal polar coefficients).

    Supported when the leading polar coefficient is regular semisimple
    with Gaussian-rational eigenvalues (the unramified case at desk
    scale); eigenvalues are ordered canonically by (re, im).
    """
    n = conn.n
    if theta is None:
        theta = _zero_weight(n)
    npole = conn.pole_order
    if npole < 1:
        raise ReductionError("trivial irregular type: nothing to recover")
    T = _resolve_trunc(conn, trunc)
    W = T + npole
    cap = _exp_cap(theta, T, npole)

    g_total = LaurentMatrix.identity(n, W)
    cur = conn.B.truncate(T)

    lead = cur.coeff(-npole)
    if not lead.is_diagonal():
        s = _diagonalizer(lead)
        s_l = LaurentMatrix.from_const(s, W)
        s_inv = LaurentMatrix.from_const(s.inv(), W)
        cur = mat_mul(mat_mul(s_inv, cur), s_l)
        g_total = mat_mul(s_inv, g_total)
    lead = cur.coeff(-npole)
    dlead = _diag_entries(lead)

    # kill off-kernel-of-the-leading-coefficient parts at every grade
    # below zero (these include both non-diagonal polar coefficients and
    # nonnegative-degree entries that a parahoric gauge pushed below
    # grade zero), grade ascending
    grades = set()
    for a in range(n):
        for b in range(n):
            diff = theta.entries[a] - theta.entries[b]
            for m in range(-npole + 1, T):
                mu = diff + m
                if -npole < mu < 0:
                    grades.add(mu)
    for mu in sorted(grades):
        slots = _grade_slots(theta, n, mu, -npole + 1, T)
        piece = _piece(cur, slots)
        rows = [[LaurentSeries.zero() for _ in range(n)] for _ in range(n)]
        nonzero = False
        for (a, b, m), c in piece.items():
            if dlead[a] != dlead[b]:
                rows[a][b] = rows[a][b] + LaurentSeries.monomial(c / (dlead[a] - dlead[b]), m)
                nonzero = True
        if nonzero:
            v = LaurentMatrix(rows, W).shift(npole)
            cur, g_total = _apply_gauge(cur, v, g_total, cap)
    result = MeroConnection(cur)
    if not in_irregular_shape(result, theta):
        raise ReductionError(
            "polar part not recoverable: residual content below grade zero "
            "(nested splitting out of scope)"
        )
    return result, g_total


def in_irregular_shape(conn: MeroConnection, theta: Optional[Weight] = None) -> bool:
    """All off-diagonal content at grade >= 0: diagonal polar data plus
    a parahoric tail.  This is the input shape canonical_reduce accepts
    (for boundary weights the tail may dip to z^-1 on slots with
    theta-difference one)."""
    if theta is None:
        theta = _zero_weight(conn.n)
    return _off_diagonal_in_nonneg_grades(conn.B, theta)


def _diagonalizer(m: CMat) -> CMat:
    """Columns are eigenvectors of m, eigenvalues sorted by (re, im);
    requires distinct Gaussian-rational eigenvalues."""
    eigs = gaussian_eigenvalues(m)
    if any(mult != 1 for _, mult in eigs):
        raise ReductionError(
            "polar leading coefficient is not regular semisimple; "
            "shape recovery needs distinct eigenvalues"
        )
    lams = sorted((lam for lam, _ in eigs), key=lambda x: (x.re, x.im))
    cols = []
    ident = CMat.identity(m.n)
    for lam in lams:
        basis = nullspace(m - ident.scale(lam))
        if len(basis) != 1:
            raise ReductionError("eigenspace dimension mismatch")
        cols.append(basis[0])
    return CMat([[cols[j][i] for j in range(m.n)] for i in range(m.n)])


def extract_irregular_type(conn: MeroConnection, theta: Optional[Weight] = None,
                           trunc: Optional[int] = None) -> IrregularType:
    """The diagonal polar data Q with dQ = (polar part) dz/z, i.e.
    Q = sum_j B_-j z^-j / (-j); a G_theta(K)-gauge invariant."""
    n = conn.n
    if conn.pole_order < 1:
        return IrregularType(n, {})
    work = conn
    if not in_irregular_shape(conn, theta):
        work, _ = recover_irregular_shape(conn, theta, trunc)
    canonical, _ = canonical_reduce(work, theta, trunc)
    return canonical.irregular_type()


def connection_from_irregular_type(q: IrregularType, residue: CMat,
                                   tail: Optional[LaurentMatrix] = None,
                                   trunc=INF) -> MeroConnection:
    """Assemble d + (dQ + residue + tail) dz/z."""
    B = q.polar_connection_part() + LaurentMatrix.from_const(residue)
    if tail is not None:
        B = B + tail
    return MeroConnection(B.truncate(trunc))
