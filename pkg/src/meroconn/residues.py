"""Residue structure: exact Jordan decomposition and sl2 completion.

The exactness boundary is explicit: eigenvalues must lie in the
Gaussian rationals (characteristic polynomials are factored over Q(i)),
otherwise the decomposition reports failure instead of approximating.
The semisimple part is assembled from generalized eigenspaces; nilpotent
parts are completed to sl2 triples through Jordan chains with the
standard weighted blocks

    Y = subdiagonal ones,  H = diag(k-1, k-3, ..., 1-k),
    X = superdiagonal i(k-i),

conjugated back through the recorded chain basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .field import GaussRat
from .lmatrix import CMat


class EigenvalueError(ValueError):
    pass


# ----------------------------------------------------------------------
# exact linear algebra helpers
# ----------------------------------------------------------------------

def rref(rows: List[List[GaussRat]]) -> Tuple[List[List[GaussRat]], List[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def nullspace(m: CMat) -> List[List[GaussRat]]:
    """Basis of the kernel (as column vectors), deterministic."""
    rows, pivots = rref([list(r) for r in m.rows])
    n = m.n
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [GaussRat(0)] * n
        vec[fc] = GaussRat(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(vec)
    return basis


def charpoly(m: CMat) -> List[GaussRat]:
    """Characteristic polynomial coefficients [c0, ..., cn] with cn = 1,
    via the Faddeev-LeVerrier recursion (exact over the field)."""
    n = m.n
    coeffs = [GaussRat(0)] * (n + 1)
    coeffs[n] = GaussRat(1)
    mk = CMat.identity(n)
    for k in range(1, n + 1):
        mk = m * mk
        ck = -mk.trace() / GaussRat(k)
        coeffs[n - k] = ck
        if k < n:
            mk = mk + CMat.identity(n).scale(ck)
    return coeffs


def gaussian_eigenvalues(m: CMat) -> List[Tuple[GaussRat, int]]:
    """Eigenvalues in Q(i) with algebraic multiplicities.

    Raises EigenvalueError if the characteristic polynomial has a factor
    that does not split over the Gaussian rationals.
    """
    import sympy

    lam = sympy.Symbol("lam")
    coeffs = charpoly(m)
    expr = sympy.Integer(0)
    for k, c in enumerate(coeffs):
        a, b, d = c.t
        expr += (sympy.Rational(a, d) + sympy.Rational(b, d) * sympy.I) * lam**k
    _, factors = sympy.factor_list(sympy.expand(expr), lam, extension=sympy.I)
    out = []
    total = 0
    for fac, mult in factors:
        poly = sympy.Poly(fac, lam)
        if poly.degree() == 0:
            continue
        if poly.degree() != 1:
            raise EigenvalueError("eigenvalues outside coefficient field")
        c1, c0 = poly.all_coeffs()
        root = sympy.simplify(-c0 / c1)
        re, im = root.as_real_imag()
        if not (re.is_rational and im.is_rational):
            raise EigenvalueError("eigenvalues outside coefficient field")
        lam_g = GaussRat(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))
        out.append((lam_g, int(mult)))
        total += int(mult)
    if total != m.n:
        raise EigenvalueError("eigenvalues outside coefficient field")
    out.sort(key=lambda t: (t[0].re, t[0].im))
    return out


# ----------------------------------------------------------------------
# Jordan decomposition
# ----------------------------------------------------------------------

def jordan_decompose(m: CMat) -> Tuple[CMat, CMat]:
    """Additive Jordan decomposition m = s + y with s semisimple,
    y nilpotent, [s, y] = 0; exact, via generalized eigenprojections."""
    n = m.n
    eigs = gaussian_eigenvalues(m)
    if len(eigs) == 1 and eigs[0][1] == n:
        lam = eigs[0][0]
        s = CMat.identity(n).scale(lam)
        return s, m - s
    cols = []
    col_vals = []
    ident = CMat.identity(n)
    for lam, mult in eigs:
        power = (m - ident.scale(lam)) ** mult
        basis = nullspace(power)
        if len(basis) != mult:
            raise EigenvalueError("generalized eigenspace dimension mismatch")
        cols.extend(basis)
        col_vals.extend([lam] * mult)
    p = CMat([[cols[j][i] for j in range(n)] for i in range(n)])
    s = p * CMat.diag(col_vals) * p.inv()
    return s, m - s


# ----------------------------------------------------------------------
# sl2 completion
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Sl2Data:
    """A residue's structure: semisimple part s plus the sl2 triple
    (X, H, Y) completing the nilpotent part.  ``basis`` conjugates the
    standard weighted Jordan blocks to (X, H, Y); H is diagonal in that
    basis."""

    s: Optional[CMat]
    X: CMat
    H: CMat
    Y: CMat
    basis: CMat

    def check_brackets(self) -> bool:
        two_x = self.X.scale(2)
        two_y = self.Y.scale(2)
        ok = (
            self.H.bracket(self.X) == two_x
            and self.H.bracket(self.Y) == -two_y
            and self.X.bracket(self.Y) == self.H
        )
        if ok and self.s is not None:
            ok = self.s.bracket(self.Y).is_zero()
        return ok


def sl2_complete(y: CMat) -> Sl2Data:
    """Complete a nilpotent matrix into an sl2 triple (s omitted)."""
    if not y.is_nilpotent():
        raise ValueError("sl2_complete requires a nilpotent matrix")
    n = y.n
    if y.is_zero():
        z = CMat.zero(n)
        return Sl2Data(None, z, z, y, CMat.identity(n))
    chains = _jordan_chains(y)
    cols = [v for chain in chains for v in chain]
    p = CMat([[cols[j][i] for j in range(n)] for i in range(n)])
    p_inv = p.inv()
    sizes = [len(c) for c in chains]
    x_std, h_std = _standard_blocks(sizes)
    x = p * x_std * p_inv
    h = p * h_std * p_inv
    data = Sl2Data(None, x, h, y, p)
    if not data.check_brackets():
        raise RuntimeError("internal error: sl2 bracket relations failed")
    return data


def sl2_complete_blockwise(y: CMat, blocks: List[List[int]]) -> Sl2Data:
    """sl2 completion respecting a partition of the index set.

    ``y`` must vanish off the diagonal blocks; the triple is assembled
    per block so that H and X commute with anything constant on the
    blocks (used when the residue must stay inside a Levi factor).
    """
    n = y.n
    loc = {}
    for b, idxs in enumerate(blocks):
        for pos, i in enumerate(idxs):
            loc[i] = (b, pos)
    for i in range(n):
        for j in range(n):
            if loc[i][0] != loc[j][0] and not y[i, j].is_zero():
                raise ValueError("nilpotent part is not block diagonal")
    x_rows = [[GaussRat(0)] * n for _ in range(n)]
    h_rows = [[GaussRat(0)] * n for _ in range(n)]
    p_rows = [[GaussRat(0)] * n for _ in range(n)]
    for idxs in blocks:
        sub = CMat([[y[i, j] for j in idxs] for i in idxs])
        data = sl2_complete(sub)
        for a, i in enumerate(idxs):
            for b, j in enumerate(idxs):
                x_rows[i][j] = data.X[a, b]
                h_rows[i][j] = data.H[a, b]
                p_rows[i][j] = data.basis[a, b]
    data = Sl2Data(None, CMat(x_rows), CMat(h_rows), y, CMat(p_rows))
    if not data.check_brackets():
        raise RuntimeError("internal error: sl2 bracket relations failed")
    return data


def residue_structure(m: CMat, blocks: Optional[List[List[int]]] = None) -> Sl2Data:
    """Jordan decomposition followed by sl2 completion of the nilpotent
    part.  When ``blocks`` is given the completion respects it."""
    s, y = jordan_decompose(m)
    if blocks is None:
        data = sl2_complete(y)
    else:
        data = sl2_complete_blockwise(y, blocks)
    return Sl2Data(s, data.X, data.H, data.Y, data.basis)


def _jordan_chains(y: CMat) -> List[List[List[GaussRat]]]:
    """Jordan chains of a nilpotent matrix, each as [v, Yv, ..., Y^(k-1)v]."""
    n = y.n
    kernels = [[]]  # kernels[j] = basis of ker(y^j)
    power = CMat.identity(n)
    p = 0
    while True:
        power = power * y if p > 0 else y
        basis = nullspace(power)
        kernels.append(basis)
        p += 1
        if len(basis) == n:
            break
    chains: List[List[List[GaussRat]]] = []
    for j in range(p, 0, -1):
        spanning = [list(v) for v in kernels[j - 1]]
        spanning += [c[len(c) - j] for c in chains if len(c) >= j]
        for v in kernels[j]:
            if _independent(spanning, v):
                chain = [list(v)]
                for _ in range(j - 1):
                    chain.append(y.apply(chain[-1]))
                chains.append(chain)
                spanning.append(list(v))
    total = sum(len(c) for c in chains)
    if total != n:
        raise RuntimeError("internal error: Jordan chains do not span")
    return chains


def _independent(spanning: List[List[GaussRat]], v: List[GaussRat]) -> bool:
    if not spanning:
        return any(not x.is_zero() for x in v)
    rows = [list(w) for w in spanning] + [list(v)]
    _, pivots = rref(rows)
    return len(pivots) == len(spanning) + 1


def _standard_blocks(sizes: List[int]) -> Tuple[CMat, CMat]:
    """Block-diagonal standard X (superdiag i(k-i)) and H (diag k-1, ...)."""
    n = sum(sizes)
    x_rows = [[GaussRat(0)] * n for _ in range(n)]
    h_rows = [[GaussRat(0)] * n for _ in range(n)]
    off = 0
    for k in sizes:
        for i in range(1, k):
            x_rows[off + i - 1][off + i] = GaussRat(i * (k - i))
        for i in range(k):
            h_rows[off + i][off + i] = GaussRat(k - 1 - 2 * i)
        off += k
    return CMat(x_rows), CMat(h_rows)
