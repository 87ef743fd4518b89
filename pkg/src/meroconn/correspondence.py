"""Local data dictionaries between the de Rham, Dolbeault and Betti sides.

Given de Rham data (weight beta, residue s + Y in Levi normal form,
irregular type Q), the translations are

    Dolbeault:  alpha = Re(s),   residue (1/2)(s - beta) + (Y - H + X),
                irregular type Q/2;
    Betti:      gamma = beta - Re(s),
                monodromy exp(-2 pi i s) * exp(-2 pi i Y),
                irregular type Q;

with (X, H, Y) the sl2 triple completing the nilpotent part.  Weights
stay exact (Re(s) is exact for Gaussian-rational s); transcendentals
enter only through the monodromy, where the nilpotent factor is carried
symbolically as a polynomial in pi and the semisimple factor is kept as
exact root-of-unity data when possible, with numerics on demand.

The loop orientation of the rank-1 monodromy oracle is counterclockwise
(z = exp(i phi), phi from 0 to 2 pi); with that orientation the measured
multiplier of f' = (q' + b/z) f is exp(+2 pi i b).  This sign is the
library-wide convention (ORIENTATION = +1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import mpmath

from .connection import IrregularType
from .field import GaussRat
from .lmatrix import CMat
from .residues import Sl2Data, jordan_decompose, sl2_complete_blockwise
from .rootdata import Weight

ORIENTATION = +1


class CorrespondenceError(ValueError):
    pass


# ----------------------------------------------------------------------
# local data containers
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DeRhamLocal:
    """Connection-side local data: weight, residue in Levi normal form
    (semisimple part diagonal), irregular type.

    Invariants enforced here: the residue lies in the Levi factor of the
    weight parabolic (entries across different beta-levels vanish) and
    commutes with the irregular type's diagonal coefficients."""

    beta: Weight
    residue: CMat
    q: IrregularType

    def __post_init__(self):
        n = self.residue.n
        if self.beta.n != n or self.q.n != n:
            raise CorrespondenceError("dimension mismatch in de Rham data")
        for i in range(n):
            for j in range(n):
                if self.residue[i, j].is_zero():
                    continue
                if self.beta.entries[i] != self.beta.entries[j]:
                    raise CorrespondenceError(
                        "residue leaves the Levi factor of its weight"
                    )
                if self.q.entry(i) != self.q.entry(j):
                    raise CorrespondenceError(
                        "residue does not commute with the irregular type"
                    )

    def structure(self) -> Sl2Data:
        """Jordan decomposition plus blockwise sl2 completion; blocks are
        the joint level sets of (s, beta, Q), so H and X commute with s,
        with beta, and with the irregular type."""
        s, y = jordan_decompose(self.residue)
        if not s.is_diagonal():
            raise CorrespondenceError(
                "residue semisimple part is not diagonal (not in Levi normal form)"
            )
        blocks = _joint_blocks(s, self.beta, self.q)
        data = sl2_complete_blockwise(y, blocks)
        return Sl2Data(s, data.X, data.H, data.Y, data.basis)


@dataclass(frozen=True)
class DolbeaultLocal:
    alpha: Weight
    residue: CMat
    q: IrregularType


@dataclass(frozen=True)
class RootOfUnity:
    """exp(-2 pi i * p / q), stored exactly."""

    p: int
    q: int

    def mp(self, prec: int = 53):
        with mpmath.workprec(prec):
            return mpmath.expjpi(mpmath.mpf(-2 * self.p) / self.q)

    def numeric(self, prec: int = 53) -> complex:
        return complex(self.mp(prec))


class PiMatrixPoly:
    """sum_k M_k pi^k with exact Gaussian-rational matrices M_k.

    Used for exp(-2 pi i Y) = sum (-2i)^k/k! Y^k pi^k, which is a finite
    polynomial for nilpotent Y."""

    def __init__(self, coeffs: Dict[int, CMat]):
        self.coeffs = {k: m for k, m in sorted(coeffs.items()) if not m.is_zero()}

    @classmethod
    def exp_neg_two_pi_i(cls, y: CMat) -> "PiMatrixPoly":
        if not y.is_nilpotent():
            raise CorrespondenceError("symbolic exponential needs a nilpotent matrix")
        coeffs = {0: CMat.identity(y.n)}
        term = CMat.identity(y.n)
        scale = GaussRat(1)
        fact = 1
        for k in range(1, y.n + 1):
            term = term * y
            if term.is_zero():
                break
            fact *= k
            scale = scale * GaussRat(0, -2)  # (-2i)^k accumulates
            coeffs[k] = term.scale(scale / GaussRat(fact))
        return cls(coeffs)

    def mp(self, prec: int = 53) -> List[List[object]]:
        """Evaluate at pi as mpmath complex numbers at the given precision."""
        n = next(iter(self.coeffs.values())).n if self.coeffs else 0
        with mpmath.workprec(prec):
            pi = mpmath.pi
            out = [[mpmath.mpc(0) for _ in range(n)] for _ in range(n)]
            for k, m in self.coeffs.items():
                w = pi**k
                for i in range(n):
                    for j in range(n):
                        c = m[i, j]
                        if not c.is_zero():
                            out[i][j] += mpmath.mpc(
                                mpmath.mpf(c.re.numerator) / c.re.denominator,
                                mpmath.mpf(c.im.numerator) / c.im.denominator,
                            ) * w
            return out

    def numeric(self, prec: int = 53) -> List[List[complex]]:
        return [[complex(x) for x in row] for row in self.mp(prec)]

    def __eq__(self, other):
        if not isinstance(other, PiMatrixPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"PiMatrixPoly(degrees={sorted(self.coeffs)})"


@dataclass(frozen=True)
class BettiLocal:
    """Betti-side local data; the monodromy is kept factored as
    (semisimple diagonal, unipotent pi-polynomial)."""

    gamma: Weight
    semisimple_factor: Tuple[object, ...]  # RootOfUnity or complex per entry
    nilpotent_factor: PiMatrixPoly
    q: IrregularType

    def monodromy_mp(self, prec: int = 53):
        """Full monodromy as mpmath complex numbers (semisimple diagonal
        times the unipotent pi-polynomial)."""
        with mpmath.workprec(prec):
            diag = [
                f.mp(prec) if isinstance(f, RootOfUnity) else mpmath.mpc(f)
                for f in self.semisimple_factor
            ]
            nil = self.nilpotent_factor.mp(prec)
            n = len(diag)
            return [[diag[i] * nil[i][j] for j in range(n)] for i in range(n)]

    def monodromy_numeric(self, prec: int = 53) -> List[List[complex]]:
        return [[complex(x) for x in row] for row in self.monodromy_mp(prec)]


# ----------------------------------------------------------------------
# translations
# ----------------------------------------------------------------------

def _joint_blocks(s: CMat, beta: Weight, q: IrregularType) -> List[List[int]]:
    n = s.n
    keys = []
    for i in range(n):
        qkey = tuple(sorted((e, c.t) for e, c in q.entry(i).items()))
        keys.append((s[i, i].t, beta.entries[i], qkey))
    blocks: Dict[tuple, List[int]] = {}
    for i, key in enumerate(keys):
        blocks.setdefault(key, []).append(i)
    return [blocks[k] for k in sorted(blocks, key=lambda k: blocks[k][0])]


def dR_to_Dol(d: DeRhamLocal) -> DolbeaultLocal:
    """Dolbeault data: alpha = Re(s) entrywise, residue
    (1/2)(s - beta) + (Y - H + X), irregular type halved."""
    st = d.structure()
    alpha = Weight([st.s[i, i].re for i in range(st.s.n)], validate=False)
    half = GaussRat(Fraction(1, 2))
    beta_mat = CMat.diag([GaussRat(b) for b in d.beta.entries])
    residue = (st.s - beta_mat).scale(half) + st.Y - st.H + st.X
    return DolbeaultLocal(alpha=alpha, residue=residue, q=d.q.half())


def dR_to_Betti(d: DeRhamLocal, prec: int = 128) -> BettiLocal:
    """Betti data: gamma = beta - Re(s), monodromy
    exp(-2 pi i s) exp(-2 pi i Y) with the nilpotent factor symbolic."""
    st = d.structure()
    n = st.s.n
    gamma = Weight(
        [b - st.s[i, i].re for i, b in enumerate(d.beta.entries)], validate=False
    )
    factors: List[object] = []
    for i in range(n):
        si = st.s[i, i]
        if si.is_real():
            factors.append(RootOfUnity(si.re.numerator, si.re.denominator))
        else:
            # kept as an mpmath complex at the working precision; callers
            # downcast to float complex at the API edge
            with mpmath.workprec(prec):
                factors.append(
                    mpmath.exp(
                        -2j * mpmath.pi * mpmath.mpc(
                            mpmath.mpf(si.re.numerator) / si.re.denominator,
                            mpmath.mpf(si.im.numerator) / si.im.denominator,
                        )
                    )
                )
    nil = PiMatrixPoly.exp_neg_two_pi_i(st.Y)
    return BettiLocal(
        gamma=gamma, semisimple_factor=tuple(factors), nilpotent_factor=nil, q=d.q
    )


def roundtrip_weight_check(d: DeRhamLocal) -> bool:
    """gamma + alpha = beta exactly (both sides go through Re(s))."""
    alpha = dR_to_Dol(d).alpha
    gamma = dR_to_Betti(d).gamma
    return all(
        g + a == b
        for g, a, b in zip(gamma.entries, alpha.entries, d.beta.entries)
    )


# ----------------------------------------------------------------------
# rank-1 monodromy oracle
# ----------------------------------------------------------------------

def rank1_monodromy_oracle(b, q: Optional[IrregularType] = None,
                           steps: int = 8192, prec: int = 128) -> complex:
    """Numerically continue a solution of f' = (q'(z) + b/z) f around the
    unit circle (counterclockwise) and return the multiplier.

    exp(q) is single-valued on the circle, so the essential factor drops
    out of the multiplier, which equals exp(ORIENTATION * 2 pi i b).
    Fixed-step RK4 in mpmath; deterministic for fixed (steps, prec).
    """
    b = Fraction(b) if not isinstance(b, GaussRat) else b
    if isinstance(b, GaussRat):
        b_re, b_im = b.re, b.im
    else:
        b_re, b_im = b, Fraction(0)
    zq_terms: List[Tuple[int, Fraction, Fraction]] = []
    if q is not None:
        if q.n != 1:
            raise CorrespondenceError("rank-1 oracle needs scalar irregular data")
        for j, (c,) in q.coeffs.items():
            zq_terms.append((-j, Fraction(-j) * c.re, Fraction(-j) * c.im))
    with mpmath.workprec(prec):
        bc = mpmath.mpc(
            mpmath.mpf(b_re.numerator) / b_re.denominator,
            mpmath.mpf(b_im.numerator) / b_im.denominator,
        )
        terms = [
            (e, mpmath.mpc(mpmath.mpf(cr.numerator) / cr.denominator,
                           mpmath.mpf(ci.numerator) / ci.denominator))
            for e, cr, ci in zq_terms
        ]

        def rhs(phi, f):
            z = mpmath.expjpi(2 * phi)  # phi in turns
            zq = mpmath.mpc(0)
            for e, c in terms:
                zq += c * z**e
            return 2j * mpmath.pi * (zq + bc) * f

        f = mpmath.mpc(1)
        h = mpmath.mpf(1) / steps
        phi = mpmath.mpf(0)
        for _ in range(steps):
            k1 = rhs(phi, f)
            k2 = rhs(phi + h / 2, f + h * k1 / 2)
            k3 = rhs(phi + h / 2, f + h * k2 / 2)
            k4 = rhs(phi + h, f + h * k3)
            f = f + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
            phi += h
        return complex(f)


def expected_multiplier(b, prec: int = 128) -> complex:
    """exp(ORIENTATION * 2 pi i b), the table value the oracle measures."""
    b = Fraction(b)
    with mpmath.workprec(prec):
        return complex(mpmath.expjpi(ORIENTATION * 2 * mpmath.mpf(b.numerator) / b.denominator))
