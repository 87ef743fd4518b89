"""Symbolic verification of the local model-metric computations.

All |z|- and log-dependence is reduced to the single formal variable
t = 1/ln|z|^2 with the derivation rule  z-bar d/dz-bar : t -> -t^2,
plus (-ln|z|^2) = -1/t for the log-power conjugations.  The curvature
and pseudo-curvature lemmas then become finite exact algebra over the
Gaussian rationals; double-precision numerics appear only in the
diagnostic weight-jump fit.

Conjugate quantities (s-bar, the dz-bar side operators) are formed
entrywise from the exact data; the conjugate-transpose pairing between
the raising and lowering elements of the triple is structural
(X <-> Y), matching how the operators are displayed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .connection import IrregularType
from .field import GaussRat
from .lmatrix import CMat, LaurentMatrix
from .residues import Sl2Data
from .rootdata import Weight


class MetricError(ValueError):
    pass


class TPoly:
    """Polynomial in t with constant-matrix coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[int, CMat]):
        clean = {}
        for k, m in coeffs.items():
            if k < 0:
                raise MetricError("negative t-powers are outside the model")
            if not m.is_zero():
                clean[int(k)] = m
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __setattr__(self, *a):
        raise AttributeError("TPoly is immutable")

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def of(cls, *terms: Tuple[int, CMat]):
        acc: Dict[int, CMat] = {}
        for k, m in terms:
            acc[k] = acc[k] + m if k in acc else m
        return cls(acc)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree_min(self) -> Optional[int]:
        return min(self.coeffs, default=None)

    def __add__(self, other: "TPoly") -> "TPoly":
        acc = dict(self.coeffs)
        for k, m in other.coeffs.items():
            acc[k] = acc[k] + m if k in acc else m
        return TPoly(acc)

    def __sub__(self, other: "TPoly") -> "TPoly":
        return self + (-other)

    def __neg__(self) -> "TPoly":
        return TPoly({k: -m for k, m in self.coeffs.items()})

    def scale(self, c) -> "TPoly":
        return TPoly({k: m.scale(c) for k, m in self.coeffs.items()})

    def bracket(self, other: "TPoly") -> "TPoly":
        acc: Dict[int, CMat] = {}
        for k1, m1 in self.coeffs.items():
            for k2, m2 in other.coeffs.items():
                b = m1.bracket(m2)
                if not b.is_zero():
                    k = k1 + k2
                    acc[k] = acc[k] + b if k in acc else b
        return TPoly(acc)

    def t_derivative(self) -> "TPoly":
        """z-bar d/dz-bar via the chain rule t -> -t^2:
        M t^k maps to -k M t^(k+1)."""
        return TPoly({k + 1: m.scale(-k) for k, m in self.coeffs.items() if k != 0})

    def conjugate_entries(self) -> "TPoly":
        return TPoly({k: m.conjugate() for k, m in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        if self.is_zero():
            return "TPoly(0)"
        return f"TPoly(t-powers={sorted(self.coeffs)})"


@dataclass(frozen=True)
class MetricData:
    """Input of the local model: weight beta, residue structure
    (s, X, H, Y) and irregular type Q with [s, Y] = 0.

    ``validate=False`` skips the consistency checks; the corrupted-triple
    negative tests rely on it."""

    beta: Weight
    triple: Sl2Data
    q: IrregularType
    validate: bool = True

    def __post_init__(self):
        if not self.validate:
            return
        t = self.triple
        if t.s is None:
            raise MetricError("metric data requires the semisimple part s")
        if not t.check_brackets():
            raise MetricError("sl2 bracket relations fail")
        for other in (t.X, t.H):
            if not t.s.bracket(other).is_zero():
                raise MetricError("triple does not commute with s")
        beta_mat = self._beta_mat()
        for m in (t.s, t.X, t.H, t.Y):
            if not beta_mat.bracket(m).is_zero():
                raise MetricError("data leaves the Levi factor of beta")

    def _beta_mat(self) -> CMat:
        return CMat.diag([GaussRat(b) for b in self.beta.entries])

    @classmethod
    def from_de_rham(cls, d) -> "MetricData":
        return cls(beta=d.beta, triple=d.structure(), q=d.q)


# ----------------------------------------------------------------------
# the identity lemma
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityReport:
    results: Tuple[Tuple[str, bool], ...]

    @property
    def all_pass(self) -> bool:
        return all(ok for _, ok in self.results)

    def failed(self) -> List[str]:
        return [name for name, ok in self.results if not ok]


def sl2_identity_suite(triple: Sl2Data) -> IdentityReport:
    """Exact verification of the log-power and exponential conjugation
    identities used throughout the local computations."""
    X, H, Y = triple.X, triple.H, triple.Y
    p = triple.basis
    p_inv = p.inv()
    d_entries = [(p_inv * H * p)[i, i] for i in range(H.n)]
    if not (p_inv * H * p).is_diagonal():
        raise MetricError("triple basis does not diagonalize H")

    def ad_weight_is(m: CMat, w: int) -> bool:
        """m lies in the ad(H)-eigenspace of weight w (checked in the
        diagonalizing basis), which is exactly what makes the log-power
        conjugation scale it by (-ln|z|^2)^(w/2)."""
        mm = p_inv * m * p
        for i in range(m.n):
            for j in range(m.n):
                if not mm[i, j].is_zero() and d_entries[i] - d_entries[j] != GaussRat(w):
                    return False
        return True

    def dlog_rule(sign: int) -> bool:
        """z-bar d/dz-bar (-ln|z|^2)^(sign*h/2)
        = sign*(h/2) t (-ln|z|^2)^(sign*h/2) per eigenvalue h of H.

        Route A applies the chain rule with z-bar d/dz-bar(-ln|z|^2) = -1
        and rewrites 1/(-ln|z|^2) = -t; route B is the displayed right
        hand side.  Both are (coefficient, L-power, t-power) triples."""
        for h in {e.re for e in d_entries}:
            c = Fraction(sign) * h / 2
            coeff, lpow, tpow = -c, c - 1, 0  # c L^(c-1) * (-1)
            coeff, lpow, tpow = -coeff, lpow + 1, tpow + 1  # L^-1 = -t
            if (coeff, lpow, tpow) != (Fraction(sign) * h / 2, c, 1):
                return False
        return True

    exp_x = X.exp_nilpotent()
    exp_mx = (-X).exp_nilpotent()
    exp_y = Y.exp_nilpotent()
    exp_my = (-Y).exp_nilpotent()

    results = (
        ("d_z log-power rule", dlog_rule(+1) and dlog_rule(-1)),
        ("d_zbar log-power rule", dlog_rule(+1) and dlog_rule(-1)),
        ("log-power conjugation scales X", ad_weight_is(X, 2)),
        ("log-power conjugation scales Y", ad_weight_is(Y, -2)),
        ("e^X H e^-X = H - 2X", exp_x * H * exp_mx == H - X.scale(2)),
        ("e^Y H e^-Y = H + 2Y", exp_y * H * exp_my == H + Y.scale(2)),
        ("e^X Y e^-X = Y + H - X", exp_x * Y * exp_mx == Y + H - X),
        ("e^-X H e^X = H + 2X", exp_mx * H * exp_x == H + X.scale(2)),
        ("e^-Y H e^Y = H - 2Y", exp_my * H * exp_y == H - Y.scale(2)),
        ("e^-X Y e^X = Y - H - X", exp_mx * Y * exp_x == Y - H - X),
    )
    return IdentityReport(results)


# ----------------------------------------------------------------------
# curvature computations
# ----------------------------------------------------------------------

def _sbar(data: MetricData) -> CMat:
    return data.triple.s.conjugate()


def pseudo_curvature(data: MetricData) -> TPoly:
    """-(z-bar d/dz-bar M_reg + [K_reg, M_reg]) with
    K_reg = -(1/2) s-bar - (1/2) H t and M_reg = (1/2)(s - beta) - Y t;
    identically zero for valid data (the Higgs-pair certificate)."""
    t = data.triple
    half = Fraction(1, 2)
    k_reg = TPoly.of((0, _sbar(data).scale(-half)), (1, t.H.scale(-half)))
    m_reg = TPoly.of(
        (0, (t.s - data._beta_mat()).scale(half)), (1, -t.Y)
    )
    return -(m_reg.t_derivative() + k_reg.bracket(m_reg))


def curvature_e0(data: MetricData) -> TPoly:
    """Curvature in the orthonormal frame: conjugate the e-frame value
    2H t^2 + 4X t^3 by g0 = |z|^-beta (-ln)^-H/2 e^X; the identities
    collapse it to 2H t^2."""
    t = data.triple
    beta_mat = data._beta_mat()
    for m in (t.H, t.X):
        if not beta_mat.bracket(m).is_zero():
            raise MetricError("|z|^beta conjugation is nontrivial: data leaves the Levi")
    f_e = TPoly.of((2, t.H.scale(2)), (3, t.X.scale(4)))
    conj = _conj_log_power(f_e, t, +1)  # (-ln)^{H/2} . (-ln)^{-H/2}
    out = _conj_exp(conj, -t.X)  # e^{-X} . e^{X}
    return out


def chern_coefficient(data: MetricData) -> TPoly:
    """dz/z coefficient of the Chern connection in the e-frame:
    beta - Y + 2H t + 2X t^2."""
    t = data.triple
    return TPoly.of(
        (0, data._beta_mat() - t.Y), (1, t.H.scale(2)), (2, t.X.scale(2))
    )


def chern_curvature_from_coefficient(data: MetricData) -> TPoly:
    """-(z-bar d/dz-bar) of the Chern coefficient: the e-frame curvature
    2H t^2 + 4X t^3 (cross-check for curvature_e0's starting point)."""
    return -chern_coefficient(data).t_derivative()


@dataclass(frozen=True)
class HiggsOperators:
    """dz/z (resp. dz-bar/z-bar) coefficients of the extracted operators.

    The irregular parts (the (1/2) z Q'(z) term of phi and its conjugate
    in the del-bar operator) are carried as exact Laurent tags next to
    the regular TPoly parts."""

    del_bar: TPoly
    phi: TPoly
    phi_star: TPoly
    residue: CMat
    phi_q_tag: LaurentMatrix
    del_bar_q_tag: LaurentMatrix


def higgs_extraction(data: MetricData) -> HiggsOperators:
    """The operators of the induced Higgs pair in the orthonormal frame,
    plus the final holomorphic-frame residue
    (1/2)(s - beta) + (Y - H + X)."""
    t = data.triple
    half = Fraction(1, 2)
    del_bar = TPoly.of((0, _sbar(data).scale(-half)), (1, t.H.scale(-half)))
    phi = TPoly.of((0, (t.s - data._beta_mat()).scale(half)), (1, -t.Y))
    phi_star = TPoly.of(
        (0, (_sbar(data) - data._beta_mat()).scale(half)), (1, -t.X)
    )
    residue = (t.s - data._beta_mat()).scale(half) + t.Y - t.H + t.X
    q_half = data.q.half()
    phi_tag = q_half.polar_connection_part()
    del_tag = -LaurentMatrix(
        [
            [_series_conj(phi_tag.rows[i][j]) for j in range(phi_tag.n)]
            for i in range(phi_tag.n)
        ]
    )
    return HiggsOperators(
        del_bar=del_bar,
        phi=phi,
        phi_star=phi_star,
        residue=residue,
        phi_q_tag=phi_tag,
        del_bar_q_tag=del_tag,
    )


def _series_conj(s):
    from .series import LaurentSeries

    return LaurentSeries(
        s.order_min,
        [GaussRat.from_triple((a, -b, d)) for (a, b, d) in s.coeffs],
        s.trunc,
    )


# ----------------------------------------------------------------------
# symbolic conjugation helpers
# ----------------------------------------------------------------------

def _conj_log_power(poly: TPoly, triple: Sl2Data, sign: int) -> TPoly:
    """Ad((-ln|z|^2)^(sign*H/2)) on each coefficient: the ad(H)-weight-w
    component picks (-ln)^(sign*w/2) = (-1/t)^(sign*w/2)."""
    p = triple.basis
    p_inv = p.inv()
    d_entries = [(p_inv * triple.H * p)[i, i] for i in range(triple.H.n)]
    acc: Dict[int, CMat] = {}
    n = triple.H.n
    for k, m in poly.coeffs.items():
        mm = p_inv * m * p
        for i in range(n):
            for j in range(n):
                c = mm[i, j]
                if c.is_zero():
                    continue
                w = d_entries[i] - d_entries[j]
                if w.im != 0 or (sign * w.re) % 2 != 0:
                    raise MetricError(
                        "log-power conjugation needs even integer ad(H)-weights"
                    )
                shift = int(sign * w.re) // 2
                newk = k - shift
                if newk < 0:
                    raise MetricError("conjugation left the polynomial model")
                piece = p * CMat.unit(n, i, j, c) * p_inv
                if shift % 2 != 0:
                    piece = -piece
                acc[newk] = acc[newk] + piece if newk in acc else piece
    return TPoly(acc)


def _conj_exp(poly: TPoly, nilp: CMat) -> TPoly:
    """Ad(exp(nilp)) applied to every coefficient."""
    e = nilp.exp_nilpotent()
    e_inv = (-nilp).exp_nilpotent()
    return TPoly({k: e * m * e_inv for k, m in poly.coeffs.items()})


# ----------------------------------------------------------------------
# numeric weight-jump diagnostic
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class WeightJumpReport:
    de_rham_exponents: Tuple[float, ...]
    de_rham_targets: Tuple[float, ...]
    dolbeault_exponents: Tuple[float, ...]
    dolbeault_targets: Tuple[float, ...]
    tolerance: float

    @property
    def de_rham_pass(self) -> bool:
        return _within(self.de_rham_exponents, self.de_rham_targets, self.tolerance)

    @property
    def dolbeault_pass(self) -> bool:
        return _within(self.dolbeault_exponents, self.dolbeault_targets, self.tolerance)

    @property
    def all_pass(self) -> bool:
        return self.de_rham_pass and self.dolbeault_pass


def _within(got, want, tol) -> bool:
    return all(abs(g - w) <= tol * max(1.0, abs(w)) for g, w in zip(got, want))


def weight_jump_check(data: MetricData, tolerance: float = 0.02) -> WeightJumpReport:
    """Fit the |z|-power of the metric's diagonal entries at radii
    10^-3 .. 10^-8 and compare with 2*beta (connection frame) and
    s + s-bar (holomorphic Higgs frame).

    The fit model is ln h = a ln r + c ln(-ln r^2) + b, i.e. power law
    with the documented log correction; diagnostics only, double
    precision."""
    import numpy as np

    t = data.triple
    n = t.H.n
    h_num = _to_complex(t.H)
    x_num = _to_complex(t.X)
    y_num = _to_complex(t.Y)
    s_num = _to_complex(t.s)
    beta = [float(b) for b in data.beta.entries]
    s_re = [float(t.s[i, i].re) for i in range(n)]

    radii = [10.0 ** (-e) for e in range(3, 9)]
    rows_dr = []
    rows_dol = []
    import scipy.linalg

    exp_my = scipy.linalg.expm(-y_num)
    exp_mx = scipy.linalg.expm(-x_num)
    exp_y = scipy.linalg.expm(y_num)
    exp_x = scipy.linalg.expm(x_num)
    for r in radii:
        big_l = -np.log(r * r)
        logpow_half = scipy.linalg.expm(h_num * (np.log(big_l) / 2))
        logpow_one = scipy.linalg.expm(h_num * np.log(big_l))
        zb = np.diag([r ** (2 * b) for b in beta])
        h0 = zb @ logpow_half @ exp_my @ exp_mx @ logpow_half
        zs = np.diag([r ** (2 * sr) for sr in s_re])
        h2 = zs @ exp_y @ logpow_one @ exp_x
        rows_dr.append([abs(h0[i, i]) for i in range(n)])
        rows_dol.append([abs(h2[i, i]) for i in range(n)])

    def fit(rows):
        a_out = []
        design = np.array(
            [[np.log(r), np.log(-np.log(r * r)), 1.0] for r in radii]
        )
        for i in range(n):
            yv = np.array([np.log(rows[k][i]) for k in range(len(radii))])
            sol, *_ = np.linalg.lstsq(design, yv, rcond=None)
            a_out.append(float(sol[0]))
        return tuple(a_out)

    return WeightJumpReport(
        de_rham_exponents=fit(rows_dr),
        de_rham_targets=tuple(2 * b for b in beta),
        dolbeault_exponents=fit(rows_dol),
        dolbeault_targets=tuple(2 * sr for sr in s_re),
        tolerance=tolerance,
    )


def _to_complex(m: CMat):
    import numpy as np

    return np.array(
        [[complex(m[i, j]) for j in range(m.n)] for i in range(m.n)], dtype=complex
    )
