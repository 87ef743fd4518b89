"""Stable JSON encodings for every value the CLI reads or writes.

Rationals are "p/q" strings ("p" when the denominator is 1); Gaussian
rationals are {"re": .., "im": ..}; series carry order_min, a row of
coefficients and a truncation (integer or "inf"); matrices are
row-major.  Every top-level document carries a "format" field.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List

from .betti import FilteredStokesRep, PunctureData, StokesRep
from .connection import CanonicalForm, IrregularType, MeroConnection
from .correspondence import DeRhamLocal
from .field import GaussRat
from .lmatrix import CMat, LaurentMatrix
from .rootdata import Character, ParabolicSpec, Weight
from .series import INF, LaurentSeries
from .stokes import anti_stokes

FORMAT = "meroconn/1"


class FormatError(ValueError):
    pass


# ----------------------------------------------------------------------
# scalars
# ----------------------------------------------------------------------

def enc_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def dec_fraction(s) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, TypeError) as exc:
        raise FormatError(f"bad rational {s!r}") from exc


def enc_gauss(g: GaussRat) -> Dict[str, str]:
    return {"re": enc_fraction(g.re), "im": enc_fraction(g.im)}


def dec_gauss(obj) -> GaussRat:
    if isinstance(obj, str):
        return GaussRat(dec_fraction(obj))
    if isinstance(obj, dict):
        return GaussRat(dec_fraction(obj.get("re", 0)), dec_fraction(obj.get("im", 0)))
    raise FormatError(f"bad Gaussian rational {obj!r}")


# ----------------------------------------------------------------------
# series and matrices
# ----------------------------------------------------------------------

def enc_series(s: LaurentSeries) -> Dict[str, Any]:
    return {
        "order_min": s.order_min,
        "coeffs": [enc_gauss(GaussRat.from_triple(t)) for t in s.coeffs],
        "trunc": "inf" if s.trunc == INF else int(s.trunc),
    }


def dec_series(obj) -> LaurentSeries:
    try:
        trunc = obj.get("trunc", "inf")
        trunc = INF if trunc == "inf" else int(trunc)
        return LaurentSeries(
            int(obj["order_min"]), [dec_gauss(c) for c in obj["coeffs"]], trunc
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad series object: {exc}") from exc


def enc_lmatrix(m: LaurentMatrix) -> Dict[str, Any]:
    return {
        "n": m.n,
        "trunc": "inf" if m.trunc == INF else int(m.trunc),
        "entries": [[enc_series(x) for x in row] for row in m.rows],
    }


def dec_lmatrix(obj) -> LaurentMatrix:
    try:
        trunc = obj.get("trunc", "inf")
        trunc = INF if trunc == "inf" else int(trunc)
        rows = [[dec_series(x) for x in row] for row in obj["entries"]]
        return LaurentMatrix(rows, trunc)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad matrix object: {exc}") from exc


def enc_cmat(m: CMat) -> List[List[Dict[str, str]]]:
    return [[enc_gauss(x) for x in row] for row in m.rows]


def dec_cmat(obj) -> CMat:
    try:
        return CMat([[dec_gauss(x) for x in row] for row in obj])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad constant matrix: {exc}") from exc


def enc_weight(w: Weight) -> List[str]:
    return [enc_fraction(e) for e in w.entries]


def dec_weight(obj, validate: bool = False) -> Weight:
    if not isinstance(obj, list):
        raise FormatError("weight must be a list of rationals")
    return Weight([dec_fraction(e) for e in obj], validate=validate)


def enc_character(c: Character) -> List[int]:
    return list(c.entries)


def dec_character(obj) -> Character:
    return Character([int(e) for e in obj])


# ----------------------------------------------------------------------
# irregular types, connections, canonical forms
# ----------------------------------------------------------------------

def enc_irregular(q: IrregularType) -> Dict[str, Any]:
    return {
        "n": q.n,
        "coeffs": {str(j): [enc_gauss(e) for e in ent] for j, ent in q.coeffs.items()},
    }


def dec_irregular(obj) -> IrregularType:
    try:
        return IrregularType(
            int(obj["n"]),
            {int(j): tuple(dec_gauss(e) for e in ent) for j, ent in obj.get("coeffs", {}).items()},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad irregular type: {exc}") from exc


def enc_connection(c: MeroConnection) -> Dict[str, Any]:
    return {"format": FORMAT, "kind": "connection", "B": enc_lmatrix(c.B)}


def dec_connection(obj) -> MeroConnection:
    if "B" not in obj:
        raise FormatError("connection document needs a 'B' matrix")
    return MeroConnection(dec_lmatrix(obj["B"]))


def enc_canonical(c: CanonicalForm) -> Dict[str, Any]:
    return {
        "polar": {str(j): enc_cmat(m) for j, m in sorted(c.polar.items())},
        "residue": enc_cmat(c.residue),
    }


def enc_parabolic(p: ParabolicSpec) -> List[List[int]]:
    return [list(b) for b in p.blocks]


# ----------------------------------------------------------------------
# representations
# ----------------------------------------------------------------------

def enc_rep(rep: StokesRep) -> Dict[str, Any]:
    return {
        "format": FORMAT,
        "kind": "stokes_rep",
        "genus": rep.genus,
        "handles": [[enc_cmat(a), enc_cmat(b)] for a, b in rep.handles],
        "punctures": [
            {
                "q": enc_irregular(p.diagram.q),
                "C": enc_cmat(p.C),
                "h": enc_cmat(p.h),
                "S": [enc_cmat(s) for s in p.S],
            }
            for p in rep.punctures
        ],
    }


def dec_rep(obj) -> StokesRep:
    try:
        handles = tuple(
            (dec_cmat(a), dec_cmat(b)) for a, b in obj.get("handles", [])
        )
        punctures = []
        for p in obj.get("punctures", []):
            q = dec_irregular(p["q"])
            diagram = anti_stokes(q)
            punctures.append(
                PunctureData(
                    diagram=diagram,
                    C=dec_cmat(p["C"]),
                    h=dec_cmat(p["h"]),
                    S=tuple(dec_cmat(s) for s in p["S"]),
                )
            )
        return StokesRep(int(obj.get("genus", 0)), handles, tuple(punctures))
    except KeyError as exc:
        raise FormatError(f"bad representation document: missing {exc}") from exc


def dec_filtered_rep(rep_obj, weights_obj) -> FilteredStokesRep:
    rep = dec_rep(rep_obj)
    if isinstance(weights_obj, dict):
        weights_obj = weights_obj.get("weights", weights_obj)
    weights = tuple(dec_weight(w) for w in weights_obj)
    return FilteredStokesRep(rep, weights)


# ----------------------------------------------------------------------
# local data
# ----------------------------------------------------------------------

def enc_de_rham(d: DeRhamLocal) -> Dict[str, Any]:
    return {
        "format": FORMAT,
        "kind": "de_rham_local",
        "beta": enc_weight(d.beta),
        "residue": enc_cmat(d.residue),
        "q": enc_irregular(d.q),
    }


def dec_de_rham(obj) -> DeRhamLocal:
    try:
        return DeRhamLocal(
            beta=dec_weight(obj["beta"]),
            residue=dec_cmat(obj["residue"]),
            q=dec_irregular(obj["q"]),
        )
    except KeyError as exc:
        raise FormatError(f"bad local-data document: missing {exc}") from exc
