"""Anti-Stokes directions, Stokes groups, half-periods, dimension counts.

Convention: q_r(z) = r(Q(z)) literally (differences of the diagonal
entries of the irregular type), not r(dQ); the connection-side dQ
convention lives in the connection module and the CLI translates.

A root r with most singular term c/z^k supports the directions
phi = (arg(c) - pi + 2*pi*m)/k, m = 0..k-1 (where c/z^k is real and
negative, i.e. exp(q_r) has maximal decay).  Directions arising from
different roots are merged by exact angle comparison.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .angles import AngleExpr, arg_angle, cos_sign
from .connection import IrregularType
from .field import GaussRat
from .lmatrix import CMat
from .rootdata import ParabolicSpec, Root


class StokesError(ValueError):
    pass


@dataclass(frozen=True)
class AntiStokesDirection:
    """A merged anti-Stokes direction with its supporting roots.

    ``support`` maps each supporting root to (k_r, c_r): the order and
    coefficient of the most singular term of q_r."""

    angle: AngleExpr
    support: Tuple[Tuple[Root, int, GaussRat], ...]

    def roots(self) -> List[Root]:
        return [r for r, _, _ in self.support]


@dataclass(frozen=True)
class HalfPeriodData:
    p_plus: ParabolicSpec
    p_minus: ParabolicSpec
    u_plus: frozenset
    u_minus: frozenset
    delta: AngleExpr
    base_index: int


class StokesDiagram:
    """Cyclically ordered anti-Stokes directions of an irregular type."""

    def __init__(self, q: IrregularType, directions: List[AntiStokesDirection],
                 k: int, uniform_k: bool):
        self.q = q
        self.directions = list(directions)
        self.k = k
        self.uniform_k = uniform_k

    @property
    def num_directions(self) -> int:
        return len(self.directions)

    @property
    def l(self) -> Optional[int]:
        """#A / 2k when the symmetry applies (uniform leading order and
        integral quotient); None otherwise."""
        if not self.uniform_k or self.k == 0:
            return None
        num = len(self.directions)
        if num % (2 * self.k) != 0:
            return None
        return num // (2 * self.k)

    def angles(self) -> List[AngleExpr]:
        return [d.angle for d in self.directions]

    def levi_blocks(self) -> List[List[int]]:
        """Level sets of the irregular type's diagonal entries (the
        block structure of the stabilizer H = Z_G(Q))."""
        n = self.q.n
        keys = []
        for i in range(n):
            entry = tuple(sorted(self.q.entry(i).items(), key=lambda t: t[0]))
            keys.append(tuple((e, c.t) for e, c in entry))
        blocks: Dict[tuple, List[int]] = {}
        for i, key in enumerate(keys):
            blocks.setdefault(key, []).append(i)
        return [blocks[k] for k in sorted(blocks, key=lambda k: blocks[k][0])]

    def __repr__(self):
        return (f"StokesDiagram(n={self.q.n}, #A={self.num_directions}, "
                f"k={self.k}, l={self.l})")


# ----------------------------------------------------------------------
# construction
# ----------------------------------------------------------------------

def anti_stokes(q: IrregularType) -> StokesDiagram:
    """Enumerate the anti-Stokes directions of q with exact angles."""
    n = q.n
    per_root = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            series = q.root_series(i, j)
            if not series:
                continue
            lead_exp = min(series)
            k_r = -lead_exp
            c_r = series[lead_exp]
            per_root.append((Root(i, j), k_r, c_r))
    if not per_root:
        raise StokesError(
            "trivial irregular type for the adjoint action "
            "(all q_r vanish; no anti-Stokes directions)"
        )
    raw: List[Tuple[AngleExpr, Root, int, GaussRat]] = []
    for r, k_r, c_r in per_root:
        base = arg_angle(c_r)
        for m in range(k_r):
            phi = (base + AngleExpr.of_pi(2 * m - 1)).scale(Fraction(1, k_r)).principal()
            raw.append((phi, r, k_r, c_r))
    merged: List[Tuple[AngleExpr, list]] = []
    for phi, r, k_r, c_r in raw:
        for angle, sup in merged:
            if angle.compare(phi) == 0:
                sup.append((r, k_r, c_r))
                break
        else:
            merged.append((phi, [(r, k_r, c_r)]))
    merged.sort(key=functools.cmp_to_key(lambda a, b: a[0].compare(b[0])))
    directions = [
        AntiStokesDirection(angle, tuple(sorted(sup, key=lambda t: (t[0].i, t[0].j))))
        for angle, sup in merged
    ]
    orders = {k_r for _, k_r, _ in per_root}
    return StokesDiagram(q, directions, max(orders), len(orders) == 1)


def stokes_group_basis(diag: StokesDiagram, d: int) -> List[Root]:
    """The set R(d) of roots supporting direction d; the Stokes group
    Sto_d consists of the unipotent matrices supported exactly there."""
    return diag.directions[d].roots()


def rotate_angle_set_invariant(diag: StokesDiagram) -> bool:
    """Exact check that the direction set is invariant under rotation by
    pi/k (valid for a uniform leading order)."""
    if not diag.uniform_k:
        return False
    step = Fraction(1, diag.k)
    angles = diag.angles()
    for a in angles:
        shifted = a.shift_pi(step).principal()
        if not any(shifted.compare(b) == 0 for b in angles):
            return False
    return True


# ----------------------------------------------------------------------
# half-periods
# ----------------------------------------------------------------------

def half_periods(diag: StokesDiagram, d1: int = 0) -> HalfPeriodData:
    """Parabolic pair (P_+, P_-) attached to the half-period starting at
    direction index d1.

    A generic test direction delta is taken inside the gap after the
    half-period; R_+ collects the roots whose exp(q_r) decays along
    delta (certified nonzero real part), and P_+ is generated by R_+
    together with the Levi roots of the stabilizer of Q.
    """
    l = diag.l
    if l is None:
        raise StokesError(
            "half-period structure undefined for mixed leading orders"
        )
    num = diag.num_directions
    last = diag.directions[(d1 + l - 1) % num].angle
    nxt = diag.directions[(d1 + l) % num].angle
    gap = (nxt - last).principal()
    if gap.is_zero():
        gap = AngleExpr.of_pi(2)

    roots_data = _root_leading_data(diag.q)
    delta = None
    for attempt in range(16):
        cand = (last + gap.scale(Fraction(1, 2 + attempt))).principal()
        if all(
            cos_sign(arg_angle(c_r) - cand.scale(k_r)) != 0
            for _, k_r, c_r in roots_data
        ):
            delta = cand
            break
    if delta is None:
        raise StokesError("could not certify a generic test direction")

    r_plus = set()
    r_minus = set()
    for r, k_r, c_r in roots_data:
        sign = cos_sign(arg_angle(c_r) - delta.scale(k_r))
        if sign < 0:
            r_plus.add(r)
        else:
            r_minus.add(r)
    blocks = diag.levi_blocks()
    order = _order_blocks(blocks, r_plus)
    p_plus = ParabolicSpec(order)
    p_minus = ParabolicSpec(list(reversed(order)))
    return HalfPeriodData(
        p_plus=p_plus,
        p_minus=p_minus,
        u_plus=frozenset(r_plus),
        u_minus=frozenset(r_minus),
        delta=delta,
        base_index=d1,
    )


def _root_leading_data(q: IrregularType):
    out = []
    for i in range(q.n):
        for j in range(q.n):
            if i == j:
                continue
            series = q.root_series(i, j)
            if not series:
                continue
            lead = min(series)
            out.append((Root(i, j), -lead, series[lead]))
    return out


def _order_blocks(blocks: List[List[int]], r_plus) -> List[List[int]]:
    """Sort Levi blocks so that roots from earlier to later blocks lie
    in R_+ (well defined: q_r is constant across a block pair and the
    decay relation is a total order by closure under addition)."""
    plus_pairs = {(r.i, r.j) for r in r_plus}

    def cmp(a: List[int], b: List[int]) -> int:
        if (a[0], b[0]) in plus_pairs:
            return -1
        if (b[0], a[0]) in plus_pairs:
            return 1
        raise StokesError("block ordering undefined: missing decay relation")

    return sorted(blocks, key=functools.cmp_to_key(cmp))


# ----------------------------------------------------------------------
# dimension bookkeeping and groupoid presentation
# ----------------------------------------------------------------------

def stokes_dim_check(diag: StokesDiagram, half: Optional[HalfPeriodData] = None
                     ) -> Tuple[int, int]:
    """lhs = dim prod_d Sto_d = sum #R(d);
    rhs = k * (#U_+ + #U_-) from the (U_+ x U_-)^k product structure."""
    if half is None:
        half = half_periods(diag)
    lhs = sum(len(d.support) for d in diag.directions)
    rhs = diag.k * (len(half.u_plus) + len(half.u_minus))
    return lhs, rhs


@dataclass(frozen=True)
class GroupoidPresentation:
    """Generator bookkeeping for the fundamental groupoid of the
    irregular curve: handles, one boundary loop and one Stokes loop per
    anti-Stokes direction at each puncture, plus connecting paths."""

    genus: int
    handle_generators: Tuple[str, ...]
    puncture_loops: Tuple[str, ...]
    stokes_loops: Tuple[Tuple[str, ...], ...]
    connecting_paths: Tuple[str, ...]
    relation_word: Tuple[str, ...]

    @property
    def relation_length(self) -> int:
        return len(self.relation_word)


def groupoid_presentation(genus: int, diagrams: List[StokesDiagram]
                          ) -> GroupoidPresentation:
    """Presentation data used by the Betti side to size representation
    tuples.  The defining relation word counts, per puncture, the
    boundary loop and the formal monodromy plus its Stokes loops."""
    handles = tuple(
        name for i in range(1, genus + 1) for name in (f"a{i}", f"b{i}")
    )
    loops = tuple(f"gamma_{x}" for x in range(1, len(diagrams) + 1))
    stokes = tuple(
        tuple(f"s_{x+1},{j+1}" for j in range(d.num_directions))
        for x, d in enumerate(diagrams)
    )
    connectors = tuple(f"c_{x}" for x in range(2, len(diagrams) + 1))
    word: List[str] = []
    for i in range(1, genus + 1):
        word += [f"a{i}", f"b{i}", f"a{i}^-1", f"b{i}^-1"]
    for x, d in enumerate(diagrams, start=1):
        word.append(f"gamma_{x}^-1")
        word.append(f"h_{x}")
        word += [f"s_{x},{j}" for j in range(d.num_directions, 0, -1)]
    return GroupoidPresentation(
        genus=genus,
        handle_generators=handles,
        puncture_loops=loops,
        stokes_loops=stokes,
        connecting_paths=connectors,
        relation_word=tuple(word),
    )


# ----------------------------------------------------------------------
# Stokes factors
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class StokesFactor:
    """A unipotent matrix supported exactly on the roots R(d)."""

    direction: int
    matrix: CMat

    def validate(self, diag: StokesDiagram) -> bool:
        allowed = {(r.i, r.j) for r in stokes_group_basis(diag, self.direction)}
        m = self.matrix
        for i in range(m.n):
            for j in range(m.n):
                if i == j:
                    if m[i, j] != GaussRat(1):
                        return False
                elif (i, j) not in allowed and not m[i, j].is_zero():
                    return False
        return True


def stokes_factor_matrix(diag: StokesDiagram, d: int, entries) -> CMat:
    """Build a Stokes factor from {root: coefficient} for direction d."""
    n = diag.q.n
    rows = [[GaussRat(1) if i == j else GaussRat(0) for j in range(n)] for i in range(n)]
    allowed = {(r.i, r.j) for r in stokes_group_basis(diag, d)}
    for root, c in entries.items():
        if (root.i, root.j) not in allowed:
            raise StokesError(f"root {root} does not support direction {d}")
        rows[root.i][root.j] = c if isinstance(c, GaussRat) else GaussRat(c)
    return CMat(rows)
