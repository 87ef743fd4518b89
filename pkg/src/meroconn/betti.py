"""Stokes representations: the defining relation, the group action,
filtered structure, degree and R-stability.

A representation is the tuple (A_i, B_i; C_x, h_x, S_{x,j}) subject to

    prod_i [A_i, B_i] * prod_x (C_x^-1 h_x S_{x,#A} ... S_{x,1} C_x) = Id.

Membership of h_x in the stabilizer of Q_x is enforced structurally
(block-diagonal for the level sets of Q_x); Stokes factors must be
supported on the roots of their direction.

Stability quantifies over all invariant (torus-containing) proper
parabolics compatible with the tuple and, per parabolic, over the
finite fundamental-cut generators of the anti-dominant character cone
trivial on the center; degree is linear in the character, so positivity
on the generators decides the cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .field import GaussRat
from .lmatrix import CMat
from .rootdata import (Character, ParabolicSpec, Weight,
                       enumerate_parabolics_containing_T,
                       parabolic_from_weight, pairing)
from .stokes import StokesDiagram


class BettiError(ValueError):
    pass


@dataclass(frozen=True)
class PunctureData:
    """Local tuple at one puncture: conjugator, formal monodromy, Stokes
    factors aligned with the diagram's direction order."""

    diagram: StokesDiagram
    C: CMat
    h: CMat
    S: Tuple[CMat, ...]

    def __post_init__(self):
        self.validate()

    def validate(self):
        n = self.diagram.q.n
        for m in (self.C, self.h, *self.S):
            if m.n != n:
                raise BettiError("dimension mismatch among factors")
        if len(self.S) != self.diagram.num_directions:
            raise BettiError("one Stokes factor required per anti-Stokes direction")
        blocks = self.diagram.levi_blocks()
        block_of = {}
        for b, idxs in enumerate(blocks):
            for i in idxs:
                block_of[i] = b
        for i in range(n):
            for j in range(n):
                if block_of[i] != block_of[j] and not self.h[i, j].is_zero():
                    raise BettiError(
                        "formal monodromy leaves the stabilizer of the irregular type"
                    )
        for d, s in enumerate(self.S):
            allowed = {(r.i, r.j) for r in self.diagram.directions[d].roots()}
            for i in range(n):
                for j in range(n):
                    if i == j:
                        if s[i, j] != GaussRat(1):
                            raise BettiError(f"Stokes factor {d} not unipotent")
                    elif (i, j) not in allowed and not s[i, j].is_zero():
                        raise BettiError(
                            f"Stokes factor {d} supported outside its root set"
                        )

    def local_word(self) -> CMat:
        """C^-1 h S_#A ... S_1 C."""
        acc = self.h
        for s in reversed(self.S):
            acc = acc * s
        return self.C.inv() * acc * self.C


@dataclass(frozen=True)
class StokesRep:
    """A point of the representation variety for a genus-g surface with
    punctures carrying irregular types."""

    genus: int
    handles: Tuple[Tuple[CMat, CMat], ...]
    punctures: Tuple[PunctureData, ...]

    def __post_init__(self):
        if len(self.handles) != self.genus:
            raise BettiError("need one (A, B) pair per handle")

    @property
    def n(self) -> int:
        if self.punctures:
            return self.punctures[0].diagram.q.n
        return self.handles[0][0].n

    def generators(self) -> List[CMat]:
        gens: List[CMat] = []
        for a, b in self.handles:
            gens += [a, b]
        for p in self.punctures:
            gens.append(p.C)
            gens.append(p.h)
            gens.extend(p.S)
        return gens


def check_relation(rep: StokesRep) -> bool:
    """Evaluate the defining product exactly and compare with Id."""
    n = rep.n
    acc = CMat.identity(n)
    for a, b in rep.handles:
        acc = acc * (a * b * a.inv() * b.inv())
    for p in rep.punctures:
        acc = acc * p.local_word()
    return acc == CMat.identity(n)


def group_act(g: CMat, ks: Sequence[CMat], rep: StokesRep) -> StokesRep:
    """(g, k_x) action: handles by conjugation, and per puncture
    (C, h, S_j) -> (k C g^-1, k h k^-1, k S_j k^-1).  Each k_x must lie
    in the stabilizer of its irregular type."""
    if len(ks) != len(rep.punctures):
        raise BettiError("need one stabilizer element per puncture")
    g_inv = g.inv()
    new_handles = tuple((g * a * g_inv, g * b * g_inv) for a, b in rep.handles)
    new_punctures = []
    for p, k in zip(rep.punctures, ks):
        _require_in_stabilizer(k, p.diagram)
        k_inv = k.inv()
        new_punctures.append(
            PunctureData(
                diagram=p.diagram,
                C=k * p.C * g_inv,
                h=k * p.h * k_inv,
                S=tuple(k * s * k_inv for s in p.S),
            )
        )
    return StokesRep(rep.genus, new_handles, tuple(new_punctures))


def _require_in_stabilizer(k: CMat, diagram: StokesDiagram):
    blocks = diagram.levi_blocks()
    block_of = {}
    for b, idxs in enumerate(blocks):
        for i in idxs:
            block_of[i] = b
    for i in range(k.n):
        for j in range(k.n):
            if block_of[i] != block_of[j] and not k[i, j].is_zero():
                raise BettiError("k_x outside the stabilizer H_x")


# ----------------------------------------------------------------------
# filtered structure, degree, stability
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FilteredStokesRep:
    """A Stokes representation with one Betti weight per puncture; the
    formal monodromies must respect the weight parabolics."""

    rep: StokesRep
    weights: Tuple[Weight, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.rep.punctures):
            raise BettiError("need one weight per puncture")
        for p, w in zip(self.rep.punctures, self.weights):
            if not parabolic_from_weight(w).contains_matrix(p.h):
                raise BettiError(
                    "formal monodromy leaves the parabolic of its weight"
                )


@dataclass(frozen=True)
class StabilityVerdict:
    status: str  # "stable" | "semistable" | "unstable"
    witnesses: Tuple[Tuple[ParabolicSpec, Character, Fraction], ...]


def is_compatible(f: FilteredStokesRep, p: ParabolicSpec) -> bool:
    """All generator matrices lie in P (then every path image does)."""
    return all(p.contains_matrix(m) for m in f.rep.generators())


def degree_loc(f: FilteredStokesRep, p: ParabolicSpec, chi: Character) -> Fraction:
    """sum_x <gamma_x, chi> for a compatible parabolic and a character
    constant on its blocks."""
    if not is_compatible(f, p):
        raise BettiError("parabolic is not compatible with the representation")
    for b in p.blocks:
        if len({chi.entries[i] for i in b}) != 1:
            raise BettiError("character is not constant on the Levi blocks")
    return sum((pairing(w, chi) for w in f.weights), Fraction(0))


def degree_zero(f: FilteredStokesRep) -> bool:
    """Degree against every character of the full group vanishes; the
    determinant generates them, so this is total weight sum zero."""
    return sum(
        (e for w in f.weights for e in w.entries), Fraction(0)
    ) == 0


def check_stability(f: FilteredStokesRep, center: str = "G") -> StabilityVerdict:
    """R-stability over invariant compatible proper parabolics.

    ``center`` selects the triviality constraint on characters; for the
    matrix model both the center of G and the center of any proper
    parabolic are the scalars, so the two cones coincide and the flag is
    kept for interface clarity only.
    """
    if center not in ("G", "P"):
        raise ValueError("center must be 'G' or 'P'")
    n = f.rep.n
    if n > 5:
        raise BettiError("stability guard: dimension > 5")
    neg = []
    zero = []
    for p in enumerate_parabolics_containing_T(n):
        if not is_compatible(f, p):
            continue
        for chi in p.fundamental_cut_characters():
            d = degree_loc(f, p, chi)
            if d < 0:
                neg.append((p, chi, d))
            elif d == 0:
                zero.append((p, chi, d))
    if neg:
        return StabilityVerdict("unstable", tuple(neg))
    if zero:
        return StabilityVerdict("semistable", tuple(zero))
    return StabilityVerdict("stable", ())


def irreducible(rep: StokesRep) -> bool:
    """No invariant proper parabolic is compatible: direct enumeration,
    used as the oracle for the trivial-weight stability statement."""
    n = rep.n
    gens = rep.generators()
    return not any(
        all(p.contains_matrix(m) for m in gens)
        for p in enumerate_parabolics_containing_T(n)
    )
