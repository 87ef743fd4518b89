"""Root data for GL_n with the diagonal maximal torus.

Weights are rational cocharacter vectors; roots are e_i - e_j; a
parabolic containing the torus is an ordered partition of the index set
into blocks (entry (i, j) allowed iff block(i) <= block(j)).  Characters
are integer vectors constant on the blocks.

The group is modeled concretely as GL_n: SL_n is handled by restricting
characters to sum zero, which is also the "trivial on scalars" condition
used by the stability checkers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .lmatrix import CMat, LaurentMatrix, laurent_det, mat_inv
from .series import INF


@dataclass(frozen=True)
class Root:
    """The root e_i - e_j (0-based indices, i != j)."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("a root needs distinct indices")

    def __neg__(self):
        return Root(self.j, self.i)

    def pairing(self, theta: "Weight") -> Fraction:
        """r(theta) = theta_i - theta_j."""
        return theta.entries[self.i] - theta.entries[self.j]


def all_roots(n: int):
    return [Root(i, j) for i in range(n) for j in range(n) if i != j]


class Weight:
    """Rational cocharacter vector (theta_1, ..., theta_n).

    Admissible weights satisfy r(theta) <= 1 for every root; Betti-side
    arithmetic can produce vectors outside that window, so validation is
    opt-out rather than a hard invariant.
    """

    __slots__ = ("entries",)

    def __init__(self, entries, validate: bool = True):
        entries = tuple(Fraction(e) for e in entries)
        object.__setattr__(self, "entries", entries)
        if validate and not self.is_admissible():
            raise ValueError("weight violates r(theta) <= 1 for some root")

    def __setattr__(self, *a):
        raise AttributeError("Weight is immutable")

    @property
    def n(self) -> int:
        return len(self.entries)

    def is_admissible(self) -> bool:
        es = self.entries
        return all(a - b <= 1 for a in es for b in es)

    def is_small(self) -> bool:
        es = self.entries
        return all(
            es[i] - es[j] < 1
            for i in range(len(es))
            for j in range(len(es))
            if i != j
        )

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def scale(self, c) -> "Weight":
        return Weight([e * Fraction(c) for e in self.entries], validate=False)

    def __add__(self, other):
        return Weight(
            [a + b for a, b in zip(self.entries, other.entries)], validate=False
        )

    def __sub__(self, other):
        return Weight(
            [a - b for a, b in zip(self.entries, other.entries)], validate=False
        )

    def __eq__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"Weight({list(map(str, self.entries))})"


@dataclass(frozen=True)
class Character:
    """Integer vector (chi_1, ..., chi_n), constant on Levi blocks when
    attached to a parabolic."""

    entries: Tuple[int, ...]

    def __init__(self, entries):
        object.__setattr__(self, "entries", tuple(int(e) for e in entries))

    @property
    def n(self) -> int:
        return len(self.entries)

    def is_trivial_on_scalars(self) -> bool:
        return sum(self.entries) == 0

    def __add__(self, other):
        return Character([a + b for a, b in zip(self.entries, other.entries)])


class ParabolicSpec:
    """Block-upper parabolic given by an ordered partition of {0..n-1}."""

    __slots__ = ("n", "blocks", "_block_of")

    def __init__(self, blocks: Sequence[Sequence[int]]):
        blocks = tuple(tuple(sorted(b)) for b in blocks)
        idx = [i for b in blocks for i in b]
        n = len(idx)
        if sorted(idx) != list(range(n)):
            raise ValueError("blocks must partition {0..n-1}")
        block_of = [0] * n
        for k, b in enumerate(blocks):
            for i in b:
                block_of[i] = k
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_block_of", tuple(block_of))

    def __setattr__(self, *a):
        raise AttributeError("ParabolicSpec is immutable")

    def block_of(self, i: int) -> int:
        return self._block_of[i]

    def is_proper(self) -> bool:
        return len(self.blocks) >= 2

    def root_subset(self):
        """All roots r with U_r inside the parabolic."""
        return {
            Root(i, j)
            for i in range(self.n)
            for j in range(self.n)
            if i != j and self._block_of[i] <= self._block_of[j]
        }

    def levi_roots(self):
        return {
            Root(i, j)
            for i in range(self.n)
            for j in range(self.n)
            if i != j and self._block_of[i] == self._block_of[j]
        }

    def contains_matrix(self, m: CMat) -> bool:
        """Entry (i, j) must vanish whenever block(i) > block(j)."""
        return all(
            m[i, j].is_zero()
            for i in range(self.n)
            for j in range(self.n)
            if self._block_of[i] > self._block_of[j]
        )

    def character_from_block_values(self, values) -> Character:
        ent = [0] * self.n
        for k, b in enumerate(self.blocks):
            for i in b:
                ent[i] = int(values[k])
        return Character(ent)

    def is_anti_dominant(self, chi: Character) -> bool:
        """chi_i <= chi_j whenever e_i - e_j is a root of the parabolic
        outside the Levi (block(i) < block(j)); requires block constancy."""
        vals = []
        for b in self.blocks:
            v = {chi.entries[i] for i in b}
            if len(v) != 1:
                return False
            vals.append(v.pop())
        return all(vals[k] <= vals[k + 1] for k in range(len(vals) - 1))

    def fundamental_cut_characters(self):
        """Generators of the anti-dominant cone trivial on scalars.

        For each block boundary p, the character that is -(size of the
        tail) on the first p blocks and +(size of the head) on the rest.
        Every anti-dominant character trivial on scalars is a nonnegative
        rational combination of these.
        """
        sizes = [len(b) for b in self.blocks]
        total = sum(sizes)
        out = []
        for p in range(1, len(self.blocks)):
            head = sum(sizes[:p])
            tail = total - head
            values = [-tail] * p + [head] * (len(self.blocks) - p)
            out.append(self.character_from_block_values(values))
        return out

    def conjugate_by_permutation(self, perm) -> "ParabolicSpec":
        """Relabel indices by i -> perm[i]."""
        return ParabolicSpec([[perm[i] for i in b] for b in self.blocks])

    def __eq__(self, other):
        if not isinstance(other, ParabolicSpec):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"ParabolicSpec({[list(b) for b in self.blocks]})"


# ----------------------------------------------------------------------
# operations
# ----------------------------------------------------------------------

def m_r(theta: Weight, r: Root) -> int:
    """ceil(-r(theta)): valuation bound for the root group U_r inside
    the parahoric subgroup."""
    return math.ceil(-r.pairing(theta))


def pairing(theta: Weight, chi: Character) -> Fraction:
    return sum(
        (t * c for t, c in zip(theta.entries, chi.entries)), Fraction(0)
    )


def parahoric_degree(deg_l: int, thetas: Sequence[Weight], chi: Character) -> Fraction:
    """deg L + sum over punctures of <theta_x, chi>."""
    return Fraction(deg_l) + sum((pairing(t, chi) for t in thetas), Fraction(0))


def lie_parahoric_member(a: LaurentMatrix, theta: Weight) -> bool:
    """Entrywise: val(a_ij) + theta_i - theta_j >= 0."""
    for i in range(a.n):
        for j in range(a.n):
            v = a.rows[i][j].val()
            if v == INF:
                continue
            if v + theta.entries[i] - theta.entries[j] < 0:
                return False
    return True


def parahoric_member(g: LaurentMatrix, theta: Weight) -> bool:
    """Group version: g must be invertible in G(K) and z^theta g z^-theta
    bounded as z -> 0 (same entrywise valuation test)."""
    det = laurent_det(g)
    if det.is_zero():
        if g.trunc == INF:
            raise ZeroDivisionError("g is not invertible in G(K)")
        raise ZeroDivisionError(
            "cannot certify invertibility of g at this truncation"
        )
    return lie_parahoric_member(g, theta)


def parabolic_from_weight(theta: Weight) -> ParabolicSpec:
    """Blocks are the level sets of theta, ordered by descending value,
    so the root subset is exactly { r : r(theta) >= 0 }."""
    levels = sorted(set(theta.entries), reverse=True)
    blocks = [
        [i for i, e in enumerate(theta.entries) if e == lv] for lv in levels
    ]
    return ParabolicSpec(blocks)


def enumerate_parabolics_containing_T(n: int):
    """All proper parabolics containing the diagonal torus: one per
    ordered partition of {0..n-1} into at least two blocks."""
    if n > 5:
        raise ValueError("n > 5: parabolic enumeration guard")
    out = []
    for parts in _ordered_set_partitions(list(range(n))):
        if len(parts) >= 2:
            out.append(ParabolicSpec(parts))
    out.sort(key=lambda p: (len(p.blocks), p.blocks))
    return out


def _ordered_set_partitions(items):
    """All ordered set partitions (every unordered partition, every block
    order)."""
    for partition in _set_partitions(items):
        for order in itertools.permutations(partition):
            yield [list(b) for b in order]


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        for k in range(len(partition)):
            yield partition[:k] + [[first] + partition[k]] + partition[k + 1:]
        yield [[first]] + partition
