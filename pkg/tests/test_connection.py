import random
from fractions import Fraction as F

import pytest

from meroconn.connection import (CanonicalForm, IrregularType, MeroConnection,
                                 ReductionError, canonical_reduce,
                                 connection_from_irregular_type,
                                 extract_irregular_type, gauge_act,
                                 gauge_orbit_equal, in_irregular_shape,
                                 recover_irregular_shape)
from meroconn.field import gr
from meroconn.lmatrix import CMat, LaurentMatrix as LM, mat_mul
from meroconn.randomgen import (rand_connection, rand_parahoric_gauge,
                                rand_small_weight)
from meroconn.rootdata import Weight, parahoric_member
from meroconn.series import LaurentSeries as LS

D11 = CMat.diag([1, -1])
E12 = CMat.unit(2, 0, 1)
E21 = CMat.unit(2, 1, 0)


def gl2_example():
    """d + (diag(1,-1) z^-1 + E12) dz/z at truncation 12."""
    b = LM.monomial(D11, -1) + LM.from_const(E12)
    return MeroConnection(b.truncate(12))


# ---------------------------------------------------------------------
# gauge action
# ---------------------------------------------------------------------

def test_gauge_identity():
    conn = gl2_example()
    assert gauge_act(LM.identity(2), conn).agrees(conn)


def test_gauge_torus_monomial_on_zero():
    # g = z^diag(1,0) acting on B = 0 gives B = -diag(1,0)
    g = LM([[LS.monomial(1, 1), LS.zero()], [LS.zero(), LS.const(1)]])
    out = gauge_act(g, MeroConnection(LM.zero(2, trunc=8)))
    assert out.B.agrees(LM.from_const(CMat.diag([-1, 0])))


def test_gauge_exp_first_order_by_hand():
    # exp(E12 z/2) . (diag(1,-1) z^-1 + E12):
    # the bracket removes E12 and the derivative leaves -(z/2) E12
    g = LM.identity(2) + LM.monomial(E12.scale(F(1, 2)), 1)
    out = gauge_act(g, gl2_example())
    want = LM.monomial(D11, -1) - LM.monomial(E12.scale(F(1, 2)), 1)
    assert out.B.agrees(want.truncate(12))


def test_gauge_orbit_equal_examples():
    conn = gl2_example()
    assert gauge_orbit_equal(conn, conn, LM.identity(2))
    g = LM.identity(2) + LM.monomial(E12.scale(F(1, 2)), 1)
    moved = gauge_act(g, conn)
    assert gauge_orbit_equal(conn, moved, g)
    # mismatched pole orders can never be gauge equal
    other = MeroConnection(LM.monomial(D11, -2).truncate(12))
    assert not gauge_orbit_equal(conn, other, LM.identity(2))


def test_gauge_action_composition_law():
    rng = random.Random(41)
    for _ in range(15):
        conn = rand_connection(rng, 2, 2, 8)
        g = rand_parahoric_gauge(rng, Weight([0, 0]), 10)
        h = rand_parahoric_gauge(rng, Weight([0, 0]), 10)
        lhs = gauge_act(g, gauge_act(h, conn))
        rhs = gauge_act(mat_mul(g, h), conn)
        assert lhs.B.agrees(rhs.B)


# ---------------------------------------------------------------------
# canonical reduction
# ---------------------------------------------------------------------

def test_canonical_reduce_worked_example():
    conn = gl2_example()
    canonical, g = canonical_reduce(conn, trunc=12)
    assert canonical.polar == {1: D11}
    assert canonical.residue.is_zero()
    assert g.coeff(1) == E12.scale(F(1, 2))  # leading gauge factor exp(E12 z/2)
    assert gauge_orbit_equal(conn, canonical.as_connection(12), g)
    assert canonical.check_invariants()


def test_canonical_reduce_fixed_point():
    b = LM.monomial(D11, -1) + LM.from_const(CMat.diag([1, 2]))
    conn = MeroConnection(b.truncate(12))
    canonical, g = canonical_reduce(conn)
    assert g.agrees(LM.identity(2))
    assert canonical.residue == CMat.diag([1, 2])


def test_canonical_reduce_regular_forces_diagonal_residue():
    rng = random.Random(42)
    d3 = CMat.diag([1, 2, 3])
    rows = [[LS.from_dict({m: F(rng.randint(-10, 10), rng.randint(1, 10))
                           for m in range(0, 12)}) for _ in range(3)]
            for _ in range(3)]
    b = LM.monomial(d3, -2) + LM(rows, 12)
    canonical, g = canonical_reduce(MeroConnection(b))
    assert canonical.residue.is_diagonal()
    assert gauge_orbit_equal(MeroConnection(b), canonical.as_connection(12), g)


def test_canonical_reduce_idempotent_random():
    rng = random.Random(43)
    for k in range(10):
        n = 2 + k % 2
        theta = Weight([0] * n) if k % 2 else rand_small_weight(rng, n)
        conn = rand_connection(rng, n, 1 + k % 3, 10, theta)
        canonical, g = canonical_reduce(conn, theta, 10)
        assert canonical.check_invariants(theta)
        assert parahoric_member(g, theta)
        again, g2 = canonical_reduce(canonical.as_connection(10), theta, 10)
        assert g2.agrees(LM.identity(n))
        assert again.residue == canonical.residue


def test_reduce_rejects_trivial_polar():
    conn = MeroConnection(LM.from_const(CMat.diag([1, 2])).truncate(8))
    with pytest.raises(ReductionError, match="trivial irregular type"):
        canonical_reduce(conn)


def test_reduce_rejects_non_diagonal_polar():
    b = LM.monomial(CMat([[1, 1], [0, 2]]), -1)
    with pytest.raises(ReductionError, match="irregular-type shape"):
        canonical_reduce(MeroConnection(b.truncate(8)))


def test_reduce_rejects_tail_outside_parahoric():
    theta = Weight([F(1, 2), 0])
    b = LM.monomial(D11, -1) + LM.from_const(E21)  # E21 at z^0 has grade -1/2
    with pytest.raises(ReductionError, match="parahoric"):
        canonical_reduce(MeroConnection(b.truncate(8)), theta)


def test_boundary_weight_pole_in_tail():
    """theta = (1, 0) puts the slot (0,1) at grade zero for z^-1: such a
    term is legal parahoric tail and must be absorbed into the form."""
    theta = Weight([1, 0])
    b = (LM.monomial(CMat.diag([2, 5]), -2)
         + LM.monomial(E12.scale(F(1, 3)), -1)
         + LM.from_const(CMat.diag([1, 7]))
         + LM.monomial(E21, 1))
    conn = MeroConnection(b.truncate(10))
    assert in_irregular_shape(conn, theta)
    canonical, g = canonical_reduce(conn, theta, 10)
    assert canonical.check_invariants(theta)
    assert gauge_orbit_equal(conn, canonical.as_connection(10), g)
    assert canonical.polar == {2: CMat.diag([2, 5])}


def test_gap_in_polar_coefficients():
    """B_{-2} nonzero with B_{-1} = 0 reduces cleanly."""
    rng = random.Random(45)
    b = LM.monomial(CMat.diag([1, 3]), -2) + LM.from_const(CMat([[2, 1], [5, 7]]))
    conn = MeroConnection(b.truncate(10))
    canonical, g = canonical_reduce(conn, trunc=10)
    assert canonical.check_invariants()
    assert 1 not in canonical.polar
    assert gauge_orbit_equal(conn, canonical.as_connection(10), g)
    q = extract_irregular_type(conn)
    assert q.coeffs == {2: (gr(F(-1, 2)), gr(F(-3, 2)))}


def test_complex_polar_coefficients():
    rng = random.Random(46)
    lead = CMat.diag([gr(1, 1), gr(0, -1)])
    b = LM.monomial(lead, -2) + LM.from_const(CMat([[gr(1, 2), gr(3)], [gr(0, 1), gr(2)]]))
    conn = MeroConnection(b.truncate(10))
    canonical, g = canonical_reduce(conn, trunc=10)
    assert canonical.check_invariants()
    assert canonical.residue.is_diagonal()
    assert gauge_orbit_equal(conn, canonical.as_connection(10), g)


def test_resonant_residue_reported():
    # polar diag(1,1) z^-1 (non-regular), residue diag(1,0), tail E12 z:
    # killing the z^1 centralizer term needs (1 + ad(B0)) W = E12 with
    # ad(B0) E12 = E12, i.e. the 1-eigenvalue resonance... here the
    # operator is (1 + (-1)) = 0 on E21; use E21 z to hit it.
    b = (LM.monomial(CMat.diag([1, 1]), -1)
         + LM.from_const(CMat.diag([1, 0]))
         + LM.monomial(E21, 1))
    with pytest.raises(ReductionError, match="resonant"):
        canonical_reduce(MeroConnection(b.truncate(8)))


# ---------------------------------------------------------------------
# irregular types
# ---------------------------------------------------------------------

def test_extract_examples():
    q = extract_irregular_type(gl2_example())
    assert q == IrregularType(2, {1: (gr(-1), gr(1))})
    # logarithmic: trivial, flagged
    log_conn = MeroConnection(LM.from_const(CMat.diag([1, 2])).truncate(8))
    assert extract_irregular_type(log_conn).is_trivial
    # polar diag(2,0) z^-2 -> Q = -diag(1,0) z^-2
    conn = MeroConnection(LM.monomial(CMat.diag([2, 0]), -2).truncate(8))
    assert extract_irregular_type(conn) == IrregularType(2, {2: (gr(-1), gr(0))})


def test_extract_is_parahoric_gauge_invariant():
    rng = random.Random(44)
    for k in range(6):
        n = 2 + k % 2
        theta = Weight([0] * n) if k % 2 == 0 else rand_small_weight(rng, n)
        conn = rand_connection(rng, n, 1 + k % 2, 10, theta)
        g = rand_parahoric_gauge(rng, theta, 12)
        moved = gauge_act(g, conn)
        assert extract_irregular_type(conn, theta, 10) == \
            extract_irregular_type(moved, theta, 10)


def test_recover_irregular_shape_constant_conjugation():
    p = CMat([[1, 1], [1, 2]])
    base = gl2_example()
    moved = gauge_act(LM.from_const(p), base)
    assert not in_irregular_shape(moved, Weight([0, 0]))
    fixed, g = recover_irregular_shape(moved)
    assert in_irregular_shape(fixed, Weight([0, 0]))
    assert gauge_orbit_equal(moved, fixed, g)


def test_irregular_type_round_trip():
    q = IrregularType(2, {2: (gr(1), gr(-1)), 1: (gr(F(1, 2)), gr(0))})
    conn = connection_from_irregular_type(q, CMat.diag([1, 2]), trunc=10)
    assert extract_irregular_type(conn) == q
    assert q.half().coeffs[2] == (gr(F(1, 2)), gr(F(-1, 2)))
    assert q.degree == 2 and not q.is_trivial


def test_canonical_form_invariant_checker():
    good = CanonicalForm(polar={1: D11}, residue=CMat.diag([5, 7]))
    assert good.check_invariants()
    bad = CanonicalForm(polar={1: D11}, residue=E12)
    assert not bad.check_invariants()
