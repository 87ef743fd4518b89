import random
from fractions import Fraction as F

import mpmath
import pytest

from meroconn.connection import IrregularType
from meroconn.correspondence import (CorrespondenceError, DeRhamLocal,
                                     PiMatrixPoly, RootOfUnity, dR_to_Betti,
                                     dR_to_Dol, expected_multiplier,
                                     rank1_monodromy_oracle,
                                     roundtrip_weight_check)
from meroconn.field import gr
from meroconn.lmatrix import CMat
from meroconn.randomgen import rand_de_rham_local
from meroconn.rootdata import Weight

Q_TRIV = IrregularType(2, {})


# ---------------------------------------------------------------------
# de Rham -> Dolbeault
# ---------------------------------------------------------------------

def test_dol_semisimple_example():
    q = IrregularType(2, {2: (gr(1), gr(-1))})
    d = DeRhamLocal(Weight([0, 0]), CMat.diag([gr(F(1, 2)), gr(0)]), q)
    dol = dR_to_Dol(d)
    assert dol.alpha.entries == (F(1, 2), F(0))
    assert dol.residue == CMat.diag([F(1, 4), 0])
    assert dol.q == q.half()


def test_dol_zero_case():
    d = DeRhamLocal(Weight([0, 0]), CMat.zero(2), Q_TRIV)
    dol = dR_to_Dol(d)
    assert dol.alpha.entries == (F(0), F(0))
    assert dol.residue.is_zero()


def test_dol_nilpotent_example():
    # residue E21: the table gives E21 - diag(1,-1) + E12
    d = DeRhamLocal(Weight([0, 0]), CMat.unit(2, 1, 0), Q_TRIV)
    dol = dR_to_Dol(d)
    want = CMat.unit(2, 1, 0) - CMat.diag([1, -1]) + CMat.unit(2, 0, 1)
    assert dol.residue == want


def test_de_rham_invariants_enforced():
    with pytest.raises(CorrespondenceError, match="Levi"):
        DeRhamLocal(Weight([F(1, 2), 0]), CMat.unit(2, 1, 0), Q_TRIV)
    q = IrregularType(2, {1: (gr(1), gr(0))})
    with pytest.raises(CorrespondenceError, match="commute"):
        DeRhamLocal(Weight([0, 0]), CMat.unit(2, 1, 0), q)


# ---------------------------------------------------------------------
# de Rham -> Betti
# ---------------------------------------------------------------------

def test_betti_rational_semisimple_example():
    d = DeRhamLocal(Weight([0, 0]), CMat.diag([gr(F(1, 2)), gr(0)]), Q_TRIV)
    bet = dR_to_Betti(d)
    assert bet.gamma.entries == (F(-1, 2), F(0))
    assert bet.semisimple_factor == (RootOfUnity(1, 2), RootOfUnity(0, 1))
    num = bet.monodromy_numeric()
    assert abs(num[0][0] + 1) < 1e-14 and abs(num[1][1] - 1) < 1e-14


def test_betti_trivial_residue():
    beta = Weight([F(1, 4), F(1, 4)])
    d = DeRhamLocal(beta, CMat.zero(2), Q_TRIV)
    bet = dR_to_Betti(d)
    assert bet.gamma.entries == beta.entries
    assert bet.nilpotent_factor == PiMatrixPoly({0: CMat.identity(2)})


def test_betti_nilpotent_symbolic_pi():
    d = DeRhamLocal(Weight([0, 0]), CMat.unit(2, 1, 0), Q_TRIV)
    bet = dR_to_Betti(d)
    assert bet.gamma.entries == (F(0), F(0))
    # I - 2 pi i E21: the pi^1 coefficient is -2i E21
    assert bet.nilpotent_factor.coeffs[1] == CMat.unit(2, 1, 0).scale(gr(0, -2))
    assert 2 not in bet.nilpotent_factor.coeffs


def test_roundtrip_weight_identity():
    rng = random.Random(61)
    for _ in range(50):
        d = rand_de_rham_local(rng, rng.randint(2, 4))
        assert roundtrip_weight_check(d)


def test_monodromy_factorization_against_expm():
    rng = random.Random(62)
    for _ in range(10):
        d = rand_de_rham_local(rng, rng.randint(2, 3))
        st = d.structure()
        bet = dR_to_Betti(d)
        n = st.s.n
        with mpmath.workprec(120):
            residue = st.s + st.Y
            full = mpmath.matrix([
                [mpmath.mpc(mpmath.mpf(residue[i, j].re.numerator) / residue[i, j].re.denominator,
                            mpmath.mpf(residue[i, j].im.numerator) / residue[i, j].im.denominator)
                 for j in range(n)] for i in range(n)
            ])
            want = mpmath.expm(-2j * mpmath.pi * full)
            got = bet.monodromy_mp(120)
            err = max(abs(complex(want[i, j]) - complex(got[i][j]))
                      for i in range(n) for j in range(n))
        assert err < 1e-10


# ---------------------------------------------------------------------
# rank-1 oracle
# ---------------------------------------------------------------------

def test_oracle_trivial():
    assert abs(rank1_monodromy_oracle(F(0), steps=256, prec=64) - 1) < 1e-10


def test_oracle_half():
    got = rank1_monodromy_oracle(F(1, 2), steps=2048, prec=64)
    assert abs(got - (-1)) < 1e-8


def test_oracle_third_with_essential_factor():
    q = IrregularType(1, {1: (gr(-1),)})
    got = rank1_monodromy_oracle(F(1, 3), q, steps=4096, prec=64)
    assert abs(got - expected_multiplier(F(1, 3))) < 1e-8


def test_oracle_orientation_consistent():
    # one global orientation sign works for positive and negative b
    for b in (F(1, 4), F(-1, 4), F(2, 3)):
        got = rank1_monodromy_oracle(b, steps=2048, prec=64)
        assert abs(got - expected_multiplier(b)) < 1e-8


def test_oracle_rejects_matrix_input():
    with pytest.raises(CorrespondenceError):
        rank1_monodromy_oracle(F(1, 2), IrregularType(2, {1: (gr(1), gr(0))}))
