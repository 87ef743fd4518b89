import random
from fractions import Fraction as F

import pytest

from meroconn.connection import IrregularType
from meroconn.correspondence import DeRhamLocal, dR_to_Dol
from meroconn.field import gr
from meroconn.lmatrix import CMat
from meroconn.modelmetric import (HiggsOperators, MetricData, MetricError,
                                  TPoly, chern_coefficient,
                                  chern_curvature_from_coefficient,
                                  curvature_e0, higgs_extraction,
                                  pseudo_curvature, sl2_identity_suite,
                                  weight_jump_check)
from meroconn.randomgen import rand_de_rham_local, rand_nilpotent
from meroconn.residues import Sl2Data, sl2_complete
from meroconn.rootdata import Weight


def standard_data(n=2):
    y = CMat.unit(2, 1, 0) if n == 2 else CMat([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    d = DeRhamLocal(Weight([0] * n), y, IrregularType(n, {}))
    return MetricData.from_de_rham(d)


# ---------------------------------------------------------------------
# TPoly calculus
# ---------------------------------------------------------------------

def test_t_derivative_examples():
    m = CMat.diag([1, 2])
    assert TPoly.of((1, m)).t_derivative() == TPoly.of((2, -m))
    assert TPoly.of((0, m)).t_derivative().is_zero()
    assert TPoly.of((2, m)).t_derivative() == TPoly.of((3, m.scale(-2)))


def test_tpoly_bracket_and_eq():
    x, y = CMat.unit(2, 0, 1), CMat.unit(2, 1, 0)
    p = TPoly.of((1, x))
    q = TPoly.of((1, y))
    assert p.bracket(q) == TPoly.of((2, x.bracket(y)))
    assert (p - p).is_zero()
    with pytest.raises(MetricError):
        TPoly({-1: x})


# ---------------------------------------------------------------------
# identity suite
# ---------------------------------------------------------------------

def test_identity_suite_standard_2x2():
    data = standard_data(2)
    report = sl2_identity_suite(data.triple)
    assert report.all_pass
    # e^X H e^-X = H - 2X by direct 2x2 multiplication
    x, h = data.triple.X, data.triple.H
    lhs = x.exp_nilpotent() * h * (-x).exp_nilpotent()
    assert lhs == h - x.scale(2)


def test_identity_suite_zero_triple():
    z = CMat.zero(2)
    report = sl2_identity_suite(Sl2Data(z, z, z, z, CMat.identity(2)))
    assert report.all_pass


def test_identity_suite_3x3_block():
    assert sl2_identity_suite(standard_data(3).triple).all_pass


def test_identity_suite_random_conjugates():
    rng = random.Random(81)
    for _ in range(15):
        n = rng.randint(2, 4)
        triple = sl2_complete(rand_nilpotent(rng, n))
        assert sl2_identity_suite(triple).all_pass


# ---------------------------------------------------------------------
# pseudo-curvature
# ---------------------------------------------------------------------

def test_pseudo_curvature_vanishes():
    assert pseudo_curvature(standard_data(2)).is_zero()
    assert pseudo_curvature(standard_data(3)).is_zero()


def test_pseudo_curvature_y_zero_case():
    d = DeRhamLocal(Weight([F(1, 4), 0]), CMat.diag([gr(2), gr(3)]),
                    IrregularType(2, {}))
    data = MetricData.from_de_rham(d)
    # both the derivative term and the bracket vanish individually
    assert data.triple.Y.is_zero()
    assert pseudo_curvature(data).is_zero()


def test_pseudo_curvature_detects_corruption():
    data = standard_data(2)
    bad = Sl2Data(data.triple.s, data.triple.X,
                  data.triple.H + CMat.unit(2, 0, 0), data.triple.Y,
                  data.triple.basis)
    broken = MetricData(data.beta, bad, data.q, validate=False)
    assert not pseudo_curvature(broken).is_zero()
    with pytest.raises(MetricError):
        MetricData(data.beta, bad, data.q)  # validation also catches it


# ---------------------------------------------------------------------
# curvature in the orthonormal frame
# ---------------------------------------------------------------------

def test_curvature_e0_standard():
    data = standard_data(2)
    assert curvature_e0(data) == TPoly.of((2, data.triple.H.scale(2)))


def test_curvature_e0_trivial_triple():
    d = DeRhamLocal(Weight([0, 0]), CMat.zero(2), IrregularType(2, {}))
    assert curvature_e0(MetricData.from_de_rham(d)).is_zero()


def test_curvature_e0_3x3_and_acceptability_shape():
    data = standard_data(3)
    out = curvature_e0(data)
    assert out == TPoly.of((2, data.triple.H.scale(2)))
    assert min(out.coeffs) >= 2  # no terms below t^2


def test_chern_coefficient_and_dbar():
    data = standard_data(2)
    t = data.triple
    want = TPoly.of((0, -t.Y), (1, t.H.scale(2)), (2, t.X.scale(2)))
    assert chern_coefficient(data) == want  # beta = 0 here
    # applying -zbar d/dzbar reproduces the e-frame curvature
    assert chern_curvature_from_coefficient(data) == \
        TPoly.of((2, t.H.scale(2)), (3, t.X.scale(4)))


def test_chern_coefficient_zero_data():
    d = DeRhamLocal(Weight([0, 0]), CMat.zero(2), IrregularType(2, {}))
    assert chern_coefficient(MetricData.from_de_rham(d)).is_zero()


# ---------------------------------------------------------------------
# Higgs extraction
# ---------------------------------------------------------------------

def test_higgs_extraction_pure_nilpotent():
    data = standard_data(2)
    ops = higgs_extraction(data)
    t = data.triple
    assert ops.phi == TPoly.of((1, -t.Y))
    assert ops.residue == t.Y - t.H + t.X
    assert ops.phi_q_tag.is_zero()


def test_higgs_extraction_all_zero():
    d = DeRhamLocal(Weight([0, 0]), CMat.zero(2), IrregularType(2, {}))
    ops = higgs_extraction(MetricData.from_de_rham(d))
    assert ops.phi.is_zero() and ops.phi_star.is_zero() and ops.del_bar.is_zero()
    assert ops.residue.is_zero()


def test_higgs_extraction_semisimple_row():
    d = DeRhamLocal(Weight([F(1, 4), F(1, 4)]),
                    CMat.diag([gr(F(1, 2)), gr(F(1, 3))]), IrregularType(2, {}))
    ops = higgs_extraction(MetricData.from_de_rham(d))
    st = d.structure()
    beta = CMat.diag([gr(F(1, 4)), gr(F(1, 4))])
    assert ops.residue == (st.s - beta).scale(F(1, 2))


def test_higgs_q_tags_carried():
    q = IrregularType(2, {2: (gr(1), gr(-1))})
    d = DeRhamLocal(Weight([0, 0]), CMat.zero(2), q)
    ops = higgs_extraction(MetricData.from_de_rham(d))
    # phi tag = (1/2) z Q'(z) = -diag(1,-1) z^-2
    assert ops.phi_q_tag.coeff(-2) == CMat.diag([-1, 1])
    assert ops.del_bar_q_tag.coeff(-2) == CMat.diag([1, -1])


def test_higgs_residue_matches_dictionary_random():
    rng = random.Random(82)
    for _ in range(20):
        d = rand_de_rham_local(rng, rng.randint(2, 4))
        ops = higgs_extraction(MetricData.from_de_rham(d))
        assert ops.residue == dR_to_Dol(d).residue


# ---------------------------------------------------------------------
# numeric weight-jump diagnostic
# ---------------------------------------------------------------------

def test_weight_jump_power_law():
    d = DeRhamLocal(Weight([F(1, 2), 0]), CMat.zero(2), IrregularType(2, {}))
    report = weight_jump_check(MetricData.from_de_rham(d))
    assert report.de_rham_targets == (1.0, 0.0)
    assert report.de_rham_pass and report.all_pass


def test_weight_jump_log_corrections_only():
    data = standard_data(2)  # beta = 0, nontrivial triple
    report = weight_jump_check(data)
    assert report.de_rham_targets == (0.0, 0.0)
    assert report.de_rham_pass


def test_weight_jump_dolbeault_exponent():
    d = DeRhamLocal(Weight([F(1, 4), F(1, 4)]),
                    CMat.diag([gr(F(1, 3)), gr(0)]), IrregularType(2, {}))
    report = weight_jump_check(MetricData.from_de_rham(d))
    assert report.dolbeault_targets == (2 / 3, 0.0)
    assert report.dolbeault_pass
