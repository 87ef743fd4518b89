import math
import random
from fractions import Fraction as F

import pytest

from meroconn.field import gr
from meroconn.series import INF, LaurentSeries as LS, series_val


# ---------------------------------------------------------------------
# valuation
# ---------------------------------------------------------------------

def test_series_val_examples():
    # z^-2 + 3z -> -2
    assert series_val(LS.from_dict({-2: 1, 1: 3})) == -2
    # zero series -> +inf
    assert series_val(LS.zero()) == INF
    assert series_val(LS.zero(trunc=5)) == INF
    # z^3 truncated at 5 -> 3 (truncation does not hide the leading term)
    assert series_val(LS.from_dict({3: 1}, trunc=5)) == 3


def test_leading_zeros_stripped():
    s = LS(-2, [0, 0, gr(1), 0, gr(2), 0])
    assert s.order_min == 0
    assert s.coeff(0) == gr(1)
    assert s.coeff(2) == gr(2)
    assert len(s.coeffs) == 3


# ---------------------------------------------------------------------
# arithmetic and truncation bookkeeping
# ---------------------------------------------------------------------

def test_add_truncation_is_min():
    a = LS.from_dict({0: 1}, trunc=4)
    b = LS.from_dict({1: 2}, trunc=7)
    assert (a + b).trunc == 4


def test_mul_truncation_rule():
    # trunc = min(a.trunc + val(b), b.trunc + val(a))
    a = LS.from_dict({-1: 1, 0: 2}, trunc=5)
    b = LS.from_dict({2: 3}, trunc=6)
    assert (a * b).trunc == min(5 + 2, 6 - 1)


def test_mul_exact_product():
    a = LS.from_dict({0: 1, 1: 1})
    b = LS.from_dict({0: 1, 1: -1})
    p = a * b
    assert p.coeff(0) == gr(1) and p.coeff(1) == gr(0) and p.coeff(2) == gr(-1)
    assert p.trunc == INF


def test_scale_shift_derivative():
    s = LS.from_dict({-2: 1, 3: F(1, 2)})
    assert s.scale(2).coeff(-2) == gr(2)
    assert s.shift(2).coeff(0) == gr(1)
    d = s.zdz()
    assert d.coeff(-2) == gr(-2)
    assert d.coeff(3) == gr(F(3, 2))


def test_inverse_unit_series():
    rng = random.Random(7)
    for _ in range(30):
        terms = {0: gr(rng.randint(1, 5))}
        for m in range(1, 8):
            terms[m] = gr(F(rng.randint(-4, 4), rng.randint(1, 4)))
        s = LS.from_dict(terms, trunc=8)
        assert (s * s.inverse()).agrees(LS.const(1))


def test_inverse_with_valuation():
    s = LS.from_dict({2: 1, 3: 1}, trunc=9)
    inv = s.inverse()
    assert inv.val() == -2
    assert (s * inv).agrees(LS.const(1))


def test_inverse_exact_monomial():
    s = LS.monomial(gr(2), -3)
    assert s.inverse() == LS.monomial(gr(F(1, 2)), 3)


def test_inverse_exact_non_monomial_needs_trunc():
    with pytest.raises(ValueError):
        LS.from_dict({0: 1, 1: 1}).inverse()
    ok = LS.from_dict({0: 1, 1: 1}).inverse(trunc=6)
    assert (ok * LS.from_dict({0: 1, 1: 1})).agrees(LS.const(1))


def test_agrees_up_to_common_truncation():
    a = LS.from_dict({0: 1, 5: 9}, trunc=10)
    b = LS.from_dict({0: 1}, trunc=4)
    assert a.agrees(b)
    c = LS.from_dict({0: 1, 2: 1}, trunc=4)
    assert not a.agrees(c)
