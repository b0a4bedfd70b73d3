from __future__ import annotations

from fractions import Fraction

import pytest

from fsig.characters import multiplicative_order
from fsig.frobenius import (
    ValidationRefused,
    bullet_character,
    convergence_report,
    eigen_factor_bound,
    generalized_f_signature,
    invariant_dimension,
    module_decomposition,
    multiplicities,
    signature_pair,
)
from fsig.cyclotomic import zeta
from fsig.groups import validate

from conftest import build


def _mults(group, table, p, e):
    return multiplicities(table, bullet_character(group, group.profiles(), p**e), e, p, validate(group, p))


def test_a1_p3(a1):
    g, t = a1
    assert [_mults(g, t, 3, e).mults for e in range(4)] == [(1, 0), (5, 4), (41, 40), (365, 364)]


def test_cyclic3_p2():
    g, t = build("cyclic_weights", n=3, weights=[1, 2])
    assert _mults(g, t, 2, 1).mults == (2, 1, 1)


def test_bullet_nontrivial_class_cyclic3():
    g, _ = build("cyclic_weights", n=3, weights=[1, 2])
    chi = bullet_character(g, g.profiles(), 2)
    assert chi[0] == 4 and chi[1] == 1 and chi[2] == 1


def test_reflection_labeled_as_g_module(s2):
    g, t = s2
    dec = _mults(g, t, 3, 1)
    assert dec.mults == (6, 3)
    assert not dec.is_unique_decomposition
    assert dec.label == "G-module multiplicities of S/m^[q]"


def test_trivial_group_single_column():
    g, t = build("cyclic_weights", n=1, weights=[0, 0])
    assert _mults(g, t, 5, 2).mults == (625,)


def test_p_dividing_order_rejected():
    g, t = build("cyclic_weights", n=3, weights=[1, 2])
    with pytest.raises(ValueError, match="divides"):
        multiplicities(t, bullet_character(g, g.profiles(), 3), 1, 3)


def test_invariant_dimension_equals_c0(bd2):
    g, t = bd2
    for e in (1, 2):
        chi = bullet_character(g, g.profiles(), 3**e)
        assert invariant_dimension(chi, g.class_sizes, g.order) == _mults(g, t, 3, e).mults[0]


def test_module_decomposition_a1(a1):
    g, t = a1
    chi = bullet_character(g, g.profiles(), 3)
    assert module_decomposition(t, chi, 1, 1, 3) == [4, 5]
    assert module_decomposition(t, chi, 0, 1, 3) == [5, 4]


def test_signatures(bd2, a1):
    assert [generalized_f_signature(bd2[1], i) for i in range(5)] == [Fraction(1, 8)] * 4 + [Fraction(1, 4)]
    assert signature_pair(a1[1], 0, 1) == Fraction(1, 2)
    with pytest.raises(IndexError):
        generalized_f_signature(a1[1], 2)


def test_eigen_factor_bound():
    assert eigen_factor_bound(zeta(2)) == 1
    b = eigen_factor_bound(zeta(3))
    # |1 - zeta_3| = sqrt(3)
    assert b * b * 3 >= 4
    assert b - Fraction(2, 1) / Fraction(17320508075688772, 10**16) < Fraction(1, 10**12)


def test_convergence_a1(a1):
    g, t = a1
    rep = convergence_report(g, t, 3, range(1, 4))
    gaps = {(r.e, r.i): (r.gap, r.bound) for r in rep.convergence_rows}
    assert gaps[(1, 0)] == (Fraction(1, 18), Fraction(1, 18))
    assert gaps[(2, 1)] == (Fraction(1, 162), Fraction(1, 162))
    assert rep.certified and rep.e0 == 1


def test_convergence_bt(bt):
    g, t = bt
    rep = convergence_report(g, t, 13, range(1, 4))
    assert rep.certified
    assert rep.e0 == multiplicative_order(13, 12)


def test_signature_refuses_reflection(s2):
    g, t = s2
    with pytest.raises(ValidationRefused):
        convergence_report(g, t, 3, [1])
