"""Exhaustive small-case invariants across modules."""

from __future__ import annotations

from fractions import Fraction

import pytest

from fsig.characters import multiplicative_order, twist_permutation
from fsig.cyclotomic import CycloNumber, embed, galois, geometric_sum, zeta
from fsig.frobenius import (
    bullet_character,
    class_bound_constants,
    convergence_report,
    invariant_dimension,
    module_decomposition,
    multiplicities,
)
from fsig.groups import validate
from fsig.oracle import FiniteFieldContext, eigen_multiplicities, frobenius_ideal_is_stable, frobenius_quotient_action, reduce_matrix

from conftest import FAMILY_SPECS, build

ALL = FAMILY_SPECS + [("symmetric2_reflection", {})]


def test_geometric_sum_exhaustive():
    for m in range(1, 25):
        for k in range(m):
            theta = zeta(m, k)
            acc = CycloNumber.rational(m, 0)
            power = CycloNumber.rational(m, 1)
            for q in range(1, 65):
                acc = acc + power
                power = power * theta
                assert geometric_sum(theta, q) == acc


def test_complex_conjugation_involution():
    a = Fraction(1, 3) + 2 * zeta(12, 5) - zeta(12, 2)
    assert galois(galois(a, -1), -1) == a
    assert embed(a, 24) != embed(a.conjugate(), 24)


@pytest.mark.parametrize("name,params", ALL)
def test_profile_power_and_trace(name, params):
    g, _ = build(name, **params)
    L = g.field_order
    for c in range(g.num_classes):
        prof = g.profile(c)
        total = sum((zeta(L, k * (L // prof.m)) * n for k, n in prof.mults.items()), CycloNumber.rational(L, 0))
        assert total == g.class_traces[c]
        for j in range(prof.m):
            other = g.profile(g.power_class(c, j))
            scaled: dict[int, int] = {}
            for k, n in prof.mults.items():
                # re-express zeta_m^(jk) at the order of the power
                key = (j * k * other.m) // prof.m if (j * k * other.m) % prof.m == 0 else None
                assert key is not None
                scaled[key % other.m] = scaled.get(key % other.m, 0) + n
            assert scaled == other.mults


@pytest.mark.parametrize("name,params", FAMILY_SPECS)
def test_builtins_reflection_free(name, params):
    g, _ = build(name, **params)
    assert validate(g, 101).reflection_free


@pytest.mark.parametrize("name,params", FAMILY_SPECS)
def test_row_products_decompose(name, params):
    _, t = build(name, **params)
    for a in t.rows:
        for b in t.rows:
            for x in t.decompose(a * b):
                assert x is not None and x.denominator == 1 and x >= 0
            assert [x + y for x, y in zip(t.decompose(a), t.decompose(b))] == t.decompose(a + b)


@pytest.mark.parametrize("name,params", FAMILY_SPECS)
@pytest.mark.parametrize("p", [2, 5, 7])
def test_twist_consistency(name, params, p):
    g, t = build(name, **params)
    if g.order % p == 0:
        pytest.skip("p divides |G|")
    e0 = multiplicative_order(p, g.exponent)
    profiles = g.profiles()
    for e in range(0, 4):
        bullet = bullet_character(g, profiles, p**e)
        twisted = multiplicities(t, bullet, e, p).mults
        untwisted = [t.inner(row, bullet).as_rational() for row in t.rows]
        perm = twist_permutation(t, e, p)
        assert [untwisted[perm[i]] for i in range(len(t))] == list(twisted)
        if e % e0 == 0:
            assert list(twisted) == untwisted
        assert invariant_dimension(bullet, g.class_sizes, g.order) == twisted[0]
        assert module_decomposition(t, bullet, 0, e, p) == list(twisted)


def test_twist_cyclic3_transposition():
    _, t = build("cyclic_weights", n=3, weights=[1, 2])
    assert twist_permutation(t, 1, 2) == [0, 2, 1]


def test_e_zero_and_trivial_group():
    g, t = build("cyclic_weights", n=2, weights=[1, 1])
    assert multiplicities(t, bullet_character(g, g.profiles(), 1), 0, 3).mults == (1, 0)
    g, t = build("cyclic_weights", n=1, weights=[0, 0])
    rep = convergence_report(g, t, 5, range(0, 4))
    assert all(r.gap == 0 for r in rep.convergence_rows)


@pytest.mark.parametrize("name,params", FAMILY_SPECS)
def test_bound_times_qd_bounded(name, params):
    g, t = build(name, **params)
    p = next(p for p in (5, 7, 11, 13) if g.order % p)
    rep = convergence_report(g, t, p, range(1, 7))
    # bound * q^2 is eventually constant: the exponents t_c are all 0 for reflection-free d = 2
    assert all(tc == 0 for tc, _ in class_bound_constants(g)[1:])
    scaled = {r.bound * r.q**2 for r in rep.convergence_rows if r.i == 0}
    assert len(scaled) == 1


@pytest.mark.parametrize("name,params", ALL)
def test_kernel_ranks_fill_space(name, params):
    g, _ = build(name, **params)
    p = next(p for p in (5, 7, 11) if g.order % p and g.field_order % p)
    ctx = FiniteFieldContext(p, g.field_order)
    for c, rep in enumerate(g.class_reps):
        A = frobenius_quotient_action(reduce_matrix(g.elements[rep], ctx), p, ctx)
        assert sum(eigen_multiplicities(A, g.element_orders[c], ctx).values()) == p**2


def test_frobenius_ideal_stability_is_characteristic_p():
    g, _ = build("symmetric2_reflection")
    ctx = FiniteFieldContext(3, g.field_order)
    swap_plus = reduce_matrix(g.elements[1], ctx)
    # (x, y) -> (x + y, y): stable for q = p, not for a non-power of p
    shear = [[1, 0], [1, 1]]
    assert frobenius_ideal_is_stable(swap_plus, 3, ctx)
    assert frobenius_ideal_is_stable(shear, 3, ctx)
    assert not frobenius_ideal_is_stable(shear, 2, ctx)
