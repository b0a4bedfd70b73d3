from __future__ import annotations

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fsig.cyclotomic import (
    CycloNumber,
    approx_complex,
    cyclotomic_polynomial,
    embed,
    euler_phi,
    galois,
    geometric_sum,
    invert,
    sqrt_lower,
    sqrt_upper,
    zeta,
)


def test_phi12():
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("n,phi", [(1, 1), (2, 1), (5, 4), (8, 4), (12, 4), (24, 8)])
def test_euler_phi(n, phi):
    assert euler_phi(n) == phi


def test_zeta_reduces():
    # zeta_6^2 = zeta_6 - 1
    assert zeta(6, 2) == zeta(6) - 1


def test_product_of_conjugates():
    z = zeta(3)
    assert (1 + z) * (1 + z * z) == 1


def test_invert_example():
    i = zeta(4)
    assert invert(1 + i) == Fraction(1, 2) - Fraction(1, 2) * i


def test_galois_example():
    z = zeta(3)
    assert galois(1 + 2 * z, 2) == -1 - 2 * z


def test_galois_rejects_non_unit():
    with pytest.raises(ValueError):
        zeta(6).galois(2)


def test_embed_example():
    assert embed(zeta(3), 6) == zeta(6) - 1


def test_incompatible_orders():
    with pytest.raises(ValueError, match="incompatible"):
        zeta(3) + zeta(5)


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        invert(CycloNumber.rational(5, 0))


def test_geometric_sum_root_of_unity():
    z = zeta(3)
    # 1 + z + z^2 = 0; 1 + z = -z^2
    assert geometric_sum(z, 3) == 0
    assert geometric_sum(z, 2) == -z * z
    assert geometric_sum(CycloNumber.rational(3, 1), 4) == 4


def test_json_roundtrip():
    a = Fraction(3, 7) + 2 * zeta(12, 5)
    assert CycloNumber.from_json(a.to_json()) == a


def test_interval_encloses_value():
    a = 1 - zeta(5)
    box = approx_complex(a, 80)
    fine = approx_complex(a, 200)
    assert box.re_lo <= fine.re_lo <= fine.re_hi <= box.re_hi
    assert box.im_lo <= fine.im_lo <= fine.im_hi <= box.im_hi
    assert box.radius < Fraction(1, 10**15)
    assert abs(box.mid - (1 - cmath.exp(2j * cmath.pi / 5))) < 1e-12


def test_sqrt_bounds():
    x = Fraction(2)
    assert sqrt_lower(x) ** 2 <= x <= sqrt_upper(x) ** 2


ORDERS = st.sampled_from([3, 4, 5, 8, 12])


@st.composite
def cyclo(draw, order=None):
    n = order if order is not None else draw(ORDERS)
    coeffs = draw(st.lists(st.fractions(max_denominator=5, min_value=-4, max_value=4),
                           min_size=euler_phi(n), max_size=euler_phi(n)))
    return CycloNumber(n, coeffs)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_field_axioms(data):
    n = data.draw(ORDERS)
    a, b, c = (data.draw(cyclo(n)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if not a.is_zero():
        assert a * invert(a) == 1


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_galois_is_ring_map(data):
    n = data.draw(ORDERS)
    a, b = data.draw(cyclo(n)), data.draw(cyclo(n))
    t = data.draw(st.sampled_from([t for t in range(1, n) if math.gcd(t, n) == 1]))
    assert galois(a * b, t) == galois(a, t) * galois(b, t)
    assert galois(a + b, t) == galois(a, t) + galois(b, t)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_embed_is_ring_map(data):
    n = data.draw(st.sampled_from([3, 4, 6]))
    a, b = data.draw(cyclo(n)), data.draw(cyclo(n))
    assert embed(a * b, 12) == embed(a, 12) * embed(b, 12)
    assert embed(a, 12).embed(24) == embed(a, 24)
