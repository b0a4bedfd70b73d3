from __future__ import annotations

import dataclasses
from fractions import Fraction

import pytest

from fsig.characters import (
    ClassFunction,
    TableError,
    check_table,
    defining_character,
    dumps_table,
    known_table_path,
    load_character_table,
    multiplicative_order,
    regular_character,
    table_from_json,
    twist_character,
    twist_permutation,
)
from fsig.cyclotomic import CycloNumber

from conftest import FAMILY_SPECS, build


def test_a1_table(a1):
    _, t = a1
    assert t.dims == (1, 1)
    assert [v.as_rational() for v in t.rows[1].values] == [1, -1]


def test_bd2_dims(bd2):
    assert bd2[1].dims == (1, 1, 1, 1, 2)


def test_bt_dims(bt):
    assert bt[1].dims == (1, 1, 1, 2, 2, 2, 3)


def test_cyclic3_natural_trace():
    g, t = build("cyclic_weights", n=3, weights=[1, 2])
    nat = defining_character(g)
    assert [v.as_rational() for v in nat.values] == [2, -1, -1]
    # the defining representation is V_1 + V_2
    assert t.decompose(nat) == [0, 1, 1]


@pytest.mark.parametrize("name,params", FAMILY_SPECS + [("symmetric2_reflection", {})])
def test_regular_character_decomposes(name, params):
    g, t = build(name, **params)
    reg = regular_character(g.order, g.num_classes, t.field_order)
    assert t.decompose(reg) == [Fraction(d) for d in t.dims]


@pytest.mark.parametrize("name,params", FAMILY_SPECS + [("symmetric2_reflection", {})])
def test_dixon_matches_shipped(name, params):
    g, t = build(name, **params)
    check_table(t)
    shipped = load_character_table(known_table_path(g.name), g)
    assert shipped.rows == t.rows


def test_json_roundtrip(bt, tmp_path):
    g, t = bt
    path = tmp_path / "bt.json"
    path.write_text(dumps_table(t))
    assert load_character_table(path, g).rows == t.rows


def _with_rows(t, rows):
    return dataclasses.replace(t, rows=tuple(rows))


def test_check_table_names_dim(bd2):
    _, t = bd2
    rows = list(t.rows)
    rows[4] = ClassFunction(tuple(v * 2 for v in rows[4].values))
    with pytest.raises(TableError, match="squared dims"):
        check_table(_with_rows(t, rows))


def test_check_table_names_orthogonality(bd2):
    _, t = bd2
    rows = list(t.rows)
    rows[1] = rows[0]
    with pytest.raises(TableError, match="orthogonality"):
        check_table(_with_rows(t, rows))


def test_check_table_missing_row(bd2):
    _, t = bd2
    with pytest.raises(TableError, match="invalid character table"):
        check_table(_with_rows(t, t.rows[:-1]))


def test_table_group_mismatch(bd2, bt):
    with pytest.raises(TableError, match="do not match"):
        table_from_json(bd2[1].to_json(), bt[0])


def test_twist_identity_at_e0(bt):
    _, t = bt
    for p in (5, 7, 11, 13):
        e0 = multiplicative_order(p, t.exponent)
        assert twist_permutation(t, e0, p) == list(range(len(t)))


def test_twist_permutation_bt_p5(bt):
    assert twist_permutation(bt[1], 1, 5) == [0, 2, 1, 3, 5, 4, 6]


def test_twist_rejects_shared_factor():
    chi = ClassFunction((CycloNumber.rational(4, 1),))
    with pytest.raises(ValueError):
        twist_character(chi, 1, 2, 4)


def test_multiplicative_order():
    assert multiplicative_order(3, 8) == 2
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(5, 1) == 1
