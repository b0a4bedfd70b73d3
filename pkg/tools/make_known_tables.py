"""Write the shipped character tables for the builtin families.

Rows come from closed-form descriptions of each group's irreducibles,
evaluated on the class representatives; no Dixon-Schneider involved.

    python tools/make_known_tables.py
"""

from __future__ import annotations

from pathlib import Path

from fsig.characters import ClassFunction, check_table, save_character_table, table_from_rows
from fsig.cyclotomic import CycloNumber, zeta
from fsig.groups import builtin_family

OUT = Path(__file__).resolve().parent.parent / "src" / "fsig" / "data" / "tables"


def _log_of(x: CycloNumber, n: int) -> int:
    for a in range(n):
        if zeta(n, a).embed(x.order) == x:
            return a
    raise ValueError(f"{x} is not a power of zeta_{n}")


def cyclic_rows(group, n):
    L = group.field_order
    exps = [_log_of(group.elements[r][0, 0], n) for r in group.class_reps]
    return [ClassFunction(tuple(zeta(L, (j * a % n) * (L // n)) for a in exps)) for j in range(n)]


def binary_dihedral_rows(group, n):
    L = group.field_order
    N = 2 * n
    reps = []
    for r in group.class_reps:
        g = group.elements[r]
        if g[0, 1].is_zero():
            reps.append((_log_of(g[0, 0], N), False))
        else:
            reps.append((_log_of(g[0, 1], N), True))
    one, minus = CycloNumber.rational(L, 1), CycloNumber.rational(L, -1)
    i = zeta(L, L // 4) if L % 4 == 0 else None
    if n % 2 == 0:
        linear = [(one, one), (one, minus), (minus, one), (minus, minus)]
    else:
        linear = [(one, one), (one, minus), (minus, i), (minus, -i)]
    rows = []
    for ca, cb in linear:
        rows.append(ClassFunction(tuple(ca ** j * (cb if refl else 1) for j, refl in reps)))
    zero = CycloNumber.rational(L, 0)
    for k in range(1, n):
        rows.append(ClassFunction(tuple(
            zero if refl else zeta(L, k * j * (L // N)) + zeta(L, -k * j * (L // N)) for j, refl in reps
        )))
    return rows


def binary_tetrahedral_rows(group):
    L = group.field_order
    fam = builtin_family("binary_tetrahedral")
    qi, qj, _ = fam.generators
    qk = qi * qj
    minus_one = qi * qi
    axes = [(ax, ax * minus_one) for ax in (qi, qj, qk)]

    def shift(r):
        g = group.elements[r]
        ginv = group.elements[group.inverse[r]]
        img = g * qi * ginv
        for s, pair in enumerate(axes):
            if img in pair:
                return s
        raise ValueError("conjugate of i is not a quaternion unit")

    omega = zeta(L, L // 3)
    lam = [omega ** shift(r) for r in group.class_reps]
    nat = list(group.class_traces)
    one = [CycloNumber.rational(L, 1)] * len(nat)
    rows = [
        one,
        lam,
        [x * x for x in lam],
        nat,
        [a * b for a, b in zip(nat, lam)],
        [a * b * b for a, b in zip(nat, lam)],
        [a * a.conjugate() - 1 for a in nat],
    ]
    return [ClassFunction(tuple(r)) for r in rows]


def sign_rows(group):
    """Trivial and determinant characters of a group of order 2."""
    L = group.field_order
    det = [group.elements[r].determinant().embed(L) for r in group.class_reps]
    return [ClassFunction(tuple(CycloNumber.rational(L, 1) for _ in det)), ClassFunction(tuple(det))]


def builds():
    for n in (1, 2, 3, 5, 7):
        w = [0, 0] if n == 1 else [1, n - 1]
        fam = builtin_family("cyclic_weights", n=n, weights=w)
        yield fam, (lambda g, n=n: cyclic_rows(g, n))
    for n in (2, 3):
        fam = builtin_family("binary_dihedral", n=n)
        yield fam, (lambda g, n=n: binary_dihedral_rows(g, n))
    yield builtin_family("binary_tetrahedral"), binary_tetrahedral_rows
    yield builtin_family("symmetric2_reflection"), sign_rows


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for fam, make in builds():
        group = fam.build()
        table = table_from_rows(group, make(group))
        check_table(table)
        path = OUT / f"{fam.label}.json"
        save_character_table(table, path)
        print(path.name, table.dims)


if __name__ == "__main__":
    main()
