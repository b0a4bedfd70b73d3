"""Irreducible character tables, inner products and the Frobenius twist on characters.

Since p never divides |G| here, Brauer characters coincide with ordinary
characters over Q(zeta_m), so tables are computed in characteristic zero.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .cyclotomic import CycloNumber, zeta
from .groups import FiniteMatrixGroup

SCHEMA_VERSION = 1


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class ClassFunction:
    values: tuple[CycloNumber, ...]

    def __post_init__(self):
        orders = {v.order for v in self.values}
        if len(orders) > 1:
            raise ValueError("class function values must share one cyclotomic order")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, c: int) -> CycloNumber:
        return self.values[c]

    def __mul__(self, other: ClassFunction) -> ClassFunction:
        _check_len(self, other)
        return ClassFunction(tuple(a * b for a, b in zip(self.values, other.values)))

    def __add__(self, other: ClassFunction) -> ClassFunction:
        _check_len(self, other)
        return ClassFunction(tuple(a + b for a, b in zip(self.values, other.values)))

    def conjugate(self) -> ClassFunction:
        return ClassFunction(tuple(v.conjugate() for v in self.values))

    def galois(self, t: int) -> ClassFunction:
        return ClassFunction(tuple(v.galois(t) for v in self.values))

    def key(self) -> tuple:
        return tuple(v.key() for v in self.values)


def _check_len(a: ClassFunction, b: ClassFunction) -> None:
    if len(a) != len(b):
        raise ValueError(f"class functions of different length ({len(a)} vs {len(b)})")


def inner_product(
    a: ClassFunction, b: ClassFunction, class_sizes: Sequence[int], group_order: int
) -> CycloNumber:
    """(1/|G|) sum_c |c| conj(a[c]) b[c]."""
    _check_len(a, b)
    if len(class_sizes) != len(a):
        raise ValueError("class_sizes does not match the class function length")
    acc = None
    for size, x, y in zip(class_sizes, a.values, b.values):
        t = x.conjugate() * y * size
        acc = t if acc is None else acc + t
    return acc / group_order


def defining_character(group: FiniteMatrixGroup) -> ClassFunction:
    return ClassFunction(tuple(group.class_traces))


@dataclass(frozen=True)
class CharacterTable:
    rows: tuple[ClassFunction, ...]
    labels: tuple[str, ...]
    class_sizes: tuple[int, ...]
    element_orders: tuple[int, ...]
    power_map: tuple[tuple[int, ...], ...]
    group_order: int

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(int(r[0].as_rational()) for r in self.rows)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.element_orders)

    @property
    def field_order(self) -> int:
        return self.rows[0][0].order

    def __len__(self) -> int:
        return len(self.rows)

    def inner(self, a: ClassFunction, b: ClassFunction) -> CycloNumber:
        return inner_product(a, b, self.class_sizes, self.group_order)

    def decompose(self, chi: ClassFunction) -> list[Fraction | None]:
        """Inner products of ``chi`` with every irreducible row (None if irrational)."""
        return [self.inner(r, chi).as_rational() for r in self.rows]

    def trivial(self) -> ClassFunction:
        return self.rows[0]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "classes": [
                {"size": s, "order": o} for s, o in zip(self.class_sizes, self.element_orders)
            ],
            "power_map": [list(r) for r in self.power_map],
            "rows": [
                {"label": lab, "values": [v.to_json() for v in row.values]}
                for lab, row in zip(self.labels, self.rows)
            ],
        }


def _canonical(rows: Sequence[ClassFunction]) -> list[ClassFunction]:
    def key(r: ClassFunction):
        trivial = all(v == 1 for v in r.values)
        return (int(r[0].as_rational()), not trivial, r.key())
    return sorted(rows, key=key)


def _make_table(group_like: dict, rows: Sequence[ClassFunction], labels=None) -> CharacterTable:
    rows = _canonical(rows) if labels is None else list(rows)
    if labels is None:
        labels = [f"V_{i}" for i in range(len(rows))]
    return CharacterTable(
        rows=tuple(rows),
        labels=tuple(labels),
        class_sizes=tuple(group_like["class_sizes"]),
        element_orders=tuple(group_like["element_orders"]),
        power_map=tuple(tuple(r) for r in group_like["power_map"]),
        group_order=group_like["group_order"],
    )


def table_from_rows(group: FiniteMatrixGroup, rows: Sequence[ClassFunction]) -> CharacterTable:
    """Canonically ordered table (trivial row first) for the given irreducible rows."""
    return _make_table(_group_data(group), rows)


def _group_data(group: FiniteMatrixGroup) -> dict:
    return {
        "class_sizes": group.class_sizes,
        "element_orders": group.element_orders,
        "power_map": group.power_map,
        "group_order": group.order,
    }


# -- validation -------------------------------------------------------------------

def check_table(table: CharacterTable) -> None:
    """Raise TableError naming the first violated invariant."""
    r = len(table.class_sizes)
    if sum(table.class_sizes) != table.group_order:
        raise TableError("invalid character table: class sizes do not sum to |G|")
    for i, row in enumerate(table.rows):
        if len(row) != r:
            raise TableError(f"invalid character table: row {i} has {len(row)} values, expected {r}")
    dims = []
    for i, row in enumerate(table.rows):
        d = row[0].as_rational()
        if d is None or d.denominator != 1 or d <= 0:
            raise TableError(f"invalid character table: dim check failed for row {i} (chi(1) = {row[0]})")
        dims.append(int(d))
    if sum(d * d for d in dims) != table.group_order:
        raise TableError(
            f"invalid character table: sum of squared dims {sum(d * d for d in dims)} != |G| = {table.group_order}"
        )
    for i, a in enumerate(table.rows):
        for j in range(i, len(table.rows)):
            val = table.inner(a, table.rows[j])
            if val != (1 if i == j else 0):
                raise TableError(f"invalid character table: orthogonality fails for rows {i}, {j} ({val})")
    if len(table.rows) != r:
        raise TableError(f"invalid character table: {len(table.rows)} rows for {r} classes")
    for c in range(r):
        for c2 in range(c, r):
            acc = sum((row[c].conjugate() * row[c2] for row in table.rows[1:]),
                      table.rows[0][c].conjugate() * table.rows[0][c2])
            expected = Fraction(table.group_order, table.class_sizes[c]) if c == c2 else 0
            if acc != expected:
                raise TableError(f"invalid character table: column orthogonality fails for classes {c}, {c2}")


def load_character_table(path: str | Path, group: FiniteMatrixGroup) -> CharacterTable:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise TableError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    return table_from_json(data, group)


def table_from_json(data: dict, group: FiniteMatrixGroup) -> CharacterTable:
    try:
        classes = data["classes"]
        sizes = [int(c["size"]) for c in classes]
        orders = [int(c["order"]) for c in classes]
        power_map = [[int(x) for x in r] for r in data["power_map"]]
        raw_rows = data["rows"]
        labels = [str(r.get("label", f"V_{i}")) for i, r in enumerate(raw_rows)]
        L = group.field_order
        rows = []
        for r in raw_rows:
            vals = [CycloNumber.from_json(v) for v in r["values"]]
            for v in vals:
                if L % v.order:
                    raise TableError(f"value order {v.order} does not divide the group's conductor {L}")
            rows.append(ClassFunction(tuple(v.embed(L) for v in vals)))
    except (KeyError, TypeError) as exc:
        raise TableError(f"malformed character table: {exc}") from exc
    if sizes != list(group.class_sizes) or orders != list(group.element_orders):
        raise TableError("invalid character table: class sizes/orders do not match the group")
    if [r[: len(p)] for r, p in zip(power_map, group.power_map)] != [list(p) for p in group.power_map]:
        raise TableError("invalid character table: power map does not match the group")
    table = _make_table(_group_data(group), rows, labels)
    check_table(table)
    return table


def dumps_table(table: CharacterTable) -> str:
    """JSON text with one class / power-map row / character row per line."""
    obj = table.to_json()
    def block(items):
        return "[\n  " + ",\n  ".join(json.dumps(x) for x in items) + "\n ]"
    return (
        "{\n"
        f' "schema": {obj["schema"]},\n'
        f' "classes": {block(obj["classes"])},\n'
        f' "power_map": {block(obj["power_map"])},\n'
        f' "rows": {block(obj["rows"])}\n'
        "}\n"
    )


def save_character_table(table: CharacterTable, path: str | Path) -> None:
    Path(path).write_text(dumps_table(table))


def known_table_path(label: str) -> Path:
    """Path of the shipped table for a builtin family label, e.g. ``binary_dihedral(2)``."""
    return Path(__file__).resolve().parent / "data" / "tables" / f"{label}.json"


# -- Dixon-Schneider ------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for f in range(2, math.isqrt(n) + 1):
        if n % f == 0:
            return False
    return True


def _dixon_prime(exponent: int, group_order: int, bound: int = 10**7) -> int:
    ell = exponent + 1
    while ell < bound:
        if _is_prime(ell) and ell * ell > 4 * group_order:
            return ell
        ell += exponent
    raise TableError(f"no suitable prime below {bound} for exponent {exponent}")


def _primitive_root(ell: int) -> int:
    factors = [f for f in range(2, ell) if (ell - 1) % f == 0 and _is_prime(f)]
    for g in range(2, ell):
        if all(pow(g, (ell - 1) // f, ell) != 1 for f in factors):
            return g
    return 1


def _rref(rows: list[list[int]], ell: int) -> tuple[list[list[int]], list[int]]:
    m = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] % ell), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, ell)
        m[rank] = [x * inv % ell for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(x - f * y) % ell for x, y in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    return m[:rank], pivots


def _nullspace(mat: list[list[int]], ell: int) -> list[list[int]]:
    n = len(mat[0])
    red, pivots = _rref(mat, ell)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % ell
        basis.append(v)
    return basis


def class_structure_constants(group: FiniteMatrixGroup) -> list[list[list[int]]]:
    """a[j][i][k] = #{x in C_j : x^-1 z_k in C_i} for the representative z_k of class k."""
    r = group.num_classes
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    for x in range(group.order):
        j = group.class_of[x]
        xinv_row = group.table[group.inverse[x]]
        for k, z in enumerate(group.class_reps):
            a[j][group.class_of[xinv_row[z]]][k] += 1
    return a


def _split(space: list[list[int]], mat: list[list[int]], ell: int) -> list[list[list[int]]]:
    """Split span(space) into eigenspaces of mat (which must leave it invariant)."""
    w = len(space)
    r = len(space[0])
    images = [[sum(mat[i][k] * v[k] for k in range(r)) % ell for i in range(r)] for v in space]
    # coordinates of each image in the basis `space`: solve via rref of [space^T | images^T]
    aug = [[space[c][i] for c in range(w)] + [images[c][i] for c in range(w)] for i in range(r)]
    red, pivots = _rref(aug, ell)
    if any(p >= w for p in pivots):
        raise TableError("class matrix does not preserve the subspace")
    coords = [[0] * w for _ in range(w)]  # coords[c][b]: image c = sum_b coords[c][b] space[b]
    for row, pc in zip(red, pivots):
        for c in range(w):
            coords[c][pc] = row[w + c]
    restricted = [[coords[c][b] for c in range(w)] for b in range(w)]  # column c = image of basis c
    pieces = []
    found = 0
    for lam in range(ell):
        shifted = [[(restricted[i][j] - (lam if i == j else 0)) % ell for j in range(w)] for i in range(w)]
        ker = _nullspace(shifted, ell)
        if ker:
            pieces.append([
                [sum(u[b] * space[b][i] for b in range(w)) % ell for i in range(r)] for u in ker
            ])
            found += len(ker)
            if found == w:
                break
    if found != w:
        raise TableError("class matrix is not diagonalizable over the chosen prime field")
    return pieces


def character_table_dixon(group: FiniteMatrixGroup) -> CharacterTable:
    """Irreducible characters from simultaneous eigenvectors of the class matrices mod ell."""
    r = group.num_classes
    M = group.exponent
    L = group.field_order
    ell = _dixon_prime(M, group.order)
    a = class_structure_constants(group)
    spaces = [[[int(i == j) for i in range(r)] for j in range(r)]]
    for j in range(1, r):
        if all(len(s) == 1 for s in spaces):
            break
        mat = a[j]
        new = []
        for s in spaces:
            new.extend([s] if len(s) == 1 else _split(s, mat, ell))
        spaces = new
    if any(len(s) != 1 for s in spaces):
        raise TableError("class matrices failed to separate the characters")

    z = pow(_primitive_root(ell), (ell - 1) // M, ell)
    sizes = group.class_sizes
    inv_class = [group.class_of[group.inverse[rep]] for rep in group.class_reps]
    rows = []
    for (v,) in spaces:
        s0 = pow(v[0], -1, ell)
        v = [x * s0 % ell for x in v]
        norm = sum(v[k] * v[inv_class[k]] * pow(sizes[k], -1, ell) for k in range(r)) % ell
        dsq = group.order * pow(norm, -1, ell) % ell
        dim = next((d for d in range(1, math.isqrt(group.order) + 1) if d * d % ell == dsq), None)
        if dim is None:
            raise TableError("could not recover a character degree")
        chi_mod = [v[k] * dim * pow(sizes[k], -1, ell) % ell for k in range(r)]
        values = []
        for k in range(r):
            o = group.element_orders[k]
            w = pow(z, M // o, ell)
            inv_o = pow(o, -1, ell)
            terms = []
            for u in range(o):
                mu = sum(chi_mod[group.power_class(k, t)] * pow(w, (-u * t) % o, ell) for t in range(o))
                mu = mu * inv_o % ell
                if mu > dim:
                    raise TableError("eigenvalue multiplicity out of range during lift")
                if mu:
                    terms.append((u * (L // o), mu))
            values.append(CycloNumber.from_terms(L, terms))
        rows.append(ClassFunction(tuple(values)))
    table = _make_table(_group_data(group), rows)
    check_table(table)
    return table


# -- Frobenius twist ------------------------------------------------------------------

def galois_exponent(t: int, exponent: int, order: int) -> int:
    """An integer congruent to t mod ``exponent`` and coprime to ``order``."""
    t %= exponent
    if math.gcd(t, exponent) != 1:
        raise ValueError(f"not a Galois exponent: gcd({t}, {exponent}) != 1")
    while math.gcd(t, order) != 1:
        t += exponent
    return t


def twist_character(chi: ClassFunction, e: int, p: int, m: int) -> ClassFunction:
    """Character of the module whose e-th Frobenius twist has character chi.

    Values live in Q(zeta_m); zeta -> zeta^(p^e) is applied to each one.
    """
    if math.gcd(p, m) != 1:
        raise ValueError(f"p = {p} is not coprime to the exponent {m}")
    if e < 0:
        raise ValueError("e must be nonnegative")
    order = chi[0].order
    t = galois_exponent(pow(p, e, m), m, order)
    return chi.galois(t)


def twist_permutation(table: CharacterTable, e: int, p: int) -> list[int]:
    m = table.exponent
    index = {row.key(): i for i, row in enumerate(table.rows)}
    perm = []
    for row in table.rows:
        j = index.get(twist_character(row, e, p, m).key())
        if j is None:
            raise TableError("table not Galois-stable")
        perm.append(j)
    return perm


def multiplicative_order(p: int, m: int) -> int:
    if math.gcd(p, m) != 1:
        raise ValueError(f"{p} is not invertible modulo {m}")
    if m == 1:
        return 1
    k, x = 1, p % m
    while x != 1:
        x = x * p % m
        k += 1
    return k


def regular_character(group_order: int, num_classes: int, order: int) -> ClassFunction:
    vals = [CycloNumber.rational(order, group_order)] + [CycloNumber.rational(order, 0)] * (num_classes - 1)
    return ClassFunction(tuple(vals))


def root_of_unity_row(order: int, exps: Sequence[int]) -> ClassFunction:
    return ClassFunction(tuple(zeta(order, k) for k in exps))
