"""Finite matrix groups over Q(zeta_n): closure, classes, power maps, eigenvalues."""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Sequence

from .cyclotomic import CycloNumber, zeta


class GroupError(ValueError):
    pass


class CycloMatrix:
    """Square matrix with entries in Q(zeta_order)."""

    __slots__ = ("dim", "order", "rows", "_key")

    def __init__(self, rows: Sequence[Sequence[CycloNumber]]):
        rows = tuple(tuple(r) for r in rows)
        dim = len(rows)
        if dim == 0 or any(len(r) != dim for r in rows):
            raise GroupError("matrix must be square and nonempty")
        orders = {x.order for r in rows for x in r}
        if len(orders) != 1:
            raise GroupError("matrix entries must share one cyclotomic order")
        self.dim = dim
        self.order = orders.pop()
        self.rows = rows
        self._key = None

    @classmethod
    def identity(cls, dim: int, order: int) -> CycloMatrix:
        one = CycloNumber.rational(order, 1)
        zero = CycloNumber.rational(order, 0)
        return cls([[one if i == j else zero for j in range(dim)] for i in range(dim)])

    @classmethod
    def diagonal(cls, entries: Sequence[CycloNumber]) -> CycloMatrix:
        zero = CycloNumber.rational(entries[0].order, 0)
        n = len(entries)
        return cls([[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_rationals(cls, rows, order: int) -> CycloMatrix:
        return cls([[CycloNumber.rational(order, Fraction(x)) for x in r] for r in rows])

    def __getitem__(self, ij: tuple[int, int]) -> CycloNumber:
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other: CycloMatrix) -> CycloMatrix:
        if self.dim != other.dim:
            raise GroupError("dimension mismatch")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = None
                for a, b in zip(r, c):
                    if a.is_zero() or b.is_zero():
                        continue
                    t = a * b
                    acc = t if acc is None else acc + t
                row.append(acc if acc is not None else CycloNumber.rational(self.order, 0))
            out.append(row)
        return CycloMatrix(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, CycloMatrix) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(x.coeffs for r in self.rows for x in r)
        return self._key

    def trace(self) -> CycloNumber:
        acc = self.rows[0][0]
        for i in range(1, self.dim):
            acc = acc + self.rows[i][i]
        return acc

    def determinant(self) -> CycloNumber:
        m = [list(r) for r in self.rows]
        d = self.dim
        det = CycloNumber.rational(self.order, 1)
        for col in range(d):
            piv = next((r for r in range(col, d) if not m[r][col].is_zero()), None)
            if piv is None:
                return CycloNumber.rational(self.order, 0)
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            det = det * m[col][col]
            inv = m[col][col].invert()
            for r in range(col + 1, d):
                if not m[r][col].is_zero():
                    f = m[r][col] * inv
                    m[r] = [a - f * b for a, b in zip(m[r], m[col])]
        return det

    def embed(self, new_order: int) -> CycloMatrix:
        return CycloMatrix([[x.embed(new_order) for x in r] for r in self.rows])

    def to_json(self) -> list:
        return [[x.to_json() for x in r] for r in self.rows]

    def __repr__(self) -> str:
        return "[" + "; ".join(", ".join(str(x) for x in r) for r in self.rows) + "]"


@dataclass(frozen=True)
class EigenvalueProfile:
    """Eigenvalue multiplicities of a class representative: mults[k] counts zeta_m^k."""

    class_index: int
    m: int
    mults: dict[int, int]

    def eigen_exponents(self) -> list[int]:
        return [k for k in sorted(self.mults) for _ in range(self.mults[k])]


@dataclass(eq=False)
class FiniteMatrixGroup:
    dim: int
    cyclotomy: int
    elements: list[CycloMatrix]
    table: list[list[int]]
    inverse: list[int]
    class_reps: list[int]
    class_sizes: list[int]
    class_of: list[int]
    element_orders: list[int]
    power_map: list[list[int]]
    name: str = "group"
    _profiles: dict = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def num_classes(self) -> int:
        return len(self.class_reps)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.element_orders)

    @cached_property
    def field_order(self) -> int:
        """Common conductor for traces, eigenvalues and character values."""
        return math.lcm(self.cyclotomy, self.exponent)

    def power_class(self, c: int, j: int) -> int:
        return self.power_map[c][j % self.element_orders[c]]

    def element_power(self, x: int, j: int) -> int:
        y = 0
        for _ in range(j):
            y = self.table[y][x]
        return y

    @cached_property
    def class_traces(self) -> list[CycloNumber]:
        L = self.field_order
        return [self.elements[r].trace().embed(L) for r in self.class_reps]

    def profile(self, c: int) -> EigenvalueProfile:
        if c not in self._profiles:
            self._profiles[c] = eigenvalue_profile(self, c)
        return self._profiles[c]

    def profiles(self) -> list[EigenvalueProfile]:
        return [self.profile(c) for c in range(self.num_classes)]


def close_group(
    generators: Sequence[CycloMatrix], max_order: int = 10_000, name: str = "group"
) -> FiniteMatrixGroup:
    """Enumerate the group generated by ``generators``."""
    if not generators:
        raise GroupError("need at least one generator")
    dim = generators[0].dim
    order = generators[0].order
    for g in generators:
        if g.dim != dim or g.order != order:
            raise GroupError("generators must share dimension and cyclotomy")
        if g.determinant().is_zero():
            raise GroupError("generator is not invertible")

    ident = CycloMatrix.identity(dim, order)
    elements = [ident]
    index = {ident.key(): 0}
    parent: list[tuple[int, int] | None] = [None]
    left: list[list[int]] = [[] for _ in generators]
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for gi, g in enumerate(generators):
            y = g * elements[x]
            k = y.key()
            j = index.get(k)
            if j is None:
                if len(elements) >= max_order:
                    raise GroupError(f"group too large or infinite (more than {max_order} elements)")
                j = len(elements)
                index[k] = j
                elements.append(y)
                parent.append((gi, x))
                queue.append(j)
            left[gi].append((x, j))
    n = len(elements)
    lperm = []
    for gi in range(len(generators)):
        perm = [0] * n
        for x, j in left[gi]:
            perm[x] = j
        lperm.append(perm)

    # Cayley table row by row: e_i = g * e_parent  =>  e_i e_j = g (e_parent e_j)
    table: list[list[int]] = [list(range(n))]
    for i in range(1, n):
        gi, par = parent[i]
        perm = lperm[gi]
        table.append([perm[t] for t in table[par]])
    inverse = [0] * n
    for i in range(n):
        inverse[i] = table[i].index(0)

    gen_idx = [index[g.key()] for g in generators]
    class_of = [-1] * n
    raw_classes: list[list[int]] = []
    for x in range(n):
        if class_of[x] >= 0:
            continue
        cid = len(raw_classes)
        orbit = [x]
        class_of[x] = cid
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in gen_idx:
                z = table[table[g][y]][inverse[g]]
                if class_of[z] < 0:
                    class_of[z] = cid
                    orbit.append(z)
                    queue.append(z)
        raw_classes.append(orbit)

    def elem_order(x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = table[y][x]
            k += 1
        return k

    keyed = []
    for orbit in raw_classes:
        rep = min(orbit, key=lambda i: elements[i].key())
        keyed.append((elem_order(rep), len(orbit), elements[rep].key(), rep, orbit))
    keyed.sort(key=lambda t: t[:3])

    class_reps = [t[3] for t in keyed]
    class_sizes = [t[1] for t in keyed]
    element_orders = [t[0] for t in keyed]
    class_of = [-1] * n
    for c, t in enumerate(keyed):
        for x in t[4]:
            class_of[x] = c

    power_map = []
    for c, rep in enumerate(class_reps):
        row, y = [], 0
        for _ in range(element_orders[c]):
            row.append(class_of[y])
            y = table[y][rep]
        power_map.append(row)

    return FiniteMatrixGroup(
        dim=dim,
        cyclotomy=order,
        elements=elements,
        table=table,
        inverse=inverse,
        class_reps=class_reps,
        class_sizes=class_sizes,
        class_of=class_of,
        element_orders=element_orders,
        power_map=power_map,
        name=name,
    )


def eigenvalue_profile(group: FiniteMatrixGroup, c: int) -> EigenvalueProfile:
    """Eigenvalue multiplicities of class c by Fourier inversion of traces of powers."""
    m = group.element_orders[c]
    L = group.field_order
    step = L // m
    traces = [group.class_traces[group.power_class(c, j)] for j in range(m)]
    mults: dict[int, int] = {}
    for k in range(m):
        acc = CycloNumber.rational(L, 0)
        for j, t in enumerate(traces):
            acc = acc + zeta(L, -k * j * step) * t
        val = (acc / m).as_rational()
        if val is None or val.denominator != 1 or val < 0:
            raise GroupError("inconsistent group data: non-integral eigenvalue multiplicity")
        if val:
            mults[k] = int(val)
    if sum(mults.values()) != group.dim:
        raise GroupError("inconsistent group data: multiplicities do not sum to the dimension")
    return EigenvalueProfile(c, m, mults)


def is_pseudo_reflection(profile: EigenvalueProfile, d: int) -> bool:
    """True when a non-identity element fixes a hyperplane pointwise."""
    if profile.m == 1:
        return False
    return profile.mults.get(0, 0) == d - 1


@dataclass(frozen=True)
class ValidationReport:
    p: int
    group_order: int
    coprime: bool
    reflection_free: bool
    reflection_classes: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.coprime and self.reflection_free

    def messages(self) -> list[str]:
        out = []
        if not self.coprime:
            out.append(f"p = {self.p} divides |G| = {self.group_order}")
        if not self.reflection_free:
            cls = ", ".join(str(c) for c in self.reflection_classes)
            out.append(f"pseudo-reflection present: classes {cls}")
        return out


def validate(group: FiniteMatrixGroup, p: int) -> ValidationReport:
    refl = tuple(
        c for c in range(group.num_classes) if is_pseudo_reflection(group.profile(c), group.dim)
    )
    return ValidationReport(
        p=p,
        group_order=group.order,
        coprime=group.order % p != 0,
        reflection_free=not refl,
        reflection_classes=refl,
    )


# -- builtin families -------------------------------------------------------------

@dataclass(frozen=True)
class Family:
    name: str
    params: dict
    generators: tuple[CycloMatrix, ...]
    expected_order: int
    notes: str = ""

    def build(self) -> FiniteMatrixGroup:
        group = close_group(self.generators, max_order=self.expected_order, name=self.label)
        if group.order != self.expected_order:
            raise GroupError(f"{self.label}: expected |G| = {self.expected_order}, got {group.order}")
        return group

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        args = ",".join(
            "[" + ",".join(map(str, v)) + "]" if isinstance(v, (list, tuple)) else str(v)
            for v in self.params.values()
        )
        return f"{self.name}({args})"


FAMILIES = ("cyclic_weights", "binary_dihedral", "binary_tetrahedral", "symmetric2_reflection")


def builtin_family(name: str, n: int | None = None, weights: Sequence[int] | None = None) -> Family:
    if name == "cyclic_weights":
        if n is None or n < 1 or not weights:
            raise GroupError("cyclic_weights needs n >= 1 and a weight list")
        weights = tuple(int(a) for a in weights)
        gen = CycloMatrix.diagonal([zeta(n, a) for a in weights])
        order = n // math.gcd(n, *weights)
        return Family(name, {"n": n, "weights": weights}, (gen,), order)
    if name == "binary_dihedral":
        if n is None or n < 1:
            raise GroupError("binary_dihedral needs n >= 1")
        N = 2 * n
        a = CycloMatrix.diagonal([zeta(N, 1), zeta(N, -1)])
        b = CycloMatrix.from_rationals([[0, 1], [-1, 0]], N)
        return Family(name, {"n": n}, (a, b), 4 * n)
    if name == "binary_tetrahedral":
        i = zeta(8, 2)
        one = CycloNumber.rational(8, 1)
        zero = CycloNumber.rational(8, 0)
        qi = CycloMatrix([[i, zero], [zero, -i]])
        qj = CycloMatrix([[zero, one], [-one, zero]])
        half = Fraction(1, 2)
        w = CycloMatrix([[(i - 1) * half, (i + 1) * half], [(i - 1) * half, (-i - 1) * half]])
        return Family(name, {}, (qi, qj, w), 24, notes="entries have denominator 2")
    if name == "symmetric2_reflection":
        s = CycloMatrix.from_rationals([[0, 1], [1, 0]], 2)
        return Family(name, {}, (s,), 2, notes="generated by a pseudo-reflection")
    raise GroupError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")


def load_group_file(path: str | Path) -> FiniteMatrixGroup:
    """Read ``{"cyclotomy", "dim", "max_order", "generators"}`` and close the group."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise GroupError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    try:
        n = int(data["cyclotomy"])
        d = int(data["dim"])
        max_order = int(data.get("max_order", 10_000))
        gens = []
        for gi, mat in enumerate(data["generators"]):
            rows = [[CycloNumber.from_json(x).embed(n) for x in row] for row in mat]
            g = CycloMatrix(rows)
            if g.dim != d:
                raise GroupError(f"generator {gi} has dimension {g.dim}, expected {d}")
            gens.append(g)
    except (KeyError, TypeError, ValueError) as exc:
        raise GroupError(f"{path}: malformed group file: {exc}") from exc
    return close_group(gens, max_order=max_order, name=path.stem)


def group_to_json(generators: Sequence[CycloMatrix], max_order: int) -> dict:
    g0 = generators[0]
    return {
        "cyclotomy": g0.order,
        "dim": g0.dim,
        "max_order": max_order,
        "generators": [g.to_json() for g in generators],
    }
