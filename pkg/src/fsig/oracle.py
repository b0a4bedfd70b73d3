"""Brute-force check in actual characteristic p.

The group acts on the monomial basis of S/m^[q] over a finite field that
contains the needed roots of unity; eigenvalue multiplicities come from
kernel dimensions, and are lifted back to Q(zeta) to give the character.
Nothing here uses eigenvalue profiles or geometric sums.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .characters import CharacterTable, ClassFunction, multiplicative_order, twist_character
from .cyclotomic import CycloNumber
from .groups import CycloMatrix, FiniteMatrixGroup

DEFAULT_CAP = 4096
# fields up to this size get exp/log tables
TABLE_LIMIT = 1 << 20


class OracleError(ValueError):
    pass


class OracleTooLarge(OracleError):
    pass


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _polymulmod(a: list[int], b: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    s = len(mod)
    raw = [0] * (2 * s - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                raw[i + j] += x * y
    for k in range(2 * s - 2, s - 1, -1):
        top = raw[k] % p
        if top:
            for i, m in enumerate(mod):
                raw[k - s + i] -= top * m
    return [c % p for c in raw[:s]]


def _xpow(k: int, mod: tuple[int, ...], p: int) -> int:
    """x^k modulo x^s + mod(x), returned as a digit code (1 means the unit)."""
    s = len(mod)
    result = [1] + [0] * (s - 1)
    base = ([0, 1] + [0] * (s - 2)) if s > 1 else [(-mod[0]) % p]
    while k:
        if k & 1:
            result = _polymulmod(result, base, mod, p)
        base = _polymulmod(base, base, mod, p)
        k >>= 1
    code = 0
    for c in reversed(result):
        code = code * p + c
    return code


class GaloisField:
    """GF(p^s) with elements encoded as integers sum c_i p^i (coefficients of 1, x, ..., x^(s-1)).

    The defining polynomial is primitive, so x generates the multiplicative group.
    Small fields use log and Zech-log tables; larger ones multiply polynomials directly.
    """

    def __init__(self, p: int, s: int, table_limit: int = TABLE_LIMIT):
        self.p = p
        self.s = s
        self.size = p**s
        self._order_primes = _prime_factors(self.size - 1)
        self.modulus = self._primitive_modulus()
        self.generator = _xpow(1, self.modulus, p)
        self.tabled = self.size <= table_limit
        if self.tabled:
            self._build_tables()
        self._blocks: dict[int, np.ndarray] = {}

    def _build_tables(self) -> None:
        p, n = self.p, self.size - 1
        self.exp = []
        cur = [1] + [0] * (self.s - 1)
        for _ in range(n):
            self.exp.append(self._code(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * m) % p for c, m in zip(cur, self.modulus)]
        self.log = [-1] * self.size
        for k, code in enumerate(self.exp):
            self.log[code] = k
        self.zech = [-1] * n
        for k, code in enumerate(self.exp):
            d0 = code % p
            one_plus = code - d0 + (d0 + 1) % p
            self.zech[k] = self.log[one_plus] if one_plus else -1

    def _digits(self, code: int) -> list[int]:
        out = []
        for _ in range(self.s):
            code, r = divmod(code, self.p)
            out.append(r)
        return out

    def _code(self, digits: Sequence[int]) -> int:
        code = 0
        for c in reversed(digits):
            code = code * self.p + c % self.p
        return code

    def _primitive_modulus(self) -> tuple[int, ...]:
        # x of multiplicative order p^s - 1 forces the quotient ring to be a field
        p, s = self.p, self.s
        n = self.size - 1
        for rest in itertools.product(range(p), repeat=s - 1):
            for c0 in range(1, p):
                mod = (c0, *reversed(rest))  # x^s = -(mod[0] + mod[1] x + ...)
                if _xpow(n, mod, p) == 1 and all(_xpow(n // r, mod, p) != 1 for r in self._order_primes):
                    return mod
        raise OracleError(f"no primitive polynomial of degree {s} over F_{p}")

    # -- arithmetic on codes ----------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        if not self.tabled:
            return self._code([x + y for x, y in zip(self._digits(a), self._digits(b))])
        la, lb = self.log[a], self.log[b]
        n = self.size - 1
        z = self.zech[(lb - la) % n]
        return 0 if z < 0 else self.exp[(la + z) % n]

    def neg(self, a: int) -> int:
        return self._code([-c for c in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if not self.tabled:
            return self._code(_polymulmod(self._digits(a), self._digits(b), self.modulus, self.p))
        return self.exp[(self.log[a] + self.log[b]) % (self.size - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.pow(a, self.size - 2)

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k else 1
        n = self.size - 1
        if self.tabled:
            return self.exp[(self.log[a] * k) % n]
        k %= n
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def from_fraction(self, c: Fraction) -> int:
        if c.denominator % self.p == 0:
            raise OracleError(f"entry not p-integral: {c} at p = {self.p}")
        return c.numerator * pow(c.denominator, -1, self.p) % self.p

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        order = self.size - 1
        for r in self._order_primes:
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    def block(self, a: int) -> np.ndarray:
        """Matrix over F_p of multiplication by a in the basis 1, x, ..., x^(s-1)."""
        blk = self._blocks.get(a)
        if blk is None:
            cols = [self._digits(self.mul(a, self.p**j)) for j in range(self.s)]
            blk = np.array(cols, dtype=np.int64).T
            self._blocks[a] = blk
        return blk


@lru_cache(maxsize=None)
def galois_field(p: int, s: int) -> GaloisField:
    return GaloisField(p, s)


@dataclass(frozen=True)
class FiniteFieldContext:
    """GF(p^s) with s = ord_m(p) and a fixed element xi of multiplicative order m."""

    p: int
    m: int

    def __post_init__(self):
        if math.gcd(self.p, self.m) != 1:
            raise OracleError(f"p = {self.p} divides the cyclotomic conductor {self.m}")

    @cached_property
    def s(self) -> int:
        return multiplicative_order(self.p, self.m)

    @cached_property
    def field(self) -> GaloisField:
        return galois_field(self.p, self.s)

    @cached_property
    def xi(self) -> int:
        F = self.field
        return F.pow(F.generator, (F.size - 1) // self.m)

    def zeta_image(self, n: int, k: int) -> int:
        """Image of zeta_n^k, for n dividing m."""
        if self.m % n:
            raise OracleError(f"zeta_{n} has no image: {n} does not divide {self.m}")
        return self.field.pow(self.xi, (k % n) * (self.m // n))

    def reduce(self, x: CycloNumber) -> int:
        F = self.field
        acc = 0
        for k, c in x.terms():
            acc = F.add(acc, F.mul(F.from_fraction(c), self.zeta_image(x.order, k)))
        return acc


def reduce_matrix(g: CycloMatrix, ctx: FiniteFieldContext) -> list[list[int]]:
    """Entrywise image of g under zeta -> xi (rationals reduced mod p)."""
    return [[ctx.reduce(x) for x in row] for row in g.rows]


def _is_power_of(q: int, p: int) -> bool:
    while q > 1 and q % p == 0:
        q //= p
    return q == 1


def _mul_linear(poly: dict, form: Sequence[int], F: GaloisField, q: int | None) -> dict:
    """poly * (sum_i form[i] x_i), dropping monomials with an exponent >= q."""
    out: dict[tuple[int, ...], int] = {}
    for mono, c in poly.items():
        for i, f in enumerate(form):
            if f == 0:
                continue
            if q is not None and mono[i] + 1 >= q:
                continue
            new = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
            out[new] = F.add(out.get(new, 0), F.mul(c, f))
    return {k: v for k, v in out.items() if v}


def linear_forms(gbar: Sequence[Sequence[int]]) -> list[list[int]]:
    """g x_j = sum_i f_ij x_i: the j-th form is column j of the matrix."""
    d = len(gbar)
    return [[gbar[i][j] for i in range(d)] for j in range(d)]


def expand_monomial(gbar, lam: Sequence[int], ctx: FiniteFieldContext, q: int | None = None) -> dict:
    """Image of x^lam; with q given, computed in k[x]/(x_1^q, ..., x_d^q)."""
    F = ctx.field
    forms = linear_forms(gbar)
    poly = {(0,) * len(lam): 1}
    for j, a in enumerate(lam):
        for _ in range(a):
            poly = _mul_linear(poly, forms[j], F, q)
    return poly


def frobenius_ideal_is_stable(gbar, q: int, ctx: FiniteFieldContext) -> bool:
    """Every term of g(x_i^q) has some exponent >= q."""
    d = len(gbar)
    for i in range(d):
        lam = [0] * d
        lam[i] = q
        for mono in expand_monomial(gbar, lam, ctx):
            if all(a < q for a in mono):
                return False
    return True


@dataclass(frozen=True)
class ActionMatrix:
    """Sparse columns: column for basis monomial lam maps monomial -> field code."""

    q: int
    d: int
    basis: tuple[tuple[int, ...], ...]
    columns: tuple[dict, ...]

    @property
    def size(self) -> int:
        return len(self.basis)

    def dense(self) -> list[list[int]]:
        idx = {m: i for i, m in enumerate(self.basis)}
        n = self.size
        out = [[0] * n for _ in range(n)]
        for j, col in enumerate(self.columns):
            for mono, c in col.items():
                out[idx[mono]][j] = c
        return out


def frobenius_quotient_action(gbar, q: int, ctx: FiniteFieldContext) -> ActionMatrix:
    """Matrix of g on S/m^[q] in the lexicographic monomial basis.

    Images are built by multiplying with one linear form at a time inside the
    truncated ring, which reproduces the multinomial expansion reduced mod p.
    """
    if q < 1 or not _is_power_of(q, ctx.p):
        raise OracleError("Frobenius powers are only G-stable for q = p^e")
    F = ctx.field
    d = len(gbar)
    forms = linear_forms(gbar)
    basis = tuple(itertools.product(range(q), repeat=d))
    images: dict[tuple[int, ...], dict] = {(0,) * d: {(0,) * d: 1}}
    for lam in basis[1:]:
        # drop the last nonzero exponent by one and reuse that image
        j = max(i for i, a in enumerate(lam) if a)
        prev = lam[:j] + (lam[j] - 1,) + lam[j + 1:]
        images[lam] = _mul_linear(images[prev], forms[j], F, q)
    return ActionMatrix(q=q, d=d, basis=basis, columns=tuple(images[lam] for lam in basis))


def _rank_mod_p(mat: np.ndarray, p: int) -> int:
    a = mat % p
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        a[rank] = a[rank] * pow(int(a[rank, col]), -1, p) % p
        below = np.nonzero(a[rank + 1:, col])[0] + rank + 1
        if below.size:
            a[below] = (a[below] - np.outer(a[below, col], a[rank])) % p
        rank += 1
    return rank


def _kernel_dim(block: list[list[int]], lam: int, F: GaloisField) -> int:
    """dim over GF(p^s) of ker(block - lam I), via the F_p blow-up."""
    n = len(block)
    if n == 1:
        return int(block[0][0] == lam)
    s = F.s
    big = np.zeros((n * s, n * s), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            v = block[i][j]
            if i == j:
                v = F.sub(v, lam)
            if v:
                big[i * s:(i + 1) * s, j * s:(j + 1) * s] = F.block(v)
    rank = _rank_mod_p(big, F.p)
    return (n * s - rank) // s


def _components(A: ActionMatrix) -> list[list[int]]:
    idx = {m: i for i, m in enumerate(A.basis)}
    r, c = [], []
    for j, col in enumerate(A.columns):
        for mono in col:
            r.append(idx[mono])
            c.append(j)
    n = A.size
    graph = coo_matrix((np.ones(len(r)), (r, c)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    comps: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        comps.setdefault(int(lab), []).append(i)
    return list(comps.values())


def eigen_multiplicities(A: ActionMatrix, m: int, ctx: FiniteFieldContext) -> dict[int, int]:
    """mult[k] = dim ker(A - xi^((M/m) k) I) for k in Z/m, M the context's order."""
    F = ctx.field
    idx = {mono: i for i, mono in enumerate(A.basis)}
    blocks = []
    for comp in _components(A):
        pos = {g: a for a, g in enumerate(comp)}
        blk = [[0] * len(comp) for _ in comp]
        for a, j in enumerate(comp):
            for mono, c in A.columns[j].items():
                blk[pos[idx[mono]]][a] = c
        blocks.append(blk)
    mults = {}
    for k in range(m):
        lam = ctx.zeta_image(m, k)
        total = sum(_kernel_dim(b, lam, F) for b in blocks)
        if total:
            mults[k] = total
    return mults


def brauer_character_of_action(A: ActionMatrix, m: int, ctx: FiniteFieldContext, order: int | None = None) -> CycloNumber:
    """Sum over eigenvalues xi^j of the lifted roots of unity zeta^j, at cyclotomic ``order``."""
    order = order or ctx.m
    if order % m:
        raise OracleError(f"element order {m} does not divide {order}")
    mults = eigen_multiplicities(A, m, ctx)
    if sum(mults.values()) != A.size:
        raise OracleError("matrix not semisimple: eigenspaces do not fill the space")
    return CycloNumber.from_terms(order, ((k * (order // m), c) for k, c in mults.items()))


def oracle_context(group: FiniteMatrixGroup, p: int) -> FiniteFieldContext:
    return FiniteFieldContext(p, group.field_order)


def oracle_character(group: FiniteMatrixGroup, p: int, e: int, cap: int = DEFAULT_CAP) -> ClassFunction:
    """Character of S/m^[q] from the finite-field action, one value per class."""
    q = p**e
    if q**group.dim > cap:
        raise OracleTooLarge(f"oracle instance too large: q^d = {q**group.dim} exceeds cap {cap}")
    ctx = oracle_context(group, p)
    values = []
    for c, rep in enumerate(group.class_reps):
        gbar = reduce_matrix(group.elements[rep], ctx)
        A = frobenius_quotient_action(gbar, q, ctx)
        values.append(brauer_character_of_action(A, group.element_orders[c], ctx, group.field_order))
    return ClassFunction(tuple(values))


def oracle_multiplicities(
    group: FiniteMatrixGroup,
    table: CharacterTable,
    p: int,
    e: int,
    cap: int = DEFAULT_CAP,
    character: ClassFunction | None = None,
) -> list[int]:
    """Twisted inner products against the oracle character (pass ``character`` to reuse one)."""
    if group.order % p == 0:
        raise OracleError(f"p = {p} divides |G| = {group.order}")
    chi = character if character is not None else oracle_character(group, p, e, cap)
    m = table.exponent
    out = []
    for i, row in enumerate(table.rows):
        val = table.inner(twist_character(row, e, p, m), chi).as_rational()
        if val is None or val.denominator != 1 or val < 0:
            raise OracleError(f"oracle multiplicity for V_{i} is not a nonnegative integer: {val}")
        out.append(int(val))
    return out
