"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Numbers are dense coefficient vectors of length phi(n) in the power basis
1, z, ..., z^(phi(n)-1), reduced modulo the n-th cyclotomic polynomial.
All values are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from mpmath import iv
from mpmath.libmp import to_rational

Scalar = Union[int, Fraction]


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den must be monic; coefficients low -> high
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            quot[k - dn] = c
            for j in range(dn + 1):
                num[k - dn + j] -= c * den[j]
    rem = num[:dn] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (lowest degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("cyclotomic_polynomial needs n >= 1")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """x^k mod Phi_n for k = 0..n-1, as integer vectors of length phi(n)."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce with the monic modulus
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


def _reduce(order: int, raw: dict[int, Fraction] | list) -> tuple[Fraction, ...]:
    table = _power_table(order)
    deg = len(table[0])
    out = [Fraction(0)] * deg
    items = raw.items() if isinstance(raw, dict) else enumerate(raw)
    for k, c in items:
        if not c:
            continue
        k %= order
        if k < deg:
            out[k] += c
        else:
            for j, t in enumerate(table[k]):
                if t:
                    out[j] += c * t
    return tuple(out)


def _as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class CycloNumber:
    """An element of Q(zeta_order) in canonical form."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Iterable[Scalar]):
        coeffs = tuple(_as_fraction(c) for c in coeffs)
        deg = euler_phi(order)
        if len(coeffs) != deg:
            raise ValueError(f"order {order} needs {deg} coefficients, got {len(coeffs)}")
        self.order = order
        self.coeffs = coeffs
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def rational(cls, order: int, value: Scalar) -> CycloNumber:
        deg = euler_phi(order)
        return cls(order, (_as_fraction(value),) + (Fraction(0),) * (deg - 1))

    @classmethod
    def from_terms(cls, order: int, terms: Iterable[tuple[int, Scalar]]) -> CycloNumber:
        """Sum of c * zeta_order^k over (k, c) pairs, reduced."""
        raw: dict[int, Fraction] = {}
        for k, c in terms:
            k %= order
            raw[k] = raw.get(k, Fraction(0)) + _as_fraction(c)
        return cls(order, _reduce(order, raw))

    # -- coercion -----------------------------------------------------
    def _coerce(self, other) -> CycloNumber:
        if isinstance(other, CycloNumber):
            if other.order != self.order:
                raise ValueError(
                    f"incompatible cyclotomic orders {self.order} and {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.rational(self.order, other)
        return NotImplemented

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNumber(self.order, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycloNumber:
        return CycloNumber(self.order, (-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNumber(self.order, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            return CycloNumber(self.order, (a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a = [(i, c) for i, c in enumerate(self.coeffs) if c]
        b = [(j, c) for j, c in enumerate(other.coeffs) if c]
        raw = [Fraction(0)] * (2 * len(self.coeffs) - 1)
        for i, ci in a:
            for j, cj in b:
                raw[i + j] += ci * cj
        return CycloNumber(self.order, _reduce(self.order, raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / _as_fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __rtruediv__(self, other):
        return self.invert() * other

    def __pow__(self, k: int) -> CycloNumber:
        if k < 0:
            return self.invert() ** (-k)
        result = CycloNumber.rational(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, CycloNumber):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            r = self.as_rational()
            self._hash = hash(r) if r is not None else hash((self.order, self.coeffs))
        return self._hash

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # -- field operations ---------------------------------------------
    def invert(self) -> CycloNumber:
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        modulus = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r0, r1 = modulus, _trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            quot, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(quot, s1)))
        # r0 is a nonzero constant because Phi_n is irreducible
        inv_c = 1 / r0[0]
        return CycloNumber.from_terms(self.order, ((k, c * inv_c) for k, c in enumerate(s0)))

    def galois(self, t: int) -> CycloNumber:
        """Apply the automorphism zeta -> zeta^t."""
        if math.gcd(t, self.order) != 1:
            raise ValueError(f"not a Galois exponent: gcd({t}, {self.order}) != 1")
        return CycloNumber.from_terms(
            self.order, ((k * t, c) for k, c in enumerate(self.coeffs) if c)
        )

    def conjugate(self) -> CycloNumber:
        return self.galois(-1)

    def embed(self, new_order: int) -> CycloNumber:
        if new_order % self.order:
            raise ValueError(f"cannot embed order {self.order} into order {new_order}")
        step = new_order // self.order
        return CycloNumber.from_terms(
            new_order, ((k * step, c) for k, c in enumerate(self.coeffs) if c)
        )

    def as_rational(self) -> Fraction | None:
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def is_root_of_unity(self) -> bool:
        # roots of unity in Q(zeta_n) have order dividing lcm(2, n)
        return not self.is_zero() and self ** (2 * self.order) == 1

    # -- presentation -------------------------------------------------
    def key(self) -> tuple[Fraction, ...]:
        return self.coeffs

    def terms(self) -> list[tuple[int, Fraction]]:
        return [(k, c) for k, c in enumerate(self.coeffs) if c]

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "terms": [[k, f"{c.numerator}/{c.denominator}"] for k, c in self.terms()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> CycloNumber:
        order = int(obj["order"])
        if order < 1:
            raise ValueError("order must be positive")
        return cls.from_terms(order, ((int(k), Fraction(c)) for k, c in obj["terms"]))

    def __repr__(self) -> str:
        return f"CycloNumber({self.order}, {self})"

    def __str__(self) -> str:
        parts = []
        for k, c in self.terms():
            if k == 0:
                parts.append(str(c))
            else:
                mono = f"z{self.order}" if k == 1 else f"z{self.order}^{k}"
                parts.append(mono if c == 1 else ("-" + mono if c == -1 else f"{c}*{mono}"))
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


# -- small Q[x] helpers used by invert ---------------------------------------

def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [Fraction(0)]


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [Fraction(0)], _trim(num)
    lead = den[-1]
    quot = [Fraction(0)] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k] / lead
        if c:
            quot[k - dn] = c
            for j in range(dn + 1):
                num[k - dn + j] -= c * den[j]
    return _trim(quot), _trim(num[:dn] or [Fraction(0)])


# -- module-level operations ---------------------------------------------------

def zeta(n: int, k: int = 1) -> CycloNumber:
    """zeta_n^k in canonical form at order n."""
    if n < 1:
        raise ValueError("zeta needs n >= 1")
    return CycloNumber(n, (Fraction(c) for c in _power_table(n)[k % n]))


def galois(a: CycloNumber, t: int) -> CycloNumber:
    return a.galois(t)


def embed(a: CycloNumber, new_order: int) -> CycloNumber:
    return a.embed(new_order)


def as_rational(a: CycloNumber) -> Fraction | None:
    return a.as_rational()


def invert(a: CycloNumber) -> CycloNumber:
    return a.invert()


def geometric_sum(theta: CycloNumber, q: int) -> CycloNumber:
    """1 + theta + ... + theta^(q-1) for a root of unity theta."""
    if q < 1:
        raise ValueError("geometric_sum needs q >= 1")
    if theta == 1:
        return CycloNumber.rational(theta.order, q)
    if not theta.is_root_of_unity():
        raise ValueError("geometric_sum needs a root of unity")
    return (1 - theta ** q) * (1 - theta).invert()


# -- rigorous complex enclosures -----------------------------------------------

@dataclass(frozen=True)
class ComplexInterval:
    """Axis-aligned box [re_lo, re_hi] x [im_lo, im_hi] with exact rational ends."""

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    @property
    def mid(self) -> complex:
        return complex(float((self.re_lo + self.re_hi) / 2), float((self.im_lo + self.im_hi) / 2))

    @property
    def radius(self) -> Fraction:
        """Upper bound on the distance from the exact midpoint to any point of the box."""
        hw = (self.re_hi - self.re_lo) / 2
        hh = (self.im_hi - self.im_lo) / 2
        return hw + hh

    def contains(self, z: complex) -> bool:
        return (self.re_lo <= Fraction(z.real) <= self.re_hi
                and self.im_lo <= Fraction(z.imag) <= self.im_hi)

    def abs_squared_lower(self) -> Fraction:
        def lo(a: Fraction, b: Fraction) -> Fraction:
            if a <= 0 <= b:
                return Fraction(0)
            return min(a * a, b * b)
        return lo(self.re_lo, self.re_hi) + lo(self.im_lo, self.im_hi)

    def abs_squared_upper(self) -> Fraction:
        return max(self.re_lo ** 2, self.re_hi ** 2) + max(self.im_lo ** 2, self.im_hi ** 2)


def _endpoints(x) -> tuple[Fraction, Fraction]:
    a, b = x._mpi_
    na, da = to_rational(a)
    nb, db = to_rational(b)
    return Fraction(int(na), int(da)), Fraction(int(nb), int(db))


def approx_complex(a: CycloNumber, precision: int = 64) -> ComplexInterval:
    """Enclose the value of a at zeta_n = exp(2 pi i / n) using interval arithmetic."""
    if precision < 1:
        raise ValueError("precision must be positive")
    old = iv.prec
    try:
        iv.prec = precision
        re = iv.mpf(0)
        im = iv.mpf(0)
        for k, c in a.terms():
            if k == 0:
                re += iv.mpf(c.numerator) / c.denominator
                continue
            angle = 2 * iv.pi * k / a.order
            coef = iv.mpf(c.numerator) / c.denominator
            re += coef * iv.cos(angle)
            im += coef * iv.sin(angle)
        re_lo, re_hi = _endpoints(re)
        im_lo, im_hi = _endpoints(im)
    finally:
        iv.prec = old
    return ComplexInterval(re_lo, re_hi, im_lo, im_hi)


def sqrt_upper(x: Fraction, bits: int = 64) -> Fraction:
    """A rational r with r >= sqrt(x), at most 2^-bits above it."""
    if x < 0:
        raise ValueError("sqrt of negative number")
    scale = 1 << (2 * bits)
    num = x.numerator * scale
    r = math.isqrt(num // x.denominator)
    while Fraction(r * r, scale) < x:
        r += 1
    return Fraction(r, 1 << bits)


def sqrt_lower(x: Fraction, bits: int = 64) -> Fraction:
    if x < 0:
        raise ValueError("sqrt of negative number")
    scale = 1 << (2 * bits)
    r = math.isqrt(x.numerator * scale // x.denominator)
    return Fraction(r, 1 << bits)
