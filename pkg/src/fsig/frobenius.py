"""Multiplicities of irreducibles in Frobenius pushforwards and their limits.

For q = p^e the G-module S/m^[q] has basis the monomials x^lam with all
exponents below q, so its character at g is the product over eigenvalues
theta of g of 1 + theta + ... + theta^(q-1). The multiplicity of V_i in
the e-th Frobenius pushforward is the inner product of that character with
the twisted irreducible character of V_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .characters import CharacterTable, ClassFunction, multiplicative_order, twist_character
from .cyclotomic import CycloNumber, approx_complex, geometric_sum, sqrt_lower, zeta
from .groups import EigenvalueProfile, FiniteMatrixGroup, ValidationReport, validate


class InconsistentInput(ValueError):
    pass


class ValidationRefused(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(report.messages()) or "validation failed")


@dataclass(frozen=True)
class FrobeniusDecomposition:
    p: int
    e: int
    q: int
    mults: tuple[int, ...]
    coprime: bool = True
    reflection_free: bool = True

    @property
    def is_unique_decomposition(self) -> bool:
        return self.coprime and self.reflection_free

    @property
    def label(self) -> str:
        if self.is_unique_decomposition:
            return "decomposition of ^eR"
        return "G-module multiplicities of S/m^[q]"


def bullet_character(
    group: FiniteMatrixGroup, profiles: Sequence[EigenvalueProfile], q: int
) -> ClassFunction:
    """Character of S/m^[q] as a product of geometric sums over eigenvalues."""
    if q < 1:
        raise ValueError("q must be positive")
    L = group.field_order
    values = []
    for prof in profiles:
        val = CycloNumber.rational(L, 1)
        for k, mult in prof.mults.items():
            theta = zeta(L, k * (L // prof.m))
            val = val * geometric_sum(theta, q) ** mult
        values.append(val)
    return ClassFunction(tuple(values))


def _as_count(x: CycloNumber, what: str) -> int:
    r = x.as_rational()
    if r is None or r.denominator != 1 or r < 0:
        raise InconsistentInput(f"inconsistent input: {what} is {x}, not a nonnegative integer")
    return int(r)


def multiplicities(
    table: CharacterTable,
    bullet: ClassFunction,
    e: int,
    p: int,
    validation: ValidationReport | None = None,
) -> FrobeniusDecomposition:
    if table.group_order % p == 0:
        raise ValueError(f"p = {p} divides |G| = {table.group_order}")
    m = table.exponent
    mults = tuple(
        _as_count(table.inner(twist_character(chi, e, p, m), bullet), f"c_{i},{e}")
        for i, chi in enumerate(table.rows)
    )
    top = _as_count(bullet[0], "dim S/m^[q]")
    if sum(c * d for c, d in zip(mults, table.dims)) != top:
        raise InconsistentInput("inconsistent input: multiplicities do not add up to q^d")
    return FrobeniusDecomposition(
        p=p,
        e=e,
        q=p**e,
        mults=mults,
        coprime=True if validation is None else validation.coprime,
        reflection_free=True if validation is None else validation.reflection_free,
    )


def invariant_dimension(bullet: ClassFunction, class_sizes: Sequence[int], group_order: int) -> Fraction:
    """dim (S/m^[q])^G as the plain group average of the character."""
    acc = sum((v * s for v, s in zip(bullet.values, class_sizes)), CycloNumber.rational(bullet[0].order, 0))
    r = (acc / group_order).as_rational()
    if r is None:
        raise InconsistentInput("average of a character is not rational")
    return r


def generalized_f_signature(table: CharacterTable, i: int) -> Fraction:
    if not 0 <= i < len(table):
        raise IndexError(f"no irreducible with index {i}")
    return Fraction(table.dims[i], table.group_order)


def signature_pair(table: CharacterTable, i: int, j: int) -> Fraction:
    if not (0 <= i < len(table) and 0 <= j < len(table)):
        raise IndexError(f"index pair ({i}, {j}) out of range")
    return Fraction(table.dims[i] * table.dims[j], table.group_order)


def module_decomposition(
    table: CharacterTable, bullet: ClassFunction, i: int, e: int, p: int
) -> list[int]:
    """Multiplicities of each M_j in the e-th Frobenius pushforward of M_i."""
    if not 0 <= i < len(table):
        raise IndexError(f"no irreducible with index {i}")
    m = table.exponent
    prod = bullet * table.rows[i]
    out = [
        _as_count(table.inner(twist_character(chi, e, p, m), prod), f"d^{i}_{j},{e}")
        for j, chi in enumerate(table.rows)
    ]
    if sum(c * d for c, d in zip(out, table.dims)) != table.dims[i] * _as_count(bullet[0], "q^d"):
        raise InconsistentInput("inconsistent input: module decomposition fails the dimension count")
    return out


# -- certified convergence ---------------------------------------------------------

def eigen_factor_bound(theta: CycloNumber, precision: int = 96) -> Fraction:
    """Rational upper bound for 2/|1 - theta|, theta a nontrivial root of unity."""
    z = 1 - theta
    r = z.as_rational()
    if r is not None:
        return Fraction(2) / abs(r)
    box = approx_complex(z, precision)
    low = box.abs_squared_lower()
    if low <= 0:
        raise ArithmeticError("interval too wide to bound |1 - theta| away from zero")
    return Fraction(2) / sqrt_lower(low)


def class_bound_constants(group: FiniteMatrixGroup) -> list[tuple[int, Fraction]]:
    """Per class: (multiplicity t_c of eigenvalue 1, product of 2/|1-theta| bounds)."""
    L = group.field_order
    out = []
    for prof in group.profiles():
        t = prof.mults.get(0, 0)
        const = Fraction(1)
        for k, mult in prof.mults.items():
            if k == 0:
                continue
            const *= eigen_factor_bound(zeta(L, k * (L // prof.m))) ** mult
        out.append((t, const))
    return out


@dataclass(frozen=True)
class ConvergenceRow:
    e: int
    q: int
    i: int
    ratio: Fraction
    gap: Fraction
    bound: Fraction

    @property
    def within_bound(self) -> bool:
        return self.gap <= self.bound


@dataclass(frozen=True)
class SignatureReport:
    p: int
    e0: int
    exact_signatures: tuple[Fraction, ...]
    pair_signatures: tuple[tuple[Fraction, ...], ...]
    decompositions: tuple[FrobeniusDecomposition, ...]
    convergence_rows: tuple[ConvergenceRow, ...] = field(default=())

    @property
    def certified(self) -> bool:
        return all(r.within_bound for r in self.convergence_rows)


def convergence_report(
    group: FiniteMatrixGroup,
    table: CharacterTable,
    p: int,
    e_range: Iterable[int],
) -> SignatureReport:
    e_values = list(e_range)
    if not e_values:
        raise ValueError("e_range must be nonempty")
    report = validate(group, p)
    if not report.ok:
        raise ValidationRefused(report)
    d = group.dim
    n = len(table)
    sigs = tuple(generalized_f_signature(table, i) for i in range(n))
    pairs = tuple(tuple(signature_pair(table, i, j) for j in range(n)) for i in range(n))
    consts = class_bound_constants(group)
    profiles = group.profiles()
    decomps = []
    rows = []
    for e in e_values:
        q = p**e
        bullet = bullet_character(group, profiles, q)
        dec = multiplicities(table, bullet, e, p, report)
        decomps.append(dec)
        qd = q**d
        # sum over non-identity classes of |C| q^t_c prod(2/|1-theta|), before the dim factor
        base = sum(
            (group.class_sizes[c] * Fraction(q) ** consts[c][0] * consts[c][1] for c in range(1, group.num_classes)),
            Fraction(0),
        )
        for i in range(n):
            ratio = Fraction(dec.mults[i], qd)
            gap = abs(ratio - sigs[i])
            bound = base * table.dims[i] / group.order / qd
            rows.append(ConvergenceRow(e, q, i, ratio, gap, bound))
    return SignatureReport(
        p=p,
        e0=multiplicative_order(p, group.exponent),
        exact_signatures=sigs,
        pair_signatures=pairs,
        decompositions=tuple(decomps),
        convergence_rows=tuple(rows),
    )
