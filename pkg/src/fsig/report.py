"""Exact CSV and JSON renderings of decompositions, signatures and oracle checks."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .characters import CharacterTable
from .frobenius import FrobeniusDecomposition, SignatureReport
from .groups import FiniteMatrixGroup, ValidationReport


def frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def decomposition_csv(decomps: Sequence[FrobeniusDecomposition]) -> str:
    buf = io.StringIO()
    n = len(decomps[0].mults)
    buf.write(f"# {decomps[0].label}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["e", "q"] + [f"c_{i}" for i in range(n)])
    for d in decomps:
        w.writerow([d.e, d.q, *d.mults])
    return buf.getvalue()


def parse_decomposition_csv(text: str) -> list[tuple[int, int, list[int]]]:
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader)
    if header[:2] != ["e", "q"]:
        raise ValueError("not a decomposition CSV")
    return [(int(r[0]), int(r[1]), [int(x) for x in r[2:]]) for r in reader]


def convergence_csv(report: SignatureReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["e", "q", "i", "ratio_num", "ratio_den", "gap_num", "gap_den", "bound"])
    for r in report.convergence_rows:
        w.writerow([r.e, r.q, r.i, r.ratio.numerator, r.ratio.denominator,
                    r.gap.numerator, r.gap.denominator, frac(r.bound)])
    return buf.getvalue()


def group_summary(group: FiniteMatrixGroup) -> dict:
    return {
        "name": group.name,
        "order": group.order,
        "dim": group.dim,
        "cyclotomy": group.cyclotomy,
        "exponent": group.exponent,
        "classes": [
            {"size": s, "order": o} for s, o in zip(group.class_sizes, group.element_orders)
        ],
    }


def validation_summary(v: ValidationReport) -> dict:
    return {
        "p": v.p,
        "coprime": v.coprime,
        "reflection_free": v.reflection_free,
        "reflection_classes": list(v.reflection_classes),
    }


def table_summary(table: CharacterTable) -> dict:
    return {"labels": list(table.labels), "dims": list(table.dims)}


def decomposition_report(group, table, validation, decomps) -> dict:
    return {
        "group": group_summary(group),
        "validation": validation_summary(validation),
        "table": table_summary(table),
        "label": decomps[0].label,
        "decompositions": [
            {"e": d.e, "q": d.q, "mults": list(d.mults)} for d in decomps
        ],
    }


def signature_report(group, table, validation, report: SignatureReport) -> dict:
    return {
        "group": group_summary(group),
        "validation": validation_summary(validation),
        "table": table_summary(table),
        "e0": report.e0,
        "signatures": [frac(s) for s in report.exact_signatures],
        "signatures_approx_aux": [float(s) for s in report.exact_signatures],
        "pair_signatures": [[frac(s) for s in row] for row in report.pair_signatures],
        "decompositions": [
            {"e": d.e, "q": d.q, "mults": list(d.mults)} for d in report.decompositions
        ],
        "convergence": [
            {"e": r.e, "q": r.q, "i": r.i, "ratio": frac(r.ratio), "gap": frac(r.gap),
             "bound": frac(r.bound), "within_bound": r.within_bound}
            for r in report.convergence_rows
        ],
        "certified": report.certified,
    }


@dataclass(frozen=True)
class VerifyRow:
    e: int
    q: int
    kind: str
    item: str
    formula: str
    oracle: str

    @property
    def equal(self) -> bool:
        return self.formula == self.oracle


def verify_csv(rows: Sequence[VerifyRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["e", "q", "kind", "item", "formula", "oracle", "equal"])
    for r in rows:
        w.writerow([r.e, r.q, r.kind, r.item, r.formula, r.oracle, "yes" if r.equal else "NO"])
    return buf.getvalue()


def verify_report(group, rows: Sequence[VerifyRow], skipped: Sequence[int]) -> dict:
    return {
        "group": group_summary(group),
        "rows": [
            {"e": r.e, "q": r.q, "kind": r.kind, "item": r.item,
             "formula": r.formula, "oracle": r.oracle, "equal": r.equal}
            for r in rows
        ],
        "skipped_e": list(skipped),
        "all_equal": all(r.equal for r in rows),
    }


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"
