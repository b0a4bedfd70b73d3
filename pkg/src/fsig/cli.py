"""Command-line front end.

Exit statuses: 0 success, 1 validation refusal, 2 input/parse error,
3 oracle mismatch (or a failed internal certificate).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import report as rep
from .characters import (
    CharacterTable,
    TableError,
    character_table_dixon,
    dumps_table,
    load_character_table,
    multiplicative_order,
)
from .frobenius import (
    InconsistentInput,
    bullet_character,
    convergence_report,
    multiplicities,
)
from .groups import (
    FAMILIES,
    FiniteMatrixGroup,
    GroupError,
    builtin_family,
    is_pseudo_reflection,
    load_group_file,
    validate,
)
from .oracle import DEFAULT_CAP, OracleError, oracle_character, oracle_multiplicities

EXIT_OK, EXIT_REFUSED, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    family: str | None
    n: int | None
    weights: list[int] | None
    group_file: str | None
    table_file: str | None
    p: int | None
    e_min: int
    e_max: int
    oracle_cap: int
    fmt: str
    out: str | None
    as_g_module: bool

    @property
    def e_range(self) -> range:
        return range(self.e_min, self.e_max + 1)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % f for f in range(2, int(n**0.5) + 1))


def _weights(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"weights must be comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("group source")
    src.add_argument("--family", choices=FAMILIES)
    src.add_argument("--n", type=int)
    src.add_argument("--weights", type=_weights)
    src.add_argument("--group-file")
    common.add_argument("--table-file", help="character table JSON (default: computed)")
    common.add_argument("--p", type=int, help="the characteristic")
    common.add_argument("--e-min", type=int, default=1)
    common.add_argument("--e-max", type=int, default=None)
    common.add_argument("--oracle-cap", type=int, default=DEFAULT_CAP)
    common.add_argument("--format", dest="fmt", choices=("csv", "report"), default=None)
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--as-g-module", action="store_true",
                        help="allow decompose on groups with pseudo-reflections")

    ap = argparse.ArgumentParser(
        prog="fsig",
        description="Frobenius pushforward multiplicities and generalized F-signatures of invariant rings.",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="summarize the group and validate p")
    sub.add_parser("decompose", parents=[common], help="multiplicities c_{i,e}")
    sub.add_parser("signature", parents=[common], help="exact signatures and convergence")
    sub.add_parser("verify", parents=[common], help="compare against the finite-field oracle")
    sub.add_parser("table", parents=[common], help="export the character table as JSON")
    return ap


def config_from_args(args: argparse.Namespace) -> RunConfig:
    e_max = args.e_max if args.e_max is not None else args.e_min
    cfg = RunConfig(
        family=args.family, n=args.n, weights=args.weights, group_file=args.group_file,
        table_file=args.table_file, p=args.p, e_min=args.e_min, e_max=e_max,
        oracle_cap=args.oracle_cap, fmt=args.fmt, out=args.out, as_g_module=args.as_g_module,
    )
    if (cfg.family is None) == (cfg.group_file is None):
        raise InputError("give exactly one of --family or --group-file")
    if cfg.p is not None and not _is_prime(cfg.p):
        raise InputError(f"--p must be prime, got {cfg.p}")
    if cfg.e_min < 0 or cfg.e_max < cfg.e_min:
        raise InputError(f"empty or negative e-range {cfg.e_min}..{cfg.e_max}")
    if cfg.oracle_cap < 1:
        raise InputError("--oracle-cap must be at least 1")
    return cfg


def resolve_group(cfg: RunConfig) -> FiniteMatrixGroup:
    if cfg.group_file:
        return load_group_file(cfg.group_file)
    return builtin_family(cfg.family, n=cfg.n, weights=cfg.weights).build()


def resolve_table(cfg: RunConfig, group: FiniteMatrixGroup) -> CharacterTable:
    if cfg.table_file:
        return load_character_table(cfg.table_file, group)
    return character_table_dixon(group)


def _require_p(cfg: RunConfig) -> int:
    if cfg.p is None:
        raise InputError("--p is required for this command")
    return cfg.p


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


# -- commands -----------------------------------------------------------------------

def cmd_info(cfg: RunConfig) -> int:
    group = resolve_group(cfg)
    lines = [
        f"group: {group.name}",
        f"|G| = {group.order}",
        f"d = {group.dim}",
        f"exp(G) = {group.exponent}",
        f"classes = {group.num_classes}",
        "class sizes = " + ", ".join(map(str, group.class_sizes)),
        "element orders = " + ", ".join(map(str, group.element_orders)),
    ]
    refl = [c for c in range(group.num_classes) if is_pseudo_reflection(group.profile(c), group.dim)]
    lines.append("pseudo-reflection classes = " + (", ".join(map(str, refl)) if refl else "none"))
    status = EXIT_OK
    if cfg.p is not None:
        p = cfg.p
        v = validate(group, p)
        lines.append(f"p = {p}")
        if group.exponent % p:
            lines.append(f"e0 = ord_{group.exponent}({p}) = {multiplicative_order(p, group.exponent)}")
        else:
            lines.append("e0 = undefined (p divides exp(G))")
        lines.append("validation: " + ("ok" if v.ok else "FAILED"))
        if not v.coprime:
            status = EXIT_REFUSED
    _emit(cfg, "\n".join(lines) + "\n")
    for c in refl:
        rep_matrix = group.elements[group.class_reps[c]]
        print(f"warning: pseudo-reflection present: class {c} (representative {rep_matrix})", file=sys.stderr)
    if status == EXIT_REFUSED:
        _err(f"p = {cfg.p} divides |G| = {group.order}")
    return status


def cmd_decompose(cfg: RunConfig) -> int:
    p = _require_p(cfg)
    group = resolve_group(cfg)
    v = validate(group, p)
    if not v.coprime:
        _err(f"refusing: coprimality flag failed, p = {p} divides |G| = {group.order}")
        return EXIT_REFUSED
    if not v.reflection_free and not cfg.as_g_module:
        _err("refusing: pseudo-reflection-free flag failed (classes "
             + ", ".join(map(str, v.reflection_classes))
             + "); the decomposition of ^eR is not unique. Use --as-g-module for G-module multiplicities.")
        return EXIT_REFUSED
    table = resolve_table(cfg, group)
    profiles = group.profiles()
    decomps = [
        multiplicities(table, bullet_character(group, profiles, p**e), e, p, v) for e in cfg.e_range
    ]
    if (cfg.fmt or "csv") == "csv":
        _emit(cfg, rep.decomposition_csv(decomps))
    else:
        _emit(cfg, rep.dumps(rep.decomposition_report(group, table, v, decomps)))
    return EXIT_OK


def cmd_signature(cfg: RunConfig) -> int:
    p = _require_p(cfg)
    group = resolve_group(cfg)
    v = validate(group, p)
    if not v.ok:
        _err("refusing: " + "; ".join(v.messages()))
        return EXIT_REFUSED
    table = resolve_table(cfg, group)
    report = convergence_report(group, table, p, cfg.e_range)
    if (cfg.fmt or "report") == "csv":
        _emit(cfg, rep.convergence_csv(report))
    else:
        _emit(cfg, rep.dumps(rep.signature_report(group, table, v, report)))
    if not report.certified:
        _err("a convergence row exceeds its certified bound")
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    p = _require_p(cfg)
    group = resolve_group(cfg)
    v = validate(group, p)
    if not v.coprime:
        _err(f"refusing: p = {p} divides |G| = {group.order}")
        return EXIT_REFUSED
    e_ok = [e for e in cfg.e_range if (p**e) ** group.dim <= cfg.oracle_cap]
    skipped = [e for e in cfg.e_range if e not in e_ok]
    if not e_ok:
        _err(f"oracle instance too large: q^d exceeds cap {cfg.oracle_cap} for every e in range")
        return EXIT_INPUT
    e0 = multiplicative_order(p, group.exponent)
    rows: list[rep.VerifyRow] = []
    table = None
    try:
        table = resolve_table(cfg, group)
    except TableError as exc:
        rows.append(rep.VerifyRow(0, 1, "table check", "character table", "valid", str(exc)))
    profiles = group.profiles()
    for e in e_ok:
        q = p**e
        kind = "paper check" if e % e0 == 0 else "extension check"
        bullet = bullet_character(group, profiles, q)
        chi = oracle_character(group, p, e, cfg.oracle_cap)
        for c in range(group.num_classes):
            rows.append(rep.VerifyRow(e, q, kind, f"chi[{c}]", str(bullet[c]), str(chi[c])))
        if table is None:
            continue
        try:
            formula = [str(x) for x in multiplicities(table, bullet, e, p, v).mults]
        except InconsistentInput as exc:
            formula = [f"error: {exc}"] * len(table)
        try:
            oracle = [str(x) for x in oracle_multiplicities(group, table, p, e, cfg.oracle_cap, character=chi)]
        except OracleError as exc:
            oracle = [f"error: {exc}"] * len(table)
        for i, (a, b) in enumerate(zip(formula, oracle)):
            rows.append(rep.VerifyRow(e, q, kind, f"c_{i}", a, b))
    if (cfg.fmt or "csv") == "csv":
        _emit(cfg, rep.verify_csv(rows))
    else:
        _emit(cfg, rep.dumps(rep.verify_report(group, rows, skipped)))
    if skipped:
        print(f"note: skipped e = {skipped} (q^d above cap {cfg.oracle_cap})", file=sys.stderr)
    if not all(r.equal for r in rows):
        _err("oracle mismatch")
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_table(cfg: RunConfig) -> int:
    group = resolve_group(cfg)
    _emit(cfg, dumps_table(resolve_table(cfg, group)))
    return EXIT_OK


COMMANDS = {
    "info": cmd_info,
    "decompose": cmd_decompose,
    "signature": cmd_signature,
    "verify": cmd_verify,
    "table": cmd_table,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
        return COMMANDS[args.command](cfg)
    except (InputError, GroupError, TableError, OracleError, InconsistentInput, OSError) as exc:
        _err(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
