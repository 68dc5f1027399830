"""Command-line interface: tables, enumerations, checks and the certificate."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
from typing import Any, Sequence

from . import __version__
from .bgg_oracle import MAX_BASIS_RANK
from .certificates import CHECKS, REPORT_SCHEMA, Item, Report, incompressibility_certificate, run_item
from .chow_ring import CycleClass, multiply
from .motives import format_action, weyl_table
from .shapes import enumerate_shapes
from .tablefile import load_tables
from .weyl import MAX_ENUMERATION_RANK

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_N = 5

CHECK_ITEMS = {
    "mult": ["mult"],
    "teles": ["teles"],
    "lemma": ["lemma-bounds", "lemma-tech"],
    "motive": ["weyl-table", "motive", "middle-ranks", "projective-bundle"],
    "pairing": ["pairing", "multiplicity"],
    "generation": ["generation"],
    "assoc": [],
}
ORACLE_FREE = {"motive"}


class UsageError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=["text", "csv", "json"], default=d("text"), help="output format")
    p.add_argument("--cache", metavar="DIR", default=d(None), help="structure-table cache directory")
    p.add_argument("--seed", type=int, default=d(0), help="seed for sampling checks")
    p.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isoschubert",
        description="Schubert calculus checks for isotropic 2-plane Grassmannians of types B and C.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help):
        p = sub.add_parser(name, help=help)
        _add_common(p, suppress=True)
        p.add_argument("--n", type=int, default=DEFAULT_N, help=f"rank (default {DEFAULT_N})")
        return p

    command("weyl-table", "double cosets W_P\\W/W_P with their tabulated words")
    p = command("shapes", "enumerate shapes")
    p.add_argument("--weight", type=int, default=None)
    p = command("check", "run one group of checks")
    p.add_argument("name", choices=sorted(CHECK_ITEMS))
    p.add_argument("--samples", type=int, default=200, help="triples sampled by 'check assoc'")
    command("report", "full certificate")
    return parser


def _validate_n(args) -> None:
    bound = MAX_ENUMERATION_RANK if args.command in ("shapes", "weyl-table") else MAX_BASIS_RANK
    if getattr(args, "name", None) in ORACLE_FREE:
        bound = MAX_ENUMERATION_RANK
    if not 3 <= args.n <= bound:
        raise UsageError(f"--n must satisfy 3 <= n <= {bound} for '{args.command}', got {args.n}")


# rendering

def _cell(v: Any) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, ensure_ascii=False, separators=(",", ":"))
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else str(v)


def render_rows(rows: list[dict[str, Any]], columns: Sequence[str], fmt: str, meta: dict[str, Any]) -> str:
    if fmt == "json":
        doc = {"schemaVersion": REPORT_SCHEMA, **meta, "rows": rows}
        return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in columns])
        return buf.getvalue()
    cells = [[_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def render_report(rep: Report, fmt: str, command: str) -> str:
    if fmt == "json":
        doc = {**rep.to_dict(), "command": command}
        return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"
    columns = ["name", "display", "status", "details"]
    rows = [i.to_dict() for i in rep.items]
    if fmt == "csv":
        return render_rows(rows, columns, "csv", {})
    out = [f"n = {rep.n}"]
    for i in rep.items:
        out.append(f"[{i.status.upper()}] {i.name}: {i.display}")
        for k, v in i.details.items():
            out.append(f"    {k}: {_cell(v)}")
    if rep.assumptions:
        out.append("assumptions (cited, not machine-proved):")
        out += [f"    - {a}" for a in rep.assumptions]
    for note in rep.notes:
        out.append(f"note: {note}")
    out.append(f"verdict: {'true' if rep.verdict else 'false'}")
    return "\n".join(out) + "\n"


# commands

def cmd_shapes(args) -> tuple[str, int]:
    rows = [
        {
            "index": k,
            "shape": str(s),
            "weight": s.weight,
            "bottom_length": s.bottom_length,
            "top": str(s.top),
            "bottom": str(s.bottom),
        }
        for k, s in enumerate(enumerate_shapes(args.n, args.weight))
    ]
    cols = ["index", "shape", "weight", "bottom_length", "top", "bottom"]
    return render_rows(rows, cols, args.format, {"command": "shapes", "n": args.n, "weight": args.weight}), EXIT_OK


def cmd_weyl_table(args) -> tuple[str, int]:
    table = weyl_table(args.n)
    rows = [
        {
            "row": k,
            "word": r.label,
            "coset": r.coset_of_action,
            "minimal_rep": str(r.minimal_rep),
            "length": r.length,
            "size": r.size,
            "action": format_action(r.computed_action),
            "R_D": r.computed_r_d.describe(),
            "matches": r.ok,
            "note": "; ".join(r.notes),
        }
        for k, r in enumerate(table, start=1)
    ]
    cols = ["row", "word", "coset", "minimal_rep", "length", "size", "action", "R_D", "matches", "note"]
    ok = all(r.ok for r in table)
    return render_rows(rows, cols, args.format, {"command": "weyl-table", "n": args.n}), EXIT_OK if ok else EXIT_FAIL


def assoc_item(bundle, samples: int, seed: int) -> Item:
    """Associativity and grading of the full product tables on sampled triples."""
    rng = random.Random(seed)
    problems = []
    for t in (bundle.table_b, bundle.table_c):
        shapes = t.shapes
        for _ in range(samples):
            a, b, c = (CycleClass.basic(t.family, rng.choice(shapes)) for _ in range(3))
            lhs = multiply(multiply(a, b, t), c, t)
            rhs = multiply(a, multiply(b, c, t), t)
            w = sum(next(iter(x.coeffs)).weight for x in (a, b, c))
            if lhs != rhs or (not lhs.is_zero() and lhs.weights() != {w}):
                problems.append(f"{t.family}: {a} {b} {c}")
    details = {"samples_per_family": samples, "seed": seed, "violations": problems[:20]}
    return Item("assoc", "associativity of the product table", "fail" if problems else "pass", details)


def cmd_check(args) -> tuple[str, int]:
    names = CHECK_ITEMS[args.name]
    if args.name == "assoc":
        bundle = load_tables(args.n, args.cache, full=True)
        rep = Report(args.n, [assoc_item(bundle, args.samples, args.seed)], [], [])
    elif args.name in ORACLE_FREE:
        rep = Report(args.n, [run_item(nm, d, f, fn, _Rank(args.n)) for nm, d, f, fn in CHECKS if nm in names], [], [])
    else:
        full = args.name == "pairing"
        bundle = load_tables(args.n, args.cache, full=full or None)
        rep = incompressibility_certificate(args.n, bundle, only=names)
        rep.assumptions, rep.notes = [], []
    return render_report(rep, args.format, f"check {args.name}"), EXIT_OK if rep.verdict else EXIT_FAIL


class _Rank:
    """Stand-in bundle for checks that only need the rank."""

    full = False

    def __init__(self, n: int):
        self.n = n


def cmd_report(args) -> tuple[str, int]:
    rep = incompressibility_certificate(args.n, cache_dir=args.cache)
    return render_report(rep, args.format, "report"), EXIT_OK if rep.verdict else EXIT_FAIL


COMMANDS = {"shapes": cmd_shapes, "weyl-table": cmd_weyl_table, "check": cmd_check, "report": cmd_report}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        _validate_n(args)
        text, code = COMMANDS[args.command](args)
    except UsageError as e:
        print(f"isoschubert: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return code
