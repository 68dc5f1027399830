"""Text export/import of shape-indexed structure tables, and an on-disk cache.

File layout (one record per line, deterministic order)::

    isoschubert-table <schema>
    family B
    n 3
    code <hash of the oracle sources>
    full 1
    ambiguity 4
    pieri <la> <i> <mu> <c>
    product <la> <mu> <nu> <c>
    empty <la> <mu>

Shapes are written as ``top//bottom``.  ``empty`` marks a product known to
vanish so that a full table survives a round trip.
"""

from __future__ import annotations

import hashlib
import logging
import os
from dataclasses import dataclass
from pathlib import Path

from . import bgg_oracle, polynomial, shapes, weyl
from .bgg_oracle import StructureTable, run_oracle
from .shapes import Shape

log = logging.getLogger(__name__)

SCHEMA = 1
MAGIC = "isoschubert-table"


class TableFormatError(ValueError):
    pass


def code_version() -> str:
    """Hash of the modules whose behaviour determines the constants."""
    h = hashlib.sha256()
    for mod in (weyl, shapes, polynomial, bgg_oracle):
        h.update(Path(mod.__file__).read_bytes())
    return h.hexdigest()[:16]


@dataclass
class TableBundle:
    """Both families at one rank, as stored on disk."""

    n: int
    table_b: StructureTable
    table_c: StructureTable
    ambiguity: int

    def table(self, family: str) -> StructureTable:
        return self.table_b if family == "B" else self.table_c

    @property
    def full(self) -> bool:
        return self.table_b.products is not None and self.table_c.products is not None


def dump_table(table: StructureTable, ambiguity: int = 0, code: str | None = None) -> str:
    key = Shape.sort_key
    lines = [
        f"{MAGIC} {SCHEMA}",
        f"family {table.family}",
        f"n {table.n}",
        f"code {code or code_version()}",
        f"full {int(table.products is not None)}",
        f"ambiguity {ambiguity}",
    ]
    for (la, i), row in sorted(table.pieri.items(), key=lambda t: (key(t[0][0]), t[0][1])):
        for mu, c in sorted(row.items(), key=lambda t: key(t[0])):
            lines.append(f"pieri {la} {i} {mu} {c}")
    if table.products is not None:
        for (la, mu), row in sorted(table.products.items(), key=lambda t: (key(t[0][0]), key(t[0][1]))):
            if not row:
                lines.append(f"empty {la} {mu}")
            for nu, c in sorted(row.items(), key=lambda t: key(t[0])):
                lines.append(f"product {la} {mu} {nu} {c}")
    return "\n".join(lines) + "\n"


def _header(lines: list[str]) -> dict[str, str]:
    if not lines or lines[0].split() != [MAGIC, str(SCHEMA)]:
        raise TableFormatError("not a structure table file (or unsupported schema)")
    head = {}
    for line in lines[1:6]:
        k, _, v = line.partition(" ")
        head[k] = v
    for k in ("family", "n", "code", "full", "ambiguity"):
        if k not in head:
            raise TableFormatError(f"missing header field {k!r}")
    return head


def load_table(text: str) -> tuple[StructureTable, dict[str, str]]:
    lines = text.splitlines()
    head = _header(lines)
    n = int(head["n"])
    parse = lambda t: Shape.parse(t, n)  # noqa: E731
    pieri: dict = {(s, i): {} for s in shapes.enumerate_shapes(n) for i in (1, 2)}
    products: dict | None = {} if head["full"] == "1" else None
    for lineno, line in enumerate(lines[6:], start=7):
        f = line.split()
        try:
            if f[0] == "pieri":
                pieri[(parse(f[1]), int(f[2]))][parse(f[3])] = int(f[4])
            elif f[0] == "product" and products is not None:
                products.setdefault((parse(f[1]), parse(f[2])), {})[parse(f[3])] = int(f[4])
            elif f[0] == "empty" and products is not None:
                products[(parse(f[1]), parse(f[2]))] = {}
            else:
                raise TableFormatError(f"line {lineno}: unexpected record {f[0]!r}")
        except (IndexError, ValueError, KeyError) as e:
            raise TableFormatError(f"line {lineno}: {e}") from e
    return StructureTable(head["family"], n, pieri, products), head


def _path(cache_dir: Path, family: str, n: int, full: bool, code: str) -> Path:
    return cache_dir / f"{family}{n}-{'full' if full else 'pieri'}-{code}.tbl"


def load_tables(n: int, cache_dir: str | os.PathLike | None = None, full: bool | None = None) -> TableBundle:
    """Structure tables for both families, reusing ``cache_dir`` when given.

    A cache entry is used only if its code hash matches the current sources;
    a full table also serves requests for Pieri columns only.
    """
    if full is None:
        full = bgg_oracle.default_full(n)
    code = code_version()
    if cache_dir is not None:
        root = Path(cache_dir)
        for want_full in ((True,) if full else (False, True)):
            pb, pc = (_path(root, f, n, want_full, code) for f in "BC")
            if pb.exists() and pc.exists():
                try:
                    tb, hb = load_table(pb.read_text(encoding="utf-8"))
                    tc, _ = load_table(pc.read_text(encoding="utf-8"))
                except TableFormatError as e:
                    log.warning("ignoring unreadable cache entry %s: %s", pb, e)
                    continue
                log.info("loaded structure tables for n=%d from %s", n, root)
                return TableBundle(n, tb, tc, int(hb["ambiguity"]))
    res = run_oracle(n, full=full)
    bundle = TableBundle(n, res.table_b, res.table_c, res.matching.ambiguity)
    if cache_dir is not None:
        root = Path(cache_dir)
        root.mkdir(parents=True, exist_ok=True)
        for fam in "BC":
            p = _path(root, fam, n, full, code)
            tmp = p.with_suffix(".tmp")
            tmp.write_text(dump_table(bundle.table(fam), bundle.ambiguity, code), encoding="utf-8")
            tmp.replace(p)
    return bundle
