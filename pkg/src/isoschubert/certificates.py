"""Witt-index arithmetic and the assembled incompressibility certificate.

The certificate runs every machine-checkable identity at one rank and
reports each as an item; steps that are proved by field-theoretic arguments
are listed as assumptions instead of being trusted silently.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable

from . import chow_ring as cr
from . import motives
from .bgg_oracle import StructureTable, _log2_exact
from .intlinalg import det_mod2, determinant
from .shapes import enumerate_shapes, lemma_bound_counterexamples, special_shape, top_shape, weight_counts
from .tablefile import TableBundle, load_tables
from .weyl import RootSystem, poincare_polynomial, x2_parabolic

log = logging.getLogger(__name__)

REPORT_SCHEMA = 1
CITED = "cited, not machine-proved"


@dataclass(frozen=True)
class WittProfile:
    dim: int
    j_sequence: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.dim // 2

    @property
    def i_sequence(self) -> tuple[int, ...]:
        j = self.j_sequence
        return tuple(j[k] - j[k - 1] for k in range(1, len(j)))


def validate_witt_profile(p: WittProfile) -> tuple[bool, list[str]]:
    """Check ``0 <= j_0 < j_1 < ... < j_h = [dim/2]``; every violation is listed."""
    bad = []
    j = p.j_sequence
    if p.dim % 2 != 1 or p.dim < 1:
        bad.append(f"dimension {p.dim} is not an odd positive integer")
    if not j:
        bad.append("empty j-sequence")
        return False, bad
    if j[0] < 0:
        bad.append(f"j_0 = {j[0]} is negative")
    for k, i in enumerate(p.i_sequence, start=1):
        if i < 1:
            bad.append(f"not strictly increasing at k={k}: j_{k - 1}={j[k - 1]}, j_{k}={j[k]} (i_{k}={i})")
    if j[-1] != p.n:
        bad.append(f"j_h = {j[-1]} but [dim/2] = {p.n}")
    return not bad, bad


@dataclass(frozen=True)
class Hypotheses:
    deg_is_four_z: bool
    i2_is_one: bool
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n >= 3 required")


@dataclass(frozen=True)
class DerivedFact:
    statement: str
    source: str
    tag: str = CITED


def propagate_hypotheses(h: Hypotheses) -> list[DerivedFact]:
    """Recorded implications; nothing here is machine-proved."""
    if not h.deg_is_four_z:
        return []
    facts = [
        DerivedFact("j_0 = 0", "Prop. witt1: deg CH(X_2) = 4Z forces phi anisotropic"),
        DerivedFact("j_1 = 1", "Prop. witt1: if deg CH(X_2) = 4Z then j_1 = 1"),
    ]
    if not h.i2_is_one:
        return facts
    facts += [
        DerivedFact("j_2 = 2", "j_2 = j_1 + i_2 = 1 + 1"),
        DerivedFact("i_0(phi over F(X_2)) = 2", "Prop. witt2: if j_2 = 2 then i_0(phi_{F(X_2)}) = 2"),
        DerivedFact("phi over F(X_2) = 2H + psi with psi anisotropic", "definition of i_0"),
    ]
    return facts


def derived_j_prefix(facts: list[DerivedFact]) -> tuple[int, ...]:
    vals = {}
    for f in facts:
        lhs, _, rhs = f.statement.partition(" = ")
        if lhs.startswith("j_") and rhs.isdigit():
            vals[int(lhs[2:])] = int(rhs)
    out = []
    while len(out) in vals:
        out.append(vals[len(out)])
    return tuple(out)


ASSUMPTIONS = (
    "Prop. witt1 proof (deg CH(X_2) = 4Z implies j_1 = 1; function-field and place argument)",
    "Prop. witt2 proof (j_2 = 2 implies i_0 over F(X_2) = 2)",
    "BRV Lem. 6.1 (cited in the proof of Prop. witt2)",
    "Springer's theorem (odd-degree extensions preserve anisotropy)",
    "fiber-product diagram chase turning the numerical facts into 2-incompressibility",
)

NOTES = (
    "conjectural generalization, not checked: deg CH(X_d) = 2^d Z and i_d(phi) = 1 "
    "would make X_d 2-incompressible",
)


@dataclass
class Item:
    name: str
    display: str
    status: str
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "display": self.display, "status": self.status, "details": self.details}


@dataclass
class Report:
    n: int
    items: list[Item]
    assumptions: list[str]
    notes: list[str]

    @property
    def verdict(self) -> bool:
        return bool(self.items) and all(i.passed for i in self.items)

    def item(self, name: str) -> Item:
        return next(i for i in self.items if i.name == name)

    @property
    def failing(self) -> list[str]:
        return [i.name for i in self.items if not i.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "schemaVersion": REPORT_SCHEMA,
            "n": self.n,
            "items": [i.to_dict() for i in self.items],
            "assumptions": list(self.assumptions),
            "notes": list(self.notes),
            "verdict": self.verdict,
        }


# individual checks; each returns (passed, details)

def check_shape_counts(n: int) -> tuple[bool, dict]:
    rs, p = RootSystem("B", n), x2_parabolic(n)
    counts = weight_counts(n)
    poly = poincare_polynomial(rs, p)
    total = sum(counts)
    index = rs.order // p.subgroup_order()
    ok = total == 2 * n * (n - 1) == index and counts == poly and counts == counts[::-1]
    return ok, {"shapes": total, "expected": 2 * n * (n - 1), "coset_index": index, "weight_counts": counts}


def check_lemma_bounds(n: int) -> tuple[bool, dict]:
    bad = lemma_bound_counterexamples(n)
    return not bad, {"shapes_checked": len(enumerate_shapes(n)), "counterexamples": [str(s) for s in bad]}


def check_mult(tb: StructureTable, tc: StructureTable) -> tuple[bool, dict]:
    """Powers of 2, identical compatibility, and the exponent-gap rule."""
    problems: list[str] = []
    pairs = 0
    for key in sorted(tb.pieri, key=lambda k: (k[0].sort_key(), k[1])):
        la, i = key
        rb, rc = tb.pieri[key], tc.pieri[key]
        if set(rb) != set(rc):
            problems.append(f"compatibility differs at {la} * pi_{i}")
            continue
        for mu in sorted(rb, key=lambda s: s.sort_key()):
            pairs += 1
            eb, ec = _log2_exact(rb[mu]), _log2_exact(rc[mu])
            if eb is None or ec is None:
                problems.append(f"{la} * pi_{i} -> {mu}: constants {rb[mu]}, {rc[mu]} not both powers of 2")
                continue
            gap = mu.bottom_length - la.bottom_length
            if eb - ec != gap or gap not in (0, 1):
                problems.append(f"{la} * pi_{i} -> {mu}: e_B - e_C = {eb - ec}, bottom-length change {gap}")
    return not problems, {"compatible_pairs": pairs, "violations": problems[:20], "violation_count": len(problems)}


def _direct_monomial(table: StructureTable, a1: int, a2: int) -> cr.CycleClass:
    """The monomial through the full product table, not the Pieri columns."""
    n = table.n
    c = cr.CycleClass.basic(table.family, special_shape(n, 0))
    for s, k in ((1, a1), (2, a2)):
        factor = cr.CycleClass.basic(table.family, special_shape(n, s))
        for _ in range(k):
            c = cr.multiply(c, factor, table)
    return c


def check_teles(tb: StructureTable, tc: StructureTable) -> tuple[bool, dict]:
    n = tb.n
    top = 4 * n - 5
    chains = monomials = 0
    problems: list[str] = []
    direct = tb.products is not None and tc.products is not None
    for a2 in range(top // 2 + 1):
        for a1 in range(top - 2 * a2 + 1):
            monomials += 1
            ch = cr.enumerate_chains(tb, tc, a1, a2)
            chains += len(ch)
            for c in ch:
                if c.b - c.c != c.end.bottom_length:
                    problems.append(f"chain {c}: b - c = {c.b - c.c}, l(bottom) = {c.end.bottom_length}")
            for t in (tb, tc):
                agg = cr.aggregate_chains(ch, t.family, n)
                if agg != cr.special_monomial(t, a1, a2):
                    problems.append(f"{t.family}: chain sum differs from the iterated product at ({a1},{a2})")
                if direct and agg != _direct_monomial(t, a1, a2):
                    problems.append(f"{t.family}: chain sum differs from the direct product at ({a1},{a2})")
    return not problems, {
        "monomials": monomials,
        "chains": chains,
        "direct_product_cross_check": direct,
        "violations": problems[:20],
    }


def check_lemma_tech(tb: StructureTable, tc: StructureTable) -> tuple[bool, dict]:
    cases = cr.lemma_tech_check(tb, tc)
    rows = [{"shape": str(c.shape), "u": c.u, "passed": c.passed} for c in cases]
    return bool(cases) and all(c.passed for c in cases), {"cases": rows}


def check_generation(tb: StructureTable, tc: StructureTable) -> tuple[bool, dict]:
    gb, gc = cr.generation_report(tb), cr.generation_report(tc)
    ok = gc.integrally_generated and gb.generated_after_inverting_2 and not gb.integrally_generated
    return ok, {
        "C_integral_failures": gc.integral_failures,
        "B_integral_failures": gb.integral_failures,
        "B_failures_after_inverting_2": gb.localized_failures,
    }


def check_pairing(tb: StructureTable) -> tuple[bool, dict]:
    n = tb.n
    dets, odd = [], []
    for r in range(4 * n - 4):
        _, _, m = cr.pairing_matrix(tb, r)
        dets.append(determinant(m))
        odd.append(det_mod2(m) == 1)
    return all(odd), {"determinants": dets, "odd": odd}


def check_multiplicity(tb: StructureTable) -> tuple[bool, dict]:
    n = tb.n
    e, pt = special_shape(n, 0), top_shape(n)
    d0 = cr.ProductCycle(n, {(e, pt): 1})
    diag = cr.diagonal_class(tb)
    four = diag.scale(4) + d0.scale(4)
    vals = {
        "fundamental_x_point": [cr.multiplicity(d0), cr.multiplicity(cr.transpose(d0))],
        "diagonal": [cr.multiplicity(diag), cr.multiplicity(cr.transpose(diag))],
        "four_times": [cr.multiplicity(four) % 4, cr.multiplicity(cr.transpose(four)) % 4],
    }
    ok = (
        vals["fundamental_x_point"] == [1, 0]
        and vals["diagonal"] == [1, 1]
        and vals["four_times"] == [0, 0]
        and cr.transpose(cr.transpose(diag)) == diag
    )
    return ok, vals


def check_weyl_table(n: int) -> tuple[bool, dict]:
    rows = motives.weyl_table(n)
    cosets = {r.coset_of_action for r in rows}
    lengths = [r.length for r in rows]
    off = motives.word_membership_failures(rows)
    ok = (
        all(r.ok for r in rows)
        and set(off) <= motives.LABEL_MISMATCH_ROWS
        and len(cosets) == len(rows) == len(motives.minimal_lengths(n))
        and lengths == motives.expected_shifts(n)
    )
    notes = [note for r in rows for note in r.notes]
    return ok, {"rows": len(rows), "lengths": lengths, "word_outside_row_coset": off, "label_notes": notes}


def check_motive(n: int) -> tuple[bool, dict]:
    summands = motives.cm_decomposition(n)
    pc = motives.verify_poincare_identity(n)
    shifts = sorted(s.shift for s in summands)
    ok = pc.holds and shifts == sorted(motives.minimal_lengths(n))
    return ok, {
        "summands": [s.label for s in summands],
        "at_t_equals_1": [sum(pc.lhs), sum(pc.rhs)],
        "first_mismatch": pc.first_mismatch,
    }


def check_middle_ranks(n: int) -> tuple[bool, dict]:
    d = motives.middle_chow_ranks(n)
    ok = d.polynomial_identity_holds and d.ranks_agree and d.dimensions_match_display and d.dimensions_in_range
    return ok, {"lhs": d.middle_rank_lhs, "summands": d.middle_rank_summands, "dimensions": d.dimensions}


def check_projective_bundle(n: int) -> tuple[bool, dict]:
    ok, p12, rhs = motives.projective_bundle_check(n)
    split = motives.middle_chow_ranks(n).bundle_split
    return ok and split[0] == split[1] + split[2], {"P(X_{1,2})": p12, "(1+t)P(X_2)": rhs, "rank_split": list(split)}


def check_witt(n: int) -> tuple[bool, dict]:
    facts = propagate_hypotheses(Hypotheses(True, True, n))
    prefix = derived_j_prefix(facts)
    profile = WittProfile(2 * n + 1, prefix + tuple(range(prefix[-1] + 1, n + 1)))
    valid, violations = validate_witt_profile(profile)
    return valid and prefix == (0, 1, 2), {
        "j_prefix": list(prefix),
        "facts": [{"statement": f.statement, "source": f.source, "tag": f.tag} for f in facts],
        "profile_violations": violations,
    }


CheckFn = Callable[[TableBundle], tuple[bool, dict]]

# (name, display, needs full table, check)
CHECKS: list[tuple[str, str, bool, CheckFn]] = [
    ("shapes", "shape count = |W/W_P|", False, lambda b: check_shape_counts(b.n)),
    ("lemma-bounds", "bottom-length weight bounds", False, lambda b: check_lemma_bounds(b.n)),
    ("mult", "(mult)", False, lambda b: check_mult(b.table_b, b.table_c)),
    ("teles", "(teles)", False, lambda b: check_teles(b.table_b, b.table_c)),
    ("lemma-tech", "(tau), (gamp)", False, lambda b: check_lemma_tech(b.table_b, b.table_c)),
    ("generation", "special classes generate CH(X_C); CH(X_B) after inverting 2", False, lambda b: check_generation(b.table_b, b.table_c)),
    ("pairing", "2-balanced pairing", True, lambda b: check_pairing(b.table_b)),
    ("weyl-table", "double-coset table", False, lambda b: check_weyl_table(b.n)),
    ("motive", "M(X_2 x X_2) decomposition", False, lambda b: check_motive(b.n)),
    ("middle-ranks", "CH_{4n-5}(X_2 x X_2) decomposition", False, lambda b: check_middle_ranks(b.n)),
    ("projective-bundle", "M(X_{1,2}) = M(X_2) + M(X_2)(1)", False, lambda b: check_projective_bundle(b.n)),
    ("multiplicity", "mult(delta) = mult(delta^t) mod 4", True, lambda b: check_multiplicity(b.table_b)),
    ("witt", "j_1 = 1, j_2 = 2, i_0 over F(X_2) = 2", False, lambda b: check_witt(b.n)),
]


def run_item(name: str, display: str, needs_full: bool, fn: CheckFn, bundle: TableBundle) -> Item:
    if needs_full and not bundle.full:
        return Item(name, display, "fail", {"error": "full product table required"})
    try:
        ok, details = fn(bundle)
    except Exception as e:  # a crashing check is a failing check
        log.debug("check %s raised", name, exc_info=True)
        return Item(name, display, "fail", {"error": f"{type(e).__name__}: {e}"})
    return Item(name, display, "pass" if ok else "fail", details)


def incompressibility_certificate(
    n: int,
    tables: TableBundle | None = None,
    cache_dir=None,
    only: list[str] | None = None,
) -> Report:
    """Run every check at rank ``n``; the verdict is their conjunction."""
    if n < 3:
        raise ValueError("n >= 3 required")
    if tables is None:
        tables = load_tables(n, cache_dir, full=True)
    items = [
        run_item(name, disp, full, fn, tables)
        for name, disp, full, fn in CHECKS
        if only is None or name in only
    ]
    return Report(n, items, list(ASSUMPTIONS), list(NOTES))


def corrupt_table(bundle: TableBundle, family: str = "B") -> TableBundle:
    """A copy with one special-class constant tripled (for fault injection)."""
    tb, tc = bundle.table_b.copy(), bundle.table_c.copy()
    t = tb if family == "B" else tc
    key = min(k for k, row in t.pieri.items() if row and k[0].weight > 0)
    mu = min(t.pieri[key], key=lambda s: s.sort_key())
    t.pieri[key][mu] *= 3
    return TableBundle(bundle.n, tb, tc, bundle.ambiguity)
