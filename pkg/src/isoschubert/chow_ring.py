"""Shape-basis Chow rings of the type-B and type-C isotropic 2-plane
Grassmannians, built on top of the oracle's structure tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import intlinalg
from .bgg_oracle import StructureTable
from .shapes import Shape, enumerate_shapes, special_shape, top_shape


class TableDependencyError(LookupError):
    """A needed structure table (or table kind) is missing."""


@dataclass(frozen=True)
class CycleClass:
    family: str
    n: int
    coeffs: Mapping[Shape, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for s, c in self.coeffs.items():
            if s.n != self.n:
                raise ValueError(f"shape {s} has rank {s.n}, expected {self.n}")
            if c:
                clean[s] = int(c)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items(), key=lambda t: t[0].sort_key())))

    @classmethod
    def basic(cls, family: str, s: Shape, c: int = 1) -> CycleClass:
        return cls(family, s.n, {s: c})

    @classmethod
    def zero(cls, family: str, n: int) -> CycleClass:
        return cls(family, n, {})

    def _check(self, other: CycleClass):
        if (self.family, self.n) != (other.family, other.n):
            raise ValueError("classes live in different Chow rings")

    def __add__(self, other: CycleClass) -> CycleClass:
        self._check(other)
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            out[s] = out.get(s, 0) + c
        return CycleClass(self.family, self.n, out)

    def __sub__(self, other: CycleClass) -> CycleClass:
        return self + other.scale(-1)

    def scale(self, k: int) -> CycleClass:
        return CycleClass(self.family, self.n, {s: k * c for s, c in self.coeffs.items()})

    def __rmul__(self, k: int) -> CycleClass:
        return self.scale(k)

    def __eq__(self, other):
        if not isinstance(other, CycleClass):
            return NotImplemented
        return (self.family, self.n, self.coeffs) == (other.family, other.n, other.coeffs)

    def __hash__(self):
        return hash((self.family, self.n, tuple(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def weights(self) -> set[int]:
        return {s.weight for s in self.coeffs}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def __str__(self):
        if not self.coeffs:
            return "0"
        sym = "sigma" if self.family == "B" else "tau"
        return " + ".join(f"{c}*{sym}({s})" for s, c in self.coeffs.items())


def _table_for(c: CycleClass, table: StructureTable) -> StructureTable:
    if table is None or (table.family, table.n) != (c.family, c.n):
        raise TableDependencyError(f"no structure table for {c.family}{c.n}")
    return table


def multiply_special(c: CycleClass, i: int, table: StructureTable) -> CycleClass:
    t = _table_for(c, table)
    out: dict[Shape, int] = {}
    for s, k in c.coeffs.items():
        for mu, e in t.pieri[(s, i)].items():
            out[mu] = out.get(mu, 0) + k * e
    return CycleClass(c.family, c.n, out)


def multiply(a: CycleClass, b: CycleClass, table: StructureTable) -> CycleClass:
    t = _table_for(a, table)
    a._check(b)
    if t.products is None:
        raise TableDependencyError(f"full product table for {t.family}{t.n} not available")
    out: dict[Shape, int] = {}
    for s, x in a.coeffs.items():
        for u, y in b.coeffs.items():
            for nu, c in t.product(s, u).items():
                out[nu] = out.get(nu, 0) + x * y * c
    return CycleClass(a.family, a.n, out)


def special_monomial(table: StructureTable, a1: int, a2: int) -> CycleClass:
    """``c_1^{a1} c_2^{a2}`` by iterated Pieri multiplication, ``c_1`` first."""
    n = table.n
    if a1 + 2 * a2 > 4 * n - 5:
        return CycleClass.zero(table.family, n)
    c = CycleClass.basic(table.family, special_shape(n, 0))
    for _ in range(a1):
        c = multiply_special(c, 1, table)
    for _ in range(a2):
        c = multiply_special(c, 2, table)
    return c


@dataclass(frozen=True)
class Chain:
    steps: tuple[Shape, ...]
    factors: tuple[int, ...]
    b: int
    c: int

    @property
    def end(self) -> Shape:
        return self.steps[-1]

    def __str__(self):
        return " -> ".join(map(str, self.steps))


def enumerate_chains(table_b: StructureTable, table_c: StructureTable, a1: int, a2: int) -> list[Chain]:
    """Compatible chains from ``pi_0`` with ``a1`` weight-1 steps followed by
    ``a2`` weight-2 steps, with exponent sums for both families."""
    n = table_b.n
    factors = (1,) * a1 + (2,) * a2
    out: list[Chain] = []

    def walk(path, b, c):
        k = len(path) - 1
        if k == len(factors):
            out.append(Chain(tuple(path), factors, b, c))
            return
        i = factors[k]
        la = path[-1]
        row_b, row_c = table_b.pieri[(la, i)], table_c.pieri[(la, i)]
        if set(row_b) != set(row_c):
            raise AssertionError(f"compatibility differs between families at {la} * pi_{i}")
        for mu in row_b:
            walk(path + [mu], b + table_b.exponent(la, mu, i), c + table_c.exponent(la, mu, i))

    if a1 + 2 * a2 <= 4 * n - 5:
        walk([special_shape(n, 0)], 0, 0)
    return out


def aggregate_chains(chains: Iterable[Chain], family: str, n: int) -> CycleClass:
    out: dict[Shape, int] = {}
    for ch in chains:
        e = ch.b if family == "B" else ch.c
        out[ch.end] = out.get(ch.end, 0) + 2**e
    return CycleClass(family, n, out)


def monomial_matrix(table: StructureTable, r: int) -> tuple[list[Shape], list[tuple[int, int]], list[list[int]]]:
    """Rows: weight-r shapes; columns: monomials ``c_1^{r-2j} c_2^j``."""
    rows = enumerate_shapes(table.n, r)
    cols = [(r - 2 * j, j) for j in range(r // 2 + 1)]
    mats = [special_monomial(table, a1, a2) for a1, a2 in cols]
    m = [[mats[j].coeffs.get(s, 0) for j in range(len(cols))] for s in rows]
    return rows, cols, m


class GenerationFailure(ArithmeticError):
    """A class is not an integer combination of special monomials."""


def solve_special_expansion(la: Shape, table_c: StructureTable) -> list[int]:
    """Integers ``u_j`` with ``tau(la) = sum_j u_j tau_1^{r-2j} tau_2^j``."""
    r = la.weight
    rows, _, m = monomial_matrix(table_c, r)
    target = [int(s == la) for s in rows]
    u = intlinalg.solve_integer(m, target)
    if u is None:
        raise GenerationFailure(f"{table_c.family}: {la} is not an integer polynomial in the special classes")
    return u


def combine_monomials(table: StructureTable, r: int, u: list[int]) -> CycleClass:
    out = CycleClass.zero(table.family, table.n)
    for j, uj in enumerate(u):
        if uj:
            out = out + special_monomial(table, r - 2 * j, j).scale(uj)
    return out


@dataclass
class LemmaCase:
    shape: Shape
    u: list[int]
    gamma_prime: CycleClass
    tau_side: CycleClass
    gamp_side: CycleClass
    passed: bool


def lemma_tech_check(table_b: StructureTable, table_c: StructureTable) -> list[LemmaCase]:
    """For every shape of weight ``2n-3`` or ``2n-2``: solve the type-C
    expansion, build ``gamma'`` in type B with the same coefficients, and
    compare with ``2 sigma(la)``.

    ``tau_side``/``gamp_side`` are the chain-sum expansions with exponents
    ``c`` and ``b`` respectively, transported to the type-B basis.
    """
    n = table_b.n
    cases = []
    for r in (2 * n - 3, 2 * n - 2):
        for la in enumerate_shapes(n, r):
            u = solve_special_expansion(la, table_c)
            gp = combine_monomials(table_b, r, u)
            tau_side = CycleClass.zero("B", n)
            gamp_side = CycleClass.zero("B", n)
            for j, uj in enumerate(u):
                if not uj:
                    continue
                chains = enumerate_chains(table_b, table_c, r - 2 * j, j)
                tau_side = tau_side + transport(aggregate_chains(chains, "C", n), "B").scale(uj)
                gamp_side = gamp_side + aggregate_chains(chains, "B", n).scale(uj)
            two_sigma = CycleClass.basic("B", la, 2)
            ok = gp == two_sigma and gamp_side == gp and tau_side == CycleClass.basic("B", la)
            cases.append(LemmaCase(la, u, gp, tau_side, gamp_side, ok))
    return cases


def transport(c: CycleClass, family: str) -> CycleClass:
    """The additive isomorphism matching basic classes of equal shape."""
    return CycleClass(family, c.n, c.coeffs)


def degree(c: CycleClass) -> int:
    """Coefficient of the point class."""
    return c.coeffs.get(top_shape(c.n), 0)


def pairing_matrix(table: StructureTable, r: int, r2: int | None = None) -> tuple[list[Shape], list[Shape], list[list[int]]]:
    """``deg(s(la) s(mu))`` over weight ``r`` x weight ``r2`` (default
    ``4n - 5 - r``)."""
    n = table.n
    if r2 is None:
        r2 = 4 * n - 5 - r
    rows, cols = enumerate_shapes(n, r), enumerate_shapes(n, r2)
    if table.products is None:
        raise TableDependencyError("pairing needs the full product table")
    top = top_shape(n)
    m = [[table.product(a, b).get(top, 0) for b in cols] for a in rows]
    return rows, cols, m


def dual_basis(table: StructureTable) -> dict[Shape, CycleClass]:
    """The class paired to 1 against each basic class and 0 against the rest."""
    n = table.n
    out = {}
    for r in range(4 * n - 4):
        rows, cols, m = pairing_matrix(table, r)
        inv = intlinalg.inverse(m)
        for i, la in enumerate(rows):
            # column i of (M^T)^{-1}: coefficients of the dual of la over cols
            coeffs = {}
            for j, mu in enumerate(cols):
                v = inv[j][i]
                if v.denominator != 1:
                    raise ArithmeticError("pairing is not unimodular")
                coeffs[mu] = int(v)
            out[la] = CycleClass(table.family, n, coeffs)
    return out


@dataclass(frozen=True)
class ProductCycle:
    """Integer combination of ``s(la) x s(mu)`` on the square of the variety."""

    n: int
    coeffs: Mapping[tuple[Shape, Shape], int]

    def __post_init__(self):
        clean = {k: int(v) for k, v in self.coeffs.items() if v}
        object.__setattr__(self, "coeffs", dict(sorted(clean.items(), key=lambda t: (t[0][0].sort_key(), t[0][1].sort_key()))))

    def dimensions(self) -> set[int]:
        top = 4 * self.n - 5
        return {(top - a.weight) + (top - b.weight) for a, b in self.coeffs}

    def scale(self, k: int) -> ProductCycle:
        return ProductCycle(self.n, {key: k * c for key, c in self.coeffs.items()})

    def __add__(self, other: ProductCycle) -> ProductCycle:
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return ProductCycle(self.n, out)


def _require_correspondence(d: ProductCycle) -> None:
    dims = d.dimensions()
    if dims and dims != {4 * d.n - 5}:
        raise ValueError(f"not a degree-zero correspondence: dimensions {sorted(dims)}")


def multiplicity(d: ProductCycle) -> int:
    _require_correspondence(d)
    return d.coeffs.get((special_shape(d.n, 0), top_shape(d.n)), 0)


def transpose(d: ProductCycle) -> ProductCycle:
    return ProductCycle(d.n, {(b, a): c for (a, b), c in d.coeffs.items()})


def diagonal_class(table: StructureTable) -> ProductCycle:
    out: dict[tuple[Shape, Shape], int] = {}
    for la, dual in dual_basis(table).items():
        for mu, c in dual.coeffs.items():
            out[(la, mu)] = out.get((la, mu), 0) + c
    return ProductCycle(table.n, out)


@dataclass
class GenerationReport:
    family: str
    n: int
    ranks: dict[int, int]
    invariants: dict[int, list[int]]
    integral_failures: list[int]
    localized_failures: list[int]

    @property
    def integrally_generated(self) -> bool:
        return not self.integral_failures

    @property
    def generated_after_inverting_2(self) -> bool:
        return not self.localized_failures


def generation_report(table: StructureTable) -> GenerationReport:
    """Smith-form test of whether special monomials span each graded piece."""
    n = table.n
    ranks, invs, bad_z, bad_half = {}, {}, [], []
    for r in range(4 * n - 4):
        rows, _, m = monomial_matrix(table, r)
        d = intlinalg.smith_invariants(m)
        ranks[r] = len(rows)
        invs[r] = d
        full = len(d) == len(rows)
        if not (full and all(x == 1 for x in d)):
            bad_z.append(r)
        if not (full and all(x & (x - 1) == 0 for x in d)):
            bad_half.append(r)
    return GenerationReport(table.family, n, ranks, invs, bad_z, bad_half)

