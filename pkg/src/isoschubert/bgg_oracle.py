"""Schubert structure constants from divided-difference operators.

Classes are represented in the rational coinvariant algebra of the Weyl
group.  With ``top = prod_{a > 0} a / |W|`` the class of codimension ``l(w)``
is ``S_w = d_{w^{-1} w_0}(top)``; the coefficient of ``S_w`` in a
homogeneous ``f`` of degree ``l(w)`` is the constant ``d_w(f)``.  Both
operators run along reduced words, so the family (B uses ``alpha_n = e_n``,
C uses ``2 e_n``) only enters through the linear forms divided by.

Internally every class is stored as an integer polynomial numerator over
the common denominator ``|W|``: divided differences preserve integrality,
so rational arithmetic is only needed when a coefficient is reported.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .polynomial import ExactPolynomial
from .shapes import Shape, enumerate_shapes, special_shape
from .weyl import (
    ParabolicSubset,
    ResourceError,
    RootSystem,
    SignedPermutation,
    length,
    longest_element,
    minimal_coset_reps,
    reduced_word,
    x2_parabolic,
)

log = logging.getLogger(__name__)

MAX_BASIS_RANK = 6


class OracleConsistencyError(AssertionError):
    """The oracle produced something its own theory forbids."""


def divided_difference(f: ExactPolynomial, i: int, rs: RootSystem) -> ExactPolynomial:
    """``(f - s_i f) / alpha_i`` computed monomial by monomial.

    For ``i < n``: ``(x^a y^b - x^b y^a)/(x - y)`` expands as a geometric sum.
    For ``i = n``: only odd powers of ``x_n`` survive ``f - s_n f``.
    """
    n = rs.rank
    out: dict = {}
    get = out.get
    if i < n:
        k = i - 1
        for e, c in f.terms.items():
            a, b = e[k], e[k + 1]
            if a == b:
                continue
            if a > b:
                lo, d, sgn = b, a - b, c
            else:
                lo, d, sgn = a, b - a, -c
            base = list(e)
            for j in range(d):
                base[k] = lo + d - 1 - j
                base[k + 1] = lo + j
                t = tuple(base)
                out[t] = get(t, 0) + sgn
    elif i == n:
        k = n - 1
        # f - s_n f = 2 * (odd part); divide by e_n (B) or 2 e_n (C)
        factor = 2 if rs.family == "B" else 1
        for e, c in f.terms.items():
            if e[k] % 2:
                base = list(e)
                base[k] -= 1
                t = tuple(base)
                out[t] = get(t, 0) + factor * c
    else:
        raise ValueError(f"no simple root alpha_{i} in rank {n}")
    p = ExactPolynomial(f.nvars)
    p.terms = {e: c for e, c in out.items() if c}
    return p


def apply_word(f: ExactPolynomial, word: Iterable[int], rs: RootSystem) -> ExactPolynomial:
    """``d_{i1} d_{i2} ... d_{ik} f``: the rightmost operator acts first."""
    for i in reversed(list(word)):
        if f.is_zero():
            break
        f = divided_difference(f, i, rs)
    return f


def root_product(rs: RootSystem) -> ExactPolynomial:
    """``prod_{a > 0} a`` as an integer polynomial."""
    n = rs.rank
    return ExactPolynomial.product((ExactPolynomial.linear(a) for a in rs.positive_roots), n)


@dataclass
class SchubertBasis:
    """Schubert classes of ``G/P`` pulled back to ``G/B``.

    ``numerators[w] / denominator`` is the polynomial representative of the
    class indexed by the minimal coset representative ``w``.
    """

    rs: RootSystem
    parabolic: ParabolicSubset
    reps: list[SignedPermutation]
    numerators: dict[SignedPermutation, ExactPolynomial]
    denominator: int
    lengths: dict[SignedPermutation, int]
    words: dict[SignedPermutation, list[int]] = field(repr=False)

    def representative(self, w: SignedPermutation) -> ExactPolynomial:
        return self.numerators[w].scale(Fraction(1, self.denominator))

    @property
    def classes(self) -> dict[SignedPermutation, ExactPolynomial]:
        return {w: self.representative(w) for w in self.reps}

    def of_length(self, d: int) -> list[SignedPermutation]:
        return [w for w in self.reps if self.lengths[w] == d]

    @property
    def top_degree(self) -> int:
        return max(self.lengths.values())


def build_schubert_basis(rs: RootSystem, p: ParabolicSubset, prefer: str = "low") -> SchubertBasis:
    """Descend from the top class of ``G/B`` to every class of ``G/P``.

    ``prefer`` selects which ascent is taken at every step (smallest or
    largest index), i.e. which reduced word of ``w^{-1} w_0`` is used.
    """
    n = rs.rank
    if n > MAX_BASIS_RANK:
        raise ResourceError(f"basis construction limited to rank <= {MAX_BASIS_RANK}")
    w0 = longest_element(n)
    memo = {w0: root_product(rs)}
    order = range(1, n + 1) if prefer == "low" else range(n, 0, -1)
    refl = {i: SignedPermutation.reflection(i, n) for i in range(1, n + 1)}

    def numerator(target: SignedPermutation) -> ExactPolynomial:
        path = []
        y = target
        while y not in memo:
            for i in order:
                if not y.has_descent(i, rs):
                    path.append((y, i))
                    y = y * refl[i]
                    break
        for y, i in reversed(path):
            memo[y] = divided_difference(memo[y * refl[i]], i, rs)
        return memo[target]

    reps = minimal_coset_reps(rs, p)
    nums = {w: numerator(w) for w in reps}
    lengths = {w: length(w, rs) for w in reps}
    words = {w: reduced_word(w, rs) for w in reps}
    basis = SchubertBasis(rs, p, reps, nums, rs.order, lengths, words)
    _check_basis(basis)
    return basis


def _check_basis(b: SchubertBasis) -> None:
    ident = SignedPermutation.identity(b.rs.rank)
    if b.numerators[ident] != ExactPolynomial.constant(b.denominator, b.rs.rank):
        raise OracleConsistencyError("identity class is not the constant 1")
    for w in b.reps:
        f = b.numerators[w]
        if not f.is_homogeneous() or f.degree() != b.lengths[w]:
            raise OracleConsistencyError(f"class of {w} is not homogeneous of degree l(w)")


def _coefficients_scaled(f: ExactPolynomial, basis: SchubertBasis, targets) -> dict:
    out = {}
    for w in targets:
        c = apply_word(f, basis.words[w], basis.rs).constant_term()
        if c:
            out[w] = c
    return out


def expand_in_basis(f: ExactPolynomial, basis: SchubertBasis, require_integral: bool = False) -> dict:
    """Coefficients of a homogeneous ``f`` in the Schubert basis."""
    if f.is_zero():
        return {}
    if not f.is_homogeneous():
        raise ValueError("expand_in_basis needs a homogeneous polynomial")
    coeffs = {w: Fraction(c) for w, c in _coefficients_scaled(f, basis, basis.of_length(f.degree())).items()}
    if require_integral:
        for w, c in coeffs.items():
            if c.denominator != 1:
                raise OracleConsistencyError(f"non-integer coefficient {c} at {w}")
        return {w: int(c) for w, c in coeffs.items()}
    return coeffs


def multiply_classes(basis: SchubertBasis, factors: Iterable[SignedPermutation]) -> dict[SignedPermutation, int]:
    """Expansion of a product of basis classes; integrality is asserted."""
    n = basis.rs.rank
    f = ExactPolynomial.constant(1, n)
    k = 0
    for w in factors:
        f = f * basis.numerators[w]
        k += 1
    return _integral_expansion(f, basis, basis.denominator**k)


def _integral_expansion(f: ExactPolynomial, basis: SchubertBasis, scale: int) -> dict:
    """Expand ``f / scale`` where ``scale = |W|^k`` and ``f`` is a product of
    ``k`` class numerators."""
    if f.is_zero():
        return {}
    deg = f.degree()
    if deg > basis.top_degree:
        return {}
    raw = _coefficients_scaled(f, basis, basis.of_length(deg))
    out = {}
    for w, c in raw.items():
        q, r = divmod(c, scale)
        if r:
            raise OracleConsistencyError(f"non-integer structure constant {Fraction(c, scale)} at {w}")
        if q:
            out[w] = q
    return out


def special_polynomials(n: int) -> tuple[ExactPolynomial, ExactPolynomial]:
    """Chern classes ``x_1 + x_2`` and ``x_1 x_2`` of the dual tautological bundle."""
    x1, x2 = ExactPolynomial.variable(1, n), ExactPolynomial.variable(2, n)
    return x1 + x2, x1 * x2


@dataclass
class RepTables:
    """Rep-indexed products for one family.

    ``pieri[(w, i)]`` expands ``S_w * c_i`` with ``c_1 = S_{s_2}`` and ``c_2``
    the class carrying the second Chern class; ``products`` (optional) holds
    every product ``S_u * S_v`` with ``u <= v`` in basis order.
    """

    basis: SchubertBasis
    special: dict[int, SignedPermutation]
    pieri: dict[tuple[SignedPermutation, int], dict[SignedPermutation, int]]
    products: dict[tuple[SignedPermutation, SignedPermutation], dict[SignedPermutation, int]] | None = None

    @property
    def family(self) -> str:
        return self.basis.rs.family

    @property
    def n(self) -> int:
        return self.basis.rs.rank


def identify_special_classes(basis: SchubertBasis) -> dict[int, SignedPermutation]:
    """Locate the basis classes equal to ``c_1`` and ``c_2``."""
    n = basis.rs.rank
    out = {}
    for i, poly in zip((1, 2), special_polynomials(n)):
        exp = expand_in_basis(poly, basis, require_integral=True)
        if len(exp) != 1 or next(iter(exp.values())) != 1:
            raise OracleConsistencyError(f"Chern class c_{i} is not a single Schubert class: {exp}")
        out[i] = next(iter(exp))
    return out


def rep_tables(family: str, n: int, full: bool = False, basis: SchubertBasis | None = None) -> RepTables:
    rs = RootSystem(family, n)
    if basis is None:
        basis = build_schubert_basis(rs, x2_parabolic(n))
    special = identify_special_classes(basis)
    pieri = {}
    for w in basis.reps:
        for i in (1, 2):
            pieri[(w, i)] = multiply_classes(basis, [w, special[i]])
    products = None
    if full:
        products = {}
        reps = basis.reps
        top = basis.top_degree
        for a, u in enumerate(reps):
            for v in reps[a:]:
                if basis.lengths[u] + basis.lengths[v] <= top:
                    products[(u, v)] = multiply_classes(basis, [u, v])
                else:
                    products[(u, v)] = {}
    log.debug("rep tables for %s%d built (full=%s)", family, n, full)
    return RepTables(basis, special, pieri, products)


class MatchingError(RuntimeError):
    """No shape/representative bijection satisfies the constraints."""


@dataclass
class ShapeMatching:
    to_rep: dict[Shape, SignedPermutation]
    to_shape: dict[SignedPermutation, Shape]
    bottom_length: dict[SignedPermutation, int]
    ambiguity: int


def _log2_exact(c: int) -> int | None:
    if c > 0 and c & (c - 1) == 0:
        return c.bit_length() - 1
    return None


def match_shapes_to_reps(tb: RepTables, tc: RepTables, shapes: list[Shape] | None = None) -> ShapeMatching:
    """Weight-preserving bijection shapes <-> minimal coset representatives.

    Constraints: ``pi_0 -> e``, ``pi_1`` and ``pi_2`` go to the classes of the
    first and second Chern classes, every special constant is a power of 2,
    compatibility agrees between the families, and the exponent gap
    ``e_B - e_C`` equals the bottom-length increase.  The gap constraints fix
    a bottom-length function on representatives by propagation from the
    identity; inside each (weight, bottom length) block the assignment is
    free and made in sorted order, the number of admissible bijections being
    reported as ``ambiguity``.
    """
    basis = tb.basis
    n = basis.rs.rank
    if shapes is None:
        shapes = enumerate_shapes(n)
    if len(shapes) != len(basis.reps):
        raise MatchingError(f"{len(shapes)} shapes but {len(basis.reps)} classes")
    if tb.special != tc.special:
        raise MatchingError("special classes differ between the families")
    for key, row_b in tb.pieri.items():
        row_c = tc.pieri[key]
        if set(row_b) != set(row_c):
            raise MatchingError(f"compatibility differs between families at {key[0]} * c_{key[1]}")
        for v in row_b:
            if _log2_exact(row_b[v]) is None or _log2_exact(row_c[v]) is None:
                raise MatchingError(f"special constant not a power of 2 at {key} -> {v}")
    ident = SignedPermutation.identity(n)
    bl = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for u in frontier:
            for i in (1, 2):
                row_b, row_c = tb.pieri[(u, i)], tc.pieri[(u, i)]
                for v in row_b:
                    gap = _log2_exact(row_b[v]) - _log2_exact(row_c[v])
                    val = bl[u] + gap
                    if v in bl:
                        if bl[v] != val:
                            raise MatchingError(f"inconsistent bottom length at {v}")
                    else:
                        bl[v] = val
                        nxt.append(v)
        frontier = nxt
    if len(bl) != len(basis.reps):
        raise MatchingError("special classes do not reach every Schubert class")
    if any(x not in (0, 1, 2) for x in bl.values()):
        raise MatchingError("bottom length outside 0..2")
    # every compatible pair, not only the spanning tree, must satisfy the gap rule
    for (u, i), row_b in tb.pieri.items():
        for v in row_b:
            gap = _log2_exact(row_b[v]) - _log2_exact(tc.pieri[(u, i)][v])
            if gap != bl[v] - bl[u] or gap not in (0, 1):
                raise MatchingError(f"exponent gap {gap} at {u} -> {v} contradicts bottom lengths")

    blocks_s: dict[tuple[int, int], list[Shape]] = {}
    for s in shapes:
        blocks_s.setdefault((s.weight, s.bottom_length), []).append(s)
    blocks_r: dict[tuple[int, int], list[SignedPermutation]] = {}
    for w in basis.reps:
        blocks_r.setdefault((basis.lengths[w], bl[w]), []).append(w)
    pinned = {special_shape(n, 0): ident, special_shape(n, 1): tb.special[1], special_shape(n, 2): tb.special[2]}
    for s, w in pinned.items():
        if (s.weight, s.bottom_length) != (basis.lengths[w], bl[w]):
            raise MatchingError(f"{s} cannot be matched with {w}")
    to_rep: dict[Shape, SignedPermutation] = {}
    ambiguity = 1
    for key in sorted(set(blocks_s) | set(blocks_r)):
        ss, rr = sorted(blocks_s.get(key, []), key=Shape.sort_key), sorted(blocks_r.get(key, []))
        if len(ss) != len(rr):
            raise MatchingError(f"block (weight, bottom length) = {key}: {len(ss)} shapes vs {len(rr)} classes")
        fixed = {s: w for s, w in pinned.items() if s in ss}
        ss = [s for s in ss if s not in fixed]
        rr = [w for w in rr if w not in fixed.values()]
        to_rep.update(fixed)
        to_rep.update(zip(ss, rr))
        for k in range(2, len(ss) + 1):
            ambiguity *= k
    return ShapeMatching(to_rep, {w: s for s, w in to_rep.items()}, bl, ambiguity)


@dataclass
class StructureTable:
    """Shape-indexed structure constants for one family.

    ``pieri[(la, i)]`` is the expansion of ``la * pi_i``; ``products`` (if
    present) maps unordered pairs, stored with ``la <= mu`` in shape order,
    to the expansion of ``la * mu``.
    """

    family: str
    n: int
    pieri: dict[tuple[Shape, int], dict[Shape, int]]
    products: dict[tuple[Shape, Shape], dict[Shape, int]] | None = None

    @property
    def shapes(self) -> list[Shape]:
        return enumerate_shapes(self.n)

    def compatible(self, la: Shape, mu: Shape, i: int) -> bool:
        return mu in self.pieri[(la, i)]

    def exponent(self, la: Shape, mu: Shape, i: int) -> int:
        c = self.pieri[(la, i)].get(mu, 0)
        e = _log2_exact(c)
        if e is None:
            raise OracleConsistencyError(f"{self.family}: constant {c} for {la} * pi_{i} -> {mu} is not a power of 2")
        return e

    def product(self, la: Shape, mu: Shape) -> dict[Shape, int]:
        if self.products is None:
            raise LookupError(f"full product table for {self.family}{self.n} not computed")
        key = (la, mu) if not mu.sort_key() < la.sort_key() else (mu, la)
        return self.products[key]

    def copy(self) -> StructureTable:
        pieri = {k: dict(v) for k, v in self.pieri.items()}
        prods = None if self.products is None else {k: dict(v) for k, v in self.products.items()}
        return StructureTable(self.family, self.n, pieri, prods)


def _relabel(row: Mapping[SignedPermutation, int], m: ShapeMatching) -> dict[Shape, int]:
    return {m.to_shape[w]: c for w, c in sorted(row.items(), key=lambda t: m.to_shape[t[0]].sort_key())}


def shape_table(t: RepTables, m: ShapeMatching) -> StructureTable:
    pieri = {}
    for (w, i), row in t.pieri.items():
        pieri[(m.to_shape[w], i)] = _relabel(row, m)
    products = None
    if t.products is not None:
        products = {}
        for (u, v), row in t.products.items():
            a, b = m.to_shape[u], m.to_shape[v]
            if b.sort_key() < a.sort_key():
                a, b = b, a
            products[(a, b)] = _relabel(row, m)
    for i in (1, 2):
        if m.to_shape[t.special[i]] != special_shape(t.n, i):
            raise OracleConsistencyError(f"pi_{i} not matched to the class of c_{i}")
    return StructureTable(t.basis.rs.family, t.n, pieri, products)


@dataclass
class OracleResult:
    """Everything the oracle produces at one rank."""

    n: int
    rep_b: RepTables | None
    rep_c: RepTables | None
    matching: ShapeMatching
    table_b: StructureTable
    table_c: StructureTable

    def table(self, family: str) -> StructureTable:
        return self.table_b if family == "B" else self.table_c

    def rep_table(self, family: str) -> RepTables | None:
        return self.rep_b if family == "B" else self.rep_c


def default_full(n: int) -> bool:
    return n <= 5


def run_oracle(n: int, full: bool | None = None) -> OracleResult:
    """Build both bases, match shapes, and relabel the tables by shapes."""
    if full is None:
        full = default_full(n)
    tb = rep_tables("B", n, full=full)
    tc = rep_tables("C", n, full=full)
    m = match_shapes_to_reps(tb, tc)
    return OracleResult(n, tb, tc, m, shape_table(tb, m), shape_table(tc, m))


def structure_constants(family: str, n: int, full: bool | None = None) -> StructureTable:
    return run_oracle(n, full).table(family)
