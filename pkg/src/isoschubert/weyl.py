"""Root systems of type B_n / C_n and their common Weyl group.

Group elements are signed permutations in one-line notation: ``images[i]``
is the signed index ``k`` such that ``w(e_{i+1}) = sign(k) e_{|k|}``.
Simple roots are ``alpha_i = e_i - e_{i+1}`` for ``i < n`` and ``alpha_n``
equal to ``e_n`` (type B) or ``2 e_n`` (type C).  Only the root vectors depend
on the family; the group combinatorics never do.

Coset and double-coset data are obtained from the orbit of a dominant
weight whose stabiliser is exactly the parabolic subgroup, so nothing here
needs to enumerate the whole group except :func:`weyl_group_elements`.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

MAX_ENUMERATION_RANK = 9


class ResourceError(RuntimeError):
    """Raised when a request exceeds a documented enumeration bound."""


Vector = tuple[int, ...]


def _is_positive(v: Sequence[int]) -> bool:
    # for this choice of simple roots a root is positive iff its first
    # nonzero coordinate is positive
    for c in v:
        if c:
            return c > 0
    raise ValueError("zero vector has no sign")


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in ("B", "C"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.rank < 1:
            raise ValueError("rank must be positive")

    @property
    def n(self) -> int:
        return self.rank

    def basis(self, i: int, scale: int = 1) -> Vector:
        v = [0] * self.rank
        v[i - 1] = scale
        return tuple(v)

    def simple_root(self, i: int) -> Vector:
        n = self.rank
        if not 1 <= i <= n:
            raise ValueError(f"simple root index {i} out of range 1..{n}")
        if i < n:
            v = [0] * n
            v[i - 1], v[i] = 1, -1
            return tuple(v)
        return self.basis(n, 1 if self.family == "B" else 2)

    @property
    def simple_roots(self) -> list[Vector]:
        return [self.simple_root(i) for i in range(1, self.rank + 1)]

    @property
    def positive_roots(self) -> list[Vector]:
        n = self.rank
        roots = []
        for i in range(n):
            for j in range(i + 1, n):
                for sgn in (-1, 1):
                    v = [0] * n
                    v[i], v[j] = 1, sgn
                    roots.append(tuple(v))
        short = 1 if self.family == "B" else 2
        for i in range(n):
            v = [0] * n
            v[i] = short
            roots.append(tuple(v))
        return roots

    @property
    def order(self) -> int:
        return 2**self.rank * math.factorial(self.rank)

    def coroot(self, root: Sequence[int]) -> tuple:
        """``2 root / (root, root)``; entries may be half-integers only for
        nonsense input, so integers are returned for genuine roots."""
        nn = sum(c * c for c in root)
        return tuple(2 * c // nn for c in root)


@dataclass(frozen=True, order=True)
class SignedPermutation:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(abs(k) for k in imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"{imgs} is not a signed permutation")

    @classmethod
    def identity(cls, n: int) -> SignedPermutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def reflection(cls, i: int, n: int) -> SignedPermutation:
        """The simple reflection ``s_i`` (same element for types B and C)."""
        imgs = list(range(1, n + 1))
        if i < n:
            imgs[i - 1], imgs[i] = imgs[i], imgs[i - 1]
        elif i == n:
            imgs[n - 1] = -n
        else:
            raise ValueError(f"no simple reflection s_{i} in rank {n}")
        return cls(tuple(imgs))

    @classmethod
    def from_word(cls, word: Iterable[int], n: int) -> SignedPermutation:
        """Product ``s_{i1} s_{i2} ... s_{ik}`` (rightmost factor acts first)."""
        w = cls.identity(n)
        for i in word:
            w = w * cls.reflection(i, n)
        return w

    @classmethod
    def from_action(cls, columns: Sequence[int], n: int) -> SignedPermutation:
        """Element acting by the given signed images on ``e_1..e_k`` and
        trivially on the remaining basis vectors."""
        imgs = list(columns) + list(range(len(columns) + 1, n + 1))
        return cls(tuple(imgs))

    @property
    def n(self) -> int:
        return len(self.images)

    def __mul__(self, other: SignedPermutation) -> SignedPermutation:
        # (self * other)(e_i) = self(other(e_i))
        if self.n != other.n:
            raise ValueError("rank mismatch")
        out = []
        for k in other.images:
            j = self.images[abs(k) - 1]
            out.append(j if k > 0 else -j)
        return SignedPermutation(tuple(out))

    def inverse(self) -> SignedPermutation:
        out = [0] * self.n
        for i, k in enumerate(self.images, start=1):
            out[abs(k) - 1] = i if k > 0 else -i
        return SignedPermutation(tuple(out))

    def act(self, v: Sequence[int]) -> tuple:
        out = [0] * self.n
        for i, c in enumerate(v):
            if c:
                k = self.images[i]
                out[abs(k) - 1] += c if k > 0 else -c
        return tuple(out)

    def is_identity(self) -> bool:
        return all(k == i for i, k in enumerate(self.images, start=1))

    def has_descent(self, i: int, rs: RootSystem) -> bool:
        """Right descent: ``l(w s_i) < l(w)``, i.e. ``w(alpha_i) < 0``."""
        return not _is_positive(self.act(rs.simple_root(i)))

    def __str__(self):
        return "[" + " ".join(str(k) for k in self.images) + "]"


def length(w: SignedPermutation, rs: RootSystem) -> int:
    """Number of positive roots sent to negative roots."""
    return sum(1 for a in rs.positive_roots if not _is_positive(w.act(a)))


def reduced_word(w: SignedPermutation, rs: RootSystem, prefer: str = "low") -> list[int]:
    """A reduced word of ``w`` obtained by greedily stripping right descents.

    ``prefer`` chooses the smallest (``"low"``) or largest (``"high"``)
    descent at every step, giving two generally different reduced words.
    """
    order = range(1, rs.rank + 1) if prefer == "low" else range(rs.rank, 0, -1)
    word: list[int] = []
    x = w
    while not x.is_identity():
        for i in order:
            if x.has_descent(i, rs):
                word.append(i)
                x = x * SignedPermutation.reflection(i, rs.rank)
                break
    word.reverse()
    return word


def longest_element(n: int) -> SignedPermutation:
    return SignedPermutation(tuple(-k for k in range(1, n + 1)))


def weyl_group_elements(rs: RootSystem) -> Iterator[SignedPermutation]:
    n = rs.rank
    if n > MAX_ENUMERATION_RANK:
        raise ResourceError(f"rank {n} exceeds enumeration bound {MAX_ENUMERATION_RANK}")
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            yield SignedPermutation(tuple(s * p for s, p in zip(signs, perm)))


@dataclass(frozen=True)
class ParabolicSubset:
    """Simple-root indices generating the parabolic subgroup ``W_P``."""

    n: int
    included: frozenset[int]

    def __post_init__(self):
        inc = frozenset(self.included)
        object.__setattr__(self, "included", inc)
        if not inc <= set(range(1, self.n + 1)):
            raise ValueError(f"{sorted(inc)} is not a subset of 1..{self.n}")

    @classmethod
    def excluding(cls, n: int, excluded: Iterable[int]) -> ParabolicSubset:
        ex = set(excluded)
        return cls(n, frozenset(i for i in range(1, n + 1) if i not in ex))

    @classmethod
    def full(cls, n: int) -> ParabolicSubset:
        return cls(n, frozenset(range(1, n + 1)))

    @property
    def excluded(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if i not in self.included)

    def label(self) -> str:
        """Flag-variety style name: ``X_{1,2}`` for ``Pi minus {alpha_1, alpha_2}``."""
        ex = self.excluded
        return "X_{" + ",".join(map(str, ex)) + "}" if ex else "point"

    def describe(self) -> str:
        ex = self.excluded
        if not ex:
            return "Pi"
        return "Pi\\{" + ",".join(f"a{i}" for i in ex) + "}"

    def dominant_weight(self) -> Vector:
        """Integral dominant weight whose stabiliser is exactly ``W_P``."""
        v = [0] * self.n
        for j in self.excluded:
            for k in range(j):
                v[k] += 1
        return tuple(v)

    def subgroup_order(self) -> int:
        # W_P is a product of type-A blocks and possibly one type-B block at the end
        order, run = 1, 0
        for i in range(1, self.n + 1):
            if i in self.included:
                run += 1
            else:
                order *= math.factorial(run + 1)
                run = 0
        if run:
            # trailing block contains alpha_n: type B_run
            order *= 2**run * math.factorial(run)
        return order


def x2_parabolic(n: int) -> ParabolicSubset:
    """``Pi minus {alpha_2}``: the parabolic of isotropic 2-planes."""
    return ParabolicSubset.excluding(n, [2])


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class CosetData:
    """Orbit of the dominant weight: point -> (minimal representative, length)."""

    rs: RootSystem
    parabolic: ParabolicSubset
    reps: dict = field(repr=False)

    def items(self):
        return self.reps.items()


def coset_data(rs: RootSystem, p: ParabolicSubset) -> CosetData:
    """Breadth-first search through the orbit ``W . lambda``.

    Stepping ``mu -> s_i mu`` when ``(mu, alpha_i) > 0`` increases the length
    of the minimal representative by exactly one.
    """
    lam = p.dominant_weight()
    n = rs.rank
    reps = {lam: (SignedPermutation.identity(n), 0)}
    queue = deque([lam])
    simple = rs.simple_roots
    refl = [SignedPermutation.reflection(i, n) for i in range(1, n + 1)]
    while queue:
        mu = queue.popleft()
        w, l = reps[mu]
        for i in range(n):
            if _dot(mu, simple[i]) > 0:
                nu = refl[i].act(mu)
                if nu not in reps:
                    reps[nu] = (refl[i] * w, l + 1)
                    queue.append(nu)
    return CosetData(rs, p, reps)


def minimal_coset_reps(rs: RootSystem, p: ParabolicSubset) -> list[SignedPermutation]:
    """Minimal-length representatives of the left cosets ``w W_P``,
    ordered by (length, one-line notation)."""
    data = coset_data(rs, p)
    return [w for w, _ in sorted(data.reps.values(), key=lambda t: (t[1], t[0]))]


def poincare_polynomial(rs: RootSystem, p: ParabolicSubset) -> list[int]:
    """Coefficient list of ``sum_{w in W^P} t^{l(w)}`` (index = power of t)."""
    data = coset_data(rs, p)
    top = max(l for _, l in data.reps.values())
    coeffs = [0] * (top + 1)
    for _, l in data.reps.values():
        coeffs[l] += 1
    return coeffs


@dataclass(frozen=True)
class DoubleCoset:
    minimal_rep: SignedPermutation
    length: int
    size: int
    points: frozenset = field(repr=False)

    def contains(self, w: SignedPermutation, p: ParabolicSubset) -> bool:
        return w.act(p.dominant_weight()) in self.points


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    parabolic: ParabolicSubset
    cosets: tuple[DoubleCoset, ...]

    def __len__(self):
        return len(self.cosets)

    def locate(self, w: SignedPermutation) -> int:
        for k, d in enumerate(self.cosets):
            if d.contains(w, self.parabolic):
                return k
        raise ValueError(f"{w} lies in no double coset")  # pragma: no cover


def double_cosets(rs: RootSystem, p: ParabolicSubset) -> DoubleCosetDecomposition:
    """``W_P \\ W / W_P`` as ``W_P``-orbits on the coset space ``W / W_P``.

    The minimal element of a double coset is the shortest minimal left-coset
    representative inside it; uniqueness of that minimum is asserted.
    Cosets are ordered by (length, representative).
    """
    data = coset_data(rs, p)
    n = rs.rank
    gens = [SignedPermutation.reflection(i, n) for i in sorted(p.included)]
    seen: set = set()
    wp = p.subgroup_order()
    cosets = []
    for start in data.reps:
        if start in seen:
            continue
        orbit = {start}
        stack = [start]
        while stack:
            mu = stack.pop()
            for g in gens:
                nu = g.act(mu)
                if nu not in orbit:
                    orbit.add(nu)
                    stack.append(nu)
        seen |= orbit
        ranked = sorted((data.reps[mu][1], data.reps[mu][0]) for mu in orbit)
        if len(ranked) > 1 and ranked[0][0] == ranked[1][0]:
            raise AssertionError(f"double coset of {ranked[0][1]} has no unique minimum")
        l, rep = ranked[0]
        cosets.append(DoubleCoset(rep, l, len(orbit) * wp, frozenset(orbit)))
    cosets.sort(key=lambda d: (d.length, d.minimal_rep))
    return DoubleCosetDecomposition(p, tuple(cosets))


def double_cosets_by_scan(rs: RootSystem, p: ParabolicSubset) -> list[tuple[SignedPermutation, int, int]]:
    """Exhaustive scan of the whole group; returns (minimal rep, length, size)."""
    n = rs.rank
    gens = [SignedPermutation.reflection(i, n) for i in sorted(p.included)]
    sub = {SignedPermutation.identity(n)}
    frontier = list(sub)
    while frontier:
        nxt = []
        for u in frontier:
            for g in gens:
                v = u * g
                if v not in sub:
                    sub.add(v)
                    nxt.append(v)
        frontier = nxt
    assigned: set = set()
    out = []
    for w in weyl_group_elements(rs):
        if w in assigned:
            continue
        block = {a * w * b for a in sub for b in sub}
        assigned |= block
        ranked = sorted((length(x, rs), x) for x in block)
        if len(ranked) > 1 and ranked[0][0] == ranked[1][0]:
            raise AssertionError("double coset without unique minimum")
        out.append((ranked[0][1], ranked[0][0], len(block)))
    out.sort(key=lambda t: (t[1], t[0]))
    return out


_WORD_TOKEN = re.compile(r"(?:alpha|a|α|s)?_?(\d+)")
_WORD_SEPARATORS = re.compile(r"[\s,.*()]+")


def parse_word(text: str) -> list[int]:
    """Parse ``"a2 a1 a3 a2"``, ``"2,1,3,2"``, ``"s2s1"`` or ``"α2α1"``.

    ``"1"`` or an empty string denotes the identity.
    """
    text = text.strip()
    if text in ("", "1", "e", "id"):
        return []
    body = _WORD_SEPARATORS.sub(" ", text).strip()
    out = []
    for chunk in body.split():
        pos = 0
        while pos < len(chunk):
            m = _WORD_TOKEN.match(chunk, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse word {text!r}")
            out.append(int(m.group(1)))
            pos = m.end()
    if not out:
        raise ValueError(f"cannot parse word {text!r}")
    return out


def fundamental_weight_pairing(root: Sequence[int], rs: RootSystem, j: int) -> int:
    """``<omega_j, root^vee>`` with ``omega_j = e_1 + ... + e_j`` (``j < n``)."""
    co = rs.coroot(root)
    return sum(co[:j])
