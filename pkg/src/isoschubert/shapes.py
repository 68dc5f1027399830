"""Strict partitions, skew diagrams and shapes ``(top//bottom)``.

A shape for rank ``n`` is a pair of strict partitions with
``top_1, bottom_1 <= n``, ``l(bottom) <= 2`` and ``l(top) = n - 2`` with
``top_{n-2} > l(bottom)``.  Reading a missing part of ``top`` as zero the
last inequality already forces full length, which is the reading used here
(the diagram must contain the staircase triangle).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

EMPTY = "∅"


class ShapeError(ValueError):
    """An invalid partition or shape; the message names the violated clause."""


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise ShapeError(f"partition {parts}: parts must be positive")
        if any(a <= b for a, b in zip(parts, parts[1:])):
            raise ShapeError(f"partition {parts}: parts must be strictly decreasing")

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def part(self, k: int) -> int:
        """1-based part, zero past the end."""
        return self.parts[k - 1] if k <= len(self.parts) else 0

    def boxes(self) -> frozenset[tuple[int, int]]:
        return frozenset((r, c) for r, p in enumerate(self.parts) for c in range(p))

    def __str__(self):
        return ",".join(map(str, self.parts)) if self.parts else EMPTY

    @classmethod
    def parse(cls, text: str) -> Partition:
        text = text.strip().strip("()")
        if text in ("", EMPTY, "0", "-"):
            return cls(())
        return cls(tuple(int(t) for t in text.replace(" ", ",").split(",") if t))


@dataclass(frozen=True)
class SkewDiagram:
    boxes: frozenset[tuple[int, int]]

    def __len__(self):
        return len(self.boxes)

    def components(self) -> list[frozenset[tuple[int, int]]]:
        """Edge-connected components, ordered by their top-left box."""
        left = set(self.boxes)
        comps = []
        while left:
            start = min(left)
            comp = {start}
            stack = [start]
            left.discard(start)
            while stack:
                r, c = stack.pop()
                for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
                    if nb in left:
                        left.discard(nb)
                        comp.add(nb)
                        stack.append(nb)
            comps.append(frozenset(comp))
        comps.sort(key=min)
        return comps


def skew(mu: Partition, la: Partition) -> SkewDiagram:
    """Boxes of ``mu``'s diagram not in ``la``'s (set difference)."""
    return SkewDiagram(mu.boxes() - la.boxes())


def triangle_weight(n: int) -> int:
    return comb(n - 1, 2)


@dataclass(frozen=True)
class Shape:
    n: int
    top: Partition
    bottom: Partition = Partition(())

    def __post_init__(self):
        if not isinstance(self.top, Partition):
            object.__setattr__(self, "top", Partition(tuple(self.top)))
        if not isinstance(self.bottom, Partition):
            object.__setattr__(self, "bottom", Partition(tuple(self.bottom)))
        problems = shape_violations(self.n, self.top, self.bottom)
        if problems:
            raise ShapeError(f"({self.top}//{self.bottom}) is not a shape for n={self.n}: " + "; ".join(problems))

    @property
    def weight(self) -> int:
        return self.top.weight + self.bottom.weight - triangle_weight(self.n)

    @property
    def bottom_length(self) -> int:
        return len(self.bottom)

    def sort_key(self):
        return (self.weight, self.top.parts, self.bottom.parts)

    def __lt__(self, other: Shape):
        return (self.n, *self.sort_key()) < (other.n, *other.sort_key())

    def __str__(self):
        return f"{self.top}//{self.bottom}"

    def diagram(self) -> str:
        """Box picture: top rows, a rule, bottom rows."""
        rows = ["#" * p for p in self.top] + ["-" * self.n] + ["#" * p for p in self.bottom]
        return "\n".join(rows)

    @classmethod
    def parse(cls, text: str, n: int) -> Shape:
        if "//" not in text:
            raise ShapeError(f"shape {text!r} must look like 'top//bottom'")
        t, b = text.split("//", 1)
        return cls(n, Partition.parse(t), Partition.parse(b))


def shape_violations(n: int, top: Partition, bottom: Partition) -> list[str]:
    out = []
    if n < 3:
        out.append("rank n >= 3 required")
    if top.part(1) > n:
        out.append("top_1 <= n")
    if bottom.part(1) > n:
        out.append("bottom_1 <= n")
    if len(top) > n - 2:
        out.append("l(top) <= n-2")
    if len(bottom) > 2:
        out.append("l(bottom) <= 2")
    if n >= 3 and not top.part(n - 2) > len(bottom):
        out.append("top_{n-2} > l(bottom)")
    return out


def shape_weight(s: Shape) -> int:
    return s.weight


def bottom_length(s: Shape) -> int:
    return s.bottom_length


def _strict(max_part: int, length: int, min_part: int = 1) -> Iterable[tuple[int, ...]]:
    for combo in itertools.combinations(range(max_part, min_part - 1, -1), length):
        yield combo


def enumerate_shapes(n: int, weight: int | None = None) -> list[Shape]:
    """All shapes of rank ``n`` sorted by (weight, top, bottom)."""
    if n < 3:
        raise ShapeError("rank n >= 3 required")
    shapes = []
    for bl in range(3):
        bottoms = list(_strict(n, bl))
        for top in _strict(n, n - 2, min_part=bl + 1):
            for bot in bottoms:
                s = Shape(n, Partition(top), Partition(bot))
                if weight is None or s.weight == weight:
                    shapes.append(s)
    shapes.sort(key=Shape.sort_key)
    return shapes


def special_shape(n: int, i: int) -> Shape:
    """``pi_i = ((n-2+i, n-3, ..., 1)//empty)`` for ``i`` in 0, 1, 2."""
    if i not in (0, 1, 2):
        raise ValueError("special shapes exist for i = 0, 1, 2 only")
    top = (n - 2 + i,) + tuple(range(n - 3, 0, -1))
    return Shape(n, Partition(top), Partition(()))


def top_shape(n: int) -> Shape:
    """The unique shape of maximal weight ``4n - 5``."""
    return Shape(n, Partition(tuple(range(n, 2, -1))), Partition((n, n - 1)))


def weight_counts(n: int) -> list[int]:
    counts = [0] * (4 * n - 4)
    for s in enumerate_shapes(n):
        counts[s.weight] += 1
    return counts


def lemma_bound_counterexamples(n: int) -> list[Shape]:
    """Shapes violating: bottom length 0 => weight <= 2n-4, bottom length 2 =>
    weight >= 2n-1, weight in {2n-3, 2n-2} => bottom length 1."""
    bad = []
    for s in enumerate_shapes(n):
        bl, w = s.bottom_length, s.weight
        if (bl == 0 and w > 2 * n - 4) or (bl == 2 and w < 2 * n - 1):
            bad.append(s)
        elif w in (2 * n - 3, 2 * n - 2) and bl != 1:
            bad.append(s)
    return bad


def shapes_by_weight(shapes: Sequence[Shape]) -> dict[int, list[Shape]]:
    out: dict[int, list[Shape]] = {}
    for s in shapes:
        out.setdefault(s.weight, []).append(s)
    return out
