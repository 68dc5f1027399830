"""Exact integer linear algebra on small dense matrices (lists of lists)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def _copy(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, row)) for row in a]


def column_hermite(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, list[tuple[int, int]]]:
    """Column echelon form ``H = A U`` with ``U`` unimodular.

    Returns ``(H, U, pivots)`` where ``pivots`` lists ``(row, column)``.
    """
    h = _copy(a)
    m = len(h)
    k = len(h[0]) if m else 0
    u = [[int(i == j) for j in range(k)] for i in range(k)]

    def colop(dst, src, q):
        # column dst -= q * column src
        for row in h:
            row[dst] -= q * row[src]
        for row in u:
            row[dst] -= q * row[src]

    def swap(c1, c2):
        for row in h:
            row[c1], row[c2] = row[c2], row[c1]
        for row in u:
            row[c1], row[c2] = row[c2], row[c1]

    pivots = []
    pc = 0
    for r in range(m):
        if pc >= k:
            break
        while True:
            nz = [c for c in range(pc, k) if h[r][c]]
            if not nz:
                break
            best = min(nz, key=lambda c: abs(h[r][c]))
            swap(pc, best)
            done = True
            for c in range(pc + 1, k):
                if h[r][c]:
                    colop(c, pc, h[r][c] // h[r][pc])
                    if h[r][c]:
                        done = False
            if done:
                break
        if h[r][pc]:
            if h[r][pc] < 0:
                for row in h:
                    row[pc] = -row[pc]
                for row in u:
                    row[pc] = -row[pc]
            pivots.append((r, pc))
            pc += 1
    return h, u, pivots


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """Some integer ``x`` with ``A x = b``, or ``None`` if there is none."""
    m = len(a)
    k = len(a[0]) if m else 0
    h, u, pivots = column_hermite(a)
    pivot_of_row = dict(pivots)
    y = [0] * k
    for r in range(m):
        resid = int(b[r]) - sum(h[r][j] * y[j] for j in range(k))
        if r in pivot_of_row:
            c = pivot_of_row[r]
            q, rem = divmod(resid, h[r][c])
            if rem:
                return None
            y[c] = q
        elif resid:
            return None
    return [sum(u[i][j] * y[j] for j in range(k)) for i in range(k)]


def smith_invariants(a: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix."""
    h = _copy(a)
    m = len(h)
    k = len(h[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, k):
        entries = [(abs(h[i][j]), i, j) for i in range(t, m) for j in range(t, k) if h[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        h[t], h[i] = h[i], h[t]
        for row in h:
            row[t], row[j] = row[j], row[t]
        while True:
            p = h[t][t]
            changed = False
            for i in range(t + 1, m):
                q = h[i][t] // p
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[t])]
                if h[i][t]:
                    changed = True
            for j in range(t + 1, k):
                q = h[t][j] // p
                if q:
                    for row in h:
                        row[j] -= q * row[t]
                if h[t][j]:
                    changed = True
            if not changed:
                # pivot must divide the remaining block
                bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, k) if h[i][j] % p]
                if not bad:
                    break
                i, _ = bad[0]
                h[t] = [x + y for x, y in zip(h[t], h[i])]
                continue
            entries = [(abs(h[i][t]), i, t) for i in range(t, m) if h[i][t]]
            entries += [(abs(h[t][j]), t, j) for j in range(t, k) if h[t][j]]
            _, i, j = min(entries)
            h[t], h[i] = h[i], h[t]
            for row in h:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(h[t][t]))
        t += 1
    return diag


def rank(a: Sequence[Sequence[int]]) -> int:
    if not a:
        return 0
    return len(column_hermite(a)[2])


def det_mod2(a: Sequence[Sequence[int]]) -> int:
    m = [[x & 1 for x in row] for row in a]
    n = len(m)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return 0
        m[c], m[piv] = m[piv], m[c]
        for r in range(c + 1, n):
            if m[r][c]:
                m[r] = [x ^ y for x, y in zip(m[r], m[c])]
    return 1


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    m = _copy(a)
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for c in range(n - 1):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                m[r][j] = (m[r][j] * m[c][c] - m[r][c] * m[c][j]) // prev
        prev = m[c][c]
    return sign * m[n - 1][n - 1]


def inverse(a: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]
