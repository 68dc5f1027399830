"""Sparse multivariate polynomials with exact rational coefficients.

Coefficients are Python ``int`` or ``fractions.Fraction``; integral values
are normalised to ``int`` so integer-coefficient work never pays for
``Fraction`` arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Number = Union[int, Fraction]
Exponent = tuple[int, ...]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class ExactPolynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Number] | None = None):
        self.nvars = nvars
        self.terms: dict[Exponent, Number] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                if c:
                    self.terms[tuple(e)] = _norm(c)

    @classmethod
    def zero(cls, nvars: int) -> ExactPolynomial:
        return cls(nvars)

    @classmethod
    def constant(cls, c: Number, nvars: int) -> ExactPolynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> ExactPolynomial:
        """The variable ``x_i`` (1-based)."""
        e = [0] * nvars
        e[i - 1] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs: Sequence[Number]) -> ExactPolynomial:
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    @classmethod
    def product(cls, factors: Iterable[ExactPolynomial], nvars: int) -> ExactPolynomial:
        out = cls.constant(1, nvars)
        for f in factors:
            out = out * f
        return out

    def copy(self) -> ExactPolynomial:
        p = ExactPolynomial(self.nvars)
        p.terms = dict(self.terms)
        return p

    def _coerce(self, other) -> ExactPolynomial:
        if isinstance(other, ExactPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return ExactPolynomial.constant(other, self.nvars)

    def __add__(self, other) -> ExactPolynomial:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        p = ExactPolynomial(self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self) -> ExactPolynomial:
        p = ExactPolynomial(self.nvars)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other) -> ExactPolynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> ExactPolynomial:
        return self._coerce(other) - self

    def scale(self, c: Number) -> ExactPolynomial:
        p = ExactPolynomial(self.nvars)
        if c:
            p.terms = {e: _norm(v * c) for e, v in self.terms.items()}
        return p

    def __mul__(self, other) -> ExactPolynomial:
        if not isinstance(other, ExactPolynomial):
            return self.scale(other)
        other = self._coerce(other)
        out: dict[Exponent, Number] = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        p = ExactPolynomial(self.nvars)
        p.terms = {e: _norm(c) for e, c in out.items() if c}
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int) -> ExactPolynomial:
        if k < 0:
            raise ValueError("negative power")
        out = ExactPolynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactPolynomial):
            if isinstance(other, (int, Fraction)):
                other = ExactPolynomial.constant(other, self.nvars)
            else:
                return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def constant_term(self) -> Number:
        return self.terms.get((0,) * self.nvars, 0)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def substitute_signed_permutation(self, images: Sequence[int]) -> ExactPolynomial:
        """Apply ``x_i -> sign(k) x_{|k|}`` where ``k = images[i-1]``."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            sgn = 1
            for i, a in enumerate(e):
                if a:
                    k = images[i]
                    ne[abs(k) - 1] = a
                    if k < 0 and a % 2:
                        sgn = -sgn
            out[tuple(ne)] = c * sgn
        return ExactPolynomial(self.nvars, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"x{i + 1}^{a}" if a > 1 else f"x{i + 1}" for i, a in enumerate(e) if a)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")
