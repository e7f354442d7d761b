"""Sparse multivariate polynomials over a binary field."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .fields import F2, Field, embedding

MAX_VARS = 4

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class FqPolynomial:
    field: Field
    nvars: int
    terms: tuple[tuple[Monomial, int], ...]   # sorted, no zero coefficients

    @classmethod
    def make(cls, field: Field, nvars: int, terms: Mapping[Monomial, int] | Iterable) -> "FqPolynomial":
        if not 1 <= nvars <= MAX_VARS:
            raise ValueError(f"{nvars} variables (at most {MAX_VARS})")
        acc: dict[Monomial, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != nvars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent {e}")
            if not 0 <= c < field.q:
                raise ValueError(f"{c} is not an element of {field.name()}")
            acc[e] = acc.get(e, 0) ^ c
        return cls(field, nvars, tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def zero(cls, field: Field, nvars: int) -> "FqPolynomial":
        return cls(field, nvars, ())

    @classmethod
    def const(cls, field: Field, nvars: int, c: int) -> "FqPolynomial":
        return cls.make(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field: Field, nvars: int, i: int) -> "FqPolynomial":
        e = [0] * nvars
        e[i] = 1
        return cls.make(field, nvars, {tuple(e): 1})

    @classmethod
    def gens(cls, field: Field, nvars: int) -> list["FqPolynomial"]:
        return [cls.var(field, nvars, i) for i in range(nvars)]

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "FqPolynomial") -> None:
        if other.field != self.field or other.nvars != self.nvars:
            raise ValueError("polynomials live in different rings")

    def _lift(self, other) -> "FqPolynomial":
        if isinstance(other, int):
            return FqPolynomial.const(self.field, self.nvars, other)
        self._check(other)
        return other

    def __add__(self, other) -> "FqPolynomial":
        other = self._lift(other)
        d = dict(self.terms)
        for e, c in other.terms:
            d[e] = d.get(e, 0) ^ c
        return FqPolynomial.make(self.field, self.nvars, d)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self) -> "FqPolynomial":
        return self

    def __mul__(self, other) -> "FqPolynomial":
        other = self._lift(other)
        F = self.field
        d: dict[Monomial, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) ^ F.mul(c1, c2)
        return FqPolynomial.make(F, self.nvars, d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FqPolynomial":
        if k < 0:
            raise ValueError("negative power")
        out = FqPolynomial.const(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- structure ----------------------------------------------------------------

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "FqPolynomial":
        return FqPolynomial(self.field, self.nvars, tuple(t for t in self.terms if sum(t[0]) == d))

    def lowest_degree(self) -> int:
        return min((sum(e) for e, _ in self.terms), default=-1)

    def coefficient(self, e: Sequence[int]) -> int:
        return dict(self.terms).get(tuple(e), 0)

    def partial(self, i: int) -> "FqPolynomial":
        """Formal derivative; the factor e_i survives only when odd."""
        d = {}
        for e, c in self.terms:
            if e[i] % 2:
                f = list(e)
                f[i] -= 1
                d[tuple(f)] = c
        return FqPolynomial.make(self.field, self.nvars, d)

    def frobenius(self) -> "FqPolynomial":
        """Coefficientwise Frobenius ``c -> c^2`` (exponents unchanged)."""
        return FqPolynomial.make(self.field, self.nvars, {e: self.field.frob(c) for e, c in self.terms})

    def square_root(self) -> "FqPolynomial | None":
        """``r`` with ``r*r == self`` if every exponent is even, else ``None``."""
        if any(x % 2 for e, _ in self.terms for x in e):
            return None
        return FqPolynomial.make(self.field, self.nvars,
                                 {tuple(x // 2 for x in e): self.field.sqrt(c) for e, c in self.terms})

    def over(self, big: Field) -> "FqPolynomial":
        """Same polynomial with coefficients pushed into an extension field."""
        if big == self.field:
            return self
        img = embedding(self.field, big)
        return FqPolynomial.make(big, self.nvars, {e: img[c] for e, c in self.terms})

    # -- evaluation and substitution -------------------------------------------------

    def __call__(self, *point: int) -> int:
        return self.evaluate(point)

    def evaluate(self, point: Sequence[int]) -> int:
        F = self.field
        acc = 0
        for e, c in self.terms:
            v = c
            for x, k in zip(point, e):
                if k:
                    v = F.mul(v, F.pow(x, k))
                    if not v:
                        break
            acc ^= v
        return acc

    def substitute(self, images: Sequence["FqPolynomial"]) -> "FqPolynomial":
        """Replace variable ``i`` by ``images[i]`` (all in a common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0]
        out = FqPolynomial.zero(target.field, target.nvars)
        cache: dict[tuple[int, int], FqPolynomial] = {}
        for e, c in self.terms:
            term = FqPolynomial.const(target.field, target.nvars, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = images[i] ** k
                    term = term * cache[(i, k)]
            out = out + term
        return out

    # -- I/O ------------------------------------------------------------------------------

    def to_records(self) -> list[dict]:
        pad = MAX_VARS - self.nvars
        return [{"exps": list(e) + [0] * pad, "coeff": c} for e, c in self.terms]

    def to_json(self) -> str:
        return json.dumps(self.to_records())

    @classmethod
    def from_json(cls, text: str, field: Field, nvars: int) -> "FqPolynomial":
        recs = json.loads(text)
        terms = []
        for r in recs:
            e = r["exps"]
            if any(e[nvars:]):
                raise ValueError(f"exponent {e} uses more than {nvars} variables")
            terms.append((tuple(e[:nvars]), r["coeff"]))
        return cls.make(field, nvars, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = "xyzw" if self.nvars <= 4 else None
        parts = []
        for e, c in reversed(self.terms):
            mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k)
            coef = "" if c == 1 and mono else str(c)
            parts.append("*".join(p for p in (coef, mono) if p))
        return " + ".join(parts)


def polynomial_ring(field: Field, nvars: int) -> list[FqPolynomial]:
    return FqPolynomial.gens(field, nvars)


def projective_points(field: Field, n: int) -> list[tuple[int, ...]]:
    """Normalized points of P^(n-1) over ``field`` (first nonzero coordinate 1)."""
    pts = []
    for c in product(field.elements(), repeat=n):
        lead = next((x for x in c if x), None)
        if lead == 1:
            pts.append(c)
    return pts


def monomials(nvars: int, degree: int) -> list[Monomial]:
    return sorted(e for e in product(range(degree + 1), repeat=nvars) if sum(e) == degree)


def f2_poly(nvars: int, exps: Iterable[Sequence[int]]) -> FqPolynomial:
    """Sum of the given monomials over F_2."""
    d: dict[Monomial, int] = {}
    for e in exps:
        e = tuple(e)
        d[e] = d.get(e, 0) ^ 1
    return FqPolynomial.make(F2, nvars, d)
