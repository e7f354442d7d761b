"""Exact integer lattice algebra.

Everything here works on Python ints (and ``fractions.Fraction`` where a
rational pivot is unavoidable); nothing is ever converted to floating point.
Matrices are lists of rows.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


class LatticeError(ValueError):
    pass


class DegenerateFormError(LatticeError):
    pass


class RootSystemError(LatticeError):
    pass


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------
# Hermite normal form
# ---------------------------------------------------------------------------

def _hnf(rows, track: bool):
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    T = identity(m) if track else None
    r = 0
    for col in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = A[i][col]
            if b == 0:
                continue
            a = A[r][col]
            g, x, y = xgcd(a, b)
            p, q = a // g, b // g
            # [[x, y], [-q, p]] has determinant 1
            Ar, Ai = A[r], A[i]
            A[r] = [x * u + y * v for u, v in zip(Ar, Ai)]
            A[i] = [p * v - q * u for u, v in zip(Ar, Ai)]
            if track:
                Tr, Ti = T[r], T[i]
                T[r] = [x * u + y * v for u, v in zip(Tr, Ti)]
                T[i] = [p * v - q * u for u, v in zip(Tr, Ti)]
        piv = A[r][col]
        if piv == 0:
            continue
        if piv < 0:
            A[r] = [-u for u in A[r]]
            if track:
                T[r] = [-u for u in T[r]]
            piv = -piv
        for k in range(r):
            f = A[k][col] // piv
            if f:
                A[k] = [u - f * v for u, v in zip(A[k], A[r])]
                if track:
                    T[k] = [u - f * v for u, v in zip(T[k], T[r])]
        r += 1
    return A, T


def hnf_with_transform(rows: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form with its unimodular transform.

    Returns ``(H, T)`` with ``T @ rows == H``.  ``H`` keeps all ``m`` rows;
    the nonzero ones come first, in echelon form with positive pivots and
    entries above each pivot reduced into ``[0, pivot)``.
    """
    return _hnf(rows, True)


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> Matrix:
    """Nonzero rows of the row-style HNF of ``rows``."""
    H, _ = _hnf(rows, False)
    return [row for row in H if any(row)]


def pivots(H: Sequence[Sequence[int]]) -> list[int]:
    return [next(j for j, v in enumerate(row) if v) for row in H]


def echelon_solve(H: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Integer ``c`` with ``c @ H == v`` for an echelon ``H``, else ``None``."""
    v = list(v)
    coeffs = []
    for row in H:
        j = next(k for k, x in enumerate(row) if x)
        for k in range(j):
            if v[k]:
                return None
        q, rem = divmod(v[j], row[j])
        if rem:
            return None
        coeffs.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        return None
    return coeffs


def integer_kernel(M: Sequence[Sequence[int]]) -> Matrix:
    """Basis (rows) of ``{x in Z^n : M @ x == 0}``.

    The kernel is computed from the unimodular transform of the HNF of
    ``M^T``, so the result is always a saturated (primitive) sublattice.
    """
    if not M:
        raise LatticeError("empty matrix has no column count")
    H, T = hnf_with_transform(transpose(M))
    kernel = [T[i] for i, row in enumerate(H) if not any(row)]
    return hermite_normal_form(kernel) if kernel else []


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``U @ M @ V == D``.

    ``D`` is diagonal with nonnegative entries forming a divisibility chain;
    ``U`` and ``V`` are unimodular.
    """
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return A, U, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
                if A[t][j]:
                    dirty = True
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(A[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return A, U, V


def invariant_factors(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith form, in divisibility order."""
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    A = [list(r) for r in M]
    n = len(A)
    if any(len(r) != n for r in A):
        raise LatticeError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


# ---------------------------------------------------------------------------
# Forms
# ---------------------------------------------------------------------------

def solve_rational(A: Sequence[Sequence[int]], b: Sequence) -> list[Fraction]:
    """Unique solution of ``A c = b`` over Q (``A`` square and nonsingular)."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k] != 0), None)
        if p is None:
            raise DegenerateFormError("singular system")
        M[k], M[p] = M[p], M[k]
        for i in range(n):
            if i != k and M[i][k]:
                f = M[i][k] / M[k][k]
                M[i] = [a - f * c for a, c in zip(M[i], M[k])]
    return [M[i][n] / M[i][i] for i in range(n)]


def is_symmetric(G: Sequence[Sequence[int]]) -> bool:
    return all(G[i][j] == G[j][i] for i in range(len(G)) for j in range(i))


def is_even(G: Sequence[Sequence[int]]) -> bool:
    return all(G[i][i] % 2 == 0 for i in range(len(G)))


def signature(G: Sequence[Sequence[int]]) -> tuple[int, int]:
    """(positive, negative) index of inertia by exact congruence diagonalization."""
    if not is_symmetric(G):
        raise LatticeError("Gram matrix is not symmetric")
    A = [[Fraction(x) for x in row] for row in G]
    n = len(A)
    pos = neg = 0
    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    raise DegenerateFormError("form is degenerate")
                # e_k <- e_k + e_j makes the diagonal entry 2*A[k][j]
                for c in range(n):
                    A[k][c] += A[j][c]
                for r in range(n):
                    A[r][k] += A[r][j]
        p = A[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = A[i][k] / p
            if f:
                for c in range(k, n):
                    A[i][c] -= f * A[k][c]
                for r in range(k, n):
                    A[r][i] -= f * A[r][k]
    return pos, neg


def discriminant_group(G: Sequence[Sequence[int]]) -> list[int]:
    """Elementary divisors (> 1) of ``G``; their product is ``|det G|``."""
    factors = invariant_factors(G)
    if len(factors) < len(G):
        raise DegenerateFormError("form is degenerate")
    return [d for d in factors if d > 1]


# ---------------------------------------------------------------------------
# Lattices embedded in an ambient coordinate space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Lattice:
    """A Z-lattice given by basis rows and the Gram matrix of those rows."""

    basis: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, basis, gram) -> "Lattice":
        return cls(tuple(tuple(int(x) for x in r) for r in basis),
                   tuple(tuple(int(x) for x in r) for r in gram))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def _hnf(self):
        cached = self.__dict__.get("_hnf_cache")
        if cached is None:
            H, T = hnf_with_transform(self.basis)
            r = sum(1 for row in H if any(row))
            if r != self.rank:
                raise LatticeError("basis rows are linearly dependent")
            cached = (H[:r], T[:r])
            object.__setattr__(self, "_hnf_cache", cached)
        return cached

    def coordinates(self, v: Sequence[int]) -> list[int] | None:
        """Integer coordinates of ``v`` in this basis, or ``None`` if ``v`` is not a member."""
        H, T = self._hnf()
        c = echelon_solve(H, v)
        if c is None:
            return None
        return [sum(ci * T[i][j] for i, ci in enumerate(c)) for j in range(self.rank)]

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def pair_coords(self, a: Sequence[int], b: Sequence[int]) -> int:
        G = self.gram
        return sum(a[i] * G[i][j] * b[j] for i in range(len(a)) if a[i] for j in range(len(b)) if b[j])

    def determinant(self) -> int:
        return determinant(self.gram)

    def to_json(self) -> str:
        return json.dumps({"basis": [list(r) for r in self.basis], "gram": [list(r) for r in self.gram]})


def gram_of(vectors: Sequence[Sequence[int]], inner) -> Matrix:
    return [[inner(u, v) for v in vectors] for u in vectors]


def orthogonal_complement(ambient: Lattice, sub: Sequence[Sequence[int]]) -> Lattice:
    """Sublattice of ``ambient`` orthogonal to every vector of ``sub``.

    ``sub`` vectors are given in the ambient coordinate space and must be
    lattice members.
    """
    coords = []
    for v in sub:
        c = ambient.coordinates(v)
        if c is None:
            raise LatticeError(f"vector {list(v)} is not in the ambient lattice")
        coords.append(c)
    G = ambient.gram
    n = ambient.rank
    # <s, x> = s^T G x, one linear condition per sub vector
    M = [[sum(c[i] * G[i][j] for i in range(n)) for j in range(n)] for c in coords]
    K = integer_kernel(M) if M else identity(n)
    basis = [[sum(k[i] * ambient.basis[i][j] for i in range(n)) for j in range(len(ambient.basis[0]))]
             for k in K]
    gram = [[ambient.pair_coords(a, b) for b in K] for a in K]
    return Lattice.from_rows(basis, gram)


def is_primitive(ambient: Lattice, sub: Sequence[Sequence[int]]) -> bool:
    """True iff ``span_Q(sub) ∩ ambient == span_Z(sub)``."""
    coords = []
    for v in sub:
        c = ambient.coordinates(v)
        if c is None:
            raise LatticeError(f"vector {list(v)} is not in the ambient lattice")
        coords.append(c)
    factors = invariant_factors(coords)
    return all(f == 1 for f in factors)


def gram_to_json(G: Sequence[Sequence[int]]) -> str:
    return json.dumps([list(map(int, row)) for row in G])


def gram_from_json(text: str) -> Matrix:
    G = json.loads(text)
    if not is_symmetric(G):
        raise LatticeError("Gram matrix is not symmetric")
    return [[int(x) for x in row] for row in G]


# ---------------------------------------------------------------------------
# ADE classification
# ---------------------------------------------------------------------------

_E_ARMS = {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}


def _component_type(nodes: list[int], adj: dict[int, set[int]]) -> str:
    edges = sum(len(adj[v]) for v in nodes) // 2
    if edges != len(nodes) - 1:
        raise RootSystemError("Dynkin graph contains a cycle")
    degrees = [len(adj[v]) for v in nodes]
    if max(degrees, default=0) <= 2:
        return f"A{len(nodes)}"
    forks = [v for v in nodes if len(adj[v]) >= 3]
    if len(forks) > 1 or len(adj[forks[0]]) > 3:
        raise RootSystemError("Dynkin graph is not of ADE shape")
    center = forks[0]
    arms = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while True:
            nxt = [u for u in adj[cur] if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms = tuple(sorted(arms))
    if arms[0] == 1 and arms[1] == 1:
        return f"D{arms[2] + 3}"
    if arms in _E_ARMS:
        return _E_ARMS[arms]
    raise RootSystemError(f"fork with arms {arms} is not a Dynkin diagram")


def root_system_type(gram: Sequence[Sequence[int]]) -> tuple[str, ...]:
    """ADE labels of the Dynkin diagram of a set of simple roots.

    Roots are in the negative definite convention: every diagonal entry must
    be -2 and every off-diagonal entry 0 or 1.  Labels are returned sorted by
    family letter, then rank.
    """
    n = len(gram)
    adj: dict[int, set[int]] = {i: set() for i in range(n)}
    for i in range(n):
        if gram[i][i] != -2:
            raise RootSystemError(f"root {i} has norm {gram[i][i]}, expected -2")
        for j in range(n):
            if i == j:
                continue
            if gram[i][j] != gram[j][i] or gram[i][j] not in (0, 1):
                raise RootSystemError(f"inner product {gram[i][j]} between roots {i}, {j}")
            if gram[i][j]:
                adj[i].add(j)
    seen: set[int] = set()
    labels = []
    for v in range(n):
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        labels.append(_component_type(sorted(comp), adj))
    return tuple(sorted(labels, key=lambda s: (s[0], int(s[1:]))))


def format_root_type(labels: Sequence[str]) -> str:
    counts = Counter(labels)
    return " + ".join(f"{k}^{c}" if c > 1 else k for k, c in counts.items())
