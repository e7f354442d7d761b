"""The even unimodular lattice L = Leech ⊥ U of signature (1, 25).

A vector ``lam + m f + n g`` is stored as ``(lam, m, n)`` with ``lam`` in raw
Leech coordinates; ``f, g`` span a hyperbolic plane with ``f.f = g.g = 0``
and ``f.g = 1``.  Exports always use the coordinate order
``(24 Leech coordinates, m, n)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import golay, leech
from .graphs import IncidenceGraph, matrix_csv
from .lattice import Lattice, gram_of, root_system_type, solve_rational
from .report import Report

DIM = leech.DIM


class LorentzError(ValueError):
    pass


@dataclass(frozen=True)
class LorentzVector:
    lam: tuple[int, ...]
    m: int
    n: int

    @classmethod
    def of(cls, lam: Iterable[int], m: int, n: int) -> "LorentzVector":
        return cls(tuple(int(x) for x in lam), int(m), int(n))

    @classmethod
    def from_coords(cls, c: Sequence[int]) -> "LorentzVector":
        return cls.of(c[:DIM], c[DIM], c[DIM + 1])

    def coords(self) -> tuple[int, ...]:
        return self.lam + (self.m, self.n)

    def __add__(self, other: "LorentzVector") -> "LorentzVector":
        return LorentzVector(tuple(a + b for a, b in zip(self.lam, other.lam)),
                             self.m + other.m, self.n + other.n)

    def __sub__(self, other: "LorentzVector") -> "LorentzVector":
        return self + (-1) * other

    def __rmul__(self, k: int) -> "LorentzVector":
        return LorentzVector(tuple(k * a for a in self.lam), k * self.m, k * self.n)

    def __neg__(self) -> "LorentzVector":
        return (-1) * self


def pair(u: LorentzVector, v: LorentzVector) -> int:
    return leech.inner(u.lam, v.lam) + u.m * v.n + u.n * v.m


def zero() -> LorentzVector:
    return LorentzVector.of([0] * DIM, 0, 0)


def vsum(vectors: Iterable[LorentzVector]) -> LorentzVector:
    return reduce(lambda a, b: a + b, vectors, zero())


@dataclass(frozen=True)
class RationalVector:
    """``num / den`` in the coordinates of L; ``den`` is positive and reduced."""

    num: tuple[int, ...]
    den: int = 1

    @classmethod
    def make(cls, num: Sequence[int], den: int = 1) -> "RationalVector":
        num = [int(x) for x in num]
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = [-x for x in num], -den
        g = reduce(gcd, num, den)
        return cls(tuple(x // g for x in num), den // g)

    @classmethod
    def from_fractions(cls, values: Sequence[Fraction]) -> "RationalVector":
        den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(v).denominator for v in values), 1)
        return cls.make([int(Fraction(v) * den) for v in values], den)

    @classmethod
    def of(cls, v: LorentzVector) -> "RationalVector":
        return cls.make(v.coords(), 1)

    def is_integral(self) -> bool:
        return self.den == 1

    def to_vector(self) -> LorentzVector:
        if self.den != 1:
            raise LorentzError(f"vector has denominator {self.den}")
        return LorentzVector.from_coords(self.num)

    def __add__(self, other) -> "RationalVector":
        other = _rat(other)
        return RationalVector.make([a * other.den + b * self.den for a, b in zip(self.num, other.num)],
                                   self.den * other.den)

    def __sub__(self, other) -> "RationalVector":
        return self + (-1) * _rat(other)

    def __rmul__(self, k) -> "RationalVector":
        k = Fraction(k)
        return RationalVector.make([a * k.numerator for a in self.num], self.den * k.denominator)

    def __eq__(self, other) -> bool:
        other = _rat(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))


def _rat(v) -> RationalVector:
    return v if isinstance(v, RationalVector) else RationalVector.of(v)


def rpair(u, v) -> Fraction:
    """Exact pairing of rational (or integral) vectors of L."""
    u, v = _rat(u), _rat(v)
    a, b = u.num, v.num
    raw = sum(x * y for x, y in zip(a[:DIM], b[:DIM]))
    val = Fraction(-raw, 8) + a[DIM] * b[DIM + 1] + a[DIM + 1] * b[DIM]
    return val / (u.den * v.den)


# ---------------------------------------------------------------------------
# Leech roots and the D4 embedding
# ---------------------------------------------------------------------------

def make_root(b: leech.LeechBasis, lam: Sequence[int]) -> LorentzVector:
    """The Leech root ``(lam, 1, -1 - <lam,lam>/2)``."""
    if not leech.contains(b, lam):
        raise LorentzError(f"{list(lam)} is not in the Leech lattice")
    return LorentzVector.of(lam, 1, -1 - leech.norm(lam) // 2)


def weyl_vector() -> LorentzVector:
    return LorentzVector.of([0] * DIM, 0, 1)


K_OCTAD = golay.TODD_K


def vec_X() -> list[int]:
    return [4 * a + 1 for a in leech.unit(golay.INF)]


def vec_Y() -> list[int]:
    return [4 * a + 1 for a in leech.unit(0)]


def vec_T() -> list[int]:
    """3 on {inf,0,1}, -1 on the rest of K, +1 off K."""
    v = [1] * DIM
    for p in (golay.INF, 0, 1):
        v[golay.position(p)] = 3
    for p in K_OCTAD[3:]:
        v[golay.position(p)] = -1
    return v


@dataclass(frozen=True)
class D4Embedding:
    x: LorentzVector
    y: LorentzVector
    z: LorentzVector
    t: LorentzVector

    @property
    def roots(self) -> tuple[LorentzVector, ...]:
        return (self.x, self.y, self.z, self.t)

    def gram(self) -> list[list[int]]:
        return gram_of(self.roots, pair)


def d4_embedding(b: leech.LeechBasis) -> D4Embedding:
    return D4Embedding(make_root(b, vec_X()), make_root(b, vec_Y()),
                          make_root(b, [0] * DIM), make_root(b, vec_T()))


def ambient_lattice(b: leech.LeechBasis) -> Lattice:
    """L with basis (Leech HNF rows, f, g) in 26-coordinates."""
    rows = [list(r) + [0, 0] for r in b.rows]
    rows.append([0] * DIM + [1, 0])
    rows.append([0] * DIM + [0, 1])
    vecs = [LorentzVector.from_coords(r) for r in rows]
    return Lattice.from_rows(rows, gram_of(vecs, pair))


def complement_of(b: leech.LeechBasis, vectors: Sequence[LorentzVector]) -> Lattice:
    from .lattice import orthogonal_complement
    return orthogonal_complement(ambient_lattice(b), [r.coords() for r in vectors])


def complement_of_R(b: leech.LeechBasis, emb: D4Embedding) -> Lattice:
    return complement_of(b, emb.roots)


# ---------------------------------------------------------------------------
# Root enumerations
# ---------------------------------------------------------------------------

def _pairings(minvecs: np.ndarray, v: LorentzVector) -> np.ndarray:
    """<(lam, 1, 1), v> for every row ``lam`` of ``minvecs`` (norm -4 roots)."""
    raw = minvecs @ np.array(v.lam, dtype=np.int64)
    if (raw % 8).any():
        raise LorentzError("non-integral pairing with a minimal vector")
    return -raw // 8 + v.n + v.m


def _roots_from(minvecs: np.ndarray, mask: np.ndarray) -> list[LorentzVector]:
    # a root orthogonal to z = (0,1,-1) has n = 1, i.e. <lam,lam> = -4
    return [LorentzVector.of(row, 1, 1) for row in minvecs[mask].tolist()]


def _check_z_roots(emb: D4Embedding) -> None:
    # <(lam,1,n), z> = n - 1 = -2 - <lam,lam>/2 vanishes exactly on norm -4
    for k in (0, 2, 4, 6, 8):
        r = LorentzVector.of([0] * DIM, 1, -1 + k // 2)
        if (pair(r, emb.z) == 0) != (k == 4):
            raise LorentzError("orthogonality to z does not single out norm -4")


def roots_orthogonal_to(emb: D4Embedding, minvecs: np.ndarray, which: str = "xyzt") -> list[LorentzVector]:
    _check_z_roots(emb)
    mask = np.ones(len(minvecs), dtype=bool)
    for name in which:
        if name == "z":
            continue
        mask &= _pairings(minvecs, getattr(emb, name)) == 0
    return _roots_from(minvecs, mask)


def roots_orthogonal_to_R(emb: D4Embedding, minvecs: np.ndarray) -> list[LorentzVector]:
    """The 42 Leech roots orthogonal to x, y, z, t (lexicographic in lambda)."""
    roots = roots_orthogonal_to(emb, minvecs, "xyzt")
    for r in roots:
        if any(pair(r, s) for s in emb.roots) or pair(r, r) != -2:
            raise LorentzError("enumerated root is not orthogonal to R")
    return roots


def roots_attaching_D5(emb: D4Embedding, minvecs: np.ndarray) -> dict[str, list[LorentzVector]]:
    """Roots orthogonal to z and to two of x, y, t, pairing 1 with the third.

    Returned per leg, keyed ``"x"``, ``"y"``, ``"t"``.
    """
    _check_z_roots(emb)
    P = {k: _pairings(minvecs, getattr(emb, k)) for k in "xyt"}
    out = {}
    for leg in "xyt":
        mask = P[leg] == 1
        for other in "xyt":
            if other != leg:
                mask &= P[other] == 0
        out[leg] = _roots_from(minvecs, mask)
    return out


def all_168(attached: dict[str, list[LorentzVector]]) -> list[LorentzVector]:
    return sorted(attached["x"] + attached["y"] + attached["t"], key=lambda r: r.lam)


# ---------------------------------------------------------------------------
# Naming and shapes
# ---------------------------------------------------------------------------

def lambda_shape(lam: Sequence[int]) -> str:
    lam = list(lam)
    nz = [x for x in lam if x]
    if len(nz) == 2 and all(abs(x) == 4 for x in nz):
        return "4+4"
    if len(nz) == 8 and all(abs(x) == 2 for x in nz):
        return "2^8"
    if len(nz) == DIM and sorted(abs(x) for x in nz)[-1] == 3:
        return "3,1^23"
    return "other"


def root_name(r: LorentzVector) -> str:
    """Human name of a root from its lambda.

    ``C`` is 4nu_inf + 4nu_0, ``E*``/``L*`` are 2nu of a listed octad and
    ``N<k>`` is nu_Omega - 4nu_k.  Octads outside the printed table show
    their members.
    """
    lam = list(r.lam)
    if lam == [4 * a + 4 * c for a, c in zip(leech.unit(golay.INF), leech.unit(0))]:
        return "C"
    if all(x in (0, 2) for x in lam) and lam.count(2) == 8:
        mask = sum(1 << i for i, x in enumerate(lam) if x)
        for name, s in golay.listed_sets().items():
            if s == mask:
                return name
        return "L?[" + ",".join(golay.labels_of(mask)) + "]"
    k = [i for i, x in enumerate(lam) if x == -3]
    if len(k) == 1 and lam.count(1) == DIM - 1:
        return "N" + golay.label(k[0])
    return "r(" + ",".join(map(str, lam)) + ")"


# ---------------------------------------------------------------------------
# The 42-root graph, Weyl vector data, the 168 reflections
# ---------------------------------------------------------------------------

def intersection_matrix(roots: Sequence[LorentzVector]) -> list[list[int]]:
    return gram_of(roots, pair)


def incidence_graph(roots42: Sequence[LorentzVector]) -> IncidenceGraph:
    """Edge iff the pairing is 1; families from the 2-colouring.

    Family 0 (``A``) is the side holding the root of ``4 nu_inf + 4 nu_0``.
    """
    n = len(roots42)
    G = intersection_matrix(roots42)
    for i in range(n):
        for j in range(n):
            if i != j and G[i][j] not in (0, 1):
                raise LorentzError(f"roots {i}, {j} pair to {G[i][j]}")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if G[i][j] == 1]
    names = [root_name(r) for r in roots42]
    g = IncidenceGraph.from_edges(n, edges, names=names)
    colour = g.two_colouring()
    if colour is None:
        raise LorentzError("root graph is not bipartite")
    if "C" in names and colour[names.index("C")] == 1:
        colour = [1 - c for c in colour]
    return IncidenceGraph(g.adj, tuple(colour), tuple(names))


def families(g: IncidenceGraph) -> tuple[list[int], list[int]]:
    A = [v for v in range(g.n) if g.parts[v] == 0]
    B = [v for v in range(g.n) if g.parts[v] == 1]
    return A, B


def projection_onto_R(emb: D4Embedding, v) -> RationalVector:
    """Orthogonal projection of ``v`` onto span_Q(x, y, z, t)."""
    G = emb.gram()
    rhs = [rpair(v, r) for r in emb.roots]
    c = solve_rational(G, rhs)
    out = RationalVector.make([0] * (DIM + 2))
    for ci, r in zip(c, emb.roots):
        out = out + ci * RationalVector.of(r)
    return out


def project_mod_R(emb: D4Embedding, v) -> RationalVector:
    """``v`` minus its projection onto R: the image in the complement ⊗ Q."""
    return _rat(v) - projection_onto_R(emb, v)


def weyl_projection(emb: D4Embedding) -> RationalVector:
    """``w'`` by solving against Gram(R); must equal ``w + 5z + 3x + 3y + 3t``."""
    solved = project_mod_R(emb, weyl_vector())
    closed = weyl_vector() + 5 * emb.z + 3 * emb.x + 3 * emb.y + 3 * emb.t
    if solved != RationalVector.of(closed):
        raise LorentzError("projection of w disagrees with w + 5z + 3x + 3y + 3t")
    return solved


def class_l(roots42: Sequence[LorentzVector], family_a: Sequence[int], wp: RationalVector) -> LorentzVector:
    """``(2 w' + sum of family A) / 7``, required to be integral."""
    total = 2 * wp + vsum(roots42[i] for i in family_a)
    l = Fraction(1, 7) * total
    if not l.is_integral():
        raise LorentzError("class l is not integral for this family labelling")
    return l.to_vector()


def in_L(b: leech.LeechBasis, v) -> bool:
    v = _rat(v)
    return v.den == 1 and leech.contains(b, v.num[:DIM])


def order_mod_L(b: leech.LeechBasis, v, bound: int = 64) -> int:
    """Least ``d >= 1`` with ``d v`` in L.

    Raw coordinates are not a basis of L, so the reduced denominator of
    ``v`` alone can understate this.
    """
    v = _rat(v)
    for d in range(1, bound + 1):
        if in_L(b, d * v):
            return d
    raise LorentzError(f"no multiple up to {bound} lies in L")


def reflect(rp: RationalVector, v) -> RationalVector:
    """``v + 2 <r', v> r'``."""
    return _rat(v) + (2 * rpair(rp, v)) * rp


def verify_embedding(b: leech.LeechBasis, emb: D4Embedding) -> Report:
    from .lattice import discriminant_group, is_even, is_primitive, signature
    rep = Report("embed.R", True)
    G = emb.gram()
    expected = [[-2, 0, 1, 0], [0, -2, 1, 0], [1, 1, -2, 1], [0, 0, 1, -2]]
    if G != expected:
        rep.fail(f"Gram(x,y,z,t) = {G}")
    types = root_system_type(G)
    L = ambient_lattice(b)
    prim = is_primitive(L, [r.coords() for r in emb.roots])
    S = complement_of_R(b, emb)
    sig = signature(S.gram)
    det = S.determinant()
    disc = discriminant_group(S.gram)
    rep.details.update(gram=G, type=list(types), primitive=prim, complement_rank=S.rank,
                       complement_signature=list(sig), complement_even=is_even(S.gram),
                       complement_det=det, discriminant=disc,
                       ambient_det=L.determinant())
    if types != ("D4",):
        rep.fail(f"R has type {types}")
    if not prim:
        rep.fail("R is not primitive in L")
    if S.rank != 22 or sig != (1, 21) or not is_even(S.gram) or det != -4 or disc != [2, 2]:
        rep.fail("complement invariants differ from rank 22, (1,21), even, det -4, (Z/2)^2")
    return rep


def roots_to_json(roots: Sequence[LorentzVector], fam: Sequence[str] | None = None) -> str:
    recs = []
    for k, r in enumerate(roots):
        rec = {"lambda": list(r.lam), "m": r.m, "n": r.n}
        if fam is not None:
            rec["family"] = fam[k]
        recs.append(rec)
    return json.dumps(recs)


def roots_from_json(text: str) -> list[LorentzVector]:
    return [LorentzVector.of(r["lambda"], r["m"], r["n"]) for r in json.loads(text)]


def intersection_csv(roots: Sequence[LorentzVector]) -> str:
    return matrix_csv(intersection_matrix(roots))


def leech_pairing_formula(r: LorentzVector, s: LorentzVector) -> int:
    """<r, s> for Leech roots via N(lam_r - lam_s)/2 - 2, N = raw norm / 8."""
    d = [a - c for a, c in zip(r.lam, s.lam)]
    return sum(x * x for x in d) // 16 - 2


def d5_split(leg: Sequence[LorentzVector]) -> dict[str, int]:
    """Count one leg by the shape of lambda (coordinate value multiset)."""
    out: dict[str, int] = {}
    for r in leg:
        vals = sorted(set(r.lam))
        key = " ".join(f"{v}^{r.lam.count(v)}" for v in vals)
        out[key] = out.get(key, 0) + 1
    return dict(sorted(out.items()))


def t_leg_types(leg: Sequence[LorentzVector]) -> dict[str, int]:
    """The t leg split as ``nu_Omega - 4nu_k`` (k outside K) and ``2nu_K'``.

    ``K'`` is an octad with ``|K ∩ K'| = 4`` avoiding the point 1.
    """
    K = golay.subset(K_OCTAD)
    one = golay.subset([1])
    out = {"nu_Omega-4nu_k": 0, "2nu_octad": 0, "other": 0}
    for r in leg:
        lam = list(r.lam)
        if lam.count(-3) == 1 and lam.count(1) == DIM - 1 and not K >> lam.index(-3) & 1:
            out["nu_Omega-4nu_k"] += 1
        elif lam.count(2) == 8 and lam.count(0) == DIM - 8:
            mask = sum(1 << i for i, x in enumerate(lam) if x)
            ok = golay.weight(mask & K) == 4 and not mask & one
            out["2nu_octad" if ok else "other"] += 1
        else:
            out["other"] += 1
    return out


@dataclass
class Reflection168:
    root: LorentzVector
    rp: RationalVector
    a_neighbours: list[int]
    b_neighbours: list[int]
    b_values: list[int]


def analyse_168(b: leech.LeechBasis, emb: D4Embedding, roots42: Sequence[LorentzVector], graph: IncidenceGraph,
                l: LorentzVector, roots168: Sequence[LorentzVector]) -> tuple[Report, list[Reflection168]]:
    """Projection, neighbour and reflection identities for each of the 168 roots."""
    A, B = families(graph)
    rep = Report("roots.reflections", True)
    rows = []
    lr = RationalVector.of(l)
    b_values: set[int] = set()
    for r in roots168:
        types = root_system_type(gram_of(list(emb.roots) + [r], pair))
        if types != ("D5",):
            rep.fail(f"{root_name(r)}: R + r has type {types}")
        rp = project_mod_R(emb, r)
        den = order_mod_L(b, rp)
        if rpair(rp, rp) != -1 or den != 2:
            rep.fail(f"{root_name(r)}: r'^2 = {rpair(rp, rp)}, order mod L {den}")
        # R_i is orthogonal to R, so <r', R_i> = <r, R_i>
        na = [i for i in A if pair(r, roots42[i])]
        nb = [i for i in B if pair(r, roots42[i])]
        bv = [pair(r, roots42[i]) for i in nb]
        b_values.update(bv)
        if len(na) != 6 or len(nb) != 6:
            rep.fail(f"{root_name(r)} meets {len(na)} of A and {len(nb)} of B")
        if any(pair(r, roots42[i]) != 1 for i in na):
            rep.fail(f"{root_name(r)}: pairing with an A neighbour is not 1")
        sum_a = RationalVector.of(vsum(roots42[i] for i in na))
        if 2 * rp != 2 * lr - sum_a:
            rep.fail(f"{root_name(r)}: 2r' != 2l - sum R_i")
        if reflect(rp, lr) != 5 * lr - 2 * sum_a:
            rep.fail(f"{root_name(r)}: s(l) != 5l - 2 sum R_i")
        for i in na:
            Ri = RationalVector.of(roots42[i])
            if reflect(rp, Ri) != 2 * lr - sum_a + Ri:
                rep.fail(f"{root_name(r)}: s(R_i) != 2l - sum R + R_i")
        rows.append(Reflection168(r, rp, na, nb, bv))
    rep.details.update(count=len(rows), b_pairing_values=sorted(b_values))
    return rep, rows


EXPECTED_TWELVE = ("E1", "E5", "E9", "E10", "E11", "C", "L1", "L2", "L3", "L4", "L5", "L6")


def twelve_neighbours(b: leech.LeechBasis, roots42: Sequence[LorentzVector]) -> list[str]:
    """Names of the 42-set roots meeting ``(nu_Omega - 4nu_4, 1, 1)``."""
    lam = [a - 4 * c for a, c in zip(leech.NU_OMEGA, leech.unit(4))]
    r = make_root(b, lam)
    return [root_name(s) for s in roots42 if pair(r, s)]


def a2a2_complement(b: leech.LeechBasis, emb: D4Embedding, roots42: Sequence[LorentzVector],
                    graph: IncidenceGraph) -> Report:
    """Complement of ``span(x, z) + span(r_a, r_b)`` with ``r_a, r_b`` adjacent in the 42 set."""
    from .lattice import discriminant_group, is_primitive, signature
    u, v = graph.edges()[0]
    sub = [emb.x, emb.z, roots42[u], roots42[v]]
    G = gram_of(sub, pair)
    L = ambient_lattice(b)
    S = complement_of(b, sub)
    rep = Report("embed.a2a2", True)
    rep.details.update(type=list(root_system_type(G)), rank=S.rank,
                       signature=list(signature(S.gram)),
                       discriminant=discriminant_group(S.gram),
                       primitive=is_primitive(L, [r.coords() for r in sub]),
                       roots=[root_name(roots42[u]), root_name(roots42[v])])
    if rep.details["type"] != ["A2", "A2"]:
        rep.fail(f"sublattice type {rep.details['type']}")
    if S.rank != 22 or rep.details["discriminant"] != [3, 3]:
        rep.fail("complement is not rank 22 with discriminant (Z/3)^2")
    return rep
