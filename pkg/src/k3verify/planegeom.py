"""The projective plane PG(2, F_4) and isomorphisms of small graphs.

F_4 = {0, 1, a, a^2} is encoded as {0, 1, 2, 3}; addition is XOR and
``a^2 = a + 1``.  Vertices of the incidence graph are the 21 points (0..20)
followed by the 21 lines (21..41), both sorted by their normalized triples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .graphs import IncidenceGraph, matrix_csv
from .report import Report

Q = 4
NAMES = ("0", "1", "a", "a^2")
_LOG = {1: 0, 2: 1, 3: 2}
_EXP = (1, 2, 3)

ADD = tuple(tuple(x ^ y for y in range(Q)) for x in range(Q))
MUL = tuple(tuple(0 if x == 0 or y == 0 else _EXP[(_LOG[x] + _LOG[y]) % 3] for y in range(Q))
            for x in range(Q))


def add(x: int, y: int) -> int:
    return x ^ y


def mul(x: int, y: int) -> int:
    return MUL[x][y]


def inv(x: int) -> int:
    if x == 0:
        raise ZeroDivisionError("0 has no inverse in F_4")
    return _EXP[-_LOG[x] % 3]


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    s = 0
    for a, b in zip(u, v):
        s ^= MUL[a][b]
    return s


def normalize(c: Sequence[int]) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    lead = next((x for x in c if x), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    s = inv(lead)
    return tuple(mul(s, x) for x in c)


def fmt(c: Sequence[int]) -> str:
    return "(" + ",".join(NAMES[x] for x in c) + ")"


def parse(text: str) -> tuple[int, ...]:
    parts = text.strip().strip("()").split(",")
    return tuple(NAMES.index(p.strip().replace("²", "^2")) for p in parts)


def enumerate_points() -> list[tuple[int, int, int]]:
    pts = {normalize(c) for c in product(range(Q), repeat=3) if any(c)}
    return sorted(pts)


def enumerate_lines() -> list[tuple[int, int, int]]:
    # a line a0x0+a1x1+a2x2 = 0 is named by its (normalized) coefficient triple
    return enumerate_points()


def incident(point: Sequence[int], line: Sequence[int]) -> bool:
    return dot(point, line) == 0


def build_incidence() -> IncidenceGraph:
    pts = enumerate_points()
    lines = enumerate_lines()
    n = len(pts)
    edges = [(i, n + j) for i, p in enumerate(pts) for j, l in enumerate(lines) if incident(p, l)]
    names = ["p" + fmt(p) for p in pts] + ["l" + fmt(l) for l in lines]
    return IncidenceGraph.from_edges(2 * n, edges, parts=[0] * n + [1] * n, names=names)


def incidence_matrix() -> list[list[int]]:
    """21 x 21 point-by-line 0/1 matrix."""
    pts = enumerate_points()
    return [[int(incident(p, l)) for l in enumerate_lines()] for p in pts]


def incidence_csv() -> str:
    return matrix_csv(incidence_matrix())


def line_through(p: Sequence[int], q: Sequence[int]) -> tuple[int, int, int]:
    """The line through two distinct points (cross product; signs vanish in char 2)."""
    c = (MUL[p[1]][q[2]] ^ MUL[p[2]][q[1]],
         MUL[p[2]][q[0]] ^ MUL[p[0]][q[2]],
         MUL[p[0]][q[1]] ^ MUL[p[1]][q[0]])
    return normalize(c)


def collinear(p, q, r) -> bool:
    return incident(r, line_through(p, q))


# The 21 triples exactly as printed in the double-plane construction.
PRINTED_POINTS = (
    "(1,1,0)", "(1,0,0)", "(0,1,0)", "(0,0,1)", "(1,1,1)", "(0,1,1)", "(1,0,1)",
    "(1,a,0)", "(1,a^2,0)", "(1,0,a)", "(1,0,a^2)", "(0,1,a)", "(0,1,a^2)", "(1,1,a)",
    "(1,1,a^2)", "(1,a,1)", "(1,a^2,1)", "(1,a,a)", "(1,a,a^2)", "(1,a^2,1)", "(1,a^2,a^2)",
)

# Base points of the cubic pencil spanned by x0x1x2 and x0^3+x1^3+x2^3.
PENCIL_BASE_POINTS = (
    "(1,1,0)", "(1,a,0)", "(1,a^2,0)", "(1,0,1)", "(1,0,a)", "(1,0,a^2)",
    "(0,1,1)", "(0,1,a)", "(0,1,a^2)",
)


def check_printed_points(printed: Iterable[str] = PRINTED_POINTS) -> Report:
    """Compare a printed point list with the canonical enumeration."""
    printed = [parse(s) for s in printed]
    canon = set(enumerate_points())
    rep = Report("geometry.printed_points", True)
    seen: set = set()
    dups = []
    for p in printed:
        if p in seen:
            dups.append(fmt(p))
        seen.add(p)
    missing = sorted(canon - seen)
    extra = sorted(seen - canon)
    for d in dups:
        rep.warn(f"{d} is listed twice")
    for m in missing:
        rep.warn(f"{fmt(m)} is missing from the list")
    if extra:
        rep.fail("non-normalized or invalid points: " + ", ".join(fmt(e) for e in extra))
    rep.details.update(listed=len(printed), distinct=len(seen), duplicates=dups,
                       missing=[fmt(m) for m in missing])
    return rep


def verify_plane() -> Report:
    """Exhaustive incidence axioms of PG(2,4)."""
    pts = enumerate_points()
    lines = enumerate_lines()
    g = build_incidence()
    rep = Report("geometry.plane", True)
    for p, q in combinations(pts, 2):
        if sum(incident(p, l) and incident(q, l) for l in lines) != 1:
            rep.fail(f"{fmt(p)}, {fmt(q)} do not span a unique line")
    for l, m in combinations(lines, 2):
        if sum(incident(p, l) and incident(p, m) for p in pts) != 1:
            rep.fail(f"lines {fmt(l)}, {fmt(m)} do not meet in one point")
    for p in pts:
        through = [l for l in lines if incident(p, l)]
        others = [q for q in pts if q != p]
        groups = [[q for q in others if incident(q, l)] for l in through]
        if len(through) != 5 or sorted(map(len, groups)) != [4] * 5 or \
                sum(map(len, groups)) != len(others):
            rep.fail(f"the lines through {fmt(p)} do not partition the other points")
    # duality: the same triple read as a line reverses incidence
    for p in pts:
        for l in lines:
            if incident(p, l) != incident(l, p):
                rep.fail("duality does not preserve incidence")
    rep.details.update(points=len(pts), lines=len(lines), edges=len(g.edges()),
                       degrees=sorted({g.degree(v) for v in range(g.n)}), girth=g.girth())
    if len(pts) != 21 or len(g.edges()) != 105 or rep.details["degrees"] != [5] or g.girth() != 6:
        rep.fail("incidence graph is not 21+21, 105 edges, 5-regular, girth 6")
    return rep


def field_axioms_ok() -> bool:
    els = range(Q)
    ok = all(ADD[x][y] == ADD[y][x] and MUL[x][y] == MUL[y][x] for x in els for y in els)
    ok &= all(MUL[x][ADD[y][z]] == ADD[MUL[x][y]][MUL[x][z]] for x in els for y in els for z in els)
    ok &= all(MUL[MUL[x][y]][z] == MUL[x][MUL[y][z]] for x in els for y in els for z in els)
    ok &= all(MUL[x][inv(x)] == 1 for x in els if x)
    a = 2
    return ok and MUL[a][a] == ADD[a][1] and MUL[MUL[a][a]][a] == 1


# ---------------------------------------------------------------------------
# Independent subsets (no three collinear)
# ---------------------------------------------------------------------------

def independent_subsets(k: int, points: Sequence[Sequence[int]] | None = None) -> int:
    """Number of unordered ``k``-sets of points with no three collinear."""
    if not 1 <= k <= 6:
        raise ValueError(f"k must be in 1..6, got {k}")
    return sum(1 for _ in _walk(k, points))


def _closure_masks(points) -> list[list[int]]:
    """mask[i][j]: bit set of points on the line through i and j."""
    n = len(points)
    masks = [[0] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        l = line_through(points[i], points[j])
        m = sum(1 << r for r in range(n) if incident(points[r], l))
        masks[i][j] = masks[j][i] = m
    return masks


def _walk(k: int, points):
    points = list(points) if points is not None else enumerate_points()
    n = len(points)
    masks = _closure_masks(points)

    def rec(chosen: list[int], blocked: int, start: int):
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for p in range(start, n):
            if blocked >> p & 1:
                continue
            nb = blocked
            for c in chosen:
                nb |= masks[c][p]
            yield from rec(chosen + [p], nb | 1 << p, p + 1)

    return rec([], 0, 0)


def list_independent(k: int, points=None) -> list[tuple[int, ...]]:
    return list(_walk(k, points))


# ---------------------------------------------------------------------------
# Isomorphisms and automorphisms by partition refinement
# ---------------------------------------------------------------------------

def _refine(g: IncidenceGraph, cells: list[list[int]]):
    """Equitable refinement; returns (cells, trace) with a structure-only trace."""
    cells = [list(c) for c in cells]
    trace = []
    changed = True
    while changed:
        changed = False
        for si in range(len(cells)):
            splitter = set(cells[si])
            out = []
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                counts: dict[int, list[int]] = {}
                for v in cell:
                    counts.setdefault(len(g.adj[v] & splitter), []).append(v)
                if len(counts) > 1:
                    changed = True
                    trace.append((si, tuple(sorted((k, len(v)) for k, v in counts.items()))))
                out.extend(counts[k] for k in sorted(counts))
            if changed:
                cells = out
                break
    trace.append(tuple(len(c) for c in cells))
    return cells, trace


def _individualize(cells, v):
    out = []
    for c in cells:
        if v in c:
            out.append([v])
            rest = [u for u in c if u != v]
            if rest:
                out.append(rest)
        else:
            out.append(c)
    return out


def _extend(g1: IncidenceGraph, g2: IncidenceGraph, c1, c2) -> dict[int, int] | None:
    """Search for an isomorphism g1 -> g2 respecting ordered partitions c1, c2."""
    c1, t1 = _refine(g1, c1)
    c2, t2 = _refine(g2, c2)
    if t1 != t2:
        return None
    k = next((i for i, c in enumerate(c1) if len(c) > 1), None)
    if k is None:
        phi = {c[0]: d[0] for c, d in zip(c1, c2)}
        ok = all(g2.adjacent(phi[u], phi[v]) for u, v in g1.edges())
        return phi if ok and len(g1.edges()) == len(g2.edges()) else None
    v = c1[k][0]
    for w in sorted(c2[k]):
        phi = _extend(g1, g2, _individualize(c1, v), _individualize(c2, w))
        if phi is not None:
            return phi
    return None


def _degree_cells(g: IncidenceGraph) -> list[list[int]]:
    by: dict[int, list[int]] = {}
    for v in range(g.n):
        by.setdefault(g.degree(v), []).append(v)
    return [by[d] for d in sorted(by)]


def find_isomorphism(g1: IncidenceGraph, g2: IncidenceGraph) -> dict[int, int] | None:
    """An adjacency-preserving bijection V(g1) -> V(g2), or ``None``.

    For bipartite inputs the result either preserves or swaps the parts
    (automatic for connected graphs).
    """
    if g1.n != g2.n or len(g1.edges()) != len(g2.edges()):
        return None
    if sorted(map(len, _degree_cells(g1))) != sorted(map(len, _degree_cells(g2))):
        return None
    return _extend(g1, g2, _degree_cells(g1), _degree_cells(g2))


def is_isomorphism(g1: IncidenceGraph, g2: IncidenceGraph, phi: dict[int, int]) -> bool:
    if sorted(phi) != list(range(g1.n)) or sorted(phi.values()) != list(range(g2.n)):
        return False
    return all(g1.adjacent(u, v) == g2.adjacent(phi[u], phi[v])
               for u in range(g1.n) for v in range(u + 1, g1.n))


def count_automorphisms(g: IncidenceGraph, preserve_parts: bool = False) -> int:
    """|Aut(g)| by a stabilizer chain: orbit sizes found by extension search."""
    if preserve_parts:
        if g.parts is None:
            raise ValueError("graph has no bipartition")
        start = [[v for v in range(g.n) if g.parts[v] == p] for p in (0, 1)]
    else:
        start = _degree_cells(g)
    order = 1
    cells = start
    while True:
        cells, _ = _refine(g, cells)
        k = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if k is None:
            return order
        v = cells[k][0]
        fixed = _individualize(cells, v)
        orbit = [w for w in cells[k]
                 if w == v or _extend(g, g, fixed, _individualize(cells, w)) is not None]
        order *= len(orbit)
        cells = fixed


def brute_force_automorphisms(g: IncidenceGraph) -> int:
    """Plain backtracking without refinement; only for tiny graphs."""
    n = g.n
    count = 0
    phi = [-1] * n
    used = [False] * n

    def rec(v: int):
        nonlocal count
        if v == n:
            count += 1
            return
        for w in range(n):
            if used[w] or g.degree(w) != g.degree(v):
                continue
            if all(g.adjacent(u, v) == g.adjacent(phi[u], w) for u in range(v)):
                phi[v], used[w] = w, True
                rec(v + 1)
                used[w] = False
        phi[v] = -1

    rec(0)
    return count


def bijection_to_json(g1: IncidenceGraph, g2: IncidenceGraph, phi: dict[int, int]) -> str:
    return json.dumps([[g1.name(u), g2.name(phi[u])] for u in sorted(phi)])


@dataclass(frozen=True)
class OrderCheck:
    gl: int
    sl: int
    psl: int


def psl34_order() -> OrderCheck:
    """|GL(3,4)|, |SL(3,4)|, |PSL(3,4)| by enumerating invertible matrices."""
    vecs = [v for v in product(range(Q), repeat=3)]

    def det(r0, r1, r2) -> int:
        return dot(r0, (MUL[r1[1]][r2[2]] ^ MUL[r1[2]][r2[1]],
                        MUL[r1[2]][r2[0]] ^ MUL[r1[0]][r2[2]],
                        MUL[r1[0]][r2[1]] ^ MUL[r1[1]][r2[0]]))

    gl = sl = 0
    for r0 in vecs:
        for r1 in vecs:
            for r2 in vecs:
                d = det(r0, r1, r2)
                if d:
                    gl += 1
                    sl += d == 1
    # the centre of SL(3,4) is the scalars c with c^3 = 1, i.e. all of F_4^*
    centre = sum(1 for c in range(1, Q) if MUL[MUL[c][c]][c] == 1)
    return OrderCheck(gl, sl, sl // centre)
