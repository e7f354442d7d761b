"""Searches for fibration configurations among the 42 curves.

Everything works on an ``IncidenceGraph`` whose edges are intersections of
(-2)-curves.  Searches are deterministic backtracking in vertex order; the
validator re-derives every condition from the adjacency sets alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .graphs import IncidenceGraph
from .report import Report


class NotFound(LookupError):
    pass


@dataclass(frozen=True)
class FibrationConfig:
    kind: str                                   # "D4" or "A5"
    fibers: tuple[tuple[int, ...], ...]
    multiplicities: tuple[tuple[int, ...], ...]
    sections: tuple[int, ...]
    extra: int | None = None

    def used(self) -> list[int]:
        out = [v for f in self.fibers for v in f] + list(self.sections)
        if self.extra is not None:
            out.append(self.extra)
        return out

    def to_json(self, g: IncidenceGraph) -> str:
        return json.dumps({
            "kind": self.kind,
            "fibers": [[g.name(v) for v in f] for f in self.fibers],
            "sections": [g.name(v) for v in self.sections],
            "extra": g.name(self.extra) if self.extra is not None else None,
        })


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _nbr_masks(g: IncidenceGraph) -> list[int]:
    return [_mask(g.adj[v]) for v in range(g.n)]


def _fiber_degree(g: IncidenceGraph, v: int, fiber, mult) -> int:
    return sum(m for u, m in zip(fiber, mult) if g.adjacent(u, v))


def section_meetings(g: IncidenceGraph, cfg: FibrationConfig) -> int:
    return sum(1 for u, v in combinations(cfg.sections, 2) if g.adjacent(u, v))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate(g: IncidenceGraph, cfg: FibrationConfig, disjoint_sections: bool | None = None) -> list[str]:
    """All violated conditions (empty list means valid).

    Sections are required to be pairwise disjoint only for the D4 kind by
    default: in the hexagon configuration a base point always lies on its
    own dual line, so those sections necessarily meet.
    """
    if disjoint_sections is None:
        disjoint_sections = cfg.kind == "D4"
    errs = []
    used = cfg.used()
    if sorted(used) != list(range(g.n)):
        errs.append("vertices are not used exactly once")
    for i, j in combinations(range(len(cfg.fibers)), 2):
        if any(g.adjacent(u, v) for u in cfg.fibers[i] for v in cfg.fibers[j]):
            errs.append(f"fibers {i} and {j} meet")
    for i, (f, mult) in enumerate(zip(cfg.fibers, cfg.multiplicities)):
        if cfg.kind == "D4":
            c, leaves = f[0], f[1:]
            if len(leaves) != 4 or tuple(mult) != (2, 1, 1, 1, 1):
                errs.append(f"fiber {i} is not a D4 star")
            if not all(g.adjacent(c, v) for v in leaves):
                errs.append(f"fiber {i}: centre misses a leaf")
            if any(g.adjacent(u, v) for u, v in combinations(leaves, 2)):
                errs.append(f"fiber {i}: leaves meet")
        elif cfg.kind == "A5":
            if len(f) != 6 or tuple(mult) != (1,) * 6:
                errs.append(f"fiber {i} is not a hexagon")
            for k, u in enumerate(f):
                inside = {v for v in f if g.adjacent(u, v)}
                if inside != {f[k - 1], f[(k + 1) % len(f)]}:
                    errs.append(f"fiber {i} is not an induced 6-cycle")
                    break
        else:
            errs.append(f"unknown kind {cfg.kind}")
    if disjoint_sections and section_meetings(g, cfg):
        errs.append("sections meet")
    for s in cfg.sections:
        for i, (f, mult) in enumerate(zip(cfg.fibers, cfg.multiplicities)):
            if _fiber_degree(g, s, f, mult) != 1:
                errs.append(f"{g.name(s)} is not a section for fiber {i}")
    if cfg.kind == "D4":
        if cfg.extra is None:
            errs.append("missing 2-section")
        else:
            for i, (f, mult) in enumerate(zip(cfg.fibers, cfg.multiplicities)):
                if _fiber_degree(g, cfg.extra, f, mult) != 2:
                    errs.append(f"extra curve meets fiber {i} with degree != 2")
            if {v for v in g.adj[cfg.extra]} != {f[0] for f in cfg.fibers}:
                errs.append("extra curve is not adjacent to exactly the five centres")
    return errs


# ---------------------------------------------------------------------------
# Five D4 stars, sixteen sections and a 2-section
# ---------------------------------------------------------------------------

def find_d4_configuration(g: IncidenceGraph, start: int | None = None) -> FibrationConfig:
    """Five disjoint D4 stars with centres on the side of ``start``."""
    if start is None:
        start = 0
    nb = _nbr_masks(g)
    side = [v for v in range(g.n) if g.parts is None or g.parts[v] == g.parts[start]]

    def rec(fibers: list[tuple[int, ...]], used: int, closed: int):
        if len(fibers) == 5:
            cfg = _close_d4(g, fibers)
            if cfg is not None:
                yield cfg
            return
        lo = fibers[-1][0] if len(fibers) > 1 else -1
        centres = [start] if not fibers else [c for c in side if c > lo and c != start]
        for c in centres:
            if closed >> c & 1 or len(g.adj[c]) < 4:
                continue
            for leaves in combinations(sorted(g.adj[c]), 4):
                lm = _mask(leaves)
                if lm & closed:
                    continue
                if any(g.adjacent(u, v) for u, v in combinations(leaves, 2)):
                    continue
                fm = lm | 1 << c
                reach = fm
                for v in (c,) + leaves:
                    reach |= nb[v]
                yield from rec(fibers + [(c,) + leaves], used | fm, closed | reach)

    for cfg in rec([], 0, 0):
        return cfg
    raise NotFound(f"no D4 configuration with centre {g.name(start)}")


def _close_d4(g: IncidenceGraph, fibers) -> FibrationConfig | None:
    used = {v for f in fibers for v in f}
    rest = [v for v in range(g.n) if v not in used]
    centres = {f[0] for f in fibers}
    extras = [v for v in rest if set(g.adj[v]) == centres]
    if len(extras) != 1:
        return None
    sections = tuple(v for v in rest if v != extras[0])
    cfg = FibrationConfig("D4", tuple(fibers), tuple((2, 1, 1, 1, 1) for _ in fibers),
                          sections, extras[0])
    return cfg if not validate(g, cfg) else None


# ---------------------------------------------------------------------------
# Four hexagons and eighteen sections
# ---------------------------------------------------------------------------

def hexagons(g: IncidenceGraph) -> list[tuple[int, ...]]:
    """Induced 6-cycles, each listed once starting at its least vertex."""
    out = []
    for s in range(g.n):
        def walk(path):
            u = path[-1]
            if len(path) == 6:
                if g.adjacent(u, s) and path[1] < path[-1]:
                    inside = all(not g.adjacent(path[i], path[j])
                                 for i, j in combinations(range(6), 2)
                                 if (j - i) % 6 not in (1, 5))
                    if inside:
                        out.append(tuple(path))
                return
            for w in sorted(g.adj[u]):
                if w > s and w not in path:
                    walk(path + [w])
        walk([s])
    return out


def find_a5_configuration(g: IncidenceGraph) -> FibrationConfig:
    """Four disjoint, mutually non-adjacent hexagons plus 18 sections.

    The sections meet each hexagon once; they are not pairwise disjoint.
    """
    hexes = hexagons(g)
    nb = _nbr_masks(g)
    vm = [_mask(h) for h in hexes]
    closed = []
    for h, m in zip(hexes, vm):
        c = m
        for v in h:
            c |= nb[v]
        closed.append(c)

    def rec(chosen: list[int], block: int):
        if len(chosen) == 4:
            fibers = tuple(hexes[i] for i in chosen)
            used = _mask(v for f in fibers for v in f)
            sections = tuple(v for v in range(g.n) if not used >> v & 1)
            cfg = FibrationConfig("A5", fibers, tuple((1,) * 6 for _ in fibers), sections)
            if not validate(g, cfg):
                yield cfg
            return
        start = chosen[-1] + 1 if chosen else 0
        for i in range(start, len(hexes)):
            if vm[i] & block:
                continue
            yield from rec(chosen + [i], block | closed[i])

    for cfg in rec([], 0):
        return cfg
    raise NotFound("no configuration of four hexagons and 18 sections")


# ---------------------------------------------------------------------------
# Induced subdiagrams
# ---------------------------------------------------------------------------

def path_diagram(k: int) -> IncidenceGraph:
    return IncidenceGraph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def star_diagram(leaves: int = 4) -> IncidenceGraph:
    """Affine D4 for four leaves."""
    return IncidenceGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def affine_d(n: int) -> IncidenceGraph:
    """Affine D_n (n >= 5): a chain of n-3 nodes with two leaves at each end."""
    if n < 5:
        raise ValueError("affine D_n needs n >= 5 here")
    chain = n - 3
    edges = [(i, i + 1) for i in range(chain - 1)]
    edges += [(0, chain), (0, chain + 1), (chain - 1, chain + 2), (chain - 1, chain + 3)]
    return IncidenceGraph.from_edges(n + 1, edges)


@dataclass
class SubdiagramResult:
    found: tuple[int, ...] | None
    nodes: int
    exhausted: bool = field(default=True)

    @property
    def status(self) -> str:
        if self.found is not None:
            return "found"
        return "absent" if self.exhausted else "undecided"


def find_subdiagram(g: IncidenceGraph, h: IncidenceGraph, node_limit: int | None = None) -> SubdiagramResult:
    """An induced copy of the connected graph ``h`` inside ``g``.

    ``found[i]`` is the image of vertex ``i`` of ``h``.  With ``node_limit``
    the search may stop early and report ``undecided``.
    """
    order = [0]
    parent = {0: None}
    for v in order:
        for w in sorted(h.adj[v]):
            if w not in parent:
                parent[w] = v
                order.append(w)
    if len(order) != h.n:
        raise ValueError("query diagram must be connected")
    nodes = 0
    image: dict[int, int] = {}
    taken: set[int] = set()

    class _Stop(Exception):
        pass

    def rec(k: int) -> bool:
        nonlocal nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _Stop
        if k == len(order):
            return True
        v = order[k]
        p = parent[v]
        cands = range(g.n) if p is None else sorted(g.adj[image[p]])
        for w in cands:
            if w in taken:
                continue
            if all(h.adjacent(v, u) == g.adjacent(w, image[u]) for u in image):
                image[v] = w
                taken.add(w)
                if rec(k + 1):
                    return True
                del image[v]
                taken.discard(w)
        return False

    try:
        ok = rec(0)
    except _Stop:
        return SubdiagramResult(None, nodes, exhausted=False)
    return SubdiagramResult(tuple(image[i] for i in range(h.n)) if ok else None, nodes)


def d4_from_every_start(g: IncidenceGraph) -> Report:
    side = [v for v in range(g.n) if g.parts[v] == 0]
    rep = Report("fibrations.d4", True)
    ok = 0
    for s in side:
        try:
            cfg = find_d4_configuration(g, s)
        except NotFound as e:
            rep.fail(str(e))
            continue
        errs = validate(g, cfg)
        if errs:
            rep.fail(f"{g.name(s)}: {errs[0]}")
        else:
            ok += 1
    rep.details.update(starts=len(side), successes=ok)
    return rep


def a5_report(g: IncidenceGraph) -> Report:
    rep = Report("fibrations.a5", True)
    try:
        cfg = find_a5_configuration(g)
    except NotFound as e:
        rep.fail(str(e))
        return rep
    errs = validate(g, cfg)
    for e in errs:
        rep.fail(e)
    split = [sum(1 for s in cfg.sections if g.parts[s] == p) for p in (0, 1)]
    alternate = all(g.parts[f[i]] != g.parts[f[(i + 1) % 6]] for f in cfg.fibers for i in range(6))
    rep.details.update(fibers=len(cfg.fibers), sections=len(cfg.sections), section_split=split,
                       alternating=alternate, section_meetings=section_meetings(g, cfg))
    if split != [9, 9] or not alternate or len(cfg.sections) != 18:
        rep.fail(f"section split {split}, alternating {alternate}")
    return rep
