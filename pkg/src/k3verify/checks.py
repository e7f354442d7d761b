"""Registry of verification checks grouped into suites.

Each check takes a shared ``Context`` (which builds the expensive objects
once, lazily) and returns a ``Report``.  ``run_checks`` turns reports into
plain ``CheckReport`` records in registry order.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import cached_property
from typing import Any, Callable

from . import fibsearch, golay, leech, lorentz, planegeom
from .char2 import models
from .graphs import heawood_graph
from .lattice import gram_of, root_system_type
from .report import Report

log = logging.getLogger(__name__)

SUITES = ("golay", "leech", "embed", "roots", "geometry", "fibrations", "surfaces")
REPORT_VERSION = 1


class UnknownSuite(ValueError):
    pass


class Context:
    def __init__(self, cache_dir: str | None = None, ext_degree: int = 3):
        self.cache_dir = cache_dir if cache_dir is not None else os.environ.get("K3V_CACHE")
        self.ext_degree = ext_degree

    @cached_property
    def code(self) -> golay.GolayCode:
        return golay.build_code()

    @cached_property
    def basis(self) -> leech.LeechBasis:
        return leech.build_basis(self.code)

    @cached_property
    def minvecs(self):
        return leech.minimal_vectors(self.basis, self.code, cache_dir=self.cache_dir)

    @cached_property
    def emb(self) -> lorentz.D4Embedding:
        return lorentz.d4_embedding(self.basis)

    @cached_property
    def roots42(self) -> list[lorentz.LorentzVector]:
        return lorentz.roots_orthogonal_to_R(self.emb, self.minvecs)

    @cached_property
    def graph(self):
        return lorentz.incidence_graph(self.roots42)

    @cached_property
    def attached(self) -> dict[str, list[lorentz.LorentzVector]]:
        return lorentz.roots_attaching_D5(self.emb, self.minvecs)

    @cached_property
    def roots168(self) -> list[lorentz.LorentzVector]:
        return lorentz.all_168(self.attached)

    @cached_property
    def wprime(self) -> lorentz.RationalVector:
        return lorentz.weyl_projection(self.emb)

    @cached_property
    def class_l(self) -> lorentz.LorentzVector:
        A, _ = lorentz.families(self.graph)
        return lorentz.class_l(self.roots42, A, self.wprime)

    @cached_property
    def plane(self):
        return planegeom.build_incidence()


# ---------------------------------------------------------------------------
# golay
# ---------------------------------------------------------------------------

def _golay_code(ctx: Context) -> Report:
    return golay.verify_code(ctx.code)


def _golay_steiner(ctx: Context) -> Report:
    rep = golay.verify_steiner(ctx.code.octads)
    through = [len(ctx.code.octads_containing(golay.subset(golay.LABELS[:k]))) for k in range(1, 6)]
    rep.details["octads_through_k_points"] = through
    if through != [253, 77, 21, 5, 1]:
        rep.fail(f"octads through 1..5 points: {through}")
    return rep


def _golay_listed(ctx: Context) -> Report:
    return golay.verify_listed_octads(ctx.code)


def _golay_find(ctx: Context) -> Report:
    rep = Report("golay.find_octad", True)
    sets = golay.listed_sets()
    k = golay.find_octad(ctx.code, golay.subset(golay.TODD_K[:5]))
    e1 = golay.find_octad(ctx.code, golay.subset(golay.TODD_E[0][:5]))
    rep.details.update(K=golay.labels_of(k), E1=golay.labels_of(e1))
    if k != sets["K"] or e1 != sets["E1"]:
        rep.fail("find_octad disagrees with K or E1")
    return rep


# ---------------------------------------------------------------------------
# leech
# ---------------------------------------------------------------------------

def _leech_basis(ctx: Context) -> Report:
    return leech.verify_basis(ctx.basis, ctx.code)


def _leech_minimal(ctx: Context) -> Report:
    shapes = leech.minimal_vectors_by_shape(ctx.basis, ctx.code)
    counts = {k: int(len(v)) for k, v in shapes.items()}
    V = ctx.minvecs
    rep = Report("leech.minimal_vectors", True)
    members = bool(leech.contains_many(ctx.basis, V).all())
    norms = bool(((V.astype("int64") ** 2).sum(axis=1) == 32).all())
    neg = {tuple(r) for r in (-V).tolist()}
    closed = neg == {tuple(r) for r in V.tolist()}
    rep.details.update(total=int(len(V)), shapes=counts, members=members, raw_norm_32=norms,
                       closed_under_negation=closed)
    if len(V) != 196560 or sorted(counts.values()) != [1104, 97152, 98304]:
        rep.fail(f"minimal vector counts {len(V)} {counts}")
    if not (members and norms and closed):
        rep.fail("minimal vector list fails membership, norm or negation closure")
    return rep


def _leech_short(ctx: Context) -> Report:
    census = leech.short_vector_census(ctx.basis)
    rep = Report("leech.no_short_vectors", True)
    rep.details.update({str(k): v for k, v in census.items()})
    if any(census[k] for k in (4, 8, 12, 16)):
        rep.fail("lattice vectors of raw norm below 32 exist")
    return rep


def _leech_shell(ctx: Context) -> Report:
    census = leech.minimal_shell_census(ctx.basis)
    rep = Report("leech.minimal_shell", True)
    rep.details.update(census)
    if census.get("total") != 196560:
        rep.fail(f"shell census total {census.get('total')}")
    return rep


# ---------------------------------------------------------------------------
# embed
# ---------------------------------------------------------------------------

def _embed_R(ctx: Context) -> Report:
    return lorentz.verify_embedding(ctx.basis, ctx.emb)


def _embed_a2a2(ctx: Context) -> Report:
    return lorentz.a2a2_complement(ctx.basis, ctx.emb, ctx.roots42, ctx.graph)


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------

def _roots_42(ctx: Context) -> Report:
    rep = Report("roots.orthogonal_to_R", True)
    names = [lorentz.root_name(r) for r in ctx.roots42]
    inter = lorentz.roots_orthogonal_to(ctx.emb, ctx.minvecs, "xyz")
    shapes: dict[str, int] = {}
    for r in inter:
        s = lorentz.lambda_shape(r.lam)
        shapes[s] = shapes.get(s, 0) + 1
    types = {root_system_type(gram_of(list(ctx.emb.roots) + [r], lorentz.pair)) for r in ctx.roots42}
    rep.details.update(count=len(ctx.roots42), orthogonal_to_xyz=len(inter), xyz_shapes=shapes,
                       contains_C="C" in names, types_with_R=sorted("+".join(t) for t in types))
    if len(ctx.roots42) != 42 or "C" not in names:
        rep.fail(f"{len(ctx.roots42)} roots orthogonal to R")
    if len(inter) != 100:
        rep.fail(f"{len(inter)} roots orthogonal to x, y, z")
    if types != {("A1", "D4")}:
        rep.fail(f"R + r types {types}")
    return rep


def _roots_168(ctx: Context) -> Report:
    rep = Report("roots.attaching_D5", True)
    legs = {k: len(v) for k, v in ctx.attached.items()}
    splits = {k: lorentz.d5_split(v) for k, v in ctx.attached.items()}
    t_types = lorentz.t_leg_types(ctx.attached["t"])
    bad = [r for r in ctx.roots168
           if root_system_type(gram_of(list(ctx.emb.roots) + [r], lorentz.pair)) != ("D5",)]
    rep.details.update(total=len(ctx.roots168), legs=legs, leg_shapes=splits, t_leg=t_types,
                       non_D5=len(bad))
    if len(ctx.roots168) != 168 or set(legs.values()) != {56}:
        rep.fail(f"leg counts {legs}")
    if any(sorted(s.values()) != [16, 40] for s in splits.values()):
        rep.fail("a leg does not split 16 + 40")
    if t_types != {"nu_Omega-4nu_k": 16, "2nu_octad": 40, "other": 0}:
        rep.fail(f"t leg types {t_types}")
    if bad:
        rep.fail(f"{len(bad)} roots do not extend R to D5")
    return rep


def _roots_graph(ctx: Context) -> Report:
    g = ctx.graph
    A, B = lorentz.families(g)
    rep = Report("roots.graph", True)
    within = sum(1 for u, v in g.edges() if g.parts[u] == g.parts[v])
    degrees = sorted({g.degree(v) for v in range(g.n)})
    fam_a = sorted(g.name(i) for i in A)
    expected_a = sorted(["C"] + [f"E{i}" for i in range(1, 21)])
    rep.details.update(sizes=[len(A), len(B)], degrees=degrees, within_family_edges=within,
                       girth=g.girth(), family_A=fam_a, family_B=sorted(g.name(i) for i in B))
    if [len(A), len(B)] != [21, 21] or degrees != [5] or within or g.girth() != 6:
        rep.fail("root graph is not a 5-regular 21+21 bipartite graph of girth 6")
    if fam_a != expected_a:
        rep.fail("family A is not {E1..E20, C}")
    unnamed = [n for n in rep.details["family_B"] if n.startswith("L?")]
    for n in unnamed:
        rep.warn(f"family B root {n} is not in the printed table")
    return rep


def _roots_weyl(ctx: Context) -> Report:
    rep = Report("roots.weyl", True)
    wp = ctx.wprime
    norm = lorentz.rpair(wp, wp)
    pairings = {int(lorentz.rpair(wp, r)) for r in ctx.roots42}
    w = lorentz.weyl_vector()
    w_on_roots = {lorentz.pair(w, r) for r in ctx.roots42 + list(ctx.emb.roots)}
    h_sum = 3 * wp == lorentz.RationalVector.of(lorentz.vsum(ctx.roots42))
    rep.details.update(norm=str(norm), pairings_with_42=sorted(pairings),
                       w_on_roots=sorted(w_on_roots), h_sum=h_sum)
    if norm != 14 or pairings != {1} or w_on_roots != {1}:
        rep.fail(f"<w',w'> = {norm}, pairings {pairings}")
    if not h_sum:
        rep.fail("3w' differs from the sum of the 42 roots")
    return rep


def _roots_class_l(ctx: Context) -> Report:
    rep = Report("roots.class_l", True)
    A, B = lorentz.families(ctx.graph)
    out = {}
    for label, (fa, fb) in (("A", (A, B)), ("B", (B, A))):
        try:
            l = lorentz.class_l(ctx.roots42, fa, ctx.wprime)
        except lorentz.LorentzError as e:
            rep.fail(f"family {label}: {e}")
            continue
        vals_a = {lorentz.pair(l, ctx.roots42[i]) for i in fa}
        vals_b = {lorentz.pair(l, ctx.roots42[i]) for i in fb}
        perp = all(lorentz.pair(l, r) == 0 for r in ctx.emb.roots)
        out[label] = {"norm": lorentz.pair(l, l), "on_own": sorted(vals_a), "on_other": sorted(vals_b),
                      "orthogonal_to_R": perp}
        if lorentz.pair(l, l) != 2 or vals_a != {0} or vals_b != {1} or not perp:
            rep.fail(f"class l for family {label}: {out[label]}")
    rep.details.update(out)
    return rep


def _roots_reflections(ctx: Context) -> Report:
    rep, _ = lorentz.analyse_168(ctx.basis, ctx.emb, ctx.roots42, ctx.graph, ctx.class_l, ctx.roots168)
    return rep


def _roots_twelve(ctx: Context) -> Report:
    names = lorentz.twelve_neighbours(ctx.basis, ctx.roots42)
    rep = Report("roots.twelve_neighbours", sorted(names) == sorted(lorentz.EXPECTED_TWELVE))
    rep.details.update(neighbours=sorted(names))
    if not rep.ok:
        rep.failures.append(f"neighbours {names}")
    return rep


# ---------------------------------------------------------------------------
# geometry
# ---------------------------------------------------------------------------

def _geometry_field(ctx: Context) -> Report:
    return Report("geometry.field", planegeom.field_axioms_ok())


def _geometry_plane(ctx: Context) -> Report:
    return planegeom.verify_plane()


def _geometry_printed(ctx: Context) -> Report:
    return planegeom.check_printed_points()


def _geometry_independent(ctx: Context) -> Report:
    counts = [planegeom.independent_subsets(k) for k in range(1, 7)]
    rep = Report("geometry.independent_subsets", counts == [21, 210, 1120, 2520, 1008, 168])
    rep.details.update(counts=counts)
    return rep


def _geometry_iso(ctx: Context) -> Report:
    phi = planegeom.find_isomorphism(ctx.graph, ctx.plane)
    rep = Report("geometry.isomorphism", phi is not None and planegeom.is_isomorphism(ctx.graph, ctx.plane, phi))
    if phi is not None:
        swaps = ctx.plane.parts[phi[0]] != ctx.graph.parts[0]
        rep.details.update(found=True, swaps_parts=swaps)
    else:
        rep.details.update(found=False)
    return rep


def _geometry_aut(ctx: Context) -> Report:
    total = planegeom.count_automorphisms(ctx.plane)
    kept = planegeom.count_automorphisms(ctx.plane, preserve_parts=True)
    orders = planegeom.psl34_order()
    rep = Report("geometry.automorphisms", True)
    rep.details.update(automorphisms=total, part_preserving=kept, index=total // kept,
                       gl34=orders.gl, psl34=orders.psl)
    if total != 241920 or total != orders.psl * 12 or kept * 2 != total:
        rep.fail(f"|Aut| = {total}, part preserving {kept}, |PSL(3,4)| = {orders.psl}")
    return rep


def _geometry_heawood(ctx: Context) -> Report:
    h = heawood_graph()
    fast = planegeom.count_automorphisms(h)
    slow = planegeom.brute_force_automorphisms(h)
    rep = Report("geometry.heawood", fast == slow == 336)
    rep.details.update(refined=fast, brute_force=slow)
    return rep


# ---------------------------------------------------------------------------
# fibrations
# ---------------------------------------------------------------------------

def _fib_d4(ctx: Context) -> Report:
    rep = fibsearch.d4_from_every_start(ctx.graph)
    c_index = ctx.graph.names.index("C")
    cfg = fibsearch.find_d4_configuration(ctx.graph, c_index)
    rep.details["cusp_start_extra"] = ctx.graph.name(cfg.extra)
    return rep


def _fib_a5(ctx: Context) -> Report:
    return fibsearch.a5_report(ctx.graph)


SUBDIAGRAM_NODE_LIMIT = 200_000


def _fib_subdiagram(ctx: Context) -> Report:
    rep = Report("fibrations.affine_D20", True)
    res = fibsearch.find_subdiagram(ctx.graph, fibsearch.affine_d(20), SUBDIAGRAM_NODE_LIMIT)
    small = [fibsearch.find_subdiagram(ctx.graph, h).status
             for h in (fibsearch.path_diagram(3), fibsearch.star_diagram(4))]
    rep.details.update(status=res.status, nodes=res.nodes, node_limit=SUBDIAGRAM_NODE_LIMIT,
                       path3=small[0], star=small[1])
    if small != ["found", "found"]:
        rep.fail("small diagram queries failed")
    return rep


# ---------------------------------------------------------------------------
# surfaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    id: str
    suite: str
    run: Callable[[Context], Report]
    expected: Any
    informational: bool = False


REGISTRY: tuple[Check, ...] = (
    Check("golay.code", "golay", _golay_code,
          {"dimension": 12, "weight_distribution": {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}}),
    Check("golay.steiner", "golay", _golay_steiner,
          {"five_subsets": 42504, "uncovered": 0, "octads_through_k_points": [253, 77, 21, 5, 1]}),
    Check("golay.listed_octads", "golay", _golay_listed, {"distinct": 36, "duplicates": [["L9", "L10"]]}),
    Check("golay.find_octad", "golay", _golay_find, {"K": ["inf", "0", "1", "2", "3", "5", "14", "17"]}),
    Check("leech.basis", "leech", _leech_basis, {"gram_determinant": 1, "raw_determinant": 8 ** 12, "generators_missing": 0}),
    Check("leech.minimal_vectors", "leech", _leech_minimal, {"total": 196560, "shapes": [1104, 97152, 98304]}),
    Check("leech.no_short_vectors", "leech", _leech_short, {"4": 0, "8": 0, "12": 0, "16": 0}),
    Check("leech.minimal_shell", "leech", _leech_shell, {"total": 196560}),
    Check("embed.R", "embed", _embed_R,
          {"type": ["D4"], "primitive": True, "complement_rank": 22, "complement_signature": [1, 21],
           "complement_det": -4, "discriminant": [2, 2]}),
    Check("embed.a2a2", "embed", _embed_a2a2, {"rank": 22, "discriminant": [3, 3]}),
    Check("roots.orthogonal_to_R", "roots", _roots_42, {"count": 42, "orthogonal_to_xyz": 100}),
    Check("roots.attaching_D5", "roots", _roots_168, {"total": 168, "legs": 56, "split": [16, 40]}),
    Check("roots.graph", "roots", _roots_graph, {"sizes": [21, 21], "degrees": [5], "girth": 6}),
    Check("roots.weyl", "roots", _roots_weyl, {"norm": "14", "pairings_with_42": [1], "h_sum": True}),
    Check("roots.class_l", "roots", _roots_class_l, {"norm": 2, "on_own": [0], "on_other": [1]}),
    Check("roots.reflections", "roots", _roots_reflections, {"count": 168}),
    Check("roots.twelve_neighbours", "roots", _roots_twelve, {"neighbours": sorted(lorentz.EXPECTED_TWELVE)}),
    Check("geometry.field", "geometry", _geometry_field, {}),
    Check("geometry.plane", "geometry", _geometry_plane, {"points": 21, "edges": 105, "girth": 6}),
    Check("geometry.printed_points", "geometry", _geometry_printed,
          {"duplicates": ["(1,a^2,1)"], "missing": ["(1,a^2,a)"]}),
    Check("geometry.independent_subsets", "geometry", _geometry_independent,
          {"counts": [21, 210, 1120, 2520, 1008, 168]}),
    Check("geometry.isomorphism", "geometry", _geometry_iso, {"found": True}),
    Check("geometry.automorphisms", "geometry", _geometry_aut,
          {"automorphisms": 241920, "part_preserving": 120960, "psl34": 20160}),
    Check("geometry.heawood", "geometry", _geometry_heawood, {"refined": 336}),
    Check("fibrations.d4", "fibrations", _fib_d4, {"starts": 21, "successes": 21}),
    Check("fibrations.a5", "fibrations", _fib_a5, {"fibers": 4, "sections": 18, "section_split": [9, 9]}),
    Check("fibrations.affine_D20", "fibrations", _fib_subdiagram, None, informational=True),
    Check("surfaces.sextic", "surfaces", lambda ctx: models.sextic_report(ctx.ext_degree),
          {"zero_counts": {"F4": 21, "F16": 21, "F64": 21}}),
    Check("surfaces.quintics", "surfaces", lambda ctx: models.quintic_kernel_dim(),
          {"kernel_dim": 3, "rank": 18}),
    Check("surfaces.dickson", "surfaces", lambda ctx: models.dickson_invariance(),
          {"group_order": 168, "non_invariant": 0}),
    Check("surfaces.quartic_singular", "surfaces", lambda ctx: models.quartic_singularities(ctx.ext_degree),
          {"counts": {"F2": 7, "F16": 7}, "tangent_cones": [[2, 2]] * 7}),
    Check("surfaces.double_conics", "surfaces", lambda ctx: models.plane_double_conic(),
          {"planes": 7, "identities": 7}),
    Check("surfaces.quartic_split", "surfaces", lambda ctx: models.quartic_split(), {"product": True}),
    Check("surfaces.mukai", "surfaces", lambda ctx: models.mukai_curve_check(),
          {"curves": 42, "degrees": [5], "isomorphic_to_plane": True}),
    Check("surfaces.weierstrass", "surfaces", lambda ctx: models.weierstrass_checks(),
          {"transform_identity": True, "affine_singular_points": [[0, 0, 0]]}),
)


@dataclass
class CheckReport:
    id: str
    suite: str
    status: str
    expected: Any
    actual: Any
    messages: list[str]
    elapsed: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def resolve_suites(names) -> list[str]:
    names = list(names) or ["all"]
    out = []
    for n in names:
        if n == "all":
            out.extend(SUITES)
        elif n in SUITES:
            out.append(n)
        else:
            raise UnknownSuite(f"unknown suite {n!r}; choose from {', '.join(SUITES + ('all',))}")
    return [s for s in SUITES if s in out]


def _status(check: Check, rep: Report) -> str:
    if not rep.ok:
        return "fail"
    if check.informational:
        return "info"
    return "warn" if rep.warnings else "pass"


def run_check(check: Check, ctx: Context, timings: bool = False) -> CheckReport:
    t0 = time.perf_counter()
    try:
        rep = check.run(ctx)
    except Exception as e:          # a crashing check is a failing check
        log.exception("check %s raised", check.id)
        rep = Report(check.id, False, failures=[f"{type(e).__name__}: {e}"])
    elapsed = round(time.perf_counter() - t0, 3) if timings else None
    return CheckReport(check.id, check.suite, _status(check, rep), _jsonable(check.expected),
                       _jsonable(rep.details), rep.failures + rep.warnings, elapsed)


def _run_suite(suite: str, cache_dir, ext_degree: int, timings: bool) -> list[CheckReport]:
    ctx = Context(cache_dir, ext_degree)
    return [run_check(c, ctx, timings) for c in REGISTRY if c.suite == suite]


def run_checks(suites=("all",), cache_dir: str | None = None, ext_degree: int = 3,
               jobs: int = 1, timings: bool = False) -> list[CheckReport]:
    """Run the selected suites; output order is always registry order."""
    selected = resolve_suites(suites)
    if jobs <= 1 or len(selected) == 1:
        ctx = Context(cache_dir, ext_degree)
        return [run_check(c, ctx, timings) for c in REGISTRY if c.suite in selected]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = {s: pool.submit(_run_suite, s, cache_dir, ext_degree, timings) for s in selected}
        results = {s: f.result() for s, f in futures.items()}
    return [r for s in selected for r in results[s]]


def summarize(reports: list[CheckReport]) -> dict[str, int]:
    out = {"total": len(reports), "pass": 0, "fail": 0, "warn": 0, "info": 0}
    for r in reports:
        out[r.status] += 1
    return out


def report_document(reports: list[CheckReport]) -> dict:
    return {"version": REPORT_VERSION, "checks": [r.to_dict() for r in reports],
            "summary": summarize(reports)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, str, type(None))):
        return x
    if isinstance(x, int):
        return int(x)
    if hasattr(x, "item"):          # numpy scalars
        return x.item()
    return str(x)
