"""Canonical data exports; identical inputs give byte-identical output."""

from __future__ import annotations

import json

from . import fibsearch, golay, lattice, leech, lorentz, planegeom
from .checks import Context
from .graphs import matrix_csv

FORMATS = {
    "octads": ("json",),
    "minvecs": ("json", "bin"),
    "roots42": ("json",),
    "roots168": ("json",),
    "gram": ("json", "csv"),
    "incidence": ("csv", "json"),
    "plane-incidence": ("csv", "json"),
    "bijection": ("json",),
    "configs": ("json",),
}
KINDS = tuple(FORMATS)


class UnsupportedExport(ValueError):
    pass


def export_data(kind: str, fmt: str = "json", cache_dir: str | None = None, ctx: Context | None = None):
    """Serialized ``kind`` as ``str`` (json/csv) or ``bytes`` (bin)."""
    if kind not in FORMATS:
        raise UnsupportedExport(f"unknown kind {kind!r}")
    if fmt not in FORMATS[kind]:
        raise UnsupportedExport(f"{kind} cannot be written as {fmt} (use {', '.join(FORMATS[kind])})")
    ctx = ctx or Context(cache_dir)
    if kind == "octads":
        return golay.octads_to_json(ctx.code)
    if kind == "minvecs":
        return leech.dump_minvecs_bin(ctx.minvecs) if fmt == "bin" else leech.minvecs_to_json(ctx.minvecs)
    if kind == "roots42":
        fam = ["A" if p == 0 else "B" for p in ctx.graph.parts]
        return lorentz.roots_to_json(ctx.roots42, fam)
    if kind == "roots168":
        legs = {r: leg for leg, rs in ctx.attached.items() for r in rs}
        return lorentz.roots_to_json(ctx.roots168, [legs[r] for r in ctx.roots168])
    if kind == "gram":
        G = [list(r) for r in lorentz.complement_of_R(ctx.basis, ctx.emb).gram]
        return lattice.gram_to_json(G) if fmt == "json" else matrix_csv(G)
    if kind == "incidence":
        M = lorentz.intersection_matrix(ctx.roots42)
        return json.dumps(M) if fmt == "json" else matrix_csv(M)
    if kind == "plane-incidence":
        M = planegeom.incidence_matrix()
        return json.dumps(M) if fmt == "json" else matrix_csv(M)
    if kind == "bijection":
        phi = planegeom.find_isomorphism(ctx.graph, ctx.plane)
        return planegeom.bijection_to_json(ctx.graph, ctx.plane, phi)
    # configs
    g = ctx.graph
    d4 = fibsearch.find_d4_configuration(g, g.parts.index(0))
    a5 = fibsearch.find_a5_configuration(g)
    return json.dumps([json.loads(d4.to_json(g)), json.loads(a5.to_json(g))])
