"""Acceptance criteria 1-10, one test each.

Every test records a ``PASS``/``FAIL criterion N`` line; the lines are
repeated in the pytest terminal summary.  Run standalone with
``python tests/test_acceptance.py``.
"""

import os
import subprocess
import sys
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from k3verify import fibsearch, golay, leech, lorentz, planegeom
from k3verify.char2 import models
from k3verify.lattice import (discriminant_group, gram_of, is_even, is_primitive,
                              root_system_type, signature)


@contextmanager
def criterion(n: int, title: str):
    try:
        yield
    except BaseException as e:
        line = f"FAIL criterion {n}: {title} ({type(e).__name__}: {str(e).splitlines()[0] if str(e) else ''})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    line = f"PASS criterion {n}: {title}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def test_criterion_1_golay(code):
    with criterion(1, "Golay code, Steiner system and listed octads"):
        assert code.dimension == 12
        assert len(code.octads) == 759
        assert code.weight_distribution() == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
        steiner = golay.verify_steiner(code.octads)
        assert steiner.ok and steiner.details["five_subsets"] == 42504
        listed = golay.verify_listed_octads(code)
        assert listed.ok and listed.details["distinct"] == 36       # K plus 35 distinct sets
        assert listed.details["duplicates"] == [("L9", "L10")]
        assert any("L10 repeats L9" in w for w in listed.warnings)


def test_criterion_2_leech(code, basis, minvecs):
    with criterion(2, "Leech lattice basis and minimal vectors"):
        assert all(leech.contains(basis, g) for g in leech.generators(code))
        rep = leech.verify_basis(basis, code)
        assert rep.ok and rep.details["gram_determinant"] == 1
        assert is_even(basis.gram())
        assert len(minvecs) == 196560
        shapes = leech.minimal_vectors_by_shape(basis, code)
        assert sorted(len(v) for v in shapes.values()) == [1104, 97152, 98304]
        assert (np.einsum("ij,ij->i", minvecs, minvecs) == 32).all()
        census = leech.short_vector_census(basis)
        assert all(census[k] == 0 for k in (4, 8, 12, 16))          # no norm -2 vectors


def test_criterion_3_embedding(basis, emb):
    with criterion(3, "D4 embedding and its orthogonal complement"):
        G = emb.gram()
        assert root_system_type(G) == ("D4",)
        centre = 2
        assert all(G[centre][j] == 1 for j in range(4) if j != centre)
        assert all(G[i][j] == 0 for i, j in [(0, 1), (0, 3), (1, 3)])
        L = lorentz.ambient_lattice(basis)
        assert is_primitive(L, [r.coords() for r in emb.roots])
        S = lorentz.complement_of_R(basis, emb)
        assert S.rank == 22
        assert signature(S.gram) == (1, 21)
        assert is_even(S.gram)
        assert discriminant_group(S.gram) == [2, 2]
        assert S.determinant() == -4


def test_criterion_4_root_sets(ctx, emb, roots42):
    with criterion(4, "42 roots orthogonal to R and 168 D5-attaching roots"):
        assert len(roots42) == 42
        assert all(lorentz.pair(r, r) == -2 and all(lorentz.pair(r, x) == 0 for x in emb.roots)
                   for r in roots42)
        assert len(ctx.roots168) == 168 == 56 * 3
        for roots in ctx.attached.values():
            assert len(roots) == 56
            assert sorted(lorentz.d5_split(roots).values()) == [16, 40]
        for r in ctx.roots168:
            assert root_system_type(gram_of(list(emb.roots) + [r], lorentz.pair)) == ("D5",)


def test_criterion_5_weyl_data(ctx, basis, emb, roots42, graph):
    with criterion(5, "Weyl vector projection, class l and the 168 reflections"):
        R = lorentz.RationalVector
        wp = lorentz.weyl_projection(emb)
        w = lorentz.weyl_vector()
        assert wp == R.of(w + 5 * emb.z + 3 * emb.x + 3 * emb.y + 3 * emb.t)
        assert lorentz.rpair(wp, wp) == 14
        assert {lorentz.rpair(wp, r) for r in roots42} == {1}
        assert 3 * wp == R.of(lorentz.vsum(roots42))
        A, B = lorentz.families(graph)
        l = lorentz.class_l(roots42, A, wp)
        assert lorentz.pair(l, l) == 2
        assert {lorentz.pair(l, roots42[i]) for i in A} == {0}
        assert {lorentz.pair(l, roots42[i]) for i in B} == {1}
        rep, rows = lorentz.analyse_168(basis, emb, roots42, graph, l, ctx.roots168)
        assert rep.ok, rep.failures[:3]
        assert len(rows) == 168
        lr = R.of(l)
        for row in rows:
            assert lorentz.rpair(row.rp, row.rp) == -1
            assert len(row.a_neighbours) == 6 and len(row.b_neighbours) == 6
            s = R.of(lorentz.vsum(roots42[i] for i in row.a_neighbours))
            assert 2 * row.rp == 2 * lr - s
            assert lorentz.reflect(row.rp, lr) == 5 * lr - 2 * s
            for i in row.a_neighbours:
                Ri = R.of(roots42[i])
                assert lorentz.reflect(row.rp, Ri) == 2 * lr - s + Ri


def test_criterion_6_configuration(basis, roots42, graph):
    with criterion(6, "root graph is the PG(2,4) incidence graph"):
        A, B = lorentz.families(graph)
        assert (len(A), len(B)) == (21, 21)
        assert all(graph.parts[u] != graph.parts[v] for u, v in graph.edges())
        assert {graph.degree(v) for v in range(graph.n)} == {5}
        plane = planegeom.build_incidence()
        phi = planegeom.find_isomorphism(graph, plane)
        assert phi is not None and planegeom.is_isomorphism(graph, plane, phi)
        names = lorentz.twelve_neighbours(basis, roots42)
        assert sorted(names) == sorted(lorentz.EXPECTED_TWELVE)


def test_criterion_7_geometry_counts():
    with criterion(7, "independent subsets and automorphism count"):
        assert [planegeom.independent_subsets(k) for k in range(1, 7)] == [21, 210, 1120, 2520, 1008, 168]
        total = planegeom.count_automorphisms(planegeom.build_incidence())
        psl = planegeom.psl34_order().psl
        assert psl == 20160
        assert total == 241920 == psl * 12


def test_criterion_8_fibrations(graph):
    with criterion(8, "D4 configurations from every A-vertex and the A5 configuration"):
        starts = [v for v in range(graph.n) if graph.parts[v] == 0]
        assert len(starts) == 21
        for s in starts:
            cfg = fibsearch.find_d4_configuration(graph, s)
            assert fibsearch.validate(graph, cfg) == []
            assert len(cfg.fibers) == 5 and len(cfg.sections) == 16 and cfg.extra is not None
        a5 = fibsearch.find_a5_configuration(graph)
        assert fibsearch.validate(graph, a5) == []
        assert len(a5.fibers) == 4 and len(a5.sections) == 18
        assert sorted(graph.parts[s] for s in a5.sections) == [0] * 9 + [1] * 9


def test_criterion_9_surfaces():
    with criterion(9, "characteristic 2 surface models"):
        sextic = models.sextic_report(3)
        assert sextic.ok and sextic.details["zero_counts"] == {"F4": 21, "F16": 21, "F64": 21}
        quintic = models.quintic_kernel_dim()
        assert quintic.ok and quintic.details["kernel_dim"] == 3
        dickson = models.dickson_invariance()
        assert dickson.ok and dickson.details["group_order"] == 168
        quartic = models.quartic_singularities(2)
        assert quartic.ok
        assert quartic.details["counts"]["F2"] == quartic.details["counts"]["F16"] == 7
        assert quartic.details["tangent_cones"] == [[2, 2]] * 7
        conics = models.plane_double_conic()
        assert conics.ok and conics.details["identities"] == 7
        split = models.quartic_split()
        assert split.ok and all(split.details.values())
        mukai = models.mukai_curve_check()
        assert mukai.ok and mukai.details["curves"] == 42 and mukai.details["isomorphic_to_plane"]
        assert models.weierstrass_checks().ok


def test_criterion_10_determinism(tmp_path):
    with criterion(10, "'k3verify all --format json' is byte-identical across runs"):
        env = dict(os.environ, K3V_CACHE=str(tmp_path))
        cmd = [sys.executable, "-m", "k3verify.cli", "all", "--format", "json"]
        first = subprocess.run(cmd, capture_output=True, env=env, timeout=600)
        second = subprocess.run(cmd, capture_output=True, env=env, timeout=600)
        assert first.returncode == second.returncode == 0, first.stderr.decode()[-500:]
        assert first.stdout == second.stdout and first.stdout


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
