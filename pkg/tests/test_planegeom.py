from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from k3verify import fibsearch, planegeom as pg
from k3verify.graphs import heawood_graph, IncidenceGraph

f4 = st.integers(0, 3)
points = st.sampled_from(pg.enumerate_points())


def test_field_tables():
    assert pg.field_axioms_ok()
    assert pg.mul(2, 2) == 3 and pg.add(2, 1) == 3      # a^2 = a + 1
    with pytest.raises(ZeroDivisionError):
        pg.inv(0)


@settings(max_examples=100)
@given(f4, f4, f4)
def test_field_distributive(x, y, z):
    assert pg.mul(x, pg.add(y, z)) == pg.add(pg.mul(x, y), pg.mul(x, z))


def test_plane_axioms():
    rep = pg.verify_plane()
    assert rep.ok, rep.failures
    assert rep.details["points"] == 21 and rep.details["edges"] == 105


def test_incidence_example():
    assert pg.incident(pg.parse("(1,1,0)"), pg.parse("(1,1,1)"))
    assert not pg.incident(pg.parse("(1,0,0)"), pg.parse("(1,0,0)"))
    M = pg.incidence_matrix()
    assert all(sum(row) == 5 for row in M)


@settings(max_examples=100)
@given(points, points)
def test_line_through_two_points(p, q):
    if p == q:
        return
    l = pg.line_through(p, q)
    assert pg.incident(p, l) and pg.incident(q, l)


def test_parse_and_format():
    assert pg.fmt(pg.parse("(1,a²,a)")) == "(1,a^2,a)"
    assert pg.normalize((2, 2, 0)) == (1, 1, 0)


def test_printed_points_misprint():
    rep = pg.check_printed_points()
    assert rep.ok
    assert rep.details["duplicates"] == ["(1,a^2,1)"]
    assert rep.details["missing"] == ["(1,a^2,a)"]


def test_pencil_base_points_lie_on_both_cubics():
    for s in pg.PENCIL_BASE_POINTS:
        x, y, z = pg.parse(s)
        assert pg.mul(pg.mul(x, y), z) == 0
        cube = lambda u: pg.mul(u, pg.mul(u, u))
        assert cube(x) ^ cube(y) ^ cube(z) == 0


def test_independent_subsets():
    assert [pg.independent_subsets(k) for k in range(1, 7)] == [21, 210, 1120, 2520, 1008, 168]
    with pytest.raises(ValueError):
        pg.independent_subsets(7)


def test_hyperovals_have_no_three_collinear():
    for six in pg.list_independent(6)[:20]:
        pts = [pg.enumerate_points()[i] for i in six]
        assert not any(pg.collinear(*t) for t in combinations(pts, 3))


def test_isomorphism_with_root_graph(graph):
    plane = pg.build_incidence()
    phi = pg.find_isomorphism(graph, plane)
    assert phi is not None and pg.is_isomorphism(graph, plane, phi)
    assert len(pg.bijection_to_json(graph, plane, phi)) > 0


def test_no_isomorphism_between_different_graphs():
    assert pg.find_isomorphism(heawood_graph(), fibsearch.path_diagram(14)) is None


def test_broken_map_is_rejected(graph):
    plane = pg.build_incidence()
    phi = dict(pg.find_isomorphism(graph, plane))
    phi[0], phi[1] = phi[1], phi[0]
    assert not pg.is_isomorphism(graph, plane, phi)


def test_automorphism_counts():
    plane = pg.build_incidence()
    assert pg.count_automorphisms(plane) == 241920
    assert pg.count_automorphisms(plane, preserve_parts=True) == 120960
    orders = pg.psl34_order()
    assert (orders.gl, orders.sl, orders.psl) == (181440, 60480, 20160)
    assert 241920 == orders.psl * 12


def test_refinement_agrees_with_brute_force_on_small_graphs():
    h = heawood_graph()
    assert pg.count_automorphisms(h) == pg.brute_force_automorphisms(h) == 336
    cycle = IncidenceGraph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    assert pg.count_automorphisms(cycle) == pg.brute_force_automorphisms(cycle) == 12
