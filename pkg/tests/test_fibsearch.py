import json
from dataclasses import replace

import pytest

from k3verify import fibsearch as fs
from k3verify.graphs import heawood_graph


@pytest.fixture(scope="module")
def d4(graph):
    return fs.find_d4_configuration(graph, graph.names.index("C"))


@pytest.fixture(scope="module")
def a5(graph):
    return fs.find_a5_configuration(graph)


def test_d4_configuration_is_valid(graph, d4):
    assert fs.validate(graph, d4) == []
    assert len(d4.fibers) == 5 and len(d4.sections) == 16
    assert sorted(d4.used()) == list(range(42))


def test_d4_from_every_start(graph):
    rep = fs.d4_from_every_start(graph)
    assert rep.ok and rep.details == {"starts": 21, "successes": 21}


def test_validator_rejects_swapped_vertices(graph, d4):
    fibers = list(d4.fibers)
    f0 = list(fibers[0])
    f0[1], s = d4.sections[0], f0[1]
    fibers[0] = tuple(f0)
    bad = replace(d4, fibers=tuple(fibers), sections=(s,) + d4.sections[1:])
    assert fs.validate(graph, bad)


def test_validator_rejects_missing_extra(graph, d4):
    assert "missing 2-section" in fs.validate(graph, replace(d4, extra=None))


def test_a5_configuration(graph, a5):
    assert fs.validate(graph, a5) == []
    assert len(a5.fibers) == 4 and len(a5.sections) == 18
    split = [sum(graph.parts[s] == p for s in a5.sections) for p in (0, 1)]
    assert split == [9, 9]


def test_a5_sections_are_not_disjoint(graph, a5):
    # every compatible quadruple of hexagons leaves meeting sections
    assert fs.section_meetings(graph, a5) > 0
    assert "sections meet" in fs.validate(graph, a5, disjoint_sections=True)


def test_a5_report(graph):
    rep = fs.a5_report(graph)
    assert rep.ok and rep.details["alternating"]


def test_hexagon_count(graph):
    assert len(fs.hexagons(graph)) == 1120


def test_heawood_has_no_d4_configuration():
    h = heawood_graph()
    with pytest.raises(fs.NotFound):
        fs.find_d4_configuration(h, 0)


def test_subdiagram_queries(graph):
    res = fs.find_subdiagram(graph, fs.star_diagram(4))
    assert res.status == "found"
    img = res.found
    assert all(graph.adjacent(img[0], img[i]) for i in range(1, 5))
    assert fs.find_subdiagram(heawood_graph(), fs.path_diagram(3)).status == "found"
    # the Heawood graph has girth 6, so no induced 4-star closing into a square
    square = fs.IncidenceGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert fs.find_subdiagram(heawood_graph(), square).status == "absent"


def test_subdiagram_node_limit(graph):
    res = fs.find_subdiagram(graph, fs.affine_d(20), node_limit=1000)
    assert res.status in ("found", "undecided")
    assert fs.affine_d(20).n == 21
    with pytest.raises(ValueError):
        fs.affine_d(4)


def test_config_json(graph, d4):
    rec = json.loads(d4.to_json(graph))
    assert rec["kind"] == "D4" and rec["fibers"][0][0] == "C"
