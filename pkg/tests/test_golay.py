from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from k3verify import golay

points = st.sampled_from(range(golay.N))


def test_labels_round_trip():
    assert golay.position("inf") == golay.position("∞") == 0
    assert golay.position(22) == 23
    assert golay.labels_of(golay.subset(["inf", 0, 5])) == ["inf", "0", "5"]
    with pytest.raises(golay.GolayError):
        golay.position(23)


def test_code_parameters(code):
    assert code.construction == "quadratic-residue"
    assert code.dimension == 12
    assert code.weight_distribution() == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
    assert len(code.octads) == 759
    assert golay.verify_code(code)


def test_steiner_property(code):
    rep = golay.verify_steiner(code.octads)
    assert rep.ok and rep.details["covered"] == 42504


def test_steiner_detects_a_missing_octad(code):
    rep = golay.verify_steiner(code.octads[1:])
    assert not rep.ok
    assert rep.details["uncovered"] == 56


def test_octad_intersections(code):
    sizes = {golay.weight(a & b) for a, b in combinations(code.octads[::6], 2)}
    assert sizes == {0, 2, 4}


def test_listed_octads(code):
    rep = golay.verify_listed_octads(code)
    assert rep.ok
    assert rep.details["distinct"] == 36
    assert rep.details["duplicates"] == [("L9", "L10")]
    assert len(rep.warnings) == 1


@settings(max_examples=50, deadline=None)
@given(st.sets(points, min_size=5, max_size=5))
def test_find_octad_contains_query(code, five):
    mask = golay.subset(golay.label(p) for p in five)
    octad = golay.find_octad(code, mask)
    assert octad & mask == mask and octad in set(code.octads)


def test_find_octad_rejects_wrong_size(code):
    with pytest.raises(golay.GolayError):
        golay.find_octad(code, golay.subset([0, 1, 2, 3]))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 11), max_size=6))
def test_codewords_closed_and_doubly_even(code, picks):
    w = 0
    for i in picks:
        w ^= code.basis[i]
    assert w in code and golay.weight(w) % 4 == 0


def test_octads_json_round_trip(code):
    assert golay.octads_from_json(golay.octads_to_json(code)) == list(code.octads)
