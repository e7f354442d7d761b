from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from k3verify import lattice, lorentz
from k3verify.lorentz import LorentzVector, RationalVector, pair, rpair

D4 = [[-2, 0, 1, 0], [0, -2, 1, 0], [1, 1, -2, 1], [0, 0, 1, -2]]


@pytest.fixture(scope="module")
def roots168(ctx):
    return ctx.roots168


@pytest.fixture(scope="module")
def analysis(ctx, roots168):
    return lorentz.analyse_168(ctx.basis, ctx.emb, ctx.roots42, ctx.graph, ctx.class_l, roots168)


def test_leech_roots_have_norm_minus_two(basis):
    r = lorentz.make_root(basis, [0] * 24)
    assert r == LorentzVector.of([0] * 24, 1, -1)
    assert pair(r, r) == -2
    assert pair(lorentz.weyl_vector(), r) == 1
    with pytest.raises(lorentz.LorentzError):
        lorentz.make_root(basis, [1] * 24)


def test_embedding_gram(emb):
    assert emb.gram() == D4
    assert lattice.root_system_type(emb.gram()) == ("D4",)


def test_complement_invariants(basis, emb):
    rep = lorentz.verify_embedding(basis, emb)
    assert rep.ok, rep.failures
    d = rep.details
    assert (d["complement_rank"], d["complement_signature"], d["complement_det"]) == (22, [1, 21], -4)
    assert d["discriminant"] == [2, 2] and d["primitive"]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 196559), st.integers(0, 196559))
def test_leech_pairing_formula(basis, minvecs, i, j):
    r = lorentz.make_root(basis, minvecs[i])
    s = lorentz.make_root(basis, minvecs[j])
    assert lorentz.leech_pairing_formula(r, s) == pair(r, s)


def test_42_roots(emb, roots42):
    assert len(roots42) == 42
    assert all(pair(r, r) == -2 and all(pair(r, x) == 0 for x in emb.roots) for r in roots42)
    assert len(set(roots42)) == 42
    names = [lorentz.root_name(r) for r in roots42]
    assert "C" in names and sum(n.startswith("E") for n in names) == 20


def test_roots_with_R_give_D4_plus_A1(emb, roots42):
    for r in roots42:
        G = lattice.gram_of(list(emb.roots) + [r], pair)
        assert lattice.root_system_type(G) == ("A1", "D4")


def test_168_roots(ctx, roots168):
    assert len(roots168) == 168
    for leg, roots in ctx.attached.items():
        assert len(roots) == 56
        assert sorted(lorentz.d5_split(roots).values()) == [16, 40]
    assert lorentz.t_leg_types(ctx.attached["t"]) == {"nu_Omega-4nu_k": 16, "2nu_octad": 40, "other": 0}


def test_graph_is_bipartite_and_regular(graph):
    A, B = lorentz.families(graph)
    assert (len(A), len(B)) == (21, 21)
    assert {graph.degree(v) for v in range(graph.n)} == {5}
    assert all(graph.parts[u] != graph.parts[v] for u, v in graph.edges())


def test_weyl_projection(emb, roots42):
    wp = lorentz.weyl_projection(emb)
    w = lorentz.weyl_vector()
    closed = RationalVector.of(w + 5 * emb.z + 3 * emb.x + 3 * emb.y + 3 * emb.t)
    assert wp == closed
    assert rpair(wp, wp) == 14
    assert {rpair(wp, r) for r in roots42} == {1}
    assert 3 * wp == RationalVector.of(lorentz.vsum(roots42))


def test_class_l(ctx, graph, roots42, emb):
    l = ctx.class_l
    A, B = lorentz.families(graph)
    assert pair(l, l) == 2
    assert {pair(l, roots42[i]) for i in A} == {0}
    assert {pair(l, roots42[i]) for i in B} == {1}
    assert all(pair(l, x) == 0 for x in emb.roots)


def test_reflection_identities(analysis):
    rep, rows = analysis
    assert rep.ok, rep.failures[:3]
    assert len(rows) == 168
    assert all(len(r.a_neighbours) == 6 and len(r.b_neighbours) == 6 for r in rows)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 167), st.integers(0, 41), st.integers(0, 41))
def test_reflection_is_an_isometry(analysis, roots42, k, i, j):
    rp = analysis[1][k].rp
    u, v = roots42[i], roots42[j]
    assert rpair(rp, rp) == -1
    assert rpair(lorentz.reflect(rp, u), lorentz.reflect(rp, v)) == pair(u, v)
    assert lorentz.reflect(rp, lorentz.reflect(rp, u)) == RationalVector.of(u)


def test_projections_have_order_two(basis, analysis):
    for row in analysis[1][::17]:
        assert not row.rp.is_integral() or not lorentz.in_L(basis, row.rp)
        assert lorentz.order_mod_L(basis, row.rp) == 2


def test_twelve_neighbours(basis, roots42):
    names = lorentz.twelve_neighbours(basis, roots42)
    assert sorted(names) == sorted(lorentz.EXPECTED_TWELVE)


def test_a2a2_complement(basis, emb, roots42, graph):
    rep = lorentz.a2a2_complement(basis, emb, roots42, graph)
    assert rep.ok and rep.details["discriminant"] == [3, 3]


def test_perturbed_sum_is_detected(emb, roots42):
    wp = lorentz.weyl_projection(emb)
    assert 3 * wp != RationalVector.of(lorentz.vsum(roots42[1:]))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=12), min_size=26, max_size=26))
def test_rational_vector_normal_form(values):
    v = RationalVector.from_fractions(values)
    assert [Fraction(n, v.den) for n in v.num] == [Fraction(x) for x in values]
    assert v + v - v == v
    assert (2 * v - v) == v


def test_intersection_matrix(roots42):
    M = lorentz.intersection_matrix(roots42)
    assert all(M[i][i] == -2 for i in range(42))
    assert {M[i][j] for i in range(42) for j in range(42) if i != j} == {0, 1}
    assert M == [list(r) for r in zip(*M)]


def test_roots_json_round_trip(roots42):
    assert lorentz.roots_from_json(lorentz.roots_to_json(roots42)) == list(roots42)
    rows = lorentz.intersection_csv(roots42).strip().splitlines()
    assert len(rows) == 42 and all(len(r.split(",")) == 42 for r in rows)
