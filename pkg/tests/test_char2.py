import pytest
from hypothesis import given, settings, strategies as st

from k3verify import planegeom
from k3verify.char2 import F2, F4, F16, F64, FqPolynomial, embedding, gf
from k3verify.char2 import models
from k3verify.char2.fields import FieldError, is_homomorphism
from k3verify.char2.poly import projective_points

FIELDS = [F2, F4, F16, F64]


@pytest.mark.parametrize("F", FIELDS)
def test_field_axioms(F):
    for x in range(1, F.q):
        assert F.mul(x, F.inv(x)) == 1
        assert F.sqrt(F.frob(x)) == x
    assert F.pow(F.power_of_generator(1), F.order) == 1


@settings(max_examples=200)
@given(st.sampled_from(FIELDS), st.data())
def test_frobenius_is_additive_and_multiplicative(F, data):
    x, y = data.draw(st.integers(0, F.q - 1)), data.draw(st.integers(0, F.q - 1))
    assert F.frob(x ^ y) == F.frob(x) ^ F.frob(y)
    assert F.frob(F.mul(x, y)) == F.mul(F.frob(x), F.frob(y))


def test_tower():
    for small, big in [(F2, F4), (F4, F16), (F4, F64), (F2, F64)]:
        assert is_homomorphism(small, big)
    with pytest.raises(FieldError):
        embedding(F16, F64)
    with pytest.raises(FieldError):
        gf(3)


def polys(F, nvars=3, max_terms=5, max_exp=3):
    term = st.tuples(st.tuples(*[st.integers(0, max_exp)] * nvars), st.integers(1, F.q - 1))
    return st.lists(term, max_size=max_terms).map(lambda ts: FqPolynomial.make(F, nvars, ts))


@settings(max_examples=60, deadline=None)
@given(polys(F4), polys(F4), st.integers(0, 2))
def test_leibniz_rule(p, q, i):
    assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)


@settings(max_examples=60, deadline=None)
@given(polys(F16), polys(F16))
def test_freshman_square(p, q):
    assert (p + q) ** 2 == p ** 2 + q ** 2
    assert (p * p).square_root() == p


@settings(max_examples=40, deadline=None)
@given(polys(F4), st.tuples(*[st.integers(0, 3)] * 3))
def test_evaluation_commutes_with_extension(p, pt):
    img = embedding(F4, F64)
    assert img[p.evaluate(pt)] == p.over(F64).evaluate([img[c] for c in pt])


def test_polynomial_json_round_trip():
    p = models.sextic()
    assert FqPolynomial.from_json(p.to_json(), F2, 3) == p
    with pytest.raises(ValueError):
        FqPolynomial.from_json('[{"exps": [0, 0, 0, 1], "coeff": 1}]', F2, 3)


def test_projective_point_counts():
    assert len(projective_points(F4, 3)) == 21
    assert len(projective_points(F2, 4)) == 15


@pytest.mark.parametrize("ext", [1, 2, 3])
def test_sextic_partials(ext):
    rep = models.sextic_report(ext)
    assert rep.ok
    assert set(rep.details["zero_counts"].values()) == {21}


def test_sextic_partial_zeros_are_the_plane():
    pts = models.common_partial_zeros(models.sextic(), F4)
    assert sorted(pts) == planegeom.enumerate_points()


def test_quintics():
    rep = models.quintic_kernel_dim()
    assert rep.ok and rep.details["kernel_dim"] == 3


def test_dickson_invariance():
    rep = models.dickson_invariance()
    assert rep.details == {"group_order": 168, "non_invariant": 0}


def test_quartic_singular_points():
    rep = models.quartic_singularities(2)
    assert rep.ok
    assert rep.details["counts"] == {"F2": 7, "F4": 7, "F16": 7}
    assert rep.details["tangent_cones"] == [[2, 2]] * 7


def test_tangent_cone_errors():
    Y = models.quartic_surface()
    with pytest.raises(models.NotOnHypersurface):
        models.tangent_cone_rank(Y, (1, 0, 0, 0))
    x0, x1, x2 = FqPolynomial.gens(F2, 3)
    with pytest.raises(models.NonsingularPoint):
        models.tangent_cone_rank(x0 * x1 + x2 ** 2, (1, 0, 0))


def test_quadratic_form_rank_in_char_2():
    x0, x1, x2 = FqPolynomial.gens(F2, 3)
    assert models.quadratic_form_rank(x0 * x1) == 2
    assert models.quadratic_form_rank(x0 ** 2) == 1
    assert models.quadratic_form_rank(x0 * x1 + x2 ** 2) == 3
    assert models.quadratic_form_rank(x0 ** 2 + x1 ** 2) == 1    # (x0 + x1)^2


def test_double_conics():
    rep = models.plane_double_conic()
    assert rep.ok and rep.details["identities"] == 7


def test_quartic_split():
    rep = models.quartic_split()
    assert rep.ok and all(rep.details.values())


def test_mukai_curves():
    rep = models.mukai_curve_check()
    assert rep.ok
    assert rep.details["curves"] == 42 and rep.details["isomorphic_to_plane"]


def test_weierstrass():
    rep = models.weierstrass_checks()
    assert rep.ok, rep.failures
