import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from k3verify import leech


def test_inner_requires_lattice_vectors():
    assert leech.inner([4, 4] + [0] * 22, [4, -4] + [0] * 22) == 0
    with pytest.raises(leech.LeechError):
        leech.inner([1] + [0] * 23, [1] + [0] * 23)


def test_basis_invariants(basis, code):
    rep = leech.verify_basis(basis, code)
    assert rep.ok, rep.failures
    assert rep.details["gram_determinant"] == 1


def test_generators_are_members(basis, code):
    assert all(leech.contains(basis, g) for g in leech.generators(code))
    assert not leech.contains(basis, [1] * 24)
    assert leech.contains(basis, [-3] + [1] * 23)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=24, max_size=24))
def test_lattice_is_even(basis, coeffs):
    v = np.array(coeffs) @ np.array(basis.rows)
    assert leech.contains(basis, v)
    assert leech.norm(v.tolist()) % 2 == 0


def test_minimal_vectors(basis, code, minvecs):
    assert minvecs.shape == (196560, 24)
    shapes = leech.minimal_vectors_by_shape(basis, code)
    assert sorted(len(v) for v in shapes.values()) == [1104, 97152, 98304]
    assert (np.einsum("ij,ij->i", minvecs, minvecs) == 32).all()
    assert leech.contains_many(basis, minvecs).all()
    assert leech.dual_contains_many(basis, minvecs[:500]).all()


def test_minimal_vectors_closed_under_negation(minvecs):
    assert {tuple(r) for r in (-minvecs).tolist()} == {tuple(r) for r in minvecs.tolist()}


def test_no_short_vectors(basis):
    census = leech.short_vector_census(basis)
    assert all(census[k] == 0 for k in (4, 8, 12, 16))


def test_bin_round_trip_and_cache(tmp_path, basis, code, minvecs):
    data = leech.dump_minvecs_bin(minvecs)
    assert len(data) == 4 + 196560 * 24 * 2
    assert (leech.load_minvecs_bin(data) == minvecs).all()
    with pytest.raises(leech.LeechError):
        leech.load_minvecs_bin(data[:-2])
    first = leech.minimal_vectors(basis, code, cache_dir=tmp_path)
    assert list(tmp_path.iterdir())
    second = leech.minimal_vectors(basis, code, cache_dir=tmp_path)
    assert (first == second).all()


def test_corrupt_cache_is_ignored(tmp_path, basis, code, minvecs):
    path = leech._cache_path(basis, tmp_path)
    path.write_bytes(leech.dump_minvecs_bin(minvecs[:10]))
    assert len(leech.minimal_vectors(basis, code, cache_dir=tmp_path)) == 196560
