from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from k3verify import lattice as lt

U = [[0, 1], [1, 0]]
D4 = [[-2, 0, 1, 0], [0, -2, 1, 0], [1, 1, -2, 1], [0, 0, 1, -2]]

small_ints = st.integers(min_value=-9, max_value=9)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_snf_small_examples():
    assert lt.smith_normal_form([[0, 1], [1, 0]])[0] == [[1, 0], [0, 1]]
    assert lt.smith_normal_form([[-2]])[0] == [[2]]
    assert lt.invariant_factors(D4) == [1, 1, 2, 2]


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_snf_round_trip(M):
    D, U_, V = lt.smith_normal_form(M)
    assert lt.matmul(lt.matmul(U_, M), V) == D
    assert abs(lt.determinant(U_)) == 1 and abs(lt.determinant(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_hnf_spans_same_lattice(M):
    H = lt.hermite_normal_form(M)
    for row in M:
        assert lt.echelon_solve(H, row) is not None
    K = lt.integer_kernel(M)
    assert len(K) + len(lt.pivots(H)) == len(M[0])
    for k in K:
        assert all(sum(a * b for a, b in zip(row, k)) == 0 for row in M)


def test_signature_examples():
    assert lt.signature(U) == (1, 1)
    assert lt.signature(D4) == (0, 4)
    with pytest.raises(lt.DegenerateFormError):
        lt.signature([[0, 0], [0, 0]])


def test_discriminant_group():
    assert lt.discriminant_group(D4) == [2, 2]
    assert lt.discriminant_group(U) == []


def test_orthogonal_complement_in_u_plus_u():
    G = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    amb = lt.Lattice.from_rows(lt.identity(4), G)
    comp = lt.orthogonal_complement(amb, [[1, 0, 0, 0], [0, 1, 0, 0]])
    assert comp.rank == 2
    assert lt.determinant(comp.gram) == -1 and lt.is_even(comp.gram)
    assert lt.is_primitive(amb, comp.basis)


def test_is_primitive():
    amb = lt.Lattice.from_rows([[1, 0], [0, 1]], U)
    assert not lt.is_primitive(amb, [[2, 0]])
    assert lt.is_primitive(amb, [[1, 0]])


def test_root_system_examples():
    assert lt.root_system_type(D4) == ("D4",)
    assert lt.root_system_type([[-2]]) == ("A1",)
    a3 = [[-2, 1, 0], [1, -2, 1], [0, 1, -2]]
    assert lt.root_system_type(a3) == ("A3",)
    e6 = [[-2 if i == j else 0 for j in range(6)] for i in range(6)]
    for i, j in [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]:
        e6[i][j] = e6[j][i] = 1
    assert lt.root_system_type(e6) == ("E6",)
    with pytest.raises(lt.RootSystemError):
        lt.root_system_type([[-2, 1, 1], [1, -2, 1], [1, 1, -2]])
    with pytest.raises(lt.RootSystemError):
        lt.root_system_type([[-4]])


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(4)))
def test_root_type_permutation_invariant(p):
    G = [[D4[p[i]][p[j]] for j in range(4)] for i in range(4)]
    assert lt.root_system_type(G) == ("D4",)


def test_solve_rational():
    assert lt.solve_rational([[2, 0], [0, 4]], [1, 1]) == [Fraction(1, 2), Fraction(1, 4)]


def test_gram_json_round_trip():
    assert lt.gram_from_json(lt.gram_to_json(D4)) == D4
    with pytest.raises(lt.LatticeError):
        lt.gram_from_json("[[0, 1], [2, 0]]")
