"""Exact linear algebra kernels: elimination, spectra, inertia."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aqslie.errors import IrrationalSpectrum
from aqslie.linalg import (
    Subspace,
    char_poly,
    det,
    eig_sym_exact,
    eigh_float,
    identity,
    inertia_symmetric,
    inverse,
    mat_eq,
    mat_mul,
    mat_vec,
    nullspace,
    random_unimodular,
    rank,
    rational_roots,
    rref,
    solve,
    vec_eq,
    vec_is_zero,
)

small_mats = st.integers(-4, 4)


def _mat(rows):
    return [[F(x) for x in row] for row in rows]


def test_rank_and_nullspace_agree_with_dimension_formula():
    M = _mat([[2, 1, 0], [0, 1, 1], [2, 2, 1]])
    assert rank(M) == 2
    ns = nullspace(M)
    assert len(ns) == 1
    assert vec_is_zero(mat_vec(M, ns[0]))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_mats, min_size=4, max_size=4), min_size=3, max_size=5))
def test_rank_nullity(rows):
    M = _mat(rows)
    assert rank(M) + len(nullspace(M)) == 4
    for v in nullspace(M):
        assert vec_is_zero(mat_vec(M, v))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_mats, min_size=3, max_size=3), min_size=3, max_size=3))
def test_bareiss_matches_field_elimination(rows):
    M = _mat(rows)
    assert rank(M) == len(rref(M)[1])


def test_solve_consistency():
    M = _mat([[1, 2], [3, 4]])
    x = solve(M, [F(5), F(6)])
    assert vec_eq(mat_vec(M, x), [F(5), F(6)])
    # inconsistent system
    M2 = _mat([[1, 1], [1, 1]])
    assert solve(M2, [F(0), F(1)]) is None


def test_det_inverse():
    M = _mat([[1, 2], [3, 4]])
    assert det(M) == F(-2)
    assert mat_eq(mat_mul(inverse(M), M), identity(2))
    with pytest.raises(ValueError):
        inverse(_mat([[1, 2], [2, 4]]))


def test_char_poly_and_roots():
    M = _mat([[5, 2], [2, 2]])  # eigenvalues 1, 6
    coeffs = char_poly(M)
    assert coeffs == [F(1), F(-7), F(6)]
    roots, residual = rational_roots(coeffs)
    assert residual == 0 and roots == {F(1): 1, F(6): 1}
    # non-splitting polynomial x^2 - 2
    roots2, residual2 = rational_roots([F(1), F(0), F(-2)])
    assert roots2 == {} and residual2 == 2
    # rational roots with denominators: (x - 1/2)(x + 3/2)
    roots3, residual3 = rational_roots([F(1), F(1), F(-3, 4)])
    assert residual3 == 0 and roots3 == {F(1, 2): 1, F(-3, 2): 1}


def test_eig_sym_exact_multiplicity():
    M = _mat([[2, 0, 0], [0, 2, 0], [0, 0, 3]])
    eig = eig_sym_exact(M)
    assert [(e, m) for e, m, _ in eig] == [(F(2), 2), (F(3), 1)]
    for ev, _, basis in eig:
        for v in basis:
            assert vec_eq(mat_vec(M, v), [ev * x for x in v])
    with pytest.raises(IrrationalSpectrum):
        eig_sym_exact(_mat([[0, 1], [1, 1]]))  # golden-ratio spectrum


def test_inertia():
    assert inertia_symmetric(_mat([[2, 0], [0, -3]])) == (1, 1, 0)
    assert inertia_symmetric(_mat([[0, 0], [0, 0]])) == (0, 0, 2)
    # zero diagonal but nonzero form: hyperbolic plane has signature (1,1)
    assert inertia_symmetric(_mat([[0, 1], [1, 0]])) == (1, 1, 0)
    assert inertia_symmetric(_mat([[1, 2], [2, 1]])) == (1, 1, 0)


def test_eigh_float_clusters():
    evals, V = eigh_float([[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 5.0]])
    assert abs(evals[0] - 1.0) < 1e-9
    assert abs(evals[1] - 3.0) < 1e-9
    assert abs(evals[2] - 5.0) < 1e-9
    # eigenvector check for the top eigenvalue
    v = [V[r][2] for r in range(3)]
    assert abs(v[2]) > 0.99


def test_random_unimodular_det():
    rng = random.Random(3)
    for n in (2, 5, 9):
        Q = random_unimodular(n, rng)
        assert det(Q) in (F(1), F(-1))


def test_subspace_membership_and_equality():
    S = Subspace.from_vectors(3, [[F(1), F(0), F(1)], [F(0), F(1), F(0)]])
    assert S.dim == 2
    assert S.contains([F(2), F(3), F(2)])
    assert not S.contains([F(1), F(0), F(0)])
    T = Subspace.from_vectors(3, [[F(1), F(1), F(1)], [F(1), F(-1), F(1)]])
    assert S.equals(T)
