"""Reductive splits and closed invariant 2-forms: moment elements, (1,1)."""

from fractions import Fraction as F

import pytest

from aqslie.constructors import abelian, su2, su3, weighted_heisenberg_4n1
from aqslie.errors import NoSolution, NotCompactSemisimple, PreconditionError
from aqslie.exterior import KForm
from aqslie.invariant_forms import (
    center_of_k,
    centralizer_of_torus,
    extension_by_zero_derivation_check,
    invariant_closed_2forms,
    moment_element,
    reductive_split,
    synthesize_j_dim2,
    type_11_check,
    verify_invariant_complex_structure,
)
from aqslie.linalg import Subspace, rank, vec_is_zero
from aqslie.scalars import s_eq, s_str


def su2_split():
    g = su2()
    S = Subspace.from_vectors(3, [g.basis_vector(2)])
    return g, reductive_split(g, centralizer_of_torus(g, S))


def su3_split():
    g = su3()
    S = Subspace.from_vectors(8, [g.basis_vector(0), g.basis_vector(1)])
    return g, reductive_split(g, centralizer_of_torus(g, S))


def canonical_su3_j():
    # J maps u_alpha -> v_alpha on each root pair of m = (u12 v12 u23 v23 u13 v13)
    J = [[F(0)] * 6 for _ in range(6)]
    for p in range(3):
        J[2 * p + 1][2 * p] = F(1)
        J[2 * p][2 * p + 1] = F(-1)
    return J


def test_centralizer_of_torus():
    g = su2()
    S = Subspace.from_vectors(3, [g.basis_vector(2)])
    k = centralizer_of_torus(g, S)
    assert k.dim == 1 and k.contains(g.basis_vector(2))
    g3 = su3()
    S3 = Subspace.from_vectors(8, [g3.basis_vector(0), g3.basis_vector(1)])
    k3 = centralizer_of_torus(g3, S3)
    assert k3.dim == 2
    # abelian: centralizer is everything
    ab = abelian(4)
    kab = centralizer_of_torus(ab, Subspace.from_vectors(4, [ab.basis_vector(0)]))
    assert kab.dim == 4


def test_centralizer_rejects_non_abelian_torus():
    g = su2()
    S = Subspace.from_vectors(3, [g.basis_vector(0), g.basis_vector(1)])
    with pytest.raises(PreconditionError):
        centralizer_of_torus(g, S)


def test_reductive_split_dimensions():
    _, R2 = su2_split()
    assert R2.k.dim == 1 and R2.m.dim == 2
    _, R3 = su3_split()
    assert R3.k.dim == 2 and R3.m.dim == 6


def test_reductive_split_rejects_non_compact():
    h5 = weighted_heisenberg_4n1(1, [1])[0]
    with pytest.raises(NotCompactSemisimple):
        reductive_split(h5, Subspace.from_vectors(5, [h5.basis_vector(0)]))


def test_solution_space_dimensions():
    _, R2 = su2_split()
    assert len(invariant_closed_2forms(R2)) == 1
    _, R3 = su3_split()
    sols = invariant_closed_2forms(R3)
    assert len(sols) == 2
    assert len(center_of_k(R3)) == 2  # = dim z(k)
    # k = g means m = 0: no forms
    g = su2()
    k_full = Subspace.from_vectors(3, [g.basis_vector(i) for i in range(3)])
    R_full = reductive_split(g, k_full)
    assert R_full.m.dim == 0
    assert invariant_closed_2forms(R_full) == []


def test_moment_element_su2():
    g, R = su2_split()
    (w,) = invariant_closed_2forms(R)
    Z = moment_element(R, w)
    # w = c * theta1 ^ theta2 and [b1, b2] = b3, Kill = -2 I:
    # w(b1, b2) = Kill(b3, Z) = -2 z3, so Z = -(c/2) b3
    c = w.coeff((0, 1))
    assert s_eq(Z[2], F(-1, 2) * c)
    assert vec_is_zero(Z[:2])


def test_moment_zero_for_zero_form():
    _, R = su2_split()
    Z = moment_element(R, KForm.make(2, 2, {}))
    assert vec_is_zero(Z)


def test_moment_elements_span_center_su3():
    _, R3 = su3_split()
    sols = invariant_closed_2forms(R3)
    Zs = [moment_element(R3, w) for w in sols]
    assert rank([list(z) for z in Zs]) == 2  # injective, image spans z(k)


def test_moment_round_trip_reconstruction():
    # reconstructing w from Z via Kill([.,.], Z) reproduces w exactly
    from aqslie.lie_core import bracket, killing_form
    from aqslie.linalg import bilinear

    for make_split in (su2_split, su3_split):
        g, R = make_split()
        B = [list(r) for r in killing_form(g).matrix]
        for w in invariant_closed_2forms(R):
            Z = moment_element(R, w)
            m_cols = R.m_cols()
            for a in range(R.m.dim):
                for b in range(a + 1, R.m.dim):
                    got = bilinear(bracket(g, m_cols[a], m_cols[b]), B, Z)
                    assert s_eq(got, w.coeff((a, b)))


def test_moment_no_solution_outside_space():
    _, R3 = su3_split()
    # theta1^theta2 on m is ad(k)-invariant-violating; no moment element
    w_bad = KForm.make(2, 6, {(0, 1): F(1), (2, 3): F(-5)})
    with pytest.raises(NoSolution):
        moment_element(R3, w_bad)


def test_type_11_su2():
    _, R = su2_split()
    sols = invariant_closed_2forms(R)
    cands = synthesize_j_dim2(R)
    assert len(cands) == 2  # exhaustive +-J enumeration
    for J in cands:
        rep = type_11_check(R, sols, J)
        assert rep.j_ok and rep.invariant and rep.anti_projection_zero


def test_type_11_su3_canonical_j():
    _, R3 = su3_split()
    J = canonical_su3_j()
    assert verify_invariant_complex_structure(R3, J) == []
    sols = invariant_closed_2forms(R3)
    rep = type_11_check(R3, sols, J)
    assert rep.j_ok and rep.invariant and rep.anti_projection_zero


def test_type_11_zero_form_trivially_passes():
    _, R = su2_split()
    J = synthesize_j_dim2(R)[0]
    rep = type_11_check(R, [KForm.make(2, 2, {})], J)
    assert rep.j_ok and rep.invariant and rep.anti_projection_zero


def test_type_11_rejects_bad_j():
    _, R3 = su3_split()
    J_bad = [[F(0)] * 6 for _ in range(6)]
    rep = type_11_check(R3, invariant_closed_2forms(R3), J_bad)
    assert not rep.j_ok and "J_squared" in rep.j_failures


def test_extension_by_zero_derivation():
    for make_split in (su2_split, su3_split):
        _, R = make_split()
        for w in invariant_closed_2forms(R):
            Z = moment_element(R, w)
            assert extension_by_zero_derivation_check(R, w, Z)


def test_synthesize_requires_dim2():
    _, R3 = su3_split()
    with pytest.raises(PreconditionError):
        synthesize_j_dim2(R3)
