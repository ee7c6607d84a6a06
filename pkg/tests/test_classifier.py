"""Heisenberg normal forms: soundness, completeness at desk scale, and the
error taxonomy on negative controls."""

import random
from fractions import Fraction as F

import pytest

from aqslie.acm import (
    CLASS_ANTI_QUASI_SASAKIAN,
    CLASS_QUASI_SASAKIAN,
    AcmStructure,
    classify_structure,
    conjugate_structure,
)
from aqslie.classifier import (
    classify_nilpotent_aqs,
    classify_nilpotent_qs,
    companion_structures,
    reeb_uniqueness_check,
)
from aqslie.constructors import (
    abelian,
    su2_plus_abelian,
    weighted_heisenberg_2n1,
    weighted_heisenberg_4n1,
)
from aqslie.errors import (
    NotAqs,
    NotMaximalRank,
    NotNilpotent,
    NotQs,
)
from aqslie.linalg import (
    identity,
    inverse,
    mat_eq,
    mat_mul,
    mat_vec,
    random_unimodular,
    transpose,
    vec_eq,
    zeros,
)
from aqslie.lie_core import bracket
from aqslie.scalars import s_abs, s_eq, s_is_zero, s_neg, s_str, ONE


def test_identity_input_is_normal_form_up_to_weight_order():
    _, (S1, _, _) = weighted_heisenberg_4n1(2, [1, 2])
    iso = classify_nilpotent_aqs(S1)
    assert iso.family == "4n+1" and iso.n == 2
    assert [s_str(w) for w in iso.weights] == ["2", "1"]
    assert iso.target_phi_index == 2
    # F is a signed permutation: the input is already in normal form up to
    # the ordering of the weights and within-eigenspace companions
    for row in iso.F_mat():
        nz = [x for x in row if not s_is_zero(x)]
        assert len(nz) == 1 and s_eq(s_abs(nz[0]), ONE)


def test_iso_maps_brackets_and_tensors():
    _, (S1, _, _) = weighted_heisenberg_4n1(2, [1, 2])
    iso = classify_nilpotent_aqs(S1)
    Fm = iso.F_mat()
    target_L, (t1, t2, t3) = weighted_heisenberg_4n1(2, list(iso.weights))
    for a in range(9):
        for b in range(a + 1, 9):
            lhs = mat_vec(Fm, bracket(S1.L, S1.L.basis_vector(a), S1.L.basis_vector(b)))
            rhs = bracket(target_L, [Fm[r][a] for r in range(9)], [Fm[r][b] for r in range(9)])
            assert vec_eq(lhs, rhs)
    push = mat_mul(Fm, mat_mul(S1.phi_mat(), inverse(Fm)))
    assert mat_eq(push, t2.phi_mat())
    assert mat_eq(mat_mul(transpose(Fm), Fm), S1.g_mat())


def test_conjugated_inputs_classify_with_recovered_weights():
    rng = random.Random(17)
    _, (S1, _, _) = weighted_heisenberg_4n1(2, [1, 2])
    for _ in range(5):
        Q = random_unimodular(9, rng)
        Sc = conjugate_structure(S1, Q)
        iso = classify_nilpotent_aqs(Sc)
        assert [s_str(w) for w in iso.weights] == ["2", "1"]


def test_signed_block_permutation_round_trip():
    # a structure-preserving signed block permutation: swap the two weight
    # blocks of h9_(2,2) and flip signs paired under phi1
    _, (S1, _, _) = weighted_heisenberg_4n1(2, [2, 2])
    n = 2
    Q = zeros(9, 9)
    Q[0][0] = F(1)
    for r in range(1, n + 1):
        swap = (r % n) + 1  # 1 <-> 2
        for block in range(4):
            Q[block * n + swap][block * n + r] = F(1)
    Sc = conjugate_structure(S1, Q)
    assert classify_structure(Sc).has(CLASS_ANTI_QUASI_SASAKIAN)
    iso = classify_nilpotent_aqs(Sc)
    assert [s_str(w) for w in iso.weights] == ["2", "2"]


def test_soundness_pushforward_classification_matches():
    rng = random.Random(5)
    _, (S1, _, _) = weighted_heisenberg_4n1(1, [3])
    Q = random_unimodular(5, rng)
    Sc = conjugate_structure(S1, Q)
    iso = classify_nilpotent_aqs(Sc)
    target_L, (t1, t2, t3) = weighted_heisenberg_4n1(iso.n, list(iso.weights))
    src_tags = classify_structure(Sc).tags
    assert classify_structure(t2).tags == src_tags


def test_companions():
    _, (S1, _, _) = weighted_heisenberg_4n1(2, [1, 2])
    iso = classify_nilpotent_aqs(S1)
    aqs_c, qs_c = companion_structures(S1, iso)
    assert classify_structure(aqs_c).has(CLASS_ANTI_QUASI_SASAKIAN)
    assert classify_structure(qs_c).has(CLASS_QUASI_SASAKIAN)
    p, p1, p3 = S1.phi_mat(), aqs_c.phi_mat(), qs_c.phi_mat()
    assert mat_eq(mat_mul(p1, p), p3)
    assert mat_eq(mat_mul(p, p1), [[s_neg(x) for x in r] for r in p3])


def test_companions_only_for_4n1():
    from aqslie.errors import PreconditionError

    _, S = weighted_heisenberg_2n1(1, [1])
    iso = classify_nilpotent_qs(S)
    with pytest.raises(PreconditionError):
        companion_structures(S, iso)


def test_central_extension_spectrum_weight():
    from aqslie.constructors import central_extension, standard_kahler
    from aqslie.exterior import KForm

    H = standard_kahler(2)
    w = KForm.make(2, 4, {(0, 1): F(-4), (2, 3): F(4)})
    _, S = central_extension(H, w)
    iso = classify_nilpotent_aqs(S)
    assert [s_str(x) for x in iso.weights] == ["2"]


def test_qs_routes():
    _, S = weighted_heisenberg_2n1(1, [1])
    iso = classify_nilpotent_qs(S)
    assert iso.family == "2n+1" and [s_str(w) for w in iso.weights] == ["1"]
    _, S2 = weighted_heisenberg_2n1(2, [1, 3])
    iso2 = classify_nilpotent_qs(S2)
    assert [s_str(w) for w in iso2.weights] == ["3", "1"]
    assert iso2.phi_signs == (1, 1)


def test_qs_negative_weight_sign_absorbed():
    _, S = weighted_heisenberg_2n1(1, [-2])
    iso = classify_nilpotent_qs(S)
    assert [s_str(w) for w in iso.weights] == ["2"]
    assert iso.phi_signs == (-1,)


def test_qs_conjugated():
    rng = random.Random(3)
    _, S = weighted_heisenberg_2n1(2, [1, 3])
    for _ in range(3):
        Q = random_unimodular(5, rng)
        iso = classify_nilpotent_qs(conjugate_structure(S, Q))
        assert [s_str(w) for w in iso.weights] == ["3", "1"]


def test_negative_controls():
    # su(2) (+) R^2: not nilpotent, never a silent wrong answer
    L = su2_plus_abelian()
    phi = zeros(5, 5)
    phi[2][1], phi[1][2] = F(1), F(-1)
    phi[4][3], phi[3][4] = F(1), F(-1)
    S = AcmStructure.make(L, phi, L.basis_vector(0), L.basis_vector(0), identity(5))
    with pytest.raises(NotNilpotent):
        classify_nilpotent_aqs(S)
    with pytest.raises(NotNilpotent):
        classify_nilpotent_qs(S)
    # zero-weight Heisenberg: not maximal rank
    _, (Z1, _, _) = weighted_heisenberg_4n1(2, [1, 0])
    with pytest.raises(NotMaximalRank):
        classify_nilpotent_aqs(Z1)
    # abelian cokahler structure: rank 1
    Lab = abelian(5)
    Sab = AcmStructure.make(
        Lab, phi, Lab.basis_vector(0), Lab.basis_vector(0), identity(5)
    )
    with pytest.raises(NotMaximalRank):
        classify_nilpotent_qs(Sab)
    # wrong class for the requested route
    _, (S1, _, S3) = weighted_heisenberg_4n1(1, [1])
    with pytest.raises(NotQs):
        classify_nilpotent_qs(S1)
    with pytest.raises(NotAqs):
        classify_nilpotent_aqs(S3)


def test_reeb_uniqueness():
    _, (S1, _, _) = weighted_heisenberg_4n1(2, [1, 2])
    assert reeb_uniqueness_check(S1)
    _, (Z1, _, _) = weighted_heisenberg_4n1(2, [1, 0])
    assert not reeb_uniqueness_check(Z1)
    Lab = abelian(5)
    phi = zeros(5, 5)
    phi[2][1], phi[1][2] = F(1), F(-1)
    phi[4][3], phi[3][4] = F(1), F(-1)
    Sab = AcmStructure.make(
        Lab, phi, Lab.basis_vector(0), Lab.basis_vector(0), identity(5)
    )
    assert not reeb_uniqueness_check(Sab)


def test_weight_cross_check_between_modules():
    # weights equal sqrt(|eigenvalues|) of psi^2 on D (aqS route)
    from aqslie.adapted import psi_squared_spectrum
    from aqslie.scalars import s_mul

    _, (S1, _, _) = weighted_heisenberg_4n1(2, [2, 3])
    spec = psi_squared_spectrum(S1)
    iso = classify_nilpotent_aqs(S1)
    eigen_sq = sorted((s_neg(e) for e, _ in spec), key=float, reverse=True)
    for w, e in zip(iso.weights, eigen_sq):
        assert s_eq(s_mul(w, w), e)
