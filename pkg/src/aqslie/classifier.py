"""Constructive normal forms: nilpotent maximal-rank structures are mapped
onto weighted Heisenberg algebras with an explicit, re-verified isomorphism.

Pipeline for the anti-quasi-Sasakian case: center = R xi, the quotient by
the center is abelian, the adapted frame extracts the weights, and the
change of basis to the frame is the isomorphism onto h^{4n+1}_w.  In frame
terms the source phi acts by e_i -> e_{2n+i}, which is the phi_2 of the
target family; companion structures are pulled back through F.

Weights are reported positive and sorted descending.  In the quasi-Sasakian
case a positive eigenvalue of the symmetric operator A = phi psi forces a
sign flip of e_{n+i}; the bracket normal form absorbs the sign and the flip
is recorded in phi_signs (the pushed-forward phi then matches the target
phi with those per-pair signs).
"""

from __future__ import annotations

from dataclasses import dataclass
from .acm import (
    CLASS_ANTI_QUASI_SASAKIAN,
    CLASS_QUASI_SASAKIAN,
    AcmStructure,
    classify_structure,
    structure_rank,
    xi_killing_check,
)
from .adapted import adapted_frame
from .constructors import weighted_heisenberg_2n1, weighted_heisenberg_4n1
from .errors import (
    CenterTooBig,
    InternalContradiction,
    NonAbelianQuotient,
    NotAqs,
    NotMaximalRank,
    NotNilpotent,
    NotQs,
    PreconditionError,
)
from .exterior import bilinear_from_form, ce_d
from .lie_core import (
    LieAlgebra,
    bracket,
    center,
    lower_central_series,
    quotient_by_center_line,
)
from .linalg import (
    Mat,
    Subspace,
    Vec,
    bilinear,
    dot,
    eig_sym_exact,
    eigh_g_float,
    inverse,
    mat_eq,
    mat_mul,
    mat_vec,
    nullspace,
    solve,
    transpose,
    vec_eq,
    vec_scale,
)
from .scalars import (
    ONE,
    ZERO,
    is_exact,
    s_abs,
    s_add,
    s_div,
    s_eq,
    s_is_zero,
    s_mul,
    s_neg,
    s_sign,
    s_sqrt,
    s_to_float,
)


@dataclass(frozen=True)
class HeisenbergIso:
    family: str  # "4n+1" or "2n+1"
    n: int
    weights: tuple  # positive, descending
    F: tuple  # source coordinates -> target coordinates
    phi_signs: tuple  # per-pair sign for the qS route; all +1 for aqS
    target_phi_index: int  # which target structure the source phi maps onto

    def F_mat(self) -> Mat:
        return [list(r) for r in self.F]


def _common_preconditions(S: AcmStructure, want_tag: str) -> None:
    if not lower_central_series(S.L).is_nilpotent:
        raise NotNilpotent("algebra is not nilpotent")
    tags = classify_structure(S).tags
    if want_tag not in tags:
        exc = NotAqs if want_tag == CLASS_ANTI_QUASI_SASAKIAN else NotQs
        raise exc(f"structure is not {want_tag}")
    rr = structure_rank(S)
    if not rr.is_maximal:
        raise NotMaximalRank(f"rank {rr.rank} < dim {S.L.dim}")
    if not xi_killing_check(S):
        raise PreconditionError("xi is not a Killing vector")


def _center_and_quotient(S: AcmStructure):
    L = S.L
    Z = center(L)
    if Z.dim > 1:
        raise CenterTooBig(
            f"center has dimension {Z.dim}, contradicting maximal rank"
        )
    if Z.dim == 0 or not Z.contains(S.xi_vec()):
        raise InternalContradiction("center of a nilpotent algebra must be R xi here")
    # complement D = Ker eta
    D = Subspace.from_vectors(L.dim, nullspace([S.eta_row()], L.dim))
    quot = quotient_by_center_line(L, S.xi_vec(), D)
    if quot.algebra.brackets:
        raise NonAbelianQuotient("quotient by the center is not abelian")
    return quot


def _verify_iso(
    S: AcmStructure, target_L: LieAlgebra, target_S: AcmStructure, F: Mat
) -> None:
    """F must be a Lie algebra isomorphism matching all structure tensors."""
    L = S.L
    n = L.dim
    F_inv = inverse(F)
    for a in range(n):
        for b in range(a + 1, n):
            lhs = mat_vec(F, bracket(L, L.basis_vector(a), L.basis_vector(b)))
            rhs = bracket(
                target_L,
                [F[r][a] for r in range(n)],
                [F[r][b] for r in range(n)],
            )
            if not vec_eq(lhs, rhs):
                raise InternalContradiction(
                    f"F is not a Lie algebra morphism at pair ({a}, {b})"
                )
    push_phi = mat_mul(F, mat_mul(S.phi_mat(), F_inv))
    if not mat_eq(push_phi, target_S.phi_mat()):
        raise InternalContradiction("F does not map phi onto the target structure")
    if not vec_eq(mat_vec(F, S.xi_vec()), target_S.xi_vec()):
        raise InternalContradiction("F does not map xi onto the target Reeb vector")
    if not vec_eq(mat_vec(transpose(F), target_S.eta_row()), S.eta_row()):
        raise InternalContradiction("F does not pull the target eta back to eta")
    gram = mat_mul(transpose(F), mat_mul(target_S.g_mat(), F))
    if not mat_eq(gram, S.g_mat()):
        raise InternalContradiction("F is not an isometry onto the target metric")


def classify_nilpotent_aqs(S: AcmStructure) -> HeisenbergIso:
    """Normal form of a nilpotent anti-quasi-Sasakian structure of maximal
    rank: an explicit isomorphism onto h^{4n+1}_w (source phi -> target
    phi_2, per the adapted-frame convention)."""
    _common_preconditions(S, CLASS_ANTI_QUASI_SASAKIAN)
    _center_and_quotient(S)
    frame = adapted_frame(S)
    n = frame.n
    weights = list(frame.weights)
    F = inverse(frame.matrix())
    target_L, (t1, t2, t3) = weighted_heisenberg_4n1(n, weights)
    _verify_iso(S, target_L, t2, F)
    return HeisenbergIso(
        "4n+1",
        n,
        tuple(weights),
        tuple(tuple(r) for r in F),
        tuple(1 for _ in range(n)),
        2,
    )


def companion_structures(S: AcmStructure, iso: HeisenbergIso):
    """Pull the remaining target structures back through F.

    Returns (aqs_companion, qs_companion) on the source algebra; together
    with the source phi they satisfy phi_1 phi_2 = phi_3 = -phi_2 phi_1,
    the source phi sitting in the middle slot.
    """
    if iso.family != "4n+1":
        raise PreconditionError("companions exist for the 4n+1 family only")
    target_L, (t1, t2, t3) = weighted_heisenberg_4n1(iso.n, list(iso.weights))
    F = iso.F_mat()
    F_inv = inverse(F)
    phi1 = mat_mul(F_inv, mat_mul(t1.phi_mat(), F))
    phi3 = mat_mul(F_inv, mat_mul(t3.phi_mat(), F))
    aqs = AcmStructure.make(S.L, phi1, S.xi_vec(), S.eta_row(), S.g_mat())
    qs = AcmStructure.make(S.L, phi3, S.xi_vec(), S.eta_row(), S.g_mat())
    return aqs, qs


def classify_nilpotent_qs(S: AcmStructure) -> HeisenbergIso:
    """Normal form of a nilpotent quasi-Sasakian structure of maximal rank:
    eigenvectors of the symmetric operator A = phi psi give pairs
    (e_i, phi e_i) and an isomorphism onto h^{2n+1}_w."""
    _common_preconditions(S, CLASS_QUASI_SASAKIAN)
    _center_and_quotient(S)
    pack = operators_A_psi_qs(S)
    L, g = S.L, S.g_mat()
    dim = L.dim
    phi = S.phi_mat()
    A = pack  # symmetric operator matrix
    if all(is_exact(x) for row in A for x in row):
        eig = [(ev, mult, basis) for ev, mult, basis in eig_sym_exact(A)]
    else:
        # A is g-symmetric, not plain symmetric: generalized float problem
        evals, V = eigh_g_float(A, g)
        eig = []
        for idx, ev in enumerate(evals):
            vec = [V[r][idx] for r in range(dim)]
            if eig and s_eq(eig[-1][0], ev):
                prev = eig[-1]
                eig[-1] = (prev[0], prev[1] + 1, prev[2] + [vec])
            else:
                eig.append((ev, 1, [vec]))
    pairs = []  # (weight, sign, v, phi v) with v rational, unnormalized
    zero_mult = 0
    for ev, mult, basis in eig:
        if s_is_zero(ev):
            zero_mult += mult
            continue
        if mult % 2 != 0:
            raise InternalContradiction(
                f"A-eigenvalue {ev} has odd multiplicity {mult}"
            )
        weight = s_abs(ev)
        sign = 1 if s_sign(ev) < 0 else -1  # bracket [u, phi u] = -2 ev |u|^2 xi
        chosen: list[Vec] = []
        for _ in range(mult // 2):
            pivot = _pair_pivot(basis, chosen, g)
            pair = (pivot, mat_vec(phi, pivot))
            chosen.extend(pair)
            pairs.append((weight, sign, pair[0], pair[1]))
    if zero_mult != 1:
        raise NotMaximalRank(f"A has kernel of dimension {zero_mult} > 1")
    pairs.sort(key=lambda p: -s_to_float(p[0]))
    n = len(pairs)
    e_first, e_second, weights, signs = [], [], [], []
    for weight, sign, v, phv in pairs:
        norm = s_sqrt(bilinear(v, g, v))
        e_first.append(vec_scale(v, s_div(ONE, norm)))
        second = vec_scale(phv, s_div(ONE, norm))
        if sign < 0:
            second = vec_scale(second, s_neg(ONE))
        e_second.append(second)
        weights.append(weight)
        signs.append(sign)
    cols = [S.xi_vec()] + e_first + e_second
    T = [[cols[j][i] for j in range(dim)] for i in range(dim)]
    F = inverse(T)
    target_L, target_S = weighted_heisenberg_2n1(n, weights)
    signed_phi = _signed_phi_2n1(n, signs)
    signed_target = AcmStructure.make(
        target_L, signed_phi, target_S.xi_vec(), target_S.eta_row(), target_S.g_mat()
    )
    _verify_iso(S, target_L, signed_target, F)
    return HeisenbergIso(
        "2n+1",
        n,
        tuple(weights),
        tuple(tuple(r) for r in F),
        tuple(signs),
        1,
    )


def _signed_phi_2n1(n: int, signs: list[int]) -> Mat:
    dim = 2 * n + 1
    phi = [[ZERO] * dim for _ in range(dim)]
    for r in range(1, n + 1):
        s = ONE if signs[r - 1] > 0 else s_neg(ONE)
        phi[n + r][r] = s
        phi[r][n + r] = s_neg(s)
    return phi


def _pair_pivot(basis: list[Vec], chosen: list[Vec], g: Mat) -> Vec:
    if not chosen:
        return list(basis[0])
    rows = []
    for c in chosen:
        gc = mat_vec(g, c)
        rows.append([dot(gc, v) for v in basis])
    coeffs = nullspace(rows, len(basis))
    if not coeffs:
        raise InternalContradiction("A-eigenspace exhausted early")
    out = [ZERO] * len(basis[0])
    for c, v in zip(coeffs[0], basis):
        if not s_is_zero(c):
            for t in range(len(out)):
                out[t] = s_add(out[t], s_mul(c, v[t]))
    return out


def operators_A_psi_qs(S: AcmStructure) -> Mat:
    """A = phi psi for the quasi-Sasakian route; asserts g-symmetry, which
    encodes the phi-invariance of d eta."""
    pack_psi = _psi_matrix(S)
    A = mat_mul(S.phi_mat(), pack_psi)
    g = S.g_mat()
    gA = mat_mul(g, A)
    for i in range(len(gA)):
        for j in range(i + 1, len(gA)):
            if not s_eq(gA[i][j], gA[j][i]):
                raise NotQs("phi psi is not symmetric; d eta is not phi-invariant")
    return A


def _psi_matrix(S: AcmStructure) -> Mat:
    from .acm import levi_civita

    conn = levi_civita(S)
    n = S.L.dim
    cols = [
        [s_neg(x) for x in conn.nabla(S.L.basis_vector(j), S.xi_vec())]
        for j in range(n)
    ]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def reeb_uniqueness_check(S: AcmStructure) -> bool:
    """True iff xi is the unique vector with eta(v) = 1 and d eta(v, .) = 0."""
    L = S.L
    n = L.dim
    deta = bilinear_from_form(ce_d(L, S.eta_form()))
    rows = [S.eta_row()]
    rhs = [ONE]
    for j in range(n):
        rows.append([deta[i][j] for i in range(n)])
        rhs.append(ZERO)
    if nullspace(rows, n):
        return False  # solution set is a positive-dimensional affine space
    sol = solve(rows, rhs)
    return sol is not None and vec_eq(sol, S.xi_vec())
