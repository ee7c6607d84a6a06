"""Almost contact metric structures (phi, xi, eta, g) on a metric Lie algebra.

Defining identities: phi^2 = -I + eta (x) xi, eta(xi) = 1, and
g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y).  The classification evaluates
d Phi, d eta and the Nijenhuis tensor N_phi = [phi, phi] + d eta (x) xi,
and returns every class whose defining equations hold (classes overlap).

Sign convention, fixed package-wide: d eta (X, Y) = -eta([X, Y]).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    InvalidStructure,
    NotAqs,
    PreconditionError,
)
from .exterior import (
    KForm,
    bilinear_from_form,
    ce_d,
    covector_form,
    form_from_bilinear,
    form_scale,
    form_sub,
    rank_of_eta,
)
from .lie_core import LieAlgebra, bracket
from .linalg import (
    Mat,
    Vec,
    bilinear,
    dot,
    identity,
    inverse,
    is_positive_definite,
    mat_mul,
    mat_sub,
    mat_vec,
    transpose,
    vec_is_zero,
    zeros,
)
from .scalars import ONE, ZERO, s_abs, s_add, s_div, s_is_zero, s_lt, s_mul, s_neg, s_sub

CLASS_CONTACT_METRIC = "ContactMetric"
CLASS_SASAKIAN = "Sasakian"
CLASS_COKAHLER = "Cokahler"
CLASS_QUASI_SASAKIAN = "QuasiSasakian"
CLASS_ANTI_QUASI_SASAKIAN = "AntiQuasiSasakian"
CLASS_DOUBLE_AQS_SASAKIAN = "DoubleAqsSasakian"
CLASS_UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True, eq=False)
class AcmStructure:
    L: LieAlgebra
    phi: tuple  # N x N, column j = phi(b_j)
    xi: tuple
    eta: tuple  # covector
    g: tuple  # symmetric positive definite

    def __post_init__(self):
        # memo for the pure derived quantities (connection, classification,
        # rank, operators); invisible to equality and serialization
        object.__setattr__(self, "_memo", {})

    @staticmethod
    def make(L: LieAlgebra, phi: Mat, xi: Vec, eta: Vec, g: Mat) -> "AcmStructure":
        n = L.dim
        if len(xi) != n or len(eta) != n or len(phi) != n or len(g) != n:
            raise DimensionMismatch("tensor sizes do not match the algebra")
        return AcmStructure(
            L,
            tuple(tuple(r) for r in phi),
            tuple(xi),
            tuple(eta),
            tuple(tuple(r) for r in g),
        )

    def phi_mat(self) -> Mat:
        return [list(r) for r in self.phi]

    def g_mat(self) -> Mat:
        return [list(r) for r in self.g]

    def xi_vec(self) -> Vec:
        return list(self.xi)

    def eta_row(self) -> Vec:
        return list(self.eta)

    def eta_form(self) -> KForm:
        return covector_form(list(self.eta))


def _max_abs(entries):
    worst = ZERO
    for x in entries:
        a = s_abs(x)
        if s_lt(worst, a):
            worst = a
    return worst


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    residuals: dict = field(default_factory=dict)  # check name -> max |residual|
    max_residual: object = ZERO
    worst_check: str = ""


def validate_acm(S: AcmStructure) -> ValidationReport:
    """Check the defining identities; failures are report entries."""
    n = S.L.dim
    phi, g, xi, eta = S.phi_mat(), S.g_mat(), S.xi_vec(), S.eta_row()
    residuals: dict = {}

    phi2 = mat_mul(phi, phi)
    target = mat_sub([[s_mul(xi[i], eta[j]) for j in range(n)] for i in range(n)], identity(n))
    residuals["phi_squared"] = _max_abs(
        s_sub(phi2[i][j], target[i][j]) for i in range(n) for j in range(n)
    )
    residuals["eta_xi"] = s_abs(s_sub(dot(eta, xi), ONE))
    residuals["g_symmetric"] = _max_abs(
        s_sub(g[i][j], g[j][i]) for i in range(n) for j in range(n)
    )
    # g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y): phi^T g phi = g - eta^T eta
    pullback_g = mat_mul(transpose(phi), mat_mul(g, phi))
    residuals["compatibility"] = _max_abs(
        s_sub(pullback_g[i][j], s_sub(g[i][j], s_mul(eta[i], eta[j])))
        for i in range(n)
        for j in range(n)
    )
    residuals["phi_xi"] = _max_abs(mat_vec(phi, xi))
    residuals["eta_phi"] = _max_abs(mat_vec(transpose(phi), eta))
    residuals["xi_unit"] = s_abs(s_sub(bilinear(xi, g, xi), ONE))
    pd = is_positive_definite(g)
    residuals["g_positive_definite"] = ZERO if pd else ONE

    worst_name, worst = "", ZERO
    for name, r in residuals.items():
        if s_lt(worst, r):
            worst_name, worst = name, r
    passed = pd and all(s_is_zero(r) for r in residuals.values())
    return ValidationReport(passed, residuals, worst, worst_name)


def _e(i: int, n: int) -> Vec:
    return [ONE if t == i else ZERO for t in range(n)]


def fundamental_form(S: AcmStructure) -> KForm:
    """Phi(X, Y) = g(X, phi Y)."""
    M = mat_mul(S.g_mat(), S.phi_mat())
    try:
        return form_from_bilinear(M)
    except PreconditionError as exc:
        raise InvalidStructure("g(., phi .) is not alternating; structure invalid") from exc


def nijenhuis_phi(S: AcmStructure) -> dict:
    """Nijenhuis torsion [phi, phi] on basis pairs: {(i, j): vector}, i < j."""
    L, phi = S.L, S.phi_mat()
    n = L.dim
    out = {}
    phi_cols = [mat_vec(phi, _e(j, n)) for j in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            bi, bj = _e(i, n), _e(j, n)
            term = bracket(L, phi_cols[i], phi_cols[j])
            term = _vadd(term, mat_vec(phi, mat_vec(phi, bracket(L, bi, bj))))
            term = _vsub(term, mat_vec(phi, bracket(L, bi, phi_cols[j])))
            term = _vsub(term, mat_vec(phi, bracket(L, phi_cols[i], bj)))
            out[(i, j)] = term
    return out


def _vadd(u, v):
    return [s_add(a, b) for a, b in zip(u, v)]


def _vsub(u, v):
    return [s_sub(a, b) for a, b in zip(u, v)]


@dataclass(frozen=True)
class StructureClass:
    tags: frozenset
    residuals: dict = field(default_factory=dict)

    def has(self, tag: str) -> bool:
        return tag in self.tags


def classify_structure(S: AcmStructure) -> StructureClass:
    """All satisfied class tags among contact metric / Sasakian / cokahler /
    quasi-Sasakian / anti-quasi-Sasakian."""
    if "classification" in S._memo:
        return S._memo["classification"]
    report = validate_acm(S)
    if not report.passed:
        raise InvalidStructure(
            f"not an almost contact metric structure (worst: {report.worst_check})"
        )
    L = S.L
    n = L.dim
    Phi = fundamental_form(S)
    dPhi = ce_d(L, Phi)
    eta_f = S.eta_form()
    deta = ce_d(L, eta_f)
    deta_mat = bilinear_from_form(deta)
    nij = nijenhuis_phi(S)
    xi = S.xi_vec()

    # N_phi = [phi, phi] + d eta (x) xi on basis pairs
    n_phi = {
        key: _vadd(val, [s_mul(deta_mat[key[0]][key[1]], x) for x in xi])
        for key, val in nij.items()
    }
    n_phi_zero = all(vec_is_zero(v) for v in n_phi.values())
    # anti-normal: N_phi = 2 d eta (x) xi
    anti = all(
        vec_is_zero(
            _vsub(v, [s_mul(s_mul(Fraction(2), deta_mat[i][j]), x) for x in xi])
        )
        for (i, j), v in n_phi.items()
    )
    deta_is_2phi = form_sub(deta, form_scale(Phi, Fraction(2))).is_zero()
    deta_zero = deta.is_zero()
    dphi_zero = dPhi.is_zero()

    tags = set()
    if deta_is_2phi:
        tags.add(CLASS_CONTACT_METRIC)
        if n_phi_zero:
            tags.add(CLASS_SASAKIAN)
    if dphi_zero and n_phi_zero:
        tags.add(CLASS_QUASI_SASAKIAN)
    if dphi_zero and anti:
        tags.add(CLASS_ANTI_QUASI_SASAKIAN)
    if deta_zero and dphi_zero and n_phi_zero:
        tags.add(CLASS_COKAHLER)
    if not tags:
        tags.add(CLASS_UNCLASSIFIED)
    residuals = {
        "d_phi": _max_abs(c for _, c in dPhi.coeffs),
        "d_eta": _max_abs(c for _, c in deta.coeffs),
        "n_phi": _max_abs(x for v in n_phi.values() for x in v),
        "anti_normal": _max_abs(
            x
            for (i, j), v in n_phi.items()
            for x in _vsub(v, [s_mul(s_mul(Fraction(2), deta_mat[i][j]), w) for w in xi])
        ),
        "contact_metric": _max_abs(
            c for _, c in form_sub(deta, form_scale(Phi, Fraction(2))).coeffs
        ),
    }
    result = StructureClass(frozenset(tags), residuals)
    S._memo["classification"] = result
    return result


def xi_killing_check(S: AcmStructure) -> bool:
    """g([xi, X], Y) + g(X, [xi, Y]) = 0 on all basis pairs, i.e.
    g ad_xi + (g ad_xi)^T = 0."""
    L, g, xi = S.L, S.g_mat(), S.xi_vec()
    n = L.dim
    ad_xi = [[ZERO] * n for _ in range(n)]
    ad_xi_cols = [bracket(L, xi, _e(j, n)) for j in range(n)]
    for j in range(n):
        for i in range(n):
            ad_xi[i][j] = ad_xi_cols[j][i]
    M = mat_mul(g, ad_xi)
    for i in range(n):
        for j in range(i, n):
            if not s_is_zero(s_add(M[i][j], M[j][i])):
                return False
    # consequence: d eta (xi, .) = 0, i.e. eta([xi, .]) = 0
    eta = S.eta_row()
    for j in range(n):
        assert s_is_zero(dot(eta, ad_xi_cols[j])), "Killing xi with d eta(xi,.) != 0"
    return True


@dataclass(frozen=True)
class ConnectionTable:
    gamma: tuple  # gamma[i][j] = nabla_{b_i} b_j as a coordinate tuple

    def nabla(self, X: Vec, Y: Vec) -> Vec:
        n = len(X)
        out = [ZERO] * n
        for i in range(n):
            if s_is_zero(X[i]):
                continue
            for j in range(n):
                if s_is_zero(Y[j]):
                    continue
                c = s_mul(X[i], Y[j])
                for t in range(n):
                    out[t] = s_add(out[t], s_mul(c, self.gamma[i][j][t]))
        return out


def levi_civita(S: AcmStructure) -> ConnectionTable:
    """Koszul formula for a left-invariant metric:
    2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)."""
    if "connection" in S._memo:
        return S._memo["connection"]
    L, g = S.L, S.g_mat()
    n = L.dim
    if not is_positive_definite(g):
        raise PreconditionError("metric is not positive definite")
    g_inv = inverse(g)
    basis = [_e(i, n) for i in range(n)]
    br = [[bracket(L, basis[i], basis[j]) for j in range(n)] for i in range(n)]
    gb = [[mat_vec(g, br[i][j]) for j in range(n)] for i in range(n)]
    half = Fraction(1, 2)
    gamma = []
    for i in range(n):
        row = []
        for j in range(n):
            rhs = [
                s_mul(half, s_add(s_sub(gb[i][j][k], gb[j][k][i]), gb[k][i][j]))
                for k in range(n)
            ]
            row.append(tuple(mat_vec(g_inv, rhs)))
        gamma.append(tuple(row))
    table = ConnectionTable(tuple(gamma))
    # certify: torsion-free and metric on the basis
    g_gamma = [
        [mat_vec(g, list(table.gamma[i][j])) for j in range(n)] for i in range(n)
    ]
    for i in range(n):
        for j in range(n):
            tors = _vsub(
                _vsub(list(table.gamma[i][j]), list(table.gamma[j][i])), br[i][j]
            )
            assert vec_is_zero(tors), "Koszul solve lost torsion-freeness"
            for k in range(n):
                compat = s_add(g_gamma[i][j][k], g_gamma[i][k][j])
                assert s_is_zero(compat), "Koszul solve lost metric compatibility"
    S._memo["connection"] = table
    return table


@dataclass(frozen=True)
class OperatorPack:
    A: tuple  # A = phi psi = -phi o nabla xi
    psi: tuple  # psi = -nabla xi
    a_form: KForm  # g(., A .)
    psi_form: KForm  # g(., psi .)
    ok: bool
    residuals: dict


def operators_A_psi(S: AcmStructure, conn: ConnectionTable | None = None) -> OperatorPack:
    """Operators A = -phi o nabla xi and psi = -nabla xi, with the identity
    suite (A phi = psi = -phi A, phi psi = A = -psi phi, psi A = -phi A^2
    = -A psi, A xi = psi xi = 0, skew-symmetry) asserted, not assumed."""
    if "operators" in S._memo:
        return S._memo["operators"]
    if conn is None:
        conn = levi_civita(S)
    L, phi, g, xi, eta = S.L, S.phi_mat(), S.g_mat(), S.xi_vec(), S.eta_row()
    n = L.dim
    psi = transpose([[s_neg(x) for x in conn.nabla(_e(j, n), xi)] for j in range(n)])
    A = mat_mul(phi, psi)
    residuals = {}
    residuals["A_phi_eq_psi"] = _mat_res(mat_mul(A, phi), psi)
    residuals["phi_A_eq_minus_psi"] = _mat_res(
        mat_mul(phi, A), [[s_neg(x) for x in row] for row in psi]
    )
    residuals["psi_phi_eq_minus_A"] = _mat_res(
        mat_mul(psi, phi), [[s_neg(x) for x in row] for row in A]
    )
    psiA = mat_mul(psi, A)
    residuals["psi_A_anticommute"] = _mat_res(
        psiA, [[s_neg(x) for x in row] for row in mat_mul(A, psi)]
    )
    residuals["psi_A_eq_minus_phi_A2"] = _mat_res(
        psiA, [[s_neg(x) for x in row] for row in mat_mul(phi, mat_mul(A, A))]
    )
    residuals["A_xi"] = _max_abs(mat_vec(A, xi))
    residuals["psi_xi"] = _max_abs(mat_vec(psi, xi))
    residuals["eta_A"] = _max_abs(mat_vec(transpose(A), eta))
    residuals["eta_psi"] = _max_abs(mat_vec(transpose(psi), eta))
    gA = mat_mul(g, A)
    gpsi = mat_mul(g, psi)
    residuals["A_skew"] = _mat_res(transpose(gA), [[s_neg(x) for x in row] for row in gA])
    residuals["psi_skew"] = _mat_res(
        transpose(gpsi), [[s_neg(x) for x in row] for row in gpsi]
    )
    ok = all(s_is_zero(r) for r in residuals.values())
    a_form = form_from_bilinear(gA) if ok else KForm.make(2, n)
    psi_form = form_from_bilinear(gpsi) if ok else KForm.make(2, n)
    pack = OperatorPack(
        tuple(tuple(r) for r in A),
        tuple(tuple(r) for r in psi),
        a_form,
        psi_form,
        ok,
        residuals,
    )
    S._memo["operators"] = pack
    return pack


def _mat_res(A: Mat, B: Mat):
    return _max_abs(s_sub(a, b) for ra, rb in zip(A, B) for a, b in zip(ra, rb))


@dataclass(frozen=True)
class ClosednessReport:
    ok: bool
    residuals: dict
    witness: tuple | None  # offending basis pair for the anti-invariance check


def closedness_suite(S: AcmStructure) -> ClosednessReport:
    """For an anti-quasi-Sasakian structure: d(g(.,A.)) = 0, d Phi = 0,
    d eta = 2 g(., psi .), and d eta(phi X, phi Y) = -d eta(X, Y)."""
    cls = classify_structure(S)
    if CLASS_ANTI_QUASI_SASAKIAN not in cls.tags:
        raise NotAqs("closedness suite requires an anti-quasi-Sasakian structure")
    L = S.L
    pack = operators_A_psi(S)
    residuals = {}
    residuals["dA"] = _max_abs(c for _, c in ce_d(L, pack.a_form).coeffs)
    residuals["dPhi"] = _max_abs(c for _, c in ce_d(L, fundamental_form(S)).coeffs)
    deta = ce_d(L, S.eta_form())
    residuals["deta_eq_2Psi"] = _max_abs(
        c for _, c in form_sub(deta, form_scale(pack.psi_form, Fraction(2))).coeffs
    )
    if not pack.ok:
        residuals["operator_identities"] = ONE
    deta_mat = bilinear_from_form(deta)
    phi = S.phi_mat()
    n = L.dim
    witness = None
    worst = ZERO
    for i in range(n):
        for j in range(i + 1, n):
            val = s_add(
                bilinear(mat_vec(phi, _e(i, n)), deta_mat, mat_vec(phi, _e(j, n))),
                deta_mat[i][j],
            )
            if not s_is_zero(val) and witness is None:
                witness = (i, j)
            a = s_abs(val)
            if s_lt(worst, a):
                worst = a
    residuals["deta_anti_invariance"] = worst
    ok = all(s_is_zero(r) for r in residuals.values())
    return ClosednessReport(ok, residuals, witness)


@dataclass(frozen=True)
class CurvatureData:
    connection: ConnectionTable
    ricci: tuple
    scalar: object

    def riemann(self, X: Vec, Y: Vec, Z: Vec, L: LieAlgebra) -> Vec:
        """R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z."""
        c = self.connection
        out = _vsub(c.nabla(X, c.nabla(Y, Z)), c.nabla(Y, c.nabla(X, Z)))
        return _vsub(out, c.nabla(bracket(L, X, Y), Z))


def curvature(S: AcmStructure, conn: ConnectionTable | None = None) -> CurvatureData:
    """Riemann evaluator, Ricci tensor and scalar curvature."""
    if conn is None:
        conn = levi_civita(S)
    L, g = S.L, S.g_mat()
    n = L.dim
    data = CurvatureData(conn, (), ZERO)
    basis = [_e(i, n) for i in range(n)]
    ricci = zeros(n, n)
    for i in range(n):
        for j in range(n):
            # Ric(X, Y) = trace(Z -> R(Z, X) Y)
            val = ZERO
            for a in range(n):
                val = s_add(val, data.riemann(basis[a], basis[i], basis[j], L)[a])
            ricci[i][j] = val
    g_inv = inverse(g)
    scal = ZERO
    for i in range(n):
        for j in range(n):
            scal = s_add(scal, s_mul(g_inv[i][j], ricci[i][j]))
    return CurvatureData(conn, tuple(tuple(r) for r in ricci), scal)


def sectional_curvature(S: AcmStructure, curv: CurvatureData, X: Vec, Y: Vec):
    """K(X, Y) = g(R(X,Y)Y, X) / (|X|^2 |Y|^2 - g(X,Y)^2)."""
    g = S.g_mat()
    num = bilinear(curv.riemann(X, Y, Y, S.L), g, X)
    den = s_sub(
        s_mul(bilinear(X, g, X), bilinear(Y, g, Y)),
        s_mul(bilinear(X, g, Y), bilinear(X, g, Y)),
    )
    if s_is_zero(den):
        raise PreconditionError("degenerate 2-plane")
    return s_div(num, den)


@dataclass(frozen=True)
class DoubleReport:
    ok: bool
    residuals: dict


def double_aqs_check(S1: AcmStructure, S2: AcmStructure, S3: AcmStructure) -> DoubleReport:
    """Double aqS-Sasakian test: shared (xi, eta, g), phi1 phi2 = phi3
    = -phi2 phi1, d Phi1 = d Phi2 = 0 and d eta = 2 Phi3."""
    residuals = {}
    shared = ZERO
    for a, b in ((S1, S2), (S1, S3)):
        shared = _max_abs(
            [shared]
            + [s_sub(x, y) for x, y in zip(a.xi, b.xi)]
            + [s_sub(x, y) for x, y in zip(a.eta, b.eta)]
            + [s_sub(x, y) for ra, rb in zip(a.g, b.g) for x, y in zip(ra, rb)]
        )
    residuals["shared_tensors"] = shared
    p1, p2, p3 = S1.phi_mat(), S2.phi_mat(), S3.phi_mat()
    residuals["phi1_phi2_eq_phi3"] = _mat_res(mat_mul(p1, p2), p3)
    residuals["phi2_phi1_eq_minus_phi3"] = _mat_res(
        mat_mul(p2, p1), [[s_neg(x) for x in row] for row in p3]
    )
    L = S1.L
    residuals["dPhi1"] = _max_abs(c for _, c in ce_d(L, fundamental_form(S1)).coeffs)
    residuals["dPhi2"] = _max_abs(c for _, c in ce_d(L, fundamental_form(S2)).coeffs)
    deta = ce_d(L, S1.eta_form())
    residuals["deta_eq_2Phi3"] = _max_abs(
        c
        for _, c in form_sub(deta, form_scale(fundamental_form(S3), Fraction(2))).coeffs
    )
    ok = all(s_is_zero(r) for r in residuals.values())
    return DoubleReport(ok, residuals)


def conjugate_structure(S: AcmStructure, Q: Mat) -> AcmStructure:
    """Transport the algebra and all structure tensors to the basis whose
    j-th vector is column j of Q (coordinates in the old basis)."""
    L = S.L
    n = L.dim
    Q_inv = inverse(Q)
    cols = [[Q[r][c] for r in range(n)] for c in range(n)]
    table = {}
    for a in range(n):
        for b in range(a + 1, n):
            w = mat_vec(Q_inv, bracket(L, cols[a], cols[b]))
            coeffs = {k: w[k] for k in range(n) if not s_is_zero(w[k])}
            if coeffs:
                table[(a, b)] = coeffs
    L2 = LieAlgebra.from_brackets(
        n, table, [f"b{i+1}" for i in range(n)], L.mode, check=False
    )
    phi2 = mat_mul(Q_inv, mat_mul(S.phi_mat(), Q))
    xi2 = mat_vec(Q_inv, S.xi_vec())
    eta2 = mat_vec(transpose(Q), S.eta_row())
    g2 = mat_mul(transpose(Q), mat_mul(S.g_mat(), Q))
    return AcmStructure.make(L2, phi2, xi2, eta2, g2)


def structure_rank(S: AcmStructure):
    """Rank report of eta for this structure."""
    if "rank" not in S._memo:
        S._memo["rank"] = rank_of_eta(S.L, S.eta_form())
    return S._memo["rank"]
