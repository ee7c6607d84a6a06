"""Adapted frames for anti-quasi-Sasakian structures of maximal rank.

The operator psi^2 restricted to D = Ker eta is g-symmetric with negative
eigenvalues; each eigendistribution splits into g-orthogonal quadruples
(X, AX, phi X, psi X).  Normalizing

    e_{n+i} = (1/w_i) A e_i,  e_{2n+i} = phi e_i,  e_{3n+i} = (1/w_i) psi e_i

with psi^2 e_i = -w_i^2 e_i produces the orthonormal frame
{xi, e_i, e_{n+i}, e_{2n+i}, e_{3n+i}}.  Pivots stay rational until the
final normalization, so exact frames live in the square-root tower.

Determinism: eigenvalues are processed by descending weight and the pivot
inside an eigendistribution is the first reduced-echelon kernel vector
(lexicographically least free column); this is a repository convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from .acm import (
    CLASS_ANTI_QUASI_SASAKIAN,
    AcmStructure,
    OperatorPack,
    classify_structure,
    operators_A_psi,
    structure_rank,
)
from .errors import (
    InternalContradiction,
    IrrationalSpectrum,
    NotAqs,
    NotMaximalRank,
    PreconditionError,
)
from .exterior import evaluate
from .linalg import (
    Mat,
    Vec,
    bilinear,
    dot,
    eig_sym_exact,
    eigh_g_float,
    mat_mul,
    mat_vec,
    nullspace,
    vec_scale,
)
from .scalars import (
    ONE,
    ZERO,
    is_exact,
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


def _require_aqs_maximal(S: AcmStructure) -> None:
    if CLASS_ANTI_QUASI_SASAKIAN not in classify_structure(S).tags:
        raise NotAqs("structure is not anti-quasi-Sasakian")
    rr = structure_rank(S)
    if not rr.is_maximal:
        raise NotMaximalRank(f"rank {rr.rank} < dim {S.L.dim}")


def _psi_squared(S: AcmStructure, pack: OperatorPack | None = None):
    if pack is None:
        pack = operators_A_psi(S)
    if not pack.ok:
        raise NotAqs("operator identities fail; structure is not aqS")
    psi = [list(r) for r in pack.psi]
    return pack, mat_mul(psi, psi)


def _eigendecompose_psi2(S: AcmStructure, pack: OperatorPack | None):
    """[(eigenvalue, multiplicity, eigenbasis)] of psi^2; psi^2 is only
    g-symmetric, so the float route solves the generalized problem."""
    pack, psi2 = _psi_squared(S, pack)
    if all(is_exact(x) for row in psi2 for x in row):
        return pack, eig_sym_exact(psi2)
    evals, V = eigh_g_float(psi2, S.g_mat())
    n = len(evals)
    clustered: list = []
    for idx, ev in enumerate(evals):
        vec = [V[r][idx] for r in range(n)]
        if clustered and s_eq(clustered[-1][0], ev):
            prev = clustered[-1]
            clustered[-1] = (prev[0], prev[1] + 1, prev[2] + [vec])
        else:
            clustered.append((ev, 1, [vec]))
    return pack, clustered


def psi_squared_spectrum(
    S: AcmStructure, pack: OperatorPack | None = None
) -> list[tuple[object, int]]:
    """Eigenvalues of psi^2 on D with multiplicities, most negative first.

    Exact mode raises IrrationalSpectrum when the characteristic polynomial
    has non-rational roots (retry in float mode in that case).
    """
    _require_aqs_maximal(S)
    _, eig = _eigendecompose_psi2(S, pack)
    # drop the simple zero eigenvalue carried by xi
    spectrum = []
    zero_mult = 0
    for ev, mult, _ in eig:
        if s_is_zero(ev):
            zero_mult += mult
        else:
            spectrum.append((ev, mult))
    if zero_mult != 1:
        raise NotMaximalRank(
            f"psi^2 kernel has dimension {zero_mult}; psi is singular on D"
        )
    for ev, mult in spectrum:
        if s_sign(ev) > 0:
            raise InternalContradiction(f"psi^2 has positive eigenvalue {ev}")
        if mult % 4 != 0:
            raise InternalContradiction(
                f"eigenvalue {ev} has multiplicity {mult}, not divisible by 4"
            )
    spectrum.sort(key=lambda p: _sort_key(p[0]))
    return spectrum


def _sort_key(ev):
    # most negative eigenvalue (largest weight) first; exact and float alike
    return s_to_float(ev)


@dataclass(frozen=True)
class AdaptedFrame:
    n: int  # number of quadruples; dim = 4n + 1
    vectors: tuple  # columns (xi, e_1..e_n, e_{n+1}..e_{2n}, ...en bloc)
    weights: tuple  # w_1 >= w_2 >= ... > 0
    change_of_basis: tuple  # matrix whose column l is vectors[l]

    def columns(self) -> list[Vec]:
        return [list(v) for v in self.vectors]

    def matrix(self) -> Mat:
        return [list(r) for r in self.change_of_basis]


def adapted_frame(S: AcmStructure, pack: OperatorPack | None = None) -> AdaptedFrame:
    """Orthonormal adapted frame of an aqS structure of maximal rank."""
    _require_aqs_maximal(S)
    if pack is None:
        pack = operators_A_psi(S)
    spectrum = psi_squared_spectrum(S, pack)
    pack, eig = _eigendecompose_psi2(S, pack)
    bases = {}
    for ev, _, basis in eig:
        bases[_sort_key(ev)] = basis
    if len(bases) != len(eig):
        raise InternalContradiction("eigenvalues collide at float precision")
    L, g = S.L, S.g_mat()
    A = [list(r) for r in pack.A]
    psi = [list(r) for r in pack.psi]
    phi = S.phi_mat()

    quadruples: list[tuple[Vec, Vec, Vec, Vec]] = []  # (v, Av, phi v, psi v)
    weights = []
    for ev, mult in spectrum:
        weight_sq = s_neg(ev)
        try:
            weight = s_sqrt(weight_sq)
        except ValueError as exc:
            raise IrrationalSpectrum(
                f"weight^2 = {weight_sq} is not a rational square"
            ) from exc
        eig_basis = bases[_sort_key(ev)]
        if len(eig_basis) != mult:
            raise InternalContradiction("eigenspace dimension mismatch")
        chosen: list[Vec] = []
        for _ in range(mult // 4):
            pivot = _orthogonal_pivot(eig_basis, chosen, g)
            quad = (
                pivot,
                mat_vec(A, pivot),
                mat_vec(phi, pivot),
                mat_vec(psi, pivot),
            )
            _check_quadruple(quad, g, weight_sq)
            quadruples.append(quad)
            weights.append(weight)
            chosen.extend(quad)

    n = len(quadruples)
    e_blocks: list[list[Vec]] = [[], [], [], []]
    for (v, Av, phv, psv), w in zip(quadruples, weights):
        norm = s_sqrt(bilinear(v, g, v))
        wn = s_mul(w, norm)
        e_blocks[0].append(vec_scale(v, s_div(ONE, norm)))
        e_blocks[1].append(vec_scale(Av, s_div(ONE, wn)))
        e_blocks[2].append(vec_scale(phv, s_div(ONE, norm)))
        e_blocks[3].append(vec_scale(psv, s_div(ONE, wn)))
    cols = [S.xi_vec()] + e_blocks[0] + e_blocks[1] + e_blocks[2] + e_blocks[3]
    # certificate: the frame is g-orthonormal
    g_cols = [mat_vec(g, c) for c in cols]
    for a in range(len(cols)):
        for b in range(a, len(cols)):
            want = ONE if a == b else ZERO
            if not s_eq(dot(cols[a], g_cols[b]), want):
                raise InternalContradiction(
                    f"frame is not orthonormal at pair ({a}, {b})"
                )
    n_amb = L.dim
    T = [[cols[j][i] for j in range(len(cols))] for i in range(n_amb)]
    return AdaptedFrame(
        n,
        tuple(tuple(c) for c in cols),
        tuple(weights),
        tuple(tuple(r) for r in T),
    )


def _orthogonal_pivot(eig_basis: list[Vec], chosen: list[Vec], g: Mat) -> Vec:
    """First kernel vector of the eigenspace orthogonal to everything chosen."""
    if not chosen:
        return list(eig_basis[0])
    rows = []
    for c in chosen:
        gc = mat_vec(g, c)
        rows.append([dot(gc, v) for v in eig_basis])
    coeff_basis = nullspace(rows, len(eig_basis))
    if not coeff_basis:
        raise InternalContradiction("eigenspace exhausted before its multiplicity")
    coords = coeff_basis[0]
    out = [ZERO] * len(eig_basis[0])
    for c, v in zip(coords, eig_basis):
        if not s_is_zero(c):
            for t in range(len(out)):
                out[t] = s_add(out[t], s_mul(c, v[t]))
    return out


def _check_quadruple(quad, g: Mat, weight_sq) -> None:
    v, Av, phv, psv = quad
    norms = [bilinear(x, g, x) for x in quad]
    # |Av|^2 = |psi v|^2 = w^2 |v|^2 and |phi v| = |v|
    if not (
        s_eq(norms[1], s_mul(weight_sq, norms[0]))
        and s_eq(norms[2], norms[0])
        and s_eq(norms[3], s_mul(weight_sq, norms[0]))
    ):
        raise InternalContradiction("quadruple norm relations fail")
    for a in range(4):
        for b in range(a + 1, 4):
            if not s_is_zero(bilinear(quad[a], g, quad[b])):
                raise InternalContradiction("quadruple is not orthogonal")


@dataclass(frozen=True)
class CoframeReport:
    ok: bool
    mismatches: list  # (form name, (a, b), got, expected)


def coframe_expansion_check(S: AcmStructure, F: AdaptedFrame) -> CoframeReport:
    """Verify the adapted-coframe expansions coefficient by coefficient:

        A-form = -sum_i w_i (eps_i ^ eps_{n+i} + eps_{2n+i} ^ eps_{3n+i})
        Phi    = -sum_i (eps_i ^ eps_{2n+i} + eps_{3n+i} ^ eps_{n+i})
        Psi    = -sum_i w_i (eps_i ^ eps_{3n+i} + eps_{n+i} ^ eps_{2n+i})
    """
    _require_aqs_maximal(S)
    pack = operators_A_psi(S)
    from .acm import fundamental_form

    n = F.n
    cols = F.columns()
    dimension = S.L.dim
    if 4 * n + 1 != dimension or len(cols) != dimension:
        raise PreconditionError("frame does not match the structure")

    def expected(name: str, a: int, b: int):
        # frame positions: xi = 0, e_i = i, e_{n+i} = n+i, ... (i = 1..n)
        for i in range(1, n + 1):
            w = F.weights[i - 1]
            if name == "A":
                if (a, b) == (i, n + i) or (a, b) == (2 * n + i, 3 * n + i):
                    return s_neg(w)
            elif name == "Phi":
                if (a, b) == (i, 2 * n + i):
                    return s_neg(ONE)
                if (a, b) == (n + i, 3 * n + i):
                    return ONE
            elif name == "Psi":
                if (a, b) == (i, 3 * n + i) or (a, b) == (n + i, 2 * n + i):
                    return s_neg(w)
        return ZERO

    forms = {
        "A": pack.a_form,
        "Phi": fundamental_form(S),
        "Psi": pack.psi_form,
    }
    mismatches = []
    for name, form in forms.items():
        for a in range(dimension):
            for b in range(a + 1, dimension):
                got = evaluate(form, [cols[a], cols[b]])
                want = expected(name, a, b)
                if not s_eq(got, want):
                    mismatches.append((name, (a, b), got, want))
    return CoframeReport(not mismatches, mismatches)
