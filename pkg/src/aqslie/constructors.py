"""Factories: weighted Heisenberg algebras with their standard structures,
Kahler Lie algebras, and 1-dimensional central extensions by 2-cocycles.

Weighted Heisenberg conventions (basis order: xi first, then tau_1..tau_4n):

    h^{4n+1}_w:  [tau_r, tau_{3n+r}] = [tau_{n+r}, tau_{2n+r}] = 2 w_r xi
    h^{2n+1}_w:  [tau_r, tau_{n+r}] = 2 w_r xi

and for (i,j,k) an even permutation of (1,2,3)

    phi_i = sum_r (th_r (x) tau_{in+r} - th_{in+r} (x) tau_r
                   + th_{jn+r} (x) tau_{kn+r} - th_{kn+r} (x) tau_{jn+r}).

Zero weights are legal; downstream maximal-rank operations reject them with
a precise error rather than the constructor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .acm import AcmStructure
from .errors import DimensionMismatch, PreconditionError
from .exterior import KForm, ce_d, form_add, form_scale, form_sub, pullback
from .lie_core import LieAlgebra, bracket
from .linalg import (
    Mat,
    Vec,
    identity,
    is_positive_definite,
    mat_eq,
    mat_mul,
    mat_scale,
    mat_vec,
    vec_is_zero,
    zeros,
)
from .scalars import ONE, ZERO, coerce, s_add, s_is_zero, s_mul, s_neg, s_sub


def weighted_heisenberg_4n1(n: int, weights) -> tuple[LieAlgebra, tuple]:
    """h^{4n+1}_w with its three structures (phi_1, phi_2, phi_3) sharing
    (xi, eta, g); phi_1, phi_2 are anti-quasi-Sasakian and phi_3 is
    quasi-Sasakian for nonzero weights."""
    if n < 1:
        raise PreconditionError("n must be positive")
    w = [coerce(x) for x in weights]
    if len(w) != n:
        raise DimensionMismatch(f"expected {n} weights, got {len(w)}")
    dim = 4 * n + 1
    table = {}
    for r in range(1, n + 1):
        c = s_mul(Fraction(2), w[r - 1])
        if not s_is_zero(c):
            table[(r, 3 * n + r)] = {0: c}
            table[(n + r, 2 * n + r)] = {0: c}
    names = ["xi"] + [f"tau{l}" for l in range(1, 4 * n + 1)]
    L = LieAlgebra.from_brackets(dim, table, names)
    xi = L.basis_vector(0)
    eta = L.basis_vector(0)
    g = identity(dim)
    structures = tuple(
        AcmStructure.make(L, _phi_4n1(n, perm), xi, eta, g)
        for perm in ((1, 2, 3), (2, 3, 1), (3, 1, 2))
    )
    return L, structures


def _phi_4n1(n: int, perm: tuple[int, int, int]) -> Mat:
    i, j, k = perm
    dim = 4 * n + 1
    phi = zeros(dim, dim)
    for r in range(1, n + 1):
        phi[i * n + r][r] = ONE
        phi[r][i * n + r] = s_neg(ONE)
        phi[k * n + r][j * n + r] = ONE
        phi[j * n + r][k * n + r] = s_neg(ONE)
    return phi


def weighted_heisenberg_2n1(n: int, weights) -> tuple[LieAlgebra, AcmStructure]:
    """h^{2n+1}_w with its standard quasi-Sasakian structure
    phi = sum_r (th_r (x) tau_{n+r} - th_{n+r} (x) tau_r)."""
    if n < 1:
        raise PreconditionError("n must be positive")
    w = [coerce(x) for x in weights]
    if len(w) != n:
        raise DimensionMismatch(f"expected {n} weights, got {len(w)}")
    dim = 2 * n + 1
    table = {}
    for r in range(1, n + 1):
        c = s_mul(Fraction(2), w[r - 1])
        if not s_is_zero(c):
            table[(r, n + r)] = {0: c}
    names = ["xi"] + [f"tau{l}" for l in range(1, 2 * n + 1)]
    L = LieAlgebra.from_brackets(dim, table, names)
    phi = zeros(dim, dim)
    for r in range(1, n + 1):
        phi[n + r][r] = ONE
        phi[r][n + r] = s_neg(ONE)
    S = AcmStructure.make(L, phi, L.basis_vector(0), L.basis_vector(0), identity(dim))
    return L, S


def abelian(dim: int) -> LieAlgebra:
    return LieAlgebra.from_brackets(dim, {}, [f"e{i+1}" for i in range(dim)])


# ---------------------------------------------------------------------------
# Kahler Lie algebras and central extensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KahlerLieAlgebra:
    L: LieAlgebra
    J: tuple
    k: tuple

    def J_mat(self) -> Mat:
        return [list(r) for r in self.J]

    def k_mat(self) -> Mat:
        return [list(r) for r in self.k]

    def omega(self) -> KForm:
        """Fundamental 2-form Omega = k(., J .)."""
        from .exterior import form_from_bilinear

        return form_from_bilinear(mat_mul(self.k_mat(), self.J_mat()))


def kahler(L: LieAlgebra, J: Mat, k: Mat, check: bool = True) -> KahlerLieAlgebra:
    """Validate J^2 = -I, N_J = 0, k Hermitian positive definite, d Omega = 0."""
    n = L.dim
    H = KahlerLieAlgebra(
        L, tuple(tuple(r) for r in J), tuple(tuple(r) for r in k)
    )
    if not check:
        return H
    if not mat_eq(mat_mul(J, J), mat_scale(identity(n), s_neg(ONE))):
        raise PreconditionError("J^2 != -I")
    if not is_positive_definite(k):
        raise PreconditionError("k is not positive definite")
    for i in range(n):
        for j in range(n):
            lhs = _bil(mat_vec(J, _e(i, n)), k, mat_vec(J, _e(j, n)))
            if not s_is_zero(s_sub(lhs, k[i][j])):
                raise PreconditionError("k is not Hermitian for J")
    for i in range(n):
        for j in range(i + 1, n):
            nij = _nijenhuis_j(L, J, i, j)
            if not vec_is_zero(nij):
                raise PreconditionError(f"J is not integrable: N_J(e{i+1},e{j+1}) != 0")
    if not ce_d(L, H.omega()).is_zero():
        raise PreconditionError("fundamental form is not closed")
    return H


def _e(i: int, n: int) -> Vec:
    return [ONE if t == i else ZERO for t in range(n)]


def _bil(u, G, v):
    from .linalg import bilinear

    return bilinear(u, G, v)


def _nijenhuis_j(L: LieAlgebra, J: Mat, i: int, j: int) -> Vec:
    n = L.dim
    bi, bj = _e(i, n), _e(j, n)
    Ji, Jj = mat_vec(J, bi), mat_vec(J, bj)
    out = bracket(L, Ji, Jj)
    out = [s_add(a, b) for a, b in zip(out, mat_vec(J, mat_vec(J, bracket(L, bi, bj))))]
    out = [s_sub(a, b) for a, b in zip(out, mat_vec(J, bracket(L, bi, Jj)))]
    out = [s_sub(a, b) for a, b in zip(out, mat_vec(J, bracket(L, Ji, bj)))]
    return out


def standard_kahler(m: int) -> KahlerLieAlgebra:
    """Abelian R^{2m} with J e_r = e_{m+r} and the flat metric."""
    L = abelian(2 * m)
    J = zeros(2 * m, 2 * m)
    for r in range(m):
        J[m + r][r] = ONE
        J[r][m + r] = s_neg(ONE)
    return kahler(L, J, identity(2 * m))


def invariance_type(H: KahlerLieAlgebra, w: KForm) -> tuple[str, KForm, KForm]:
    """Classify w against the J-pullback: returns (tag, invariant part,
    anti-invariant part) with w = inv + anti exactly."""
    if w.degree != 2 or w.dim != H.L.dim:
        raise DimensionMismatch("need a 2-form on the Kahler algebra")
    P = pullback(w, H.J_mat())
    half = Fraction(1, 2)
    inv = form_scale(form_add(w, P), half)
    anti = form_scale(form_sub(w, P), half)
    if anti.is_zero() and inv.is_zero():
        tag = "invariant"  # zero form; both hold, report the normal case
    elif anti.is_zero():
        tag = "invariant"
    elif inv.is_zero():
        tag = "anti-invariant"
    else:
        tag = "neither"
    return tag, inv, anti


@dataclass(frozen=True)
class Cocycle:
    form: KForm
    invariance: str

    @staticmethod
    def on(H: KahlerLieAlgebra, w: KForm) -> "Cocycle":
        if not ce_d(H.L, w).is_zero():
            raise PreconditionError("2-cocycle condition d w = 0 fails")
        tag, _, _ = invariance_type(H, w)
        return Cocycle(w, tag)


def central_extension(
    H: KahlerLieAlgebra, cocycle: Cocycle | KForm
) -> tuple[LieAlgebra, AcmStructure]:
    """g = h (+) R xi with [X, Y] = [X, Y]_h - w(X, Y) xi, [X, xi] = 0.

    Basis order (h-basis..., xi last).  The structure extends (J, k) with
    phi xi = 0, eta dual to xi, xi unit and orthogonal to h; then
    d eta = w on h.
    """
    if isinstance(cocycle, KForm):
        cocycle = Cocycle.on(H, cocycle)
    w = cocycle.form
    m = H.L.dim
    dim = m + 1
    table = {}
    for (a, b), entries in H.L.brackets:
        table[(a, b)] = dict(entries)
    for (a, b), c in [(key, c) for key, c in w.coeffs]:
        row = table.setdefault((a, b), {})
        row[m] = s_add(row.get(m, ZERO), s_neg(c))
    names = list(H.L.basis_names) + ["xi"]
    L = LieAlgebra.from_brackets(dim, table, names)
    phi = zeros(dim, dim)
    g = zeros(dim, dim)
    for i in range(m):
        for j in range(m):
            phi[i][j] = H.J[i][j]
            g[i][j] = H.k[i][j]
    g[m][m] = ONE
    S = AcmStructure.make(L, phi, _e(m, dim), _e(m, dim), g)
    return L, S


# ---------------------------------------------------------------------------
# fixed models
# ---------------------------------------------------------------------------

def su2() -> LieAlgebra:
    """su(2) with the cyclic convention [b1,b2]=b3, [b2,b3]=b1, [b3,b1]=b2."""
    return LieAlgebra.from_brackets(
        3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}}, ["b1", "b2", "b3"]
    )


def su3() -> LieAlgebra:
    """su(3) in an integer basis, shipped as package data.

    Normalization (traceless anti-Hermitian 3x3 matrices):
    h1 = i(E11 - E22), h2 = i(E22 - E33), u_jk = E_jk - E_kj,
    v_jk = i(E_jk + E_kj) for jk in {12, 23, 13}; basis order
    (h1, h2, u12, v12, u23, v23, u13, v13).  The diagonal torus is
    span{h1, h2} (file indices 1, 2); all structure constants are integers.
    """
    from . import io as aqio

    text = resources.files("aqslie").joinpath("data/su3.json").read_text("utf-8")
    return aqio.algebra_from_json(json.loads(text))


def su2_plus_abelian(extra: int = 2) -> LieAlgebra:
    """su(2) (+) R^extra; a non-nilpotent negative control."""
    base = su2()
    dim = 3 + extra
    table = {key: dict(entries) for key, entries in base.brackets}
    names = list(base.basis_names) + [f"z{i+1}" for i in range(extra)]
    return LieAlgebra.from_brackets(dim, table, names)


def shipped_algebras() -> dict:
    """Deterministic registry of the models used in tests and reports."""
    reg: dict = {}
    reg["abelian5"] = abelian(5)
    reg["h3"] = weighted_heisenberg_2n1(1, [1])[0]
    reg["h5_qs_1_3"] = weighted_heisenberg_2n1(2, [1, 3])[0]
    reg["h5_1"] = weighted_heisenberg_4n1(1, [1])[0]
    reg["h9_1_2"] = weighted_heisenberg_4n1(2, [1, 2])[0]
    reg["h13_1_2_3"] = weighted_heisenberg_4n1(3, [1, 2, 3])[0]
    reg["su2"] = su2()
    reg["su3"] = su3()
    return reg


def shipped_aqs_structures() -> dict:
    """Maximal-rank anti-quasi-Sasakian structures used across the suite."""
    out = {}
    for name, n, w in (
        ("h5_1", 1, [1]),
        ("h5_3", 1, [3]),
        ("h9_1_2", 2, [1, 2]),
        ("h9_1_1", 2, [1, 1]),
        ("h13_1_2_3", 3, [1, 2, 3]),
    ):
        _, (s1, s2, _) = weighted_heisenberg_4n1(n, w)
        out[f"{name}_phi1"] = s1
        out[f"{name}_phi2"] = s2
    return out
