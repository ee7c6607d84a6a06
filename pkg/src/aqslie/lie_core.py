"""Finite-dimensional real Lie algebras with exact structure constants.

Structure constants are stored sparsely for i < j only, so antisymmetry is
a storage invariant rather than a runtime check.  Indices are 0-based
internally; the file format is 1-based (see io.py).
"""

from __future__ import annotations

from dataclasses import dataclass
from .errors import DimensionMismatch, JacobiError, PreconditionError
from .linalg import (
    Mat,
    Subspace,
    Vec,
    inertia_symmetric,
    inverse,
    mat_vec,
    nullspace,
    vec_is_zero,
    zeros,
)
from .scalars import ONE, ZERO, coerce, s_add, s_is_zero, s_mul, s_neg, s_sub

BracketTable = dict  # {(i, j): {k: scalar}} with i < j


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    brackets: tuple  # canonical tuple form of the sparse table
    basis_names: tuple
    mode: str = "exact"

    @staticmethod
    def from_brackets(
        dim: int,
        table: BracketTable,
        basis_names: list[str] | None = None,
        mode: str = "exact",
        check: bool = True,
    ) -> "LieAlgebra":
        if basis_names is None:
            basis_names = [f"e{i+1}" for i in range(dim)]
        if len(basis_names) != dim:
            raise DimensionMismatch("basis_names length != dim")
        canon = []
        for (i, j), coeffs in sorted(table.items()):
            if not (0 <= i < j < dim):
                raise DimensionMismatch(f"bad bracket index pair ({i}, {j})")
            entries = tuple(
                sorted((k, coerce(v)) for k, v in coeffs.items() if not s_is_zero(coerce(v)))
            )
            for k, _ in entries:
                if not 0 <= k < dim:
                    raise DimensionMismatch(f"bad bracket target index {k}")
            if entries:
                canon.append(((i, j), entries))
        L = LieAlgebra(dim, tuple(canon), tuple(basis_names), mode)
        if check:
            bad = jacobi_check(L)
            if bad:
                raise JacobiError(bad)
        return L

    def table(self) -> BracketTable:
        return {(i, j): dict(entries) for (i, j), entries in self.brackets}

    def c(self, i: int, j: int, k: int):
        """Signed structure constant c_{ij}^k."""
        if i == j:
            return ZERO
        if i > j:
            return s_neg(self.c(j, i, k))
        for (a, b), entries in self.brackets:
            if (a, b) == (i, j):
                for kk, v in entries:
                    if kk == k:
                        return v
                return ZERO
        return ZERO

    def basis_vector(self, i: int) -> Vec:
        return [ONE if t == i else ZERO for t in range(self.dim)]


def bracket(L: LieAlgebra, X: Vec, Y: Vec) -> Vec:
    """[X, Y] by bilinear expansion of the structure constants."""
    if len(X) != L.dim or len(Y) != L.dim:
        raise DimensionMismatch("vector length != algebra dimension")
    out = [ZERO] * L.dim
    for (i, j), entries in L.brackets:
        coeff = s_sub(s_mul(X[i], Y[j]), s_mul(X[j], Y[i]))
        if s_is_zero(coeff):
            continue
        for k, v in entries:
            out[k] = s_add(out[k], s_mul(coeff, v))
    return out


def ad_matrix(L: LieAlgebra, X: Vec) -> Mat:
    """Matrix of ad_X, column j = [X, b_j]."""
    cols = [bracket(L, X, L.basis_vector(j)) for j in range(L.dim)]
    return [[cols[j][i] for j in range(L.dim)] for i in range(L.dim)]


def jacobi_check(L: LieAlgebra) -> list[tuple[int, int, int]]:
    """Triples (i, j, k), i<j<k, where the cyclic Jacobi sum is nonzero."""
    bad = []
    basis = [L.basis_vector(i) for i in range(L.dim)]
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            bij = bracket(L, basis[i], basis[j])
            for k in range(j + 1, L.dim):
                total = bracket(L, bij, basis[k])
                total = [
                    s_add(a, b)
                    for a, b in zip(
                        total, bracket(L, bracket(L, basis[j], basis[k]), basis[i])
                    )
                ]
                total = [
                    s_add(a, b)
                    for a, b in zip(
                        total, bracket(L, bracket(L, basis[k], basis[i]), basis[j])
                    )
                ]
                if not vec_is_zero(total):
                    bad.append((i, j, k))
    return bad


def center(L: LieAlgebra) -> Subspace:
    """Kernel of the joint adjoint action, as a null space of stacked ads."""
    rows: Mat = []
    for i in range(L.dim):
        rows.extend(ad_matrix(L, L.basis_vector(i)))
    return Subspace.from_vectors(L.dim, nullspace(rows, L.dim))


@dataclass(frozen=True)
class LowerCentralSeries:
    terms: tuple  # Subspaces: g, [g,g], [g,[g,g]], ... down to stabilization
    is_nilpotent: bool
    step: int | None  # number of nonzero terms when nilpotent


def lower_central_series(L: LieAlgebra) -> LowerCentralSeries:
    full = Subspace.from_vectors(L.dim, [L.basis_vector(i) for i in range(L.dim)])
    terms = [full]
    current = full
    while True:
        vectors = []
        for i in range(L.dim):
            for w in current.basis:
                vectors.append(bracket(L, L.basis_vector(i), list(w)))
        nxt = Subspace.from_vectors(L.dim, vectors)
        if nxt.dim == current.dim:
            return LowerCentralSeries(tuple(terms), False, None)
        terms.append(nxt)
        current = nxt
        if nxt.dim == 0:
            return LowerCentralSeries(tuple(terms), True, len(terms) - 1)


def is_nilpotent(L: LieAlgebra) -> bool:
    return lower_central_series(L).is_nilpotent


@dataclass(frozen=True)
class KillingForm:
    matrix: tuple
    inertia: tuple  # (n_plus, n_minus, n_zero)
    definiteness: str


def killing_form(L: LieAlgebra) -> KillingForm:
    """B(X, Y) = trace(ad_X ad_Y) on the basis, with a definiteness report."""
    ads = [ad_matrix(L, L.basis_vector(i)) for i in range(L.dim)]
    B = zeros(L.dim, L.dim)
    for i in range(L.dim):
        for j in range(i, L.dim):
            val = ZERO
            for a in range(L.dim):
                for b in range(L.dim):
                    val = s_add(val, s_mul(ads[i][a][b], ads[j][b][a]))
            B[i][j] = val
            B[j][i] = val
    pos, neg, zero = inertia_symmetric(B)
    if pos == 0 and neg == 0:
        label = "zero"
    elif zero == 0 and neg == 0:
        label = "positive_definite"
    elif zero == 0 and pos == 0:
        label = "negative_definite"
    elif pos > 0 and neg > 0:
        label = "indefinite"
    elif pos == 0:
        label = "negative_semidefinite"
    else:
        label = "positive_semidefinite"
    return KillingForm(tuple(tuple(r) for r in B), (pos, neg, zero), label)


def derivations(L: LieAlgebra) -> Subspace:
    """Solution space of D[X,Y] = [DX,Y] + [X,DY] in End(g).

    Elements are row-major flattened N x N matrices (ambient dim N^2).
    """
    n = L.dim
    rows: Mat = []
    for i in range(n):
        for j in range(i + 1, n):
            for m in range(n):
                row = [ZERO] * (n * n)
                # D [b_i, b_j] component on b_m: sum_k c_ij^k d_mk
                for k in range(n):
                    cijk = L.c(i, j, k)
                    if not s_is_zero(cijk):
                        row[m * n + k] = s_add(row[m * n + k], cijk)
                # -[D b_i, b_j]: - sum_a d_ai c_aj^m
                for a in range(n):
                    cajm = L.c(a, j, m)
                    if not s_is_zero(cajm):
                        row[a * n + i] = s_sub(row[a * n + i], cajm)
                # -[b_i, D b_j]: - sum_a d_aj c_ia^m
                for a in range(n):
                    ciam = L.c(i, a, m)
                    if not s_is_zero(ciam):
                        row[a * n + j] = s_sub(row[a * n + j], ciam)
                rows.append(row)
    return Subspace.from_vectors(n * n, nullspace(rows, n * n))


def endomorphism_from_flat(v: Vec, n: int) -> Mat:
    return [list(v[i * n : (i + 1) * n]) for i in range(n)]


@dataclass(frozen=True)
class CentralQuotient:
    algebra: LieAlgebra
    # cocycle omega on the complement coordinates: [X,Y] = [X,Y]_D - omega(X,Y) xi
    cocycle: tuple
    complement_to_ambient: tuple  # columns: images of quotient basis in g
    xi: tuple


def quotient_by_center_line(L: LieAlgebra, xi: Vec, D: Subspace) -> CentralQuotient:
    """Lie algebra on a complement D of a central line, with the 2-cocycle
    splitting [X,Y] = [X,Y]_D - omega(X,Y) xi certified exactly."""
    n = L.dim
    if D.dim != n - 1:
        raise PreconditionError("complement must have codimension 1")
    if not center(L).contains(list(xi)):
        raise PreconditionError("xi is not central")
    if D.contains(list(xi)):
        raise PreconditionError("xi lies in the complement")
    cols = [list(b) for b in D.basis] + [list(xi)]
    T = [[cols[j][i] for j in range(n)] for i in range(n)]  # columns d_1..d_{n-1}, xi
    Tinv = inverse(T)
    m = n - 1
    table: BracketTable = {}
    omega = zeros(m, m)
    for a in range(m):
        for b in range(a + 1, m):
            w = mat_vec(Tinv, bracket(L, cols[a], cols[b]))
            coeffs = {k: w[k] for k in range(m) if not s_is_zero(w[k])}
            if coeffs:
                table[(a, b)] = coeffs
            omega[a][b] = s_neg(w[m])
            omega[b][a] = w[m]
    names = []
    for a in range(m):
        col = cols[a]
        hits = [i for i in range(n) if not s_is_zero(col[i])]
        if len(hits) == 1 and s_is_zero(s_sub(col[hits[0]], ONE)):
            names.append(L.basis_names[hits[0]])
        else:
            names.append(f"d{a+1}")
    quotient = LieAlgebra.from_brackets(m, table, names, L.mode, check=True)
    # certificate: [d_a, d_b] = incl([.,.]_D) - omega_ab * xi, exactly
    for a in range(m):
        for b in range(a + 1, m):
            lhs = bracket(L, cols[a], cols[b])
            rhs = [ZERO] * n
            for k in range(m):
                ck = quotient.c(a, b, k)
                if not s_is_zero(ck):
                    for t in range(n):
                        rhs[t] = s_add(rhs[t], s_mul(ck, cols[k][t]))
            for t in range(n):
                rhs[t] = s_sub(rhs[t], s_mul(omega[a][b], xi[t]))
            if not vec_is_zero([s_sub(x, y) for x, y in zip(lhs, rhs)]):
                raise PreconditionError("bracket does not split along the given complement")
    return CentralQuotient(
        quotient,
        tuple(tuple(r) for r in omega),
        tuple(tuple(c) for c in cols[:m]),
        tuple(xi),
    )
