"""Small dense linear algebra over the scalar tower (exact) or floats.

Matrices are lists of rows, vectors plain lists.  Exact rank/det go through
fraction-free (Bareiss) elimination on integer-scaled rows whenever all
entries are rational, which keeps intermediate growth polynomial; matrices
with adjoined square roots fall back to ordinary field elimination, where
division is still exact.  Float matrices use the same code paths with
tolerance-based zero tests and magnitude pivoting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import IrrationalSpectrum
from .scalars import (
    ONE,
    ZERO,
    Ext,
    is_exact,
    s_add,
    s_div,
    s_eq,
    s_is_zero,
    s_mul,
    s_neg,
    s_sign,
    s_sub,
    s_to_float,
)

Vec = list
Mat = list


def zeros(m: int, n: int) -> Mat:
    return [[ZERO for _ in range(n)] for _ in range(m)]


def identity(n: int) -> Mat:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_copy(M: Mat) -> Mat:
    return [row[:] for row in M]


def transpose(M: Mat) -> Mat:
    return [list(col) for col in zip(*M)] if M else []


def mat_vec(M: Mat, v: Vec) -> Vec:
    return [
        _sum(s_mul(M[i][j], v[j]) for j in range(len(v)) if not s_is_zero(v[j]))
        for i in range(len(M))
    ]


def mat_mul(A: Mat, B: Mat) -> Mat:
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    Bt = transpose(B)
    out = zeros(n, m)
    for i in range(n):
        Ai = A[i]
        for j in range(m):
            out[i][j] = _sum(s_mul(Ai[t], Bt[j][t]) for t in range(k))
    return out


def mat_add(A: Mat, B: Mat) -> Mat:
    return [[s_add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A: Mat, B: Mat) -> Mat:
    return [[s_sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(M: Mat, c) -> Mat:
    return [[s_mul(c, x) for x in row] for row in M]


def mat_eq(A: Mat, B: Mat) -> bool:
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(s_eq(a, b) for a, b in zip(ra, rb))
        for ra, rb in zip(A, B)
    )


def mat_is_zero(M: Mat) -> bool:
    return all(s_is_zero(x) for row in M for x in row)


def vec_add(u: Vec, v: Vec) -> Vec:
    return [s_add(a, b) for a, b in zip(u, v)]


def vec_sub(u: Vec, v: Vec) -> Vec:
    return [s_sub(a, b) for a, b in zip(u, v)]


def vec_scale(v: Vec, c) -> Vec:
    return [s_mul(c, x) for x in v]


def vec_is_zero(v: Vec) -> bool:
    return all(s_is_zero(x) for x in v)


def vec_eq(u: Vec, v: Vec) -> bool:
    return len(u) == len(v) and all(s_eq(a, b) for a, b in zip(u, v))


def dot(u: Vec, v: Vec):
    return _sum(s_mul(a, b) for a, b in zip(u, v))


def bilinear(u: Vec, G: Mat, v: Vec):
    """u^T G v."""
    return dot(u, mat_vec(G, v))


def trace(M: Mat):
    return _sum(M[i][i] for i in range(len(M)))


def _sum(items):
    total = ZERO
    for x in items:
        total = s_add(total, x)
    return total


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def _pivot_row(M: Mat, rows: range, col: int, exact: bool) -> int | None:
    best, best_mag = None, None
    for r in rows:
        x = M[r][col]
        if s_is_zero(x):
            continue
        if exact:
            return r
        mag = abs(s_to_float(x))
        if best is None or mag > best_mag:
            best, best_mag = r, mag
    return best


def rref(M: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form (copy) and pivot column list."""
    A = mat_copy(M)
    if not A:
        return A, []
    n_rows, n_cols = len(A), len(A[0])
    exact = all(is_exact(x) for row in A for x in row)
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        p = _pivot_row(A, range(r, n_rows), c, exact)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = s_div(ONE, A[r][c])
        A[r] = [s_mul(inv, x) for x in A[r]]
        for i in range(n_rows):
            if i != r and not s_is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [s_sub(x, s_mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def _rows_to_int(M: Mat) -> Mat | None:
    """Scale each row to integers when all entries are rational."""
    out = []
    for row in M:
        scaled = []
        lcm = 1
        for x in row:
            if isinstance(x, Ext):
                if not x.is_rational():
                    return None
                x = x.rational_part()
            if not isinstance(x, Fraction):
                return None
            scaled.append(x)
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        out.append([int(x * lcm) for x in scaled])
    return out


def _bareiss_rank(M: list[list[int]]) -> int:
    """Fraction-free elimination; all divisions are exact over the integers."""
    A = [row[:] for row in M]
    if not A or not A[0]:
        return 0
    n_rows, n_cols = len(A), len(A[0])
    prev = 1
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        p = next((i for i in range(r, n_rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
    return r


def rank(M: Mat) -> int:
    if not M or not M[0]:
        return 0
    ints = _rows_to_int(M)
    if ints is not None:
        return _bareiss_rank(ints)
    _, pivots = rref(M)
    return len(pivots)


def nullspace(M: Mat, n_cols: int | None = None) -> list[Vec]:
    """Deterministic kernel basis from the RREF (free columns ascending)."""
    if n_cols is None:
        n_cols = len(M[0]) if M else 0
    if not M:
        return [[ONE if i == j else ZERO for i in range(n_cols)] for j in range(n_cols)]
    R, pivots = rref(M)
    pivot_of_col = {c: r for r, c in enumerate(pivots)}
    basis = []
    for free in range(n_cols):
        if free in pivot_of_col:
            continue
        v = [ZERO] * n_cols
        v[free] = ONE
        for c, r in pivot_of_col.items():
            v[c] = s_neg(R[r][free])
        basis.append(v)
    return basis


def solve(M: Mat, b: Vec) -> Vec | None:
    """One solution of M x = b (free variables zero), or None if inconsistent."""
    if not M:
        return [] if vec_is_zero(b) else None
    n_cols = len(M[0])
    aug = [row[:] + [bv] for row, bv in zip(M, b)]
    R, pivots = rref(aug)
    for r in range(len(R)):
        if all(s_is_zero(R[r][c]) for c in range(n_cols)) and not s_is_zero(R[r][n_cols]):
            return None
    x = [ZERO] * n_cols
    for r, c in enumerate(pivots):
        if c < n_cols:
            x[c] = R[r][n_cols]
    if n_cols in pivots:
        return None
    return x


def det(M: Mat):
    n = len(M)
    A = mat_copy(M)
    exact = all(is_exact(x) for row in A for x in row)
    sign = 1
    result = ONE
    for c in range(n):
        p = _pivot_row(A, range(c, n), c, exact)
        if p is None:
            return ZERO
        if p != c:
            A[c], A[p] = A[p], A[c]
            sign = -sign
        result = s_mul(result, A[c][c])
        inv = s_div(ONE, A[c][c])
        for i in range(c + 1, n):
            if not s_is_zero(A[i][c]):
                f = s_mul(inv, A[i][c])
                A[i] = [s_sub(x, s_mul(f, y)) for x, y in zip(A[i], A[c])]
    return s_mul(Fraction(sign), result)


def inverse(M: Mat) -> Mat:
    n = len(M)
    aug = [row[:] + identity(n)[i] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [R[i][n:] for i in range(n)]


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

def _bareiss_det(M: list[list[int]]) -> int:
    A = [row[:] for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for c in range(n - 1):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                A[i][j] = (A[c][c] * A[i][j] - A[i][c] * A[c][j]) // prev
            A[i][c] = 0
        prev = A[c][c]
    return sign * A[n - 1][n - 1]


def char_poly(M: Mat) -> list:
    """Coefficients [1, c1, ..., cn] of det(xI - M).

    Rational matrices go through integer Bareiss determinants at n+1
    sample points and exact Lagrange interpolation, which avoids the
    coefficient growth of iterative schemes; matrices with adjoined square
    roots fall back to Faddeev-LeVerrier.
    """
    n = len(M)
    ints_scaled = _char_poly_rational(M)
    if ints_scaled is not None:
        return ints_scaled
    coeffs = [ONE]
    Mk = mat_copy(M)
    for k in range(1, n + 1):
        ck = s_div(s_neg(trace(Mk)), Fraction(k))
        coeffs.append(ck)
        if k < n:
            Mk = mat_mul(M, mat_add(Mk, mat_scale(identity(n), ck)))
    return coeffs


def _char_poly_rational(M: Mat) -> list | None:
    n = len(M)
    q = 1
    plain = []
    for row in M:
        scaled_row = []
        for x in row:
            if isinstance(x, Ext):
                if not x.is_rational():
                    return None
                x = x.rational_part()
            if not isinstance(x, Fraction):
                return None
            scaled_row.append(x)
            q = q * x.denominator // math.gcd(q, x.denominator)
        plain.append(scaled_row)
    P = [[int(x * q) for x in row] for row in plain]
    # det(xI - M) = det(q x I - P) / q^n; sample at x = 0..n and interpolate
    xs = list(range(n + 1))
    ys = []
    for t in xs:
        Mt = [
            [q * t - P[i][j] if i == j else -P[i][j] for j in range(n)]
            for i in range(n)
        ]
        ys.append(Fraction(_bareiss_det(Mt), q**n))
    return _lagrange_coeffs(xs, ys)


def _lagrange_coeffs(xs: list[int], ys: list[Fraction]) -> list:
    """Coefficients (highest degree first) of the Newton-form interpolant."""
    n = len(xs)
    divided = list(ys)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - level])
    # Horner expansion, coefficients lowest degree first
    poly = [divided[n - 1]]
    for i in range(n - 2, -1, -1):
        shifted = [Fraction(0)] + poly  # poly * x
        for t in range(len(poly)):
            shifted[t] -= xs[i] * poly[t]
        shifted[0] += divided[i]
        poly = shifted
    return list(reversed(poly))


def poly_eval(coeffs: list, x):
    acc = ZERO
    for c in coeffs:
        acc = s_add(s_mul(acc, x), c)
    return acc


_DIVISOR_BUDGET = 3_000_000


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    steps = 0
    while d * d <= n:
        steps += 1
        if steps > _DIVISOR_BUDGET:
            raise ArithmeticError(
                f"constant term {n} is too large to factor at desk scale"
            )
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(coeffs: list) -> tuple[dict[Fraction, int], int]:
    """All rational roots (with multiplicity) of a monic rational polynomial.

    Returns (roots, residual_degree); residual_degree > 0 means the
    polynomial does not split over the rationals.  Candidates come from the
    rational root theorem on the cleared-denominator polynomial: p divides
    the constant term, q divides the leading coefficient.
    """
    work = [Fraction(c) if not isinstance(c, Fraction) else c for c in coeffs]
    roots: dict[Fraction, int] = {}
    while len(work) > 1:
        # strip trailing zero coefficients: root 0
        if work[-1] == 0:
            roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
            work = work[:-1]
            continue
        lcm = 1
        for c in work:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in work]  # leading coefficient is lcm
        deg = len(work) - 1
        found = None
        candidates = set()
        for p in _divisors(ints[-1]):
            for q in _divisors(ints[0]):
                if math.gcd(p, q) == 1:
                    candidates.add(Fraction(p, q))
        for cand in sorted(candidates):
            if poly_eval(work, cand) == 0:
                found = cand
                break
            if poly_eval(work, -cand) == 0:
                found = -cand
                break
        if found is None:
            return roots, deg
        # deflate by (x - found)
        new = []
        acc = Fraction(0)
        for c in work[:-1]:
            acc = acc * found + c
            new.append(acc)
        work = new
        roots[found] = roots.get(found, 0) + 1
    return roots, 0


def eig_sym_exact(M: Mat) -> list[tuple[Fraction, int, list[Vec]]]:
    """Exact eigendecomposition of a symmetric matrix with rational spectrum.

    Raises IrrationalSpectrum when the characteristic polynomial has a
    non-rational root (the tower stores roots of rationals only, and a
    symmetric matrix that splits over the tower with non-rational
    eigenvalues is outside the supported normal-form pipeline).
    """
    n = len(M)
    coeffs = char_poly(M)
    for c in coeffs:
        if isinstance(c, Ext) and not c.is_rational():
            raise IrrationalSpectrum(
                "characteristic polynomial has non-rational tower coefficients"
            )
    plain = [c.rational_part() if isinstance(c, Ext) else c for c in coeffs]
    roots, residual = rational_roots(plain)
    if residual > 0:
        raise IrrationalSpectrum(
            f"characteristic polynomial does not split over the rationals "
            f"(residual degree {residual})"
        )
    out = []
    for ev in sorted(roots):
        mult = roots[ev]
        shifted = mat_sub(M, mat_scale(identity(n), ev))
        basis = nullspace(shifted)
        if len(basis) != mult:
            raise IrrationalSpectrum(
                f"eigenvalue {ev}: geometric multiplicity {len(basis)} != "
                f"algebraic {mult}; matrix not symmetric over the scalars"
            )
        out.append((ev, mult, basis))
    return out


def eigh_float(M: Mat, sweeps: int = 60) -> tuple[list[float], Mat]:
    """Cyclic Jacobi eigensolver for symmetric float matrices.

    Returns (eigenvalues, V) with V[:, k] the eigenvector of eigenvalue k;
    eigenvalues ascending.
    """
    n = len(M)
    A = [[s_to_float(x) for x in row] for row in M]
    V = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    for _ in range(sweeps):
        off = math.sqrt(sum(A[i][j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off < 1e-14:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(A[p][q]) < 1e-16:
                    continue
                theta = 0.5 * math.atan2(2 * A[p][q], A[q][q] - A[p][p])
                c, s = math.cos(theta), math.sin(theta)
                for k in range(n):
                    akp, akq = A[k][p], A[k][q]
                    A[k][p] = c * akp - s * akq
                    A[k][q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = A[p][k], A[q][k]
                    A[p][k] = c * apk - s * aqk
                    A[q][k] = s * apk + c * aqk
                for k in range(n):
                    vkp, vkq = V[k][p], V[k][q]
                    V[k][p] = c * vkp - s * vkq
                    V[k][q] = s * vkp + c * vkq
    pairs = sorted(range(n), key=lambda i: A[i][i])
    evals = [A[i][i] for i in pairs]
    vecs = [[V[r][i] for i in pairs] for r in range(n)]
    return evals, vecs


def eigh_g_float(M: Mat, G: Mat) -> tuple[list[float], Mat]:
    """Float eigendecomposition of a G-symmetric operator (G M = (G M)^T
    with G symmetric positive definite): conjugating by G^(1/2) gives an
    ordinary symmetric problem.  Returns (eigenvalues ascending, V) with
    V[:, k] the eigenvector of eigenvalue k (G-orthonormal columns)."""
    import math as _math

    n = len(M)
    gd, gv = eigh_float(G)
    if any(d <= 0 for d in gd):
        raise ValueError("metric is not positive definite")
    sq = [_math.sqrt(d) for d in gd]
    W = [
        [sum(gv[i][k] * sq[k] * gv[j][k] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    Winv = [
        [sum(gv[i][k] / sq[k] * gv[j][k] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    Mf = [[s_to_float(x) for x in row] for row in M]
    Ms = mat_mul(W, mat_mul(Mf, Winv))
    sym = [[(Ms[i][j] + Ms[j][i]) / 2 for j in range(n)] for i in range(n)]
    evals, U = eigh_float(sym)
    V = mat_mul(Winv, U)
    return evals, V


def inertia_symmetric(M: Mat) -> tuple[int, int, int]:
    """Signature (n_plus, n_minus, n_zero) of a symmetric matrix.

    Exact mode: congruence diagonalization (Sylvester's law); float mode:
    Jacobi eigenvalue signs under the global tolerance.
    """
    n = len(M)
    if n == 0:
        return (0, 0, 0)
    if not all(is_exact(x) for row in M for x in row):
        evals, _ = eigh_float(M)
        pos = sum(1 for e in evals if s_sign(e) > 0)
        neg = sum(1 for e in evals if s_sign(e) < 0)
        return pos, neg, n - pos - neg
    A = mat_copy(M)
    pos = neg = zero = 0
    idx = list(range(n))
    while idx:
        # find a nonzero diagonal entry, else create one from an off-diagonal
        k = next((i for i in idx if not s_is_zero(A[i][i])), None)
        if k is None:
            pair = next(
                ((i, j) for i in idx for j in idx if i < j and not s_is_zero(A[i][j])),
                None,
            )
            if pair is None:
                zero += len(idx)
                break
            i, j = pair
            # row/col addition makes the (i,i) entry 2*A[i][j] != 0
            for t in range(n):
                A[i][t] = s_add(A[i][t], A[j][t])
            for t in range(n):
                A[t][i] = s_add(A[t][i], A[t][j])
            k = i
        d = A[k][k]
        if s_sign(d) > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(k)
        for i in idx:
            if s_is_zero(A[i][k]):
                continue
            f = s_div(A[i][k], d)
            for t in range(n):
                A[i][t] = s_sub(A[i][t], s_mul(f, A[k][t]))
            for t in range(n):
                A[t][i] = s_sub(A[t][i], s_mul(f, A[t][k]))
    return pos, neg, zero


def is_positive_definite(G: Mat) -> bool:
    pos, neg, zero = inertia_symmetric(G)
    return neg == 0 and zero == 0


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Span of the given basis vectors inside an ambient coordinate space."""

    ambient_dim: int
    basis: tuple

    @staticmethod
    def from_vectors(ambient_dim: int, vectors: list[Vec]) -> "Subspace":
        """Independent spanning subset (deterministic, row-reduced)."""
        if not vectors:
            return Subspace(ambient_dim, ())
        R, pivots = rref([list(v) for v in vectors])
        kept = [tuple(R[i]) for i in range(len(pivots))]
        return Subspace(ambient_dim, tuple(kept))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vec) -> bool:
        if vec_is_zero(v):
            return True
        rows = [list(b) for b in self.basis]
        return rank(rows + [list(v)]) == len(self.basis)

    def equals(self, other: "Subspace") -> bool:
        if self.dim != other.dim or self.ambient_dim != other.ambient_dim:
            return False
        return all(self.contains(list(v)) for v in other.basis)

    def matrix_columns(self) -> Mat:
        """Ambient x dim matrix whose columns are the basis vectors."""
        return [[self.basis[j][i] for j in range(self.dim)] for i in range(self.ambient_dim)]


def random_unimodular(n: int, rng, steps: int | None = None) -> Mat:
    """Random integer matrix with determinant +-1 (product of elementary ops)."""
    A = identity(n)
    steps = steps if steps is not None else 3 * n
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = Fraction(rng.choice((-2, -1, 1, 2)))
        for t in range(n):
            A[i][t] = s_add(A[i][t], s_mul(c, A[j][t]))
    for _ in range(n):
        i, j = rng.randrange(n), rng.randrange(n)
        A[i], A[j] = A[j], A[i]
        if rng.random() < 0.5:
            A[i] = [s_neg(x) for x in A[i]]
    return A
