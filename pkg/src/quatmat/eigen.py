"""Left and right eigenvalues of matrices over a division algebra.

Four eigen notions exist because there are two products and the scalar
may sit on either side of a vector. An EigenPair fixes (side, kind) and
its defining equality; the vector shape is forced by that choice:

    side    kind  vector   defining equality
    ------  ----  -------  ------------------------
    left    RC    row      v o a = b * v
    right   RC    column   a o v = v * b
    left    CR    column   v o a = b * v
    right   CR    row      a o v = v * b

A scalar b is an eigenvalue *of the matrix* for a kind when a - b*E is
singular for that kind; every left/right eigenvalue above is one, but
the converse is an open problem, so no general eigenvalue search is
offered: test instances are built by construction from (u, d).

The solution set of a defining equality is not a subspace over the whole
algebra; it is a vector space over the centralizer Z(A, b) only. The
eigenspace routine therefore treats the equality as a real-linear map,
finds its kernel with the same Gaussian kernel used everywhere else
(run over the commutative real reduction), and compresses the real
kernel to a Z(A, b)-basis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrices import (
    Matrix,
    ProductKind,
    ShapeError,
    Side,
    SingularMatrixError,
    inverse,
    matrices_close,
    max_entry_distance,
    mul,
    rank,
    solve,
)
from .scalars import DEFAULT_TOL, Real, Scalar, centralizer_basis


def vector_shape(side: Side, kind: ProductKind, n: int):
    """(rows, cols) of the eigenvector for a given (side, kind)."""
    if kind is ProductKind.RC:
        return (1, n) if side is Side.LEFT else (n, 1)
    return (n, 1) if side is Side.LEFT else (1, n)


@dataclass(frozen=True)
class EigenPair:
    """Candidate eigenvalue with its witnessing vector and flavor."""

    value: Scalar
    vector: Matrix
    side: Side
    kind: ProductKind


class NotDiagonalizableError(ArithmeticError):
    """The conjugated matrix is not diagonal; carries the residual."""

    def __init__(self, residual: Matrix):
        self.residual = residual
        super().__init__("conjugation by this matrix does not diagonalize")


def _check_pair_shape(a: Matrix, pair: EigenPair):
    n = a.n_rows
    if a.n_cols != n:
        raise ShapeError(f"eigen check needs a square matrix, got {a.shape}")
    expect = vector_shape(pair.side, pair.kind, n)
    if pair.vector.shape != expect:
        raise ShapeError(
            f"{pair.side.value} {pair.kind.value} eigenvector must have shape "
            f"{expect}, got {pair.vector.shape}")
    if pair.vector.is_zero():
        raise ValueError("eigenvector must be nonzero")


def _pair_sides(a: Matrix, pair: EigenPair):
    if pair.side is Side.LEFT:
        return mul(pair.vector, a, pair.kind), pair.value * pair.vector
    return mul(a, pair.vector, pair.kind), pair.vector * pair.value


def eigen_check(a: Matrix, pair: EigenPair, tol: float = DEFAULT_TOL) -> bool:
    """True iff the defining equality of the pair holds against a."""
    _check_pair_shape(a, pair)
    lhs, rhs = _pair_sides(a, pair)
    return matrices_close(lhs, rhs, tol)


def eigen_residual(a: Matrix, pair: EigenPair) -> float:
    """Magnitude of the worst entry of lhs - rhs of the defining equality."""
    _check_pair_shape(a, pair)
    lhs, rhs = _pair_sides(a, pair)
    return max_entry_distance(lhs, rhs)


def is_matrix_eigenvalue(f: Matrix, b: Scalar, kind: ProductKind,
                         tol: float = DEFAULT_TOL) -> bool:
    """True iff f - b*E is kind-singular (b*E = E*b, E having 0/1 entries)."""
    n = f.n_rows
    if f.n_cols != n:
        raise ShapeError(f"matrix eigenvalue test needs a square matrix, got {f.shape}")
    shifted = f - Matrix.identity(n, f[0, 0]) * b
    return rank(shifted, kind, tol) < n


# -- eigenspaces via real linearization ----------------------------------------


def _flatten(v: Matrix):
    out = []
    for e in v.entries():
        out.extend(e.coeffs())
    return out


def _unflatten(proto: Scalar, n_rows: int, n_cols: int, raw):
    d = proto.dim
    entries = [proto.with_coeffs(tuple(raw[k * d:(k + 1) * d]))
               for k in range(n_rows * n_cols)]
    rows = [entries[r * n_cols:(r + 1) * n_cols] for r in range(n_rows)]
    return Matrix(rows)


def _reduce_against(echelon, cand, exact, tol, scale):
    cand = list(cand)
    for pivot, row in echelon:
        fac = cand[pivot]
        if fac == 0:
            continue
        cand = [c - fac * r for c, r in zip(cand, row)]
    for idx, c in enumerate(cand):
        nonzero = (c != 0) if exact else abs(c) > tol * scale
        if nonzero:
            row = [x / c for x in cand]
            return idx, row
    return None, None


def _z_reduce(vectors, z_basis, act, exact, tol):
    basis = []
    echelon = []
    for v in vectors:
        raw = _flatten(v)
        scale = 1.0 + max((abs(float(x)) for x in raw), default=0.0)
        pivot, _ = _reduce_against(echelon, raw, exact, tol, scale)
        if pivot is None:
            continue
        basis.append(v)
        for z in z_basis:
            orbit_raw = _flatten(act(z, v))
            p, row = _reduce_against(echelon, orbit_raw, exact, tol, scale)
            if p is not None:
                echelon.append((p, row))
    return basis


def eigenspace(f: Matrix, b: Scalar, side: Side, kind: ProductKind,
               tol: float = DEFAULT_TOL):
    """Basis of the solution set of the (side, kind) defining equality.

    Returned vectors form a basis over Z(A, b) acting on the scalar's
    side of the equality (left for left pairs, right for right pairs);
    an empty list means b is not a (side, kind) eigenvalue of f.
    """
    n = f.n_rows
    if f.n_cols != n:
        raise ShapeError(f"eigenspace needs a square matrix, got {f.shape}")
    proto = f[0, 0]
    d = proto.dim
    vr, vc = vector_shape(side, kind, n)

    if side is Side.LEFT:
        def residual(v):
            return mul(v, f, kind) - b * v
    else:
        def residual(v):
            return mul(f, v, kind) - v * b

    dim_real = n * d
    zero_raw = [0] * dim_real
    columns = []
    for k in range(n):
        for r in range(d):
            raw = list(zero_raw)
            raw[k * d + r] = 1
            basis_vec = _unflatten(proto, vr, vc, raw)
            columns.append(_flatten(residual(basis_vec)))
    exact = proto.is_exact
    if exact:
        real_rows = [[Real(columns[q][p]) for q in range(dim_real)]
                     for p in range(dim_real)]
        zero_col = Matrix.column([Real(0)] * dim_real)
    else:
        real_rows = [[Real(float(columns[q][p])) for q in range(dim_real)]
                     for p in range(dim_real)]
        zero_col = Matrix.column([Real(0.0)] * dim_real)
    system = Matrix(real_rows)
    result = solve(system, zero_col, Side.RIGHT, ProductKind.RC, tol)
    kernel = [_unflatten(proto, vr, vc, [e.value for e in vec.entries()])
              for vec in result.homogeneous_basis]
    zb = centralizer_basis(b, tol)
    act = (lambda z, v: z * v) if side is Side.LEFT else (lambda z, v: v * z)
    return _z_reduce(kernel, zb, act, exact, tol)


# -- pair-of-matrices eigenvalues ----------------------------------------------


def pair_eigen_check(f: Matrix, g: Matrix, b: Scalar, kind: ProductKind,
                     tol: float = DEFAULT_TOL) -> bool:
    """True iff b is an eigenvalue of the pair (f, g) for the kind.

    RC tests singularity of f - (g*b) o g^-1, CR of f - g^-1 o (b*g),
    where g*b and b*g scale the entries of g on the written side. With
    central-entried g both collapse to the plain matrix-eigenvalue test.
    Requires g kind-nonsingular.
    """
    n = f.n_rows
    if f.n_cols != n or g.shape != (n, n):
        raise ShapeError(f"pair check needs square matrices, got {f.shape} and {g.shape}")
    g_inv = inverse(g, kind, tol)  # raises SingularMatrixError per precondition
    if kind is ProductKind.RC:
        shifted = f - mul(g * b, g_inv, kind)
    else:
        shifted = f - mul(g_inv, b * g, kind)
    return rank(shifted, kind, tol) < n


# -- transformations -----------------------------------------------------------


def diagonalize_via(a: Matrix, u: Matrix, kind: ProductKind, side: Side,
                    tol: float = DEFAULT_TOL) -> Matrix:
    """Conjugate a by u and require a diagonal result.

    Left variants compute u o a o u^-1, right variants u^-1 o a o u.
    Raises SingularMatrixError for singular u and NotDiagonalizableError
    (carrying the off-diagonal residual) when the result is not diagonal.
    """
    n = a.n_rows
    if a.n_cols != n or u.shape != (n, n):
        raise ShapeError(f"diagonalize needs square matrices, got {a.shape} and {u.shape}")
    u_inv = inverse(u, kind, tol)
    if side is Side.LEFT:
        result = mul(mul(u, a, kind), u_inv, kind)
    else:
        result = mul(mul(u_inv, a, kind), u, kind)
    exact = result.is_exact
    diag_scale = 1.0 + max(result[i, i].magnitude() for i in range(n))
    zero = result[0, 0].zero()
    off = [[result[i, j] if i != j else zero for j in range(n)] for i in range(n)]
    bad = False
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            e = result[i, j]
            if exact:
                bad = bad or not e.is_zero()
            else:
                bad = bad or e.magnitude() > tol * diag_scale
    if bad:
        raise NotDiagonalizableError(Matrix(off))
    return Matrix.diagonal([result[i, i] for i in range(n)])


def conjugate_eigen(pair: EigenPair, c: Scalar) -> EigenPair:
    """Transport an eigenpair along conjugation by a nonzero scalar c.

    Left pairs become (c b c^-1, c*v), right pairs (c^-1 b c, v*c); the
    result satisfies the same defining equality against the same matrix.
    """
    if c.is_zero():
        raise ValueError("conjugating scalar must be nonzero")
    c_inv = c.inv()
    if pair.side is Side.LEFT:
        return EigenPair(c * pair.value * c_inv, c * pair.vector, pair.side, pair.kind)
    return EigenPair(c_inv * pair.value * c, pair.vector * c, pair.side, pair.kind)


def scaling_preserves(pair: EigenPair, c: Scalar, a: Matrix,
                      tol: float = DEFAULT_TOL) -> bool:
    """Does scaling the vector on the non-conjugating side keep the pair?

    Left variants scale as v*c, right variants as c*v, keeping the value.
    True exactly when c commutes with every entry of a (for vectors in
    general position).
    """
    if c.is_zero():
        raise ValueError("scaling scalar must be nonzero")
    if not eigen_check(a, pair, tol):
        raise ValueError("pair does not satisfy its defining equality against a")
    if pair.side is Side.LEFT:
        scaled = EigenPair(pair.value, pair.vector * c, pair.side, pair.kind)
    else:
        scaled = EigenPair(pair.value, c * pair.vector, pair.side, pair.kind)
    return eigen_check(a, scaled, tol)


def independent(vectors, side: Side, tol: float = DEFAULT_TOL) -> bool:
    """No nontrivial combination sum a_i*v_i (left) or v_i*a_i (right) vanishes.

    Decided by the rank of the stacked matrix under the product kind that
    realizes such combinations for the vectors' shape.
    """
    vectors = list(vectors)
    if not vectors:
        return True
    shape = vectors[0].shape
    if any(v.shape != shape for v in vectors):
        raise ShapeError("all vectors must share one shape")
    p = len(vectors)
    if shape[0] == 1:  # rows
        stacked = Matrix([v.row(0) for v in vectors])
        kind = ProductKind.RC if side is Side.LEFT else ProductKind.CR
    elif shape[1] == 1:  # columns
        stacked = Matrix([[v[i, 0] for v in vectors] for i in range(shape[0])])
        kind = ProductKind.CR if side is Side.LEFT else ProductKind.RC
    else:
        raise ShapeError(f"vectors must be rows or columns, got shape {shape}")
    return rank(stacked, kind, tol) == p


def basis_change_endo(f: Matrix, g: Matrix, kind: ProductKind, space_side: Side,
                      tol: float = DEFAULT_TOL) -> Matrix:
    """Matrix of the same endomorphism after the passive transformation g.

    Left spaces transform as g o f o g^-1, right spaces as g^-1 o f o g.
    """
    g_inv = inverse(g, kind, tol)
    if space_side is Side.LEFT:
        return mul(mul(g, f, kind), g_inv, kind)
    return mul(mul(g_inv, f, kind), g, kind)


def similarity_matrix(g: Matrix, b: Scalar, kind: ProductKind,
                      tol: float = DEFAULT_TOL) -> Matrix:
    """Matrix (g*b) o g^-1 of the scalar-action endomorphism after g.

    g*b multiplies every entry of g by b on the right; for central b the
    result is b*E for every g.
    """
    g_inv = inverse(g, kind, tol)
    return mul(g * b, g_inv, kind)


# -- spectrum reports ----------------------------------------------------------


def pair_g_for_construction(u: Matrix, side: Side, kind: ProductKind,
                            tol: float = DEFAULT_TOL) -> Matrix:
    """Basis-change matrix g whose pair (a, g) the construction makes singular.

    A (side, kind) value b from the construction is always an eigenvalue
    of the pair (a, g): the conjugated shift a - g^-1-style expression is
    kind-singular. It is generally NOT an eigenvalue of the matrix a
    itself: already for 1 x 1 matrices a = u^-1 * b * u differs from b,
    so a - b*E is invertible whenever u and b do not commute. The
    matrix-eigenvalue statement the construction does guarantee is for
    the diagonal factor d.
    """
    if (side, kind) in ((Side.LEFT, ProductKind.RC), (Side.RIGHT, ProductKind.CR)):
        return inverse(u, kind, tol)
    return u


@dataclass(frozen=True)
class SpectrumEntry:
    pair: EigenPair
    singular_confirmed: bool  # pair-of-matrices singularity, as the theorems state
    matrix_singular: bool  # plain a - b*E singularity, usually False
    class_real: object
    class_imag_norm_sq: object


@dataclass(frozen=True)
class SpectrumReport:
    matrix: Matrix
    entries: tuple


def _construction_matrix(u: Matrix, d: Matrix, kind: ProductKind, side: Side,
                         tol: float):
    u_inv = inverse(u, kind, tol)
    if side is Side.LEFT:
        return mul(mul(u_inv, d, kind), u, kind), u_inv
    return mul(mul(u, d, kind), u_inv, kind), u_inv


def construction_vectors(u: Matrix, kind: ProductKind, side: Side):
    """Eigenvectors the (u, d) construction guarantees, one per diagonal slot."""
    n = u.n_rows
    if kind is ProductKind.RC:
        if side is Side.LEFT:
            return [u.row_matrix(i) for i in range(n)]
        return [u.col_matrix(i) for i in range(n)]
    if side is Side.LEFT:
        return [u.col_matrix(i) for i in range(n)]
    return [u.row_matrix(i) for i in range(n)]


def construct_diagonalizable(u: Matrix, values, kind: ProductKind, side: Side,
                             tol: float = DEFAULT_TOL):
    """Matrix a with prescribed (side, kind) eigenpairs read off from u.

    Returns (a, pairs). Left variants satisfy u o a o u^-1 = diag(values),
    right variants u^-1 o a o u = diag(values); the witnessing vectors are
    rows or columns of u per the (side, kind) table.
    """
    values = list(values)
    n = u.n_rows
    if u.n_cols != n or len(values) != n:
        raise ShapeError("construction needs square u and n diagonal values")
    d = Matrix.diagonal(values)
    a, _ = _construction_matrix(u, d, kind, side, tol)
    vectors = construction_vectors(u, kind, side)
    pairs = [EigenPair(values[i], vectors[i], side, kind) for i in range(n)]
    return a, pairs


def spectrum_of_construction(u: Matrix, values, kind: ProductKind,
                             tol: float = DEFAULT_TOL) -> SpectrumReport:
    """Spectrum report for a = u^-1 o diag(values) o u under the kind.

    The construction yields n left pairs (from u) and n right pairs
    (from u^-1) sharing the diagonal values; every entry is re-verified
    with eigen_check and annotated with the matrix-singularity test and
    its conjugacy-class invariants.
    """
    values = list(values)
    n = u.n_rows
    if u.n_cols != n or len(values) != n:
        raise ShapeError("construction needs square u and n diagonal values")
    d = Matrix.diagonal(values)
    a, u_inv = _construction_matrix(u, d, kind, Side.LEFT, tol)
    left_vectors = construction_vectors(u, kind, Side.LEFT)
    right_vectors = construction_vectors(u_inv, kind, Side.RIGHT)
    # Both the left pairs (from u) and the right pairs (from u^-1) of this
    # construction share one pair-of-matrices witness g.
    g = pair_g_for_construction(u, Side.LEFT, kind, tol)
    entries = []
    for i in range(n):
        for side, vec in ((Side.LEFT, left_vectors[i]), (Side.RIGHT, right_vectors[i])):
            pair = EigenPair(values[i], vec, side, kind)
            if not eigen_check(a, pair, tol):
                raise ArithmeticError("constructed pair failed its defining equality")
            entries.append(SpectrumEntry(
                pair=pair,
                singular_confirmed=pair_eigen_check(a, g, values[i], kind, tol),
                matrix_singular=is_matrix_eigenvalue(a, values[i], kind, tol),
                class_real=values[i].real_coeff(),
                class_imag_norm_sq=values[i].imag_norm_sq(),
            ))
    return SpectrumReport(matrix=a, entries=tuple(entries))
