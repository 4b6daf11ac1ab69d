"""Dense matrices over a division-algebra scalar, with both products.

Entries are written a^i_j: i is the row index (upper), j the column
index (lower), 0-based. Two products are defined:

* row-column, ``ProductKind.RC``:  (a b)^i_j = sum_k a^i_k * b^k_j
* column-row, ``ProductKind.CR``:  (a b)^i_j = sum_k a^k_j * b^i_k

In every summand the factor from ``a`` multiplies from the left; over a
non-commutative scalar the two products genuinely differ and a matrix
may be singular for one product and invertible for the other.

The CR product satisfies CR(a, b) = transpose(RC(transpose(a),
transpose(b))); the product here is computed directly from its defining
sum and the transpose identity is kept as an independent test oracle.
Inverse and rank for CR, however, are deliberately routed through that
duality so that a single elimination kernel is the only code path that
ever pivots.

Elimination applies scalars to rows on the left (row <- p^-1 * row),
which is the side compatible with the RC product. Solving for a vector
that multiplies the matrix from the left needs the mirrored kernel with
scalars applied on the right; both live in ``_eliminate``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .scalars import DEFAULT_TOL, Scalar


class ProductKind(Enum):
    RC = "rc"
    CR = "cr"


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


class ShapeError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    """Raised when elimination stalls; carries the rank that was reached."""

    def __init__(self, rank, message=None):
        self.rank = rank
        super().__init__(message or f"matrix is singular (rank {rank})")


class NoSolutionError(ArithmeticError):
    pass


class Matrix:
    """Immutable rectangular array of scalars sharing one mode."""

    __slots__ = ("_rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise ShapeError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("all rows must have the same length")
        first = rows[0][0]
        if not isinstance(first, Scalar):
            raise TypeError("matrix entries must be Scalar instances")
        mode = first.is_exact
        for r in rows:
            for e in r:
                if type(e) is not type(first) or e.is_exact is not mode:
                    raise TypeError("all entries must share one scalar type and mode")
        self._rows = rows

    # -- construction helpers -------------------------------------------------

    @classmethod
    def identity(cls, n, like: Scalar):
        one = like.one()
        zero = like.zero()
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n, m, like: Scalar):
        zero = like.zero()
        return cls([[zero] * m for _ in range(n)])

    @classmethod
    def diagonal(cls, values):
        values = list(values)
        zero = values[0].zero()
        n = len(values)
        return cls([[values[i] if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, values):
        return cls([[v] for v in values])

    @classmethod
    def row_vector(cls, values):
        return cls([list(values)])

    # -- basic accessors ------------------------------------------------------

    @property
    def n_rows(self):
        return len(self._rows)

    @property
    def n_cols(self):
        return len(self._rows[0])

    @property
    def shape(self):
        return (self.n_rows, self.n_cols)

    @property
    def is_exact(self):
        return self._rows[0][0].is_exact

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i):
        return self._rows[i]

    def col(self, j):
        return tuple(r[j] for r in self._rows)

    def row_matrix(self, i):
        return Matrix([self._rows[i]])

    def col_matrix(self, j):
        return Matrix([[r[j]] for r in self._rows])

    def entries(self):
        for r in self._rows:
            yield from r

    def rows(self):
        return self._rows

    # -- structural operations ------------------------------------------------

    def transpose(self):
        return Matrix(tuple(zip(*self._rows)))

    def map(self, fn):
        return Matrix([[fn(e) for e in r] for r in self._rows])

    def to_float(self):
        return self.map(lambda e: e.to_float())

    def delete_row_col(self, i, j):
        rows = [
            tuple(e for cj, e in enumerate(r) if cj != j)
            for ri, r in enumerate(self._rows)
            if ri != i
        ]
        return Matrix(rows)

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeError(f"cannot add shapes {self.shape} and {other.shape}")
        return Matrix([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self._rows, other._rows)])

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract shapes {self.shape} and {other.shape}")
        return Matrix([[a - b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self._rows, other._rows)])

    def __neg__(self):
        return self.map(lambda e: -e)

    def __mul__(self, other):
        # M * s multiplies every entry on the right.
        if isinstance(other, Matrix):
            return NotImplemented
        return self.map(lambda e: e * other)

    def __rmul__(self, other):
        # s * M multiplies every entry on the left.
        if isinstance(other, Matrix):
            return NotImplemented
        if isinstance(other, Scalar):
            return self.map(lambda e: other * e)
        # real coefficients are central
        return self.map(lambda e: e * other)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r1, r2 in zip(self._rows, other._rows) for a, b in zip(r1, r2))

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = "; ".join(", ".join(repr(e) for e in r) for r in self._rows)
        return f"Matrix[{body}]"

    def max_magnitude(self):
        return max(e.magnitude() for e in self.entries())

    def is_zero(self):
        return all(e.is_zero() for e in self.entries())


def max_entry_distance(a: Matrix, b: Matrix) -> float:
    if a.shape != b.shape:
        raise ShapeError(f"cannot compare shapes {a.shape} and {b.shape}")
    return max((x - y).magnitude() for r1, r2 in zip(a.rows(), b.rows())
               for x, y in zip(r1, r2))


def matrices_close(a: Matrix, b: Matrix, tol: float = DEFAULT_TOL) -> bool:
    """Exact equality in exact mode, relative closeness in float mode."""
    if a.is_exact and b.is_exact:
        return a == b
    scale = 1.0 + max(a.max_magnitude(), b.max_magnitude())
    return max_entry_distance(a, b) <= tol * scale


def mul(a: Matrix, b: Matrix, kind: ProductKind) -> Matrix:
    """Product of a and b under the given kind.

    RC pairs rows of a with columns of b; CR pairs columns of a with rows
    of b. The a-factor stays on the left of every summand.
    """
    arows = a.rows()
    brows = b.rows()
    if kind is ProductKind.RC:
        if a.n_cols != b.n_rows:
            raise ShapeError(
                f"rc-product needs a.n_cols == b.n_rows, got {a.shape} and {b.shape}")
        out = []
        for ar in arows:
            row = []
            for j in range(b.n_cols):
                s = ar[0] * brows[0][j]
                for k in range(1, a.n_cols):
                    s = s + ar[k] * brows[k][j]
                row.append(s)
            out.append(row)
        return Matrix(out)
    if kind is ProductKind.CR:
        if a.n_rows != b.n_cols:
            raise ShapeError(
                f"cr-product needs a.n_rows == b.n_cols, got {a.shape} and {b.shape}")
        out = []
        for i in range(b.n_rows):
            br = brows[i]
            row = []
            for j in range(a.n_cols):
                s = arows[0][j] * br[0]
                for k in range(1, a.n_rows):
                    s = s + arows[k][j] * br[k]
                row.append(s)
            out.append(row)
        return Matrix(out)
    raise ValueError(f"unknown product kind {kind!r}")


def matrix_power(a: Matrix, k: int, kind: ProductKind) -> Matrix:
    """k-th power under the kind: a^0 = E_n, a^k = a^(k-1) o a."""
    if a.n_rows != a.n_cols:
        raise ShapeError(f"power needs a square matrix, got {a.shape}")
    if k < 0:
        raise ValueError("power exponent must be non-negative")
    result = Matrix.identity(a.n_rows, a[0, 0])
    for _ in range(k):
        result = mul(result, a, kind)
    return result


# -- elimination kernel -------------------------------------------------------


def _float_is_zero(entry, row, col_from, col_to, tol):
    m = entry.magnitude()
    if m == 0.0:
        return True
    row_scale = 0.0
    for c in range(col_from, col_to):
        mc = row[c].magnitude()
        if mc > row_scale:
            row_scale = mc
    return m <= tol * row_scale


def _eliminate(rows, n_main, scalar_side: Side, tol: float, full: bool):
    """Row echelon reduction in place; returns (rank, pivot_columns).

    scalar_side LEFT scales rows as p^-1 * row (compatible with unknowns
    standing right of the coefficients); RIGHT scales as row * p^-1
    (unknowns standing left). Exact mode pivots on the first nonzero
    entry, float mode on the entry of largest magnitude, treating
    entries below tol * (row max magnitude) as zero.
    """
    n_rows = len(rows)
    if n_rows == 0:
        return 0, []
    exact = rows[0][0].is_exact
    left = scalar_side is Side.LEFT
    rank = 0
    pivot_cols = []
    for col in range(n_main):
        piv = -1
        if exact:
            for r in range(rank, n_rows):
                if not rows[r][col].is_zero():
                    piv = r
                    break
        else:
            best_mag = 0.0
            for r in range(rank, n_rows):
                m = rows[r][col].magnitude()
                if m > best_mag:
                    best_mag = m
                    piv = r
            if piv >= 0 and _float_is_zero(rows[piv][col], rows[piv], col, n_main, tol):
                piv = -1
        if piv < 0:
            continue
        if piv != rank:
            rows[piv], rows[rank] = rows[rank], rows[piv]
        pinv = rows[rank][col].inv()
        prow = rows[rank]
        if left:
            rows[rank] = [pinv * e for e in prow]
        else:
            rows[rank] = [e * pinv for e in prow]
        prow = rows[rank]
        lo = 0 if full else rank + 1
        for r in range(lo, n_rows):
            if r == rank:
                continue
            f = rows[r][col]
            if f.is_zero():
                continue
            if left:
                rows[r] = [e - f * pe for e, pe in zip(rows[r], prow)]
            else:
                rows[r] = [e - pe * f for e, pe in zip(rows[r], prow)]
        pivot_cols.append(col)
        rank += 1
        if rank == n_rows:
            break
    return rank, pivot_cols


def rank(a: Matrix, kind: ProductKind, tol: float = DEFAULT_TOL) -> int:
    """Number of pivots of the elimination compatible with the kind."""
    if kind is ProductKind.CR:
        return rank(a.transpose(), ProductKind.RC, tol)
    rows = [list(r) for r in a.rows()]
    r, _ = _eliminate(rows, a.n_cols, Side.LEFT, tol, full=False)
    return r


def inverse(a: Matrix, kind: ProductKind, tol: float = DEFAULT_TOL) -> Matrix:
    """Two-sided inverse under the kind; raises SingularMatrixError.

    RC runs Gauss-Jordan with left row scaling on [a | E]; CR is obtained
    from the RC inverse of the transpose, which the index swap between
    the two products makes exact.
    """
    if a.n_rows != a.n_cols:
        raise ShapeError(f"inverse needs a square matrix, got {a.shape}")
    if kind is ProductKind.CR:
        return inverse(a.transpose(), ProductKind.RC, tol).transpose()
    n = a.n_rows
    ident = Matrix.identity(n, a[0, 0])
    rows = [list(ra) + list(re) for ra, re in zip(a.rows(), ident.rows())]
    r, _ = _eliminate(rows, n, Side.LEFT, tol, full=True)
    if r < n:
        raise SingularMatrixError(r)
    return Matrix([row[n:] for row in rows])


@dataclass(frozen=True)
class SolveResult:
    """Particular solution plus a basis of the homogeneous solution set.

    For vector_on RIGHT the homogeneous set is closed under right scalar
    multiples, for vector_on LEFT under left scalar multiples.
    """

    particular: Matrix
    homogeneous_basis: tuple
    rank: int


def _core_solve(m: Matrix, y: Matrix, scalar_side: Side, tol: float):
    """Solve sum_k x_k m^r_k = y^r (RIGHT side) or m o x = y (LEFT side).

    Unknown entries are indexed by the columns of m; each column of y is
    an independent right-hand side sharing the kernel.
    """
    if m.n_rows != y.n_rows:
        raise ShapeError(f"system {m.shape} incompatible with rhs {y.shape}")
    n_main = m.n_cols
    exact = m.is_exact
    scale = 1.0 + max(m.max_magnitude(), y.max_magnitude())
    rows = [list(rm) + list(ry) for rm, ry in zip(m.rows(), y.rows())]
    rk, pivot_cols = _eliminate(rows, n_main, scalar_side, tol, full=True)
    for r in range(rk, len(rows)):
        for c in range(n_main, n_main + y.n_cols):
            e = rows[r][c]
            bad = (not e.is_zero()) if exact else e.magnitude() > tol * scale
            if bad:
                raise NoSolutionError("inconsistent system")
    zero = m[0, 0].zero()
    one = m[0, 0].one()
    part = [[zero] * y.n_cols for _ in range(n_main)]
    for r, pc in enumerate(pivot_cols):
        for c in range(y.n_cols):
            part[pc][c] = rows[r][n_main + c]
    basis = []
    pivot_set = set(pivot_cols)
    for free in range(n_main):
        if free in pivot_set:
            continue
        vec = [zero] * n_main
        vec[free] = one
        for r, pc in enumerate(pivot_cols):
            vec[pc] = -rows[r][free]
        basis.append(Matrix.column(vec))
    return Matrix(part), tuple(basis), rk


def solve(a: Matrix, y: Matrix, vector_on: Side, kind: ProductKind,
          tol: float = DEFAULT_TOL) -> SolveResult:
    """Solve v o a = y (vector_on LEFT) or a o v = y (vector_on RIGHT).

    The four (orientation, kind) combinations reduce to the two sides of
    the elimination kernel; CR goes through the transpose index swap.
    Raises NoSolutionError when the system is inconsistent.
    """
    if kind is ProductKind.RC:
        if vector_on is Side.RIGHT:
            # a o v = y: v is n_cols x q, y is n_rows x q
            part, basis, rk = _core_solve(a, y, Side.LEFT, tol)
            return SolveResult(part, basis, rk)
        # v o a = y: v is q x n_rows, y is q x n_cols
        part, basis, rk = _core_solve(a.transpose(), y.transpose(), Side.RIGHT, tol)
        return SolveResult(part.transpose(),
                           tuple(b.transpose() for b in basis), rk)
    if kind is ProductKind.CR:
        if vector_on is Side.RIGHT:
            # a o v = y under CR: v is q x n_rows, y is q x n_cols
            part, basis, rk = _core_solve(a.transpose(), y.transpose(), Side.LEFT, tol)
            return SolveResult(part.transpose(),
                               tuple(b.transpose() for b in basis), rk)
        # v o a = y under CR: v is n_cols x q, y is n_rows x q
        part, basis, rk = _core_solve(a, y, Side.RIGHT, tol)
        return SolveResult(part, basis, rk)
    raise ValueError(f"unknown product kind {kind!r}")
