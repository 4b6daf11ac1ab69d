"""Quasideterminants: the non-commutative substitute for the determinant.

For an n x n matrix a over a division algebra, the (i, j) quasideterminant
produced here (indices 0-based) is the formal expression

    q(a, i, j) = a^j_i - row * minor^-1 * col

where row is row j of a with column i removed, col is column i with row j
removed, and minor deletes row j and column i. It is defined whenever the
minor is invertible, and whenever a itself is invertible it satisfies

    q(a, i, j) = ((a^-1)^i_j)^-1,

so the quasideterminant at (i, j) is the inverse of the (i, j) entry of
the inverse matrix. Over a commutative scalar it collapses to the signed
ratio det(a) / det(minor) that the cofactor formula for the inverse gives.

Minor inversion reuses the Gaussian kernel of the matrix layer, so the
identity above is a genuine cross-check rather than the computation path.
The column-row variant is evaluated through the transpose index swap.
"""

from __future__ import annotations

from .matrices import (
    Matrix,
    ProductKind,
    ShapeError,
    SingularMatrixError,
    inverse,
    mul,
)
from .scalars import DEFAULT_TOL


class UndefinedQuasideterminantError(ArithmeticError):
    pass


class _Undefined:
    __slots__ = ()

    def __repr__(self):
        return "UNDEFINED"


#: in-band marker used by quasidet_matrix for entries that do not exist
UNDEFINED = _Undefined()


def quasidet(a: Matrix, i: int, j: int, kind: ProductKind = ProductKind.RC,
             tol: float = DEFAULT_TOL):
    """Quasideterminant of a at selector (i, j), 0-based.

    The selector names the entry of the inverse it corresponds to: it is
    built from entry (j, i) of a, deleting row j and column i. Raises
    UndefinedQuasideterminantError when the deleted minor is singular for
    the kind.
    """
    n = a.n_rows
    if a.n_cols != n:
        raise ShapeError(f"quasideterminant needs a square matrix, got {a.shape}")
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"selector ({i}, {j}) out of range for size {n}")
    if kind is ProductKind.CR:
        return quasidet(a.transpose(), j, i, ProductKind.RC, tol)
    if n == 1:
        return a[0, 0]
    minor = a.delete_row_col(j, i)
    try:
        minor_inv = inverse(minor, ProductKind.RC, tol)
    except SingularMatrixError as exc:
        raise UndefinedQuasideterminantError(
            f"minor at selector ({i}, {j}) is rc-singular (rank {exc.rank})") from exc
    row_part = Matrix.row_vector([a[j, c] for c in range(n) if c != i])
    col_part = Matrix.column([a[r, i] for r in range(n) if r != j])
    coupling = mul(mul(row_part, minor_inv, ProductKind.RC), col_part, ProductKind.RC)
    return a[j, i] - coupling[0, 0]


def quasidet_matrix(a: Matrix, kind: ProductKind = ProductKind.RC,
                    tol: float = DEFAULT_TOL):
    """All n^2 quasideterminants as nested tuples, UNDEFINED where absent.

    Entry (i, j) is quasidet(a, i, j, kind); undefined entries are kept
    in-band because single selectors may fail while the rest exist.
    """
    n = a.n_rows
    if a.n_cols != n:
        raise ShapeError(f"quasideterminant needs a square matrix, got {a.shape}")
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            try:
                row.append(quasidet(a, i, j, kind, tol))
            except UndefinedQuasideterminantError:
                row.append(UNDEFINED)
        out.append(tuple(row))
    return tuple(out)
