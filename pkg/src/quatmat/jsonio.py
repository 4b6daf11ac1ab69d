"""JSON wire formats.

Scalar encodings:
  quaternion -> [w, x, y, z]
  real       -> bare component
with components serialized as numbers in float mode and as reduced
fraction strings ("p/q", or "p" for integers) in exact mode. Exact mode
refuses float literals so round trips stay lossless.

Matrix: {"rows": n, "cols": m, "entries": [[scalar, ...], ...]}.
Eigen pair: {"value": scalar, "vector": [scalar, ...], "side": "left"|
"right", "kind": "rc"|"cr"}; the vector is a flat list, its row or
column shape is implied by (side, kind).
"""

from __future__ import annotations

from fractions import Fraction

from .eigen import EigenPair, SpectrumReport, vector_shape
from .matrices import Matrix, ProductKind, Side
from .ode import ClosedFormSolution, SolutionForm
from .scalars import Quaternion, Real, Scalar


class InputFormatError(ValueError):
    pass


RATIONAL = "rational"
FLOAT = "float"


def _component_to_json(v):
    if isinstance(v, float):
        return v
    return str(Fraction(v))


def _component_from_json(v, mode):
    if mode == RATIONAL:
        if isinstance(v, bool) or isinstance(v, float):
            raise InputFormatError(
                f"rational mode needs integers or 'p/q' strings, got {v!r}")
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, str):
            try:
                return Fraction(v)
            except (ValueError, ZeroDivisionError) as exc:
                raise InputFormatError(f"bad fraction literal {v!r}") from exc
        raise InputFormatError(f"bad rational component {v!r}")
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InputFormatError(f"float mode needs numbers, got {v!r}")
    return float(v)


def scalar_to_json(s: Scalar):
    if isinstance(s, Quaternion):
        return [_component_to_json(c) for c in s.coeffs()]
    if isinstance(s, Real):
        return _component_to_json(s.value)
    raise InputFormatError(f"no JSON encoding for scalar type {type(s).__name__}")


def scalar_from_json(v, mode: str) -> Scalar:
    if isinstance(v, list):
        if len(v) != 4:
            raise InputFormatError(f"quaternion needs [w, x, y, z], got {v!r}")
        return Quaternion(*(_component_from_json(c, mode) for c in v))
    return Real(_component_from_json(v, mode))


def _lift(values):
    """Promote a mixed real/quaternion entry list to one scalar type."""
    if any(isinstance(s, Quaternion) for s in values):
        out = []
        for s in values:
            if isinstance(s, Quaternion):
                out.append(s)
            else:
                zero = s.value * 0
                out.append(Quaternion(s.value, zero, zero, zero))
        return out
    return values


def matrix_to_json(m: Matrix):
    return {
        "rows": m.n_rows,
        "cols": m.n_cols,
        "entries": [[scalar_to_json(e) for e in r] for r in m.rows()],
    }


def matrix_from_json(obj, mode: str) -> Matrix:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise InputFormatError("matrix needs an object with an 'entries' array")
    entries = obj["entries"]
    if not isinstance(entries, list) or not entries:
        raise InputFormatError("matrix entries must be a non-empty array of rows")
    flat = []
    widths = set()
    for row in entries:
        if not isinstance(row, list) or not row:
            raise InputFormatError("matrix rows must be non-empty arrays")
        widths.add(len(row))
        flat.extend(scalar_from_json(v, mode) for v in row)
    if len(widths) != 1:
        raise InputFormatError("matrix rows must all have the same length")
    flat = _lift(flat)
    n, m = len(entries), widths.pop()
    if "rows" in obj and obj["rows"] != n:
        raise InputFormatError(f"declared rows {obj['rows']} != actual {n}")
    if "cols" in obj and obj["cols"] != m:
        raise InputFormatError(f"declared cols {obj['cols']} != actual {m}")
    return Matrix([flat[i * m:(i + 1) * m] for i in range(n)])


def vector_from_json(values, mode: str, shape) -> Matrix:
    if not isinstance(values, list) or not values:
        raise InputFormatError("vector must be a non-empty array of scalars")
    scalars = _lift([scalar_from_json(v, mode) for v in values])
    rows, cols = shape
    if rows * cols != len(scalars):
        raise InputFormatError(f"vector of length {len(scalars)} cannot fill {shape}")
    if cols == 1:
        return Matrix.column(scalars)
    return Matrix.row_vector(scalars)


def vector_to_json(v: Matrix):
    return [scalar_to_json(e) for e in v.entries()]


def side_from_json(s) -> Side:
    try:
        return Side(s)
    except ValueError as exc:
        raise InputFormatError(f"side must be 'left' or 'right', got {s!r}") from exc


def kind_from_json(s) -> ProductKind:
    try:
        return ProductKind(s)
    except ValueError as exc:
        raise InputFormatError(f"kind must be 'rc' or 'cr', got {s!r}") from exc


def eigen_pair_from_json(obj, mode: str, n: int) -> EigenPair:
    try:
        side = side_from_json(obj["side"])
        kind = kind_from_json(obj["kind"])
        value_raw = obj["value"]
        vector_raw = obj["vector"]
    except KeyError as exc:
        raise InputFormatError(f"eigen pair is missing field {exc}") from exc
    if not isinstance(vector_raw, list) or not vector_raw:
        raise InputFormatError("eigen pair vector must be a non-empty array")
    rows, cols = vector_shape(side, kind, n)
    if rows * cols != len(vector_raw):
        raise InputFormatError(
            f"vector of length {len(vector_raw)} cannot fill {(rows, cols)}")
    scalars = _lift([scalar_from_json(value_raw, mode)]
                    + [scalar_from_json(v, mode) for v in vector_raw])
    value, entries = scalars[0], scalars[1:]
    vector = Matrix.column(entries) if cols == 1 else Matrix.row_vector(entries)
    return EigenPair(value, vector, side, kind)


def eigen_pair_to_json(pair: EigenPair):
    return {
        "value": scalar_to_json(pair.value),
        "vector": vector_to_json(pair.vector),
        "side": pair.side.value,
        "kind": pair.kind.value,
    }


def spectrum_report_to_json(report: SpectrumReport):
    return {
        "matrix": matrix_to_json(report.matrix),
        "entries": [
            {
                "pair": eigen_pair_to_json(e.pair),
                "singular_confirmed": e.singular_confirmed,
                "matrix_singular": e.matrix_singular,
                "conjugacy_class": {
                    "real_part": _component_to_json(e.class_real),
                    "imag_norm_sq": _component_to_json(e.class_imag_norm_sq),
                },
            }
            for e in report.entries
        ],
    }


def solution_to_json(sol: ClosedFormSolution):
    out = {"form": sol.form.value, "value": scalar_to_json(sol.value)}
    if sol.coefficients is not None:
        out["coefficients"] = vector_to_json(sol.coefficients)
    if sol.c1 is not None:
        out["c1"] = scalar_to_json(sol.c1)
        out["c2"] = scalar_to_json(sol.c2)
    return out


def form_from_json(s) -> SolutionForm:
    try:
        return SolutionForm(s)
    except ValueError as exc:
        raise InputFormatError(
            f"form must be 'right_exp' or 'left_exp', got {s!r}") from exc
