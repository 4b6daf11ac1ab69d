"""Exponentials and closed-form solutions of linear systems dx/dt = x o a.

The system is the column-row product of the unknown column x(t) with a
fixed square matrix a, componentwise dx^i/dt = sum_k x^k a^i_k. Two
closed forms are supported:

* RIGHT_EXP, x(t) = c * e^(b t) componentwise. It solves the system when
  (b, c) is a CR eigencolumn datum (c o a = c*b) and additionally either
  b commutes with every entry of a, or c = p*(c'_1, ..., c'_n) with every
  c'_i commuting with b. Without one of those conditions the formula is
  not a solution, and build_solution rejects it.
* LEFT_EXP, x(t) = e^(b t) * c. It solves the system whenever (b, c) is a
  left CR eigenpair (c o a = b*c); no centrality condition is needed.

The scalar equation dx/dt = a*x has solutions e^(a t)*c; conjugation
moves the exponent: c * e^(c^-1 a c t) = e^(a t) * c, with residuals
exposed by conj_exp_residuals. A fixed-step RK4 integrator provides the
independent numerical check for all of the above.

Everything transcendental requires float mode; exact mode raises
UnsupportedModeError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .matrices import (
    Matrix,
    ProductKind,
    ShapeError,
    inverse,
    mul,
)
from .scalars import DEFAULT_TOL, Cplx, Quaternion, Real, Scalar, in_center


class UnsupportedModeError(TypeError):
    pass


class RejectedSolutionError(ArithmeticError):
    """Candidate closed form violates a precondition; carries the reason."""

    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)


@dataclass(frozen=True)
class LinearSystem:
    """Coefficient matrix of dx/dt = x o a (column-row product)."""

    matrix: Matrix

    def __post_init__(self):
        if self.matrix.n_rows != self.matrix.n_cols:
            raise ShapeError(f"system matrix must be square, got {self.matrix.shape}")

    @property
    def size(self):
        return self.matrix.n_rows


def _require_float(*scalars):
    for s in scalars:
        if s.is_exact:
            raise UnsupportedModeError(
                "exponentials are transcendental; use float mode")


def exp_scalar(a: Scalar, t: float) -> Scalar:
    """e^(a t) in closed form (float mode only).

    For a quaternion a = w + v with imaginary part v this is
    e^(w t) * (cos(|v| t) + (v/|v|) sin(|v| t)); the commutative types
    use the ordinary real and complex exponentials.
    """
    _require_float(a)
    t = float(t)
    if isinstance(a, Quaternion):
        ew = math.exp(a.w * t)
        vm = math.sqrt(a.x * a.x + a.y * a.y + a.z * a.z)
        if vm == 0.0:
            return a.with_coeffs((ew, 0.0, 0.0, 0.0))
        theta = vm * t
        s = ew * math.sin(theta) / vm
        return a.with_coeffs((ew * math.cos(theta), s * a.x, s * a.y, s * a.z))
    if isinstance(a, Real):
        return Real(math.exp(a.value * t))
    if isinstance(a, Cplx):
        er = math.exp(a.re * t)
        return Cplx(er * math.cos(a.im * t), er * math.sin(a.im * t))
    raise TypeError(f"no exponential for scalar type {type(a).__name__}")


def exp_scalar_series(a: Scalar, t: float, terms: int = 40) -> Scalar:
    """e^(a t) by scaling-and-squaring over a Horner-evaluated series.

    Works for any float-mode scalar through the ring operations alone;
    the closed form above is the independent cross-check.
    """
    _require_float(a)
    s = a * float(t)
    one = a.one()
    halvings = 0
    mag = s.magnitude()
    while mag > 0.5:
        s = s * 0.5
        mag *= 0.5
        halvings += 1
    acc = one
    for n in range(terms, 0, -1):
        acc = one + (s * acc) * (1.0 / n)
    for _ in range(halvings):
        acc = acc * acc
    return acc


def conj_exp_residuals(a: Scalar, c: Scalar, t: float):
    """Magnitudes of the three conjugated-exponential identities.

    Returns (|c e^(c^-1 a c t) - e^(a t) c|,
             |c e^(c^-1 a c t) c^-1 - e^(a t)|,
             |e^(c^-1 a c t) - c^-1 e^(a t) c|).
    """
    _require_float(a, c)
    if c.is_zero():
        raise ValueError("conjugating scalar must be nonzero")
    c_inv = c.inv()
    conj = c_inv * a * c
    e_conj = exp_scalar(conj, t)
    e_a = exp_scalar(a, t)
    r1 = (c * e_conj - e_a * c).magnitude()
    r2 = (c * e_conj * c_inv - e_a).magnitude()
    r3 = (e_conj - c_inv * e_a * c).magnitude()
    return r1, r2, r3


def center_condition(system: LinearSystem, b: Scalar, tol: float = DEFAULT_TOL) -> bool:
    """True iff b commutes with every entry of the system matrix."""
    return all(in_center(b, e, tol) for e in system.matrix.entries())


def eigencolumn_center_condition(c: Matrix, b: Scalar, tol: float = DEFAULT_TOL) -> bool:
    """True iff c = p * (c'_1, ..., c'_n) with every c'_i in Z(A, b).

    Equivalent finite test: with i0 the first nonzero entry of c, every
    (c^i0)^-1 * c^i must commute with b (any admissible p differs from
    c^i0 by an invertible factor inside Z(A, b)).
    """
    if c.n_cols != 1:
        raise ShapeError(f"eigencolumn must be a column, got {c.shape}")
    entries = [c[i, 0] for i in range(c.n_rows)]
    exact = c.is_exact
    scale = 1.0 + c.max_magnitude()
    first = None
    for e in entries:
        nonzero = (not e.is_zero()) if exact else e.magnitude() > tol * scale
        if nonzero:
            first = e
            break
    if first is None:
        raise ValueError("eigencolumn must be nonzero")
    f_inv = first.inv()
    return all(in_center(f_inv * e, b, tol) for e in entries)


class SolutionForm(Enum):
    RIGHT_EXP = "right_exp"
    LEFT_EXP = "left_exp"
    SCALAR_CONJ = "scalar_conj"


@dataclass(frozen=True)
class ClosedFormSolution:
    """Symbolic record of an exponential solution, evaluable at any t.

    RIGHT_EXP holds x(t) = c * e^(b t) and LEFT_EXP x(t) = e^(b t) * c for
    a coefficient column c; SCALAR_CONJ holds the scalar-valued
    x(t) = c1 * e^(b t) * c2 where b is already the conjugated exponent.
    """

    form: SolutionForm
    value: Scalar
    coefficients: Matrix = None
    c1: Scalar = None
    c2: Scalar = None

    def evaluate(self, t: float):
        e = exp_scalar(self.value, t)
        if self.form is SolutionForm.RIGHT_EXP:
            return self.coefficients * e
        if self.form is SolutionForm.LEFT_EXP:
            return e * self.coefficients
        return self.c1 * e * self.c2

    def derivative(self, t: float):
        # d/dt e^(bt) = b e^(bt) = e^(bt) b: b commutes with its exponential.
        be = self.value * exp_scalar(self.value, t)
        if self.form is SolutionForm.RIGHT_EXP:
            return self.coefficients * be
        if self.form is SolutionForm.LEFT_EXP:
            return be * self.coefficients
        return self.c1 * be * self.c2


def scalar_conj_solution(a: Scalar, c1: Scalar, c2: Scalar) -> ClosedFormSolution:
    """x(t) = c1 * e^(c1^-1 a c1 t) * c2, a solution of dx/dt = a*x."""
    _require_float(a, c1, c2)
    if c1.is_zero():
        raise ValueError("c1 must be nonzero")
    conj = c1.inv() * a * c1
    return ClosedFormSolution(SolutionForm.SCALAR_CONJ, conj, None, c1, c2)


def residual_grid(start: float = 0.0, stop: float = 2.0, points: int = 21):
    step = (stop - start) / (points - 1)
    return [start + i * step for i in range(points)]


def _system_matrix(system):
    return system.matrix if isinstance(system, LinearSystem) else system


def solution_residual(sol: ClosedFormSolution, system, ts=None):
    """|x'(t) - x(t) o a| on a grid; the worst entry magnitude per point."""
    a = _system_matrix(system)
    if ts is None:
        ts = residual_grid()
    out = []
    for t in ts:
        x = sol.evaluate(t)
        lhs = sol.derivative(t)
        rhs = mul(x, a, ProductKind.CR)
        out.append((lhs - rhs).max_magnitude())
    return out


def build_solution(system, b: Scalar, c: Matrix, form: SolutionForm,
                   tol: float = DEFAULT_TOL) -> ClosedFormSolution:
    """Validated closed-form solution of dx/dt = x o a.

    RIGHT_EXP requires c o a = c*b plus one of the two centrality
    conditions; LEFT_EXP requires c o a = b*c. A violated requirement
    raises RejectedSolutionError naming the failed condition.
    """
    a = _system_matrix(system)
    system = LinearSystem(a)
    _require_float(b, *list(c.entries()), *list(a.entries()))
    if c.shape != (a.n_rows, 1):
        raise ShapeError(f"coefficient must be a {a.n_rows} x 1 column, got {c.shape}")
    lhs = mul(c, a, ProductKind.CR)
    scale = 1.0 + max(lhs.max_magnitude(), c.max_magnitude() * (1.0 + b.magnitude()))
    if form is SolutionForm.RIGHT_EXP:
        rhs = c * b
        if (lhs - rhs).max_magnitude() > tol * scale:
            raise RejectedSolutionError(
                "(value, vector) is not an eigencolumn datum: c o a != c*b")
        if not (center_condition(system, b, tol)
                or eigencolumn_center_condition(c, b, tol)):
            raise RejectedSolutionError(
                "value does not commute with the system entries and the "
                "eigencolumn is not a scalar multiple of a commuting column")
        return ClosedFormSolution(SolutionForm.RIGHT_EXP, b, c)
    if form is SolutionForm.LEFT_EXP:
        rhs = b * c
        if (lhs - rhs).max_magnitude() > tol * scale:
            raise RejectedSolutionError(
                "(value, vector) is not a left eigenpair: c o a != b*c")
        return ClosedFormSolution(SolutionForm.LEFT_EXP, b, c)
    raise ValueError("build_solution handles RIGHT_EXP and LEFT_EXP forms")


def transform_solution(sol: ClosedFormSolution, f: Matrix, tol: float = DEFAULT_TOL):
    """Push a RIGHT_EXP solution through the passive transformation f.

    Returns t -> x(t) o f^-1; it solves the transformed system whose
    matrix is f o a o f^-1 (column-row products throughout).
    """
    if sol.form is not SolutionForm.RIGHT_EXP:
        raise ValueError("only RIGHT_EXP solutions transform this way")
    f_inv = inverse(f, ProductKind.CR, tol)

    def transformed(t):
        return mul(sol.evaluate(t), f_inv, ProductKind.CR)

    return transformed


def rk4_integrate(system, x0, t_end: float, h: float):
    """Classical fixed-step RK4 trajectory.

    A LinearSystem or Matrix integrates the column equation
    dx/dt = x o a (CR product); a bare Scalar integrates dx/dt = a*x.
    Returns a list of (t, state) pairs including both endpoints.
    """
    if h <= 0:
        raise ValueError("step size must be positive")
    if isinstance(system, (LinearSystem, Matrix)):
        a = _system_matrix(system)

        def deriv(x):
            return mul(x, a, ProductKind.CR)
    elif isinstance(system, Scalar):
        a = system

        def deriv(x):
            return a * x
    else:
        raise TypeError("system must be a LinearSystem, Matrix or Scalar")
    t = 0.0
    x = x0
    trajectory = [(0.0, x0)]
    while t < t_end - 1e-12:
        step = min(h, t_end - t)
        k1 = deriv(x)
        k2 = deriv(x + k1 * (step / 2.0))
        k3 = deriv(x + k2 * (step / 2.0))
        k4 = deriv(x + k3 * step)
        x = x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (step / 6.0)
        t = min(t + step, t_end)
        trajectory.append((t, x))
    return trajectory
