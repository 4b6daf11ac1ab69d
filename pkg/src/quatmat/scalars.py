"""Scalars of an associative division algebra.

The matrix layer is generic over any scalar type that supports ring
arithmetic, two-sided inverses of nonzero elements and a magnitude.
Three concrete algebras are provided:

* :class:`Quaternion` -- the main non-commutative instance,
* :class:`Real` and :class:`Cplx` -- commutative reductions used to check
  that every construction collapses to classical linear algebra.

Each scalar carries one of two coefficient modes, fixed at construction:

* exact mode -- coefficients are :class:`fractions.Fraction`; every
  operation is exact and equality is decidable,
* float mode -- coefficients are ``float``; predicates compare with a
  relative tolerance (``DEFAULT_TOL``).

Scalars are immutable values: every operation returns a new object, so
they are safe to share between threads.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from fractions import Fraction

DEFAULT_TOL = 1e-9

_EXACT_TYPES = (int, Fraction)


class Scalar(ABC):
    """Element of an associative division algebra over the reals."""

    __slots__ = ()

    #: real dimension of the algebra (length of ``coeffs()``)
    dim = 1

    @abstractmethod
    def __add__(self, other):
        ...

    @abstractmethod
    def __neg__(self):
        ...

    @abstractmethod
    def __mul__(self, other):
        ...

    @abstractmethod
    def inv(self):
        """Two-sided multiplicative inverse; raises ZeroDivisionError on 0."""

    @abstractmethod
    def norm_sq(self):
        """Squared magnitude, exact in exact mode."""

    @abstractmethod
    def coeffs(self) -> tuple:
        """Coefficients with respect to the real basis of the algebra."""

    @abstractmethod
    def with_coeffs(self, coeffs) -> "Scalar":
        """New scalar of the same type and mode from real coefficients."""

    @abstractmethod
    def is_zero(self) -> bool:
        ...

    @property
    @abstractmethod
    def is_exact(self) -> bool:
        ...

    @abstractmethod
    def real_coeff(self):
        """Coefficient of 1 (preserved by conjugation c^-1 * s * c)."""

    @abstractmethod
    def imag_norm_sq(self):
        """Squared magnitude of the non-real part (conjugation invariant)."""

    def __sub__(self, other):
        return self + (-other)

    def magnitude(self) -> float:
        return math.sqrt(float(self.norm_sq()))

    def zero(self) -> "Scalar":
        return self.with_coeffs((0,) * self.dim)

    def one(self) -> "Scalar":
        return self.with_coeffs((1,) + (0,) * (self.dim - 1))


def _exact_component(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"exact-mode component must be int or Fraction, got {type(v).__name__}")


def _q(w, x, y, z):
    """Fast internal constructor; components must already share one mode."""
    q = Quaternion.__new__(Quaternion)
    q.w = w
    q.x = x
    q.y = y
    q.z = z
    return q


class Quaternion(Scalar):
    """w + x*i + y*j + z*k with i*i = j*j = k*k = -1, i*j = k, j*k = i, k*i = j.

    Components are all Fraction (exact mode) or all float (float mode).
    Passing any float component selects float mode for the whole value.
    """

    __slots__ = ("w", "x", "y", "z")
    dim = 4

    def __init__(self, w, x=0, y=0, z=0):
        comps = (w, x, y, z)
        if any(isinstance(v, float) for v in comps):
            if not all(isinstance(v, (int, float)) for v in comps):
                raise TypeError("cannot mix Fraction and float components in one quaternion")
            self.w, self.x, self.y, self.z = (float(v) for v in comps)
        else:
            self.w, self.x, self.y, self.z = (_exact_component(v) for v in comps)

    @property
    def is_exact(self):
        return not isinstance(self.w, float)

    def _check_mode(self, other):
        if isinstance(self.w, float) != isinstance(other.w, float):
            raise TypeError("cannot combine exact-mode and float-mode quaternions")

    def __add__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        self._check_mode(other)
        return _q(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __neg__(self):
        return _q(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            self._check_mode(other)
            a, b, c, d = self.w, self.x, self.y, self.z
            e, f, g, h = other.w, other.x, other.y, other.z
            return _q(
                a * e - b * f - c * g - d * h,
                a * f + b * e + c * h - d * g,
                a * g - b * h + c * e + d * f,
                a * h + b * g - c * f + d * e,
            )
        if isinstance(other, _EXACT_TYPES):
            return _q(self.w * other, self.x * other, self.y * other, self.z * other)
        if isinstance(other, float):
            if self.is_exact:
                raise TypeError("cannot scale an exact-mode quaternion by a float")
            return _q(self.w * other, self.x * other, self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        # Real coefficients are central, so left scaling equals right scaling.
        if isinstance(other, (int, Fraction, float)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return (self.w == other.w and self.x == other.x
                and self.y == other.y and self.z == other.z)

    def __hash__(self):
        return hash(("Quaternion", self.w, self.x, self.y, self.z))

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"

    def conj(self):
        return _q(self.w, -self.x, -self.y, -self.z)

    def norm_sq(self):
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def inv(self):
        n = self.norm_sq()
        if n == 0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return _q(self.w / n, -self.x / n, -self.y / n, -self.z / n)

    def is_zero(self):
        return self.w == 0 and self.x == 0 and self.y == 0 and self.z == 0

    def coeffs(self):
        return (self.w, self.x, self.y, self.z)

    def with_coeffs(self, coeffs):
        w, x, y, z = coeffs
        if self.is_exact:
            return _q(_exact_component(w), _exact_component(x),
                      _exact_component(y), _exact_component(z))
        return _q(float(w), float(x), float(y), float(z))

    def real_coeff(self):
        return self.w

    def imag_norm_sq(self):
        return self.x * self.x + self.y * self.y + self.z * self.z

    def imag(self):
        return _q(self.w * 0, self.x, self.y, self.z)

    def to_float(self):
        return _q(float(self.w), float(self.x), float(self.y), float(self.z))


class Real(Scalar):
    """Commutative reduction: the algebra of real numbers."""

    __slots__ = ("value",)
    dim = 1

    def __init__(self, value):
        if isinstance(value, float):
            self.value = value
        else:
            self.value = _exact_component(value)

    @property
    def is_exact(self):
        return not isinstance(self.value, float)

    def _check_mode(self, other):
        if isinstance(self.value, float) != isinstance(other.value, float):
            raise TypeError("cannot combine exact-mode and float-mode reals")

    def __add__(self, other):
        if not isinstance(other, Real):
            return NotImplemented
        self._check_mode(other)
        return Real(self.value + other.value)

    def __neg__(self):
        return Real(-self.value)

    def __mul__(self, other):
        if isinstance(other, Real):
            self._check_mode(other)
            return Real(self.value * other.value)
        if isinstance(other, _EXACT_TYPES):
            return Real(self.value * other)
        if isinstance(other, float):
            if self.is_exact:
                raise TypeError("cannot scale an exact-mode real by a float")
            return Real(self.value * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, float)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Real):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash(("Real", self.value))

    def __repr__(self):
        return f"Real({self.value!r})"

    def inv(self):
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.is_exact:
            return Real(Fraction(1) / self.value)
        return Real(1.0 / self.value)

    def norm_sq(self):
        return self.value * self.value

    def is_zero(self):
        return self.value == 0

    def coeffs(self):
        return (self.value,)

    def with_coeffs(self, coeffs):
        (v,) = coeffs
        return Real(float(v)) if not self.is_exact else Real(_exact_component(v))

    def real_coeff(self):
        return self.value

    def imag_norm_sq(self):
        return self.value * 0

    def to_float(self):
        return Real(float(self.value))


class Cplx(Scalar):
    """Commutative reduction: complex numbers re + im*i."""

    __slots__ = ("re", "im")
    dim = 2

    def __init__(self, re, im=0):
        if isinstance(re, float) or isinstance(im, float):
            self.re, self.im = float(re), float(im)
        else:
            self.re, self.im = _exact_component(re), _exact_component(im)

    @property
    def is_exact(self):
        return not isinstance(self.re, float)

    def _check_mode(self, other):
        if isinstance(self.re, float) != isinstance(other.re, float):
            raise TypeError("cannot combine exact-mode and float-mode complex numbers")

    def __add__(self, other):
        if not isinstance(other, Cplx):
            return NotImplemented
        self._check_mode(other)
        return Cplx(self.re + other.re, self.im + other.im)

    def __neg__(self):
        return Cplx(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, Cplx):
            self._check_mode(other)
            return Cplx(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)
        if isinstance(other, _EXACT_TYPES):
            return Cplx(self.re * other, self.im * other)
        if isinstance(other, float):
            if self.is_exact:
                raise TypeError("cannot scale an exact-mode complex by a float")
            return Cplx(self.re * other, self.im * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, float)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Cplx):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash(("Cplx", self.re, self.im))

    def __repr__(self):
        return f"Cplx({self.re!r}, {self.im!r})"

    def conj(self):
        return Cplx(self.re, -self.im)

    def inv(self):
        n = self.norm_sq()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        return Cplx(self.re / n, -self.im / n)

    def norm_sq(self):
        return self.re * self.re + self.im * self.im

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def coeffs(self):
        return (self.re, self.im)

    def with_coeffs(self, coeffs):
        re, im = coeffs
        if self.is_exact:
            return Cplx(_exact_component(re), _exact_component(im))
        return Cplx(float(re), float(im))

    def real_coeff(self):
        return self.re

    def imag_norm_sq(self):
        return self.im * self.im

    def to_float(self):
        return Cplx(float(self.re), float(self.im))


def scalars_close(a: Scalar, b: Scalar, tol: float = DEFAULT_TOL) -> bool:
    """Equality in exact mode, relative closeness in float mode."""
    if a.is_exact and b.is_exact:
        return a == b
    scale = 1.0 + max(a.magnitude(), b.magnitude())
    return (a - b).magnitude() <= tol * scale


def in_center(c: Scalar, b: Scalar, tol: float = DEFAULT_TOL) -> bool:
    """True iff c*b = b*c, i.e. c lies in the centralizer Z(A, b)."""
    lhs = c * b
    rhs = b * c
    if lhs.is_exact:
        return lhs == rhs
    return (lhs - rhs).magnitude() <= tol * (1.0 + b.magnitude() * c.magnitude())


def centralizer_basis(b: Scalar, tol: float = DEFAULT_TOL) -> list:
    """Real spanning set of Z(A, b).

    For a quaternion with nonzero imaginary part this is the plane
    spanned by 1 and the imaginary direction of b; for a real (or a real
    quaternion) it is the whole algebra.
    """
    one = b.one()
    if isinstance(b, Quaternion):
        v = b.imag()
        imag_zero = v.is_zero() if b.is_exact else (
            math.sqrt(float(v.norm_sq())) <= tol * (1.0 + b.magnitude()))
        if imag_zero:
            return [one,
                    b.with_coeffs((0, 1, 0, 0)),
                    b.with_coeffs((0, 0, 1, 0)),
                    b.with_coeffs((0, 0, 0, 1))]
        return [one, v]
    if isinstance(b, Cplx):
        return [one, b.with_coeffs((0, 1))]
    return [one]


def _imag_dot(p: Quaternion, q: Quaternion):
    return p.x * q.x + p.y * q.y + p.z * q.z


def similar_witness(a: Scalar, b: Scalar, tol: float = DEFAULT_TOL):
    """A nonzero c with a = c^-1 * b * c, or None when a and b are not similar.

    Quaternions are similar exactly when their real parts and norms agree;
    the witness is assembled from the imaginary parts without leaving the
    coefficient field, so it is exact in exact mode. Over a commutative
    algebra conjugation is trivial and similarity degenerates to equality.
    """
    one = a.one()
    if not isinstance(a, Quaternion):
        return one if scalars_close(a, b, tol) else None
    if a.is_exact:
        if a.w != b.w or a.norm_sq() != b.norm_sq():
            return None
    else:
        scale = 1.0 + max(a.magnitude(), b.magnitude())
        if abs(a.w - b.w) > tol * scale:
            return None
        if abs(a.norm_sq() - b.norm_sq()) > tol * scale * scale:
            return None
    alpha = a.imag()
    beta = b.imag()
    if scalars_close(alpha, beta, tol):
        return one
    # c = |alpha|^2 - beta*alpha satisfies c*alpha = beta*c; it vanishes
    # only in the antipodal case beta = -alpha.
    c = one * alpha.norm_sq() - beta * alpha
    degenerate = c.is_zero() if a.is_exact else (
        c.magnitude() <= tol * (1.0 + float(alpha.norm_sq())))
    if not degenerate:
        return c
    # beta = -alpha: any imaginary direction orthogonal to alpha conjugates
    # alpha to -alpha. Orthogonalize a basis direction against alpha.
    n = alpha.norm_sq()
    for axis in ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)):
        e = a.with_coeffs(axis)
        r = e * n - alpha * _imag_dot(e, alpha)
        nonzero = (not r.is_zero()) if a.is_exact else (
            r.magnitude() > tol * (1.0 + float(n)))
        if nonzero:
            return r
    return None
