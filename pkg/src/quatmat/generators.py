"""Seeded builders of random exact-mode instances for tests and selftest.

No eigenvalue search exists over a non-commutative scalar, so test
instances are produced by construction: pick an invertible u and a
diagonal d, conjugate, and the eigen data of the result is known exactly.
Every builder takes an explicit random.Random so runs are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .eigen import EigenPair, construct_diagonalizable, construction_vectors
from .matrices import Matrix, ProductKind, Side, rank
from .scalars import Quaternion, Real


def rand_fraction(rng: Random, span: int = 3, den: int = 2) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rational_quaternion(rng: Random, span: int = 3, den: int = 2) -> Quaternion:
    return Quaternion(*(rand_fraction(rng, span, den) for _ in range(4)))


def nonzero_rational_quaternion(rng: Random, span: int = 3, den: int = 2) -> Quaternion:
    while True:
        q = rational_quaternion(rng, span, den)
        if not q.is_zero():
            return q


def complexlike_quaternion(rng: Random, span: int = 3, den: int = 2) -> Quaternion:
    """Quaternion inside the commutative plane spanned by 1 and i."""
    return Quaternion(rand_fraction(rng, span, den), rand_fraction(rng, span, den))


def real_quaternion(rng: Random, span: int = 3, den: int = 2) -> Quaternion:
    return Quaternion(rand_fraction(rng, span, den))


def rational_real(rng: Random, span: int = 3, den: int = 2) -> Real:
    return Real(rand_fraction(rng, span, den))


def quaternion_matrix(rng: Random, n: int, m: int, span: int = 2, den: int = 2,
                      entry=rational_quaternion) -> Matrix:
    return Matrix([[entry(rng, span, den) for _ in range(m)] for _ in range(n)])


def invertible_quaternion_matrix(rng: Random, n: int, kind: ProductKind,
                                 span: int = 2, den: int = 2,
                                 entry=rational_quaternion) -> Matrix:
    while True:
        m = quaternion_matrix(rng, n, n, span, den, entry)
        if rank(m, kind) == n:
            return m


def pairwise_nonsimilar_values(rng: Random, n: int, entry=rational_quaternion):
    """Diagonal values in pairwise distinct similarity classes.

    Similarity preserves the real part and the norm, so distinct
    (real, norm) signatures guarantee pairwise non-similar values.
    """
    values = []
    seen = set()
    while len(values) < n:
        q = entry(rng, 3, 2)
        if q.is_zero():
            continue
        key = (q.real_coeff(), q.norm_sq())
        if key in seen:
            continue
        seen.add(key)
        values.append(q)
    return values


def diagonalizable_instance(rng: Random, n: int, side: Side, kind: ProductKind,
                            values=None, entry=rational_quaternion,
                            dense_vectors: bool = False):
    """(a, u, values, pairs) with a built by conjugating diag(values) by u.

    dense_vectors retries until no witnessing vector has a zero entry,
    which keeps the commutation criterion tests away from degenerate
    accidental solutions.
    """
    if values is None:
        values = pairwise_nonsimilar_values(rng, n, entry)
    while True:
        u = invertible_quaternion_matrix(rng, n, kind, entry=entry)
        if dense_vectors:
            vectors = construction_vectors(u, kind, side)
            if any(e.is_zero() for v in vectors for e in v.entries()):
                continue
        a, pairs = construct_diagonalizable(u, values, kind, side)
        return a, u, list(values), pairs


def random_eigen_instance(rng: Random, n: int, entry=rational_quaternion):
    """Instance for a random (side, kind) flavor."""
    side = rng.choice((Side.LEFT, Side.RIGHT))
    kind = rng.choice((ProductKind.RC, ProductKind.CR))
    a, u, values, pairs = diagonalizable_instance(rng, n, side, kind, entry=entry)
    return a, u, values, pairs, side, kind
