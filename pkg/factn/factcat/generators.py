"""
Seeded random instances
Factorizations are direct sums of small building blocks (rotated interval
factorizations, split monomials, zero differentials) conjugated at every
node by random invertible matrices. Conjugation keeps validity because
omega is natural.
"""
import logging
import random
from typing import List, Optional, Tuple

from factn.algebra import Matrix
from factn.ambient import (
    Backend,
    FieldScalarBackend,
    GradedShiftBackend,
    PolyClassicalBackend,
)
from factn.exceptions import DimensionMismatchError
from factn.factcat.core import (
    FactMorphism,
    NFactorization,
    direct_sum_many,
    morphism_space,
    shift_S,
    zero_factorization,
)
from factn.utils.seeding import derive_rng

logger = logging.getLogger(__name__)


# ============================================
# Invertible matrices
# ============================================

def unimodular(backend: Backend, rng: random.Random, size: int, steps: int = 3, degree: int = 1) -> Tuple[Matrix, Matrix]:
    """
    Random P with its inverse, as a product of elementary matrices

    Row additions carry polynomial multipliers of degree <= degree; over a
    field backend there are also unit scalings.
    """
    ring = backend.ring
    p = Matrix.identity(ring, size)
    p_inv = Matrix.identity(ring, size)
    if size == 0:
        return p, p_inv
    for _ in range(steps):
        if size > 1 and rng.randrange(3):
            i = rng.randrange(size)
            k = rng.randrange(size - 1)
            k += k >= i
            c = ring.random_element(rng, degree if ring.variables else 0, terms=1)
            entries = [ring.zero()] * (size * size)
            entries[i * size + k] = c
            e = Matrix(ring, size, size, entries)
            identity = Matrix.identity(ring, size)
            p = (identity + e) @ p
            p_inv = p_inv @ (identity - e)
        else:
            i = rng.randrange(size)
            u = ring.field.random_unit(rng)
            scale = [ring.one()] * size
            unscale = [ring.one()] * size
            scale[i] = ring.const(u)
            unscale[i] = ring.const(ring.field.inv(u))
            p = _diagonal(ring, scale) @ p
            p_inv = p_inv @ _diagonal(ring, unscale)
    return p, p_inv


def _diagonal(ring, values) -> Matrix:
    size = len(values)
    entries = [values[i] if i == j else ring.zero() for i in range(size) for j in range(size)]
    return Matrix(ring, size, size, entries)


def conjugate(x: NFactorization, rng: random.Random) -> NFactorization:
    """d^j -> P_(j+1) d^j P_j^-1 and d^(n-1) -> T(P_0) d^(n-1) P_(n-1)^-1"""
    backend = x.backend
    pairs = [unimodular(backend, rng, o.rank) for o in x.objects]
    diffs = []
    for j, d in enumerate(x.diffs):
        left = backend.apply_T(pairs[0][0]) if j == x.n - 1 else pairs[j + 1][0]
        diffs.append(left @ d @ pairs[j][1])
    return NFactorization(backend, x.objects, diffs)


# ============================================
# Building blocks
# ============================================

def _monomial_split(backend: Backend, rng: random.Random, n: int) -> Optional[NFactorization]:
    """(m_0, ..., m_(n-1)) with m_0 ... m_(n-1) = w for a monomial w and T = Id on matrices"""
    if not isinstance(backend, (PolyClassicalBackend, GradedShiftBackend)):
        return None
    w = backend.w
    if len(w.terms) != 1:
        return None
    ring = backend.ring
    (exponent, coefficient), = w.terms.items()
    pieces = [[0] * ring.nvars for _ in range(n)]
    for var, power in enumerate(exponent):
        for _ in range(power):
            pieces[rng.randrange(n)][var] += 1
    factors = [ring.monomial(tuple(e)) for e in pieces]
    factors[0] = factors[0].scale(coefficient)
    if backend.graded:
        degrees = [rng.randrange(-1, 2)]
        for f in factors[:-1]:
            degrees.append(degrees[-1] + next(iter(f.weighted_degrees())))
        objects = [backend.make_object(1, [g]) for g in degrees]
    else:
        objects = [backend.make_object(1)] * n
    diffs = [Matrix.from_rows(ring, [[f]]) for f in factors]
    return NFactorization(backend, objects, diffs)


def _zero_block(backend: Backend, rng: random.Random, n: int) -> Optional[NFactorization]:
    """Zero differentials, valid exactly when omega = 0"""
    if not backend.omega_value().is_zero():
        return None
    objects = [backend.random_object(rng, 1) for _ in range(n)]
    ring = backend.ring
    diffs = []
    for j in range(n):
        target = backend.apply_T(objects[0]) if j == n - 1 else objects[j + 1]
        diffs.append(Matrix.zeros(ring, target.rank, objects[j].rank))
    return NFactorization(backend, objects, diffs)


def _theta_block(backend: Backend, rng: random.Random, n: int) -> NFactorization:
    """A rotation S^k(theta^0(C)) of the interval factorization on a rank-1 object"""
    from factn.frobenius import theta0

    block = theta0(backend, backend.random_object(rng, 1, min_rank=1), n)
    for _ in range(rng.randrange(n)):
        block = shift_S(block)
    return block


def _invertible_chain(backend: FieldScalarBackend, rng: random.Random, n: int, rank: int) -> NFactorization:
    """Random invertible d^0..d^(n-2) closed by d^(n-1) = c (d^(n-2) ... d^0)^-1"""
    ring = backend.ring
    diffs = []
    product = Matrix.identity(ring, rank)
    for _ in range(n - 1):
        d, _ = unimodular(backend, rng, rank, steps=2 * rank + 2, degree=0)
        diffs.append(d)
        product = d @ product
    diffs.append(product.inverse().scale(backend.c))
    obj = backend.make_object(rank)
    return NFactorization(backend, [obj] * n, diffs)


# ============================================
# Public generators
# ============================================

def random_factorization(backend: Backend, n: int, max_rank: int, seed: int) -> NFactorization:
    """
    Seeded random factorization; the same arguments give the same output

    Raises:
        DimensionMismatchError: n < 2 or max_rank < 0
    """
    if n < 2:
        raise DimensionMismatchError(f"n must be at least 2, got {n}")
    if max_rank < 0:
        raise DimensionMismatchError(f"max_rank must be non-negative, got {max_rank}")
    rng = derive_rng(seed, "factorization", backend.kind, n)
    if isinstance(backend, FieldScalarBackend) and backend.c:
        result = _invertible_chain(backend, rng, n, rng.randrange(max_rank + 1))
        logger.debug(f"🎲 Random invertible chain {result.describe()}")
        return result

    blocks: List[NFactorization] = []
    for _ in range(rng.randrange(max_rank + 1)):
        kind = rng.randrange(3)
        block = None
        if kind == 1:
            block = _monomial_split(backend, rng, n)
        elif kind == 2:
            block = _zero_block(backend, rng, n)
        if block is None:
            block = _theta_block(backend, rng, n)
        blocks.append(block)
    if not blocks:
        return zero_factorization(backend, n)
    total = direct_sum_many(blocks).obj
    result = conjugate(total, rng)
    logger.debug(f"🎲 Random factorization {result.describe()} from {len(blocks)} blocks")
    return result


def default_morphism_bound(backend: Backend) -> int:
    return 0 if not backend.ring.variables else 1


def random_morphism(
    source: NFactorization,
    target: NFactorization,
    seed: int,
    bound: Optional[int] = None
) -> FactMorphism:
    """Random combination of a basis of Hom(source, target) at the degree bound"""
    if bound is None:
        bound = default_morphism_bound(source.backend)
    rng = derive_rng(seed, "morphism")
    field = source.backend.ring.field
    result = FactMorphism(
        source, target,
        [source.backend.zero(a, b) for a, b in zip(source.objects, target.objects)],
        validate=False,
    )
    for basis_element in morphism_space(source, target, bound):
        coefficient = field.random_element(rng)
        if coefficient:
            result = result + basis_element.scale(coefficient)
    return FactMorphism(source, target, result.comps)

