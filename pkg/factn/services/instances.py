"""
Random instances with known homotopies
Null-homotopic morphisms are built as composites X -> theta^0(C) -> Y,
which carry a witness transported from the contraction of theta^0(C).
"""
import logging

from factn.factcat import FactMorphism, NFactorization, zero_morphism
from factn.factcat.generators import default_morphism_bound
from factn.frobenius import left_transpose, right_transpose, theta0_contraction
from factn.homotopy import Homotopy, compose_witness_left, compose_witness_right
from factn.utils.seeding import derive_rng

logger = logging.getLogger(__name__)


def random_null_homotopic(x: NFactorization, y: NFactorization, seed: int, max_rank: int = 2) -> Homotopy:
    """
    Random h: X -> Y with a witness for h ~ 0

    h = v u with u: X -> theta^0(C) the transpose of a random X^(n-1) -> C
    and v: theta^0(C) -> Y the transpose of a random C -> Y^0.

    Raises:
        ParityError: odd n
    """
    backend = x.backend
    rng = derive_rng(seed, "null-homotopic")
    n = x.n
    c = backend.random_object(rng, max_rank, min_rank=1)
    degree = default_morphism_bound(backend)
    g_in = backend.random_matrix(rng, c.rank, x.objects[n - 1].rank, degree=degree)
    g_out = backend.random_matrix(rng, y.objects[0].rank, c.rank, degree=degree)
    u = right_transpose(g_in, c, x, 0)
    v = left_transpose(g_out, c, y, 0)
    contraction = theta0_contraction(backend, c, n)
    carried = compose_witness_right(compose_witness_left(v, contraction), u)
    h = v @ u
    return Homotopy(h, zero_morphism(x, y), carried.diag)


def perturb(f: FactMorphism, seed: int) -> Homotopy:
    """f + h ~ f for a random null-homotopic h, with the witness of h"""
    null = random_null_homotopic(f.source, f.target, seed)
    return Homotopy(FactMorphism(f.source, f.target, (f + null.f).comps), f, null.diag)
