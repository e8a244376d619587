"""
Componentwise exact structure on Fact_n
Kernels, cokernels, conflations, pullbacks of deflations and pushouts of
inflations. All of it needs exact linear algebra over a field, so only
field-scalar backends are accepted.
"""
import logging
from dataclasses import dataclass
from typing import Callable, List

from factn.algebra import (
    Matrix,
    field_solve,
    left_nullspace_matrix,
    nullspace_matrix,
    rank,
    solve_right,
)
from factn.ambient import FieldScalarBackend
from factn.exceptions import (
    DimensionMismatchError,
    ExactStructureError,
    UnsupportedBackendError,
)
from factn.factcat.core import FactMorphism, NFactorization
from factn.schemas.report import Report, check

logger = logging.getLogger(__name__)


def require_field_backend(*morphisms: FactMorphism):
    for m in morphisms:
        if not isinstance(m.backend, FieldScalarBackend):
            raise UnsupportedBackendError(
                f"exact structure needs a field-scalar backend, got {m.backend.kind}"
            )


def _solve_left(a: Matrix, b: Matrix, what: str) -> Matrix:
    """x with a @ x = b"""
    result = field_solve(a, b)
    if not result.solvable:
        raise ExactStructureError(f"{what}: no solution")
    return result.particular


def _solve_right(a: Matrix, b: Matrix, what: str) -> Matrix:
    """x with x @ a = b"""
    x = solve_right(a, b)
    if x is None:
        raise ExactStructureError(f"{what}: no solution")
    return x


def is_surjective(m: Matrix) -> bool:
    return rank(m) == m.rows


def is_injective(m: Matrix) -> bool:
    return rank(m) == m.cols


def is_deflation(p: FactMorphism) -> bool:
    return all(is_surjective(c) for c in p.comps)


def is_inflation(l: FactMorphism) -> bool:
    return all(is_injective(c) for c in l.comps)


# ============================================
# Kernels and cokernels
# ============================================

@dataclass(frozen=True)
class KernelData:
    """k: K -> X with the factorization of test morphisms through k"""
    obj: NFactorization
    inclusion: FactMorphism
    factor: Callable[[FactMorphism], FactMorphism]


@dataclass(frozen=True)
class CokernelData:
    """q: Y -> Q with the factorization of test morphisms through q"""
    obj: NFactorization
    projection: FactMorphism
    factor: Callable[[FactMorphism], FactMorphism]


def kernel(f: FactMorphism) -> KernelData:
    """
    Componentwise kernel K^j = ker(phi^j)

    The induced differential d_K^j is the unique solution of
    k^(j+1) d_K^j = d_X^j k^j (T(k^0) on the last level), unique because k
    is injective.
    """
    require_field_backend(f)
    backend = f.backend
    x = f.source
    n = f.n
    ks = [nullspace_matrix(phi) for phi in f.comps]
    objects = [backend.make_object(k.cols) for k in ks]
    diffs = []
    for j in range(n):
        nxt = backend.apply_T(ks[0]) if j == n - 1 else ks[j + 1]
        diffs.append(_solve_left(nxt, x.diffs[j] @ ks[j], f"kernel differential {j}"))
    obj = NFactorization(backend, objects, diffs)
    inclusion = FactMorphism(obj, x, ks)

    def factor(g: FactMorphism) -> FactMorphism:
        if g.target != x:
            raise DimensionMismatchError("test morphism must end at the source of f")
        if not (f @ g).is_zero():
            raise ExactStructureError("f after g is not zero, no factorization through the kernel")
        comps = [_solve_left(k, gj, f"kernel factorization {j}") for j, (k, gj) in enumerate(zip(ks, g.comps))]
        return FactMorphism(g.source, obj, comps)

    logger.debug(f"🧩 Kernel ranks {list(obj.ranks)}")
    return KernelData(obj, inclusion, factor)


def cokernel(f: FactMorphism) -> CokernelData:
    """Componentwise cokernel Q^j = Y^j / im(phi^j), dual to kernel"""
    require_field_backend(f)
    backend = f.backend
    y = f.target
    n = f.n
    qs = [left_nullspace_matrix(phi) for phi in f.comps]
    objects = [backend.make_object(q.rows) for q in qs]
    diffs = []
    for j in range(n):
        nxt = backend.apply_T(qs[0]) if j == n - 1 else qs[j + 1]
        diffs.append(_solve_right(qs[j], nxt @ y.diffs[j], f"cokernel differential {j}"))
    obj = NFactorization(backend, objects, diffs)
    projection = FactMorphism(y, obj, qs)

    def factor(g: FactMorphism) -> FactMorphism:
        if g.source != y:
            raise DimensionMismatchError("test morphism must start at the target of f")
        if not (g @ f).is_zero():
            raise ExactStructureError("g after f is not zero, no factorization through the cokernel")
        comps = [_solve_right(q, gj, f"cokernel factorization {j}") for j, (q, gj) in enumerate(zip(qs, g.comps))]
        return FactMorphism(obj, g.target, comps)

    logger.debug(f"🧩 Cokernel ranks {list(obj.ranks)}")
    return CokernelData(obj, projection, factor)


# ============================================
# Conflations
# ============================================

@dataclass(frozen=True)
class Conflation:
    """Composable pair X -l-> Y -p-> Z"""
    l: FactMorphism
    p: FactMorphism

    def __post_init__(self):
        if self.l.target != self.p.source:
            raise DimensionMismatchError("target of l differs from source of p")


def is_conflation(c: Conflation) -> Report:
    """Per component: l injective, p surjective, im(l) = ker(p)"""
    require_field_backend(c.l, c.p)
    report = Report()
    for j, (l, p) in enumerate(zip(c.l.comps, c.p.comps)):
        report.add(check("conflation.l_injective", is_injective(l), index=j,
                         detail=f"rank {rank(l)} of {l.cols} columns"))
        report.add(check("conflation.p_surjective", is_surjective(p), index=j,
                         detail=f"rank {rank(p)} of {p.rows} rows"))
        composite = p @ l
        exact = composite.is_zero() and rank(l) == p.cols - rank(p)
        report.add(check("conflation.exact", exact, index=j,
                         lhs=composite, rhs=Matrix.zeros(composite.ring, *composite.shape)))
    return report


# ============================================
# Pullbacks and pushouts
# ============================================

@dataclass(frozen=True)
class PullbackData:
    """Y1 with p1: Y1 -> W and f1: Y1 -> Y such that p f1 = f p1"""
    obj: NFactorization
    p1: FactMorphism
    f1: FactMorphism
    factor: Callable[[FactMorphism, FactMorphism], FactMorphism]


@dataclass(frozen=True)
class PushoutData:
    """Y1 with l1: W -> Y1 and f1: Y -> Y1 such that f1 l = l1 f"""
    obj: NFactorization
    l1: FactMorphism
    f1: FactMorphism
    factor: Callable[[FactMorphism, FactMorphism], FactMorphism]


def _diag(ring, a: Matrix, b: Matrix) -> Matrix:
    return Matrix.block(ring, [[a, None], [None, b]], [a.rows, b.rows], [a.cols, b.cols])


def pullback_deflation(p: FactMorphism, f: FactMorphism) -> PullbackData:
    """
    Pull the deflation p: Y -> Z back along f: W -> Z

    Componentwise Y1^j = ker [f^j, -p^j], embedded in W^j + Y^j by the
    injective matrix B^j = [p1^j; f1^j]; the differential of Y1 is the
    unique D with B^(j+1) D = diag(d_W^j, d_Y^j) B^j.
    """
    require_field_backend(p, f)
    if p.target != f.target:
        raise DimensionMismatchError("p and f must share their target")
    if not is_deflation(p):
        raise ExactStructureError("p is not a deflation (some component is not surjective)")
    backend = p.backend
    ring = backend.ring
    w, y = f.source, p.source
    n = p.n
    bs = [nullspace_matrix(Matrix.hstack(ring, [fj, -pj], fj.rows)) for fj, pj in zip(f.comps, p.comps)]
    objects = [backend.make_object(b.cols) for b in bs]
    diffs = []
    for j in range(n):
        nxt = backend.apply_T(bs[0]) if j == n - 1 else bs[j + 1]
        rhs = _diag(ring, w.diffs[j], y.diffs[j]) @ bs[j]
        diffs.append(_solve_left(nxt, rhs, f"pullback differential {j}"))
    obj = NFactorization(backend, objects, diffs)
    split = [w.objects[j].rank for j in range(n)]
    p1 = FactMorphism(obj, w, [b.submatrix(0, split[j], 0, b.cols) for j, b in enumerate(bs)])
    f1 = FactMorphism(obj, y, [b.submatrix(split[j], b.rows, 0, b.cols) for j, b in enumerate(bs)])

    def factor(a: FactMorphism, b: FactMorphism) -> FactMorphism:
        """The unique h: V -> Y1 with p1 h = a and f1 h = b, given f a = p b"""
        if not ((f @ a) - (p @ b)).is_zero():
            raise ExactStructureError("test cone does not commute")
        comps = [
            _solve_left(bs[j], Matrix.vstack(ring, [a.comps[j], b.comps[j]], a.comps[j].cols), f"pullback factorization {j}")
            for j in range(n)
        ]
        return FactMorphism(a.source, obj, comps)

    logger.debug(f"🧩 Pullback ranks {list(obj.ranks)}")
    return PullbackData(obj, p1, f1, factor)


def pushout_inflation(l: FactMorphism, f: FactMorphism) -> PushoutData:
    """
    Push the inflation l: X -> Y out along f: X -> W

    Componentwise Y1^j = coker [l^j; f^j] via the surjective Q^j = [f1^j | -l1^j].
    """
    require_field_backend(l, f)
    if l.source != f.source:
        raise DimensionMismatchError("l and f must share their source")
    if not is_inflation(l):
        raise ExactStructureError("l is not an inflation (some component is not injective)")
    backend = l.backend
    ring = backend.ring
    y, w = l.target, f.target
    n = l.n
    qs = [left_nullspace_matrix(Matrix.vstack(ring, [lj, fj], lj.cols)) for lj, fj in zip(l.comps, f.comps)]
    objects = [backend.make_object(q.rows) for q in qs]
    diffs = []
    for j in range(n):
        nxt = backend.apply_T(qs[0]) if j == n - 1 else qs[j + 1]
        rhs = nxt @ _diag(ring, y.diffs[j], w.diffs[j])
        diffs.append(_solve_right(qs[j], rhs, f"pushout differential {j}"))
    obj = NFactorization(backend, objects, diffs)
    split = [y.objects[j].rank for j in range(n)]
    f1 = FactMorphism(y, obj, [q.submatrix(0, q.rows, 0, split[j]) for j, q in enumerate(qs)])
    l1 = FactMorphism(w, obj, [-q.submatrix(0, q.rows, split[j], q.cols) for j, q in enumerate(qs)])

    def factor(a: FactMorphism, b: FactMorphism) -> FactMorphism:
        """The unique h: Y1 -> V with h f1 = a and h l1 = b, given a l = b f"""
        if not ((a @ l) - (b @ f)).is_zero():
            raise ExactStructureError("test cocone does not commute")
        comps = [
            _solve_right(qs[j], Matrix.hstack(ring, [a.comps[j], -b.comps[j]], a.comps[j].rows), f"pushout factorization {j}")
            for j in range(n)
        ]
        return FactMorphism(obj, a.target, comps)

    logger.debug(f"🧩 Pushout ranks {list(obj.ranks)}")
    return PushoutData(obj, l1, f1, factor)


def deflation_surjectivity(p: FactMorphism, name: str) -> List:
    """One check per component: p^j is surjective"""
    return [
        check(name, is_surjective(c), index=j, detail=f"rank {rank(c)} of {c.rows}")
        for j, c in enumerate(p.comps)
    ]


def inflation_injectivity(l: FactMorphism, name: str) -> List:
    """One check per component: l^j is injective"""
    return [
        check(name, is_injective(c), index=j, detail=f"rank {rank(c)} of {c.cols}")
        for j, c in enumerate(l.comps)
    ]
