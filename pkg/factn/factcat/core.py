"""
The category Fact_n(A, T, omega)
Objects are n-fold factorizations X^0 -> ... -> X^(n-1) -> T(X^0) of omega,
morphisms are levelwise matrix families commuting with the differentials.
Constructors validate; pass validate=False only to build a value for a report.
"""
import logging
from dataclasses import InitVar, dataclass
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

from factn.algebra import LinearTemplate, Matrix, solution_space
from factn.ambient import Backend, ObjectHandle
from factn.exceptions import (
    BackendError,
    DimensionMismatchError,
    FactorizationError,
    MorphismError,
    ParityError,
    UnsupportedBackendError,
)
from factn.schemas.report import Report, check

logger = logging.getLogger(__name__)


def _shape_of(m: Matrix) -> str:
    return f"{m.rows}x{m.cols}"


# ============================================
# Objects
# ============================================

@dataclass(frozen=True)
class NFactorization:
    """
    n-fold (A, T)-factorization

    diffs[j]: X^j -> X^(j+1) for j < n-1 and diffs[n-1]: X^(n-1) -> T(X^0).
    """
    backend: Backend
    objects: Tuple[ObjectHandle, ...]
    diffs: Tuple[Matrix, ...]
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "diffs", tuple(self.diffs))
        n = len(self.objects)
        if n < 2:
            raise DimensionMismatchError(f"a factorization needs n >= 2 components, got {n}")
        if len(self.diffs) != n:
            raise DimensionMismatchError(f"{len(self.diffs)} differentials for {n} components")
        for j, d in enumerate(self.diffs):
            self.backend.check_ring(d)
            expected = (self.target_of(j).rank, self.objects[j].rank)
            if d.shape != expected:
                raise DimensionMismatchError(
                    f"d^{j} is {_shape_of(d)}, expected {expected[0]}x{expected[1]}"
                )
        if validate:
            report = validate_factorization(self)
            if not report.ok:
                raise FactorizationError(f"not a factorization: {report.describe_failure()}", report)

    @property
    def n(self) -> int:
        return len(self.objects)

    @property
    def ranks(self) -> Tuple[int, ...]:
        return tuple(x.rank for x in self.objects)

    def target_of(self, j: int) -> ObjectHandle:
        """Codomain of d^j"""
        if j == self.n - 1:
            return self.backend.apply_T(self.objects[0])
        return self.objects[j + 1]

    def chain(self, start: int, stop: int) -> Matrix:
        """d^(stop-1) ... d^start (identity when start == stop), for start < n and start <= stop <= n"""
        result = self.backend.identity(self.objects[start])
        for j in range(start, stop):
            result = self.diffs[j] @ result
        return result

    def is_zero(self) -> bool:
        return all(x.rank == 0 for x in self.objects)

    def describe(self) -> str:
        return f"n={self.n} ranks={list(self.ranks)}"


def validate_factorization(x: NFactorization) -> Report:
    """
    Check every cyclic n-fold composite against omega

    Index i compares T(d^(i-1))...T(d^0) d^(n-1)...d^i with omega_{X^i}.
    """
    backend = x.backend
    n = x.n
    report = Report()
    for i in range(n):
        composite = x.chain(i, n)
        for j in range(i):
            composite = backend.apply_T(x.diffs[j]) @ composite
        expected = backend.omega(x.objects[i])
        report.add(check(
            "factorization.composite", composite == expected, index=i,
            lhs=composite, rhs=expected,
        ))
    return report


def check_homogeneity(x: NFactorization) -> Report:
    """
    Every nonzero entry of d^j must be homogeneous of degree
    deg(target generator) - deg(source generator)
    """
    backend = x.backend
    if not backend.graded:
        raise UnsupportedBackendError(f"homogeneity needs a graded backend, got {backend.kind}")
    ring = backend.ring
    report = Report()
    for j, d in enumerate(x.diffs):
        source, target = x.objects[j], x.target_of(j)
        bad = None
        for a in range(d.rows):
            for b in range(d.cols):
                entry = d[a, b]
                if entry.is_zero():
                    continue
                wanted = target.degrees[a] - source.degrees[b]
                if entry.weighted_degrees() != {wanted}:
                    bad = f"entry ({a},{b}) = {entry} is not homogeneous of degree {wanted} in {ring}"
                    break
            if bad:
                break
        report.add(check("factorization.homogeneous", bad is None, index=j, detail=bad))
    return report


# ============================================
# Morphisms
# ============================================

@dataclass(frozen=True)
class FactMorphism:
    """Levelwise morphism phi^j: X^j -> Y^j"""
    source: NFactorization
    target: NFactorization
    comps: Tuple[Matrix, ...]
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        object.__setattr__(self, "comps", tuple(self.comps))
        if self.source.backend != self.target.backend:
            raise BackendError("source and target live over different backends")
        if self.source.n != self.target.n:
            raise DimensionMismatchError(f"n={self.source.n} source but n={self.target.n} target")
        if len(self.comps) != self.source.n:
            raise DimensionMismatchError(f"{len(self.comps)} components for n={self.source.n}")
        for j, (phi, x, y) in enumerate(zip(self.comps, self.source.objects, self.target.objects)):
            if phi.shape != (y.rank, x.rank):
                raise DimensionMismatchError(
                    f"component {j} is {_shape_of(phi)}, expected {y.rank}x{x.rank}"
                )
        if validate:
            report = validate_morphism(self)
            if not report.ok:
                raise MorphismError(f"not a morphism: {report.describe_failure()}", report)

    @property
    def backend(self) -> Backend:
        return self.source.backend

    @property
    def n(self) -> int:
        return self.source.n

    def _parallel(self, other: "FactMorphism", op: str):
        if self.source != other.source or self.target != other.target:
            raise DimensionMismatchError(f"cannot {op} morphisms with different source or target")

    def __add__(self, other: "FactMorphism") -> "FactMorphism":
        self._parallel(other, "add")
        return FactMorphism(self.source, self.target,
                            [a + b for a, b in zip(self.comps, other.comps)], validate=False)

    def __sub__(self, other: "FactMorphism") -> "FactMorphism":
        self._parallel(other, "subtract")
        return FactMorphism(self.source, self.target,
                            [a - b for a, b in zip(self.comps, other.comps)], validate=False)

    def __neg__(self) -> "FactMorphism":
        return FactMorphism(self.source, self.target, [-a for a in self.comps], validate=False)

    def __matmul__(self, other: "FactMorphism") -> "FactMorphism":
        """self after other"""
        if other.target != self.source:
            raise DimensionMismatchError("morphisms are not composable")
        return FactMorphism(other.source, self.target,
                            [a @ b for a, b in zip(self.comps, other.comps)], validate=False)

    def scale(self, value) -> "FactMorphism":
        return FactMorphism(self.source, self.target, [a.scale(value) for a in self.comps], validate=False)

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.comps)

    def max_degree(self) -> int:
        return max((a.max_degree() for a in self.comps), default=-1)


def validate_morphism(f: FactMorphism) -> Report:
    """phi^(j+1) d_X^j = d_Y^j phi^j for j < n-1, and T(phi^0) d_X^(n-1) = d_Y^(n-1) phi^(n-1)"""
    x, y = f.source, f.target
    n = f.n
    report = Report()
    for j in range(n):
        nxt = f.backend.apply_T(f.comps[0]) if j == n - 1 else f.comps[j + 1]
        lhs = nxt @ x.diffs[j]
        rhs = y.diffs[j] @ f.comps[j]
        report.add(check("morphism.square", lhs == rhs, index=j, lhs=lhs, rhs=rhs))
    return report


def identity(x: NFactorization) -> FactMorphism:
    return FactMorphism(x, x, [x.backend.identity(o) for o in x.objects], validate=False)


def zero_morphism(x: NFactorization, y: NFactorization) -> FactMorphism:
    return FactMorphism(x, y, [x.backend.zero(a, b) for a, b in zip(x.objects, y.objects)], validate=False)


def zero_factorization(backend: Backend, n: int) -> NFactorization:
    z = backend.zero_object()
    return NFactorization(backend, [z] * n, [Matrix.zeros(backend.ring, 0, 0)] * n)


# ============================================
# Additive structure
# ============================================

class Biproduct(NamedTuple):
    obj: NFactorization
    injections: List[FactMorphism]
    projections: List[FactMorphism]


def direct_sum_many(parts: Sequence[NFactorization]) -> Biproduct:
    """Componentwise direct sum with block-diagonal differentials"""
    if not parts:
        raise DimensionMismatchError("direct sum of no factorizations")
    backend, n = parts[0].backend, parts[0].n
    for p in parts:
        if p.backend != backend:
            raise BackendError("direct sum over different backends")
        if p.n != n:
            raise DimensionMismatchError(f"direct sum of n={n} and n={p.n}")
    ring = backend.ring
    objects = []
    for j in range(n):
        total = parts[0].objects[j]
        for p in parts[1:]:
            total = total + p.objects[j]
        objects.append(total)
    diffs = []
    for j in range(n):
        grid = [[p.diffs[j] if a == b else None for b, p in enumerate(parts)] for a in range(len(parts))]
        diffs.append(Matrix.block(
            ring, grid,
            [p.target_of(j).rank for p in parts],
            [p.objects[j].rank for p in parts],
        ))
    total = NFactorization(backend, objects, diffs)

    injections, projections = [], []
    for k, p in enumerate(parts):
        inj, proj = [], []
        for j in range(n):
            sizes = [q.objects[j].rank for q in parts]
            column = [[1 if a == k else None] for a in range(len(parts))]
            inj.append(Matrix.block(ring, column, sizes, [sizes[k]]))
            proj.append(Matrix.block(ring, [[1 if b == k else None for b in range(len(parts))]], [sizes[k]], sizes))
        injections.append(FactMorphism(p, total, inj))
        projections.append(FactMorphism(total, p, proj))
    return Biproduct(total, injections, projections)


def direct_sum(x: NFactorization, y: NFactorization) -> Biproduct:
    """X + Y with injections (i_X, i_Y) and projections (p_X, p_Y)"""
    return direct_sum_many([x, y])


def copairing(maps: Sequence[FactMorphism]) -> FactMorphism:
    """[f_1 ... f_k]: X_1 + ... + X_k -> Y"""
    target = maps[0].target
    total = direct_sum_many([m.source for m in maps]).obj
    comps = [Matrix.hstack(total.backend.ring, [m.comps[j] for m in maps], target.objects[j].rank)
             for j in range(total.n)]
    return FactMorphism(total, target, comps)


def pairing(maps: Sequence[FactMorphism]) -> FactMorphism:
    """[f_1; ...; f_k]: X -> Y_1 + ... + Y_k"""
    source = maps[0].source
    total = direct_sum_many([m.target for m in maps]).obj
    comps = [Matrix.vstack(total.backend.ring, [m.comps[j] for m in maps], source.objects[j].rank)
             for j in range(total.n)]
    return FactMorphism(source, total, comps)


class IsoResult(NamedTuple):
    is_iso: bool
    inverse: Optional[FactMorphism]


def is_isomorphism(f: FactMorphism) -> IsoResult:
    """An isomorphism exactly when every component is invertible over the ring"""
    inverses = []
    for j, phi in enumerate(f.comps):
        inv = phi.inverse()
        if inv is None:
            logger.debug(f"🔎 Component {j} is not invertible")
            return IsoResult(False, None)
        inverses.append(inv)
    return IsoResult(True, FactMorphism(f.target, f.source, inverses))


# ============================================
# Shift
# ============================================

def shift_S(x: NFactorization, signed: bool = False) -> NFactorization:
    """
    S(X) = X^1 -> ... -> X^(n-1) -> T(X^0) -> T(X^1)

    With signed=True every differential is negated, which needs even n.
    """
    if signed and x.n % 2:
        raise ParityError(f"signed shift needs even n, got n={x.n}")
    backend = x.backend
    objects = list(x.objects[1:]) + [backend.apply_T(x.objects[0])]
    diffs = list(x.diffs[1:]) + [backend.apply_T(x.diffs[0])]
    if signed:
        diffs = [-d for d in diffs]
    return NFactorization(backend, objects, diffs)


def shift_S_morphism(f: FactMorphism, signed: bool = False) -> FactMorphism:
    """(f^1, ..., f^(n-1), T(f^0)); the signs do not touch morphisms"""
    comps = list(f.comps[1:]) + [f.backend.apply_T(f.comps[0])]
    return FactMorphism(shift_S(f.source, signed), shift_S(f.target, signed), comps)


# ============================================
# Morphism spaces
# ============================================

Constraint = Callable[[List[Matrix]], Sequence[Matrix]]


def solve_morphism(
    source: NFactorization,
    target: NFactorization,
    bound: int,
    constraint: Optional[Constraint] = None
) -> Tuple[Optional[FactMorphism], List[FactMorphism]]:
    """
    Morphisms source -> target with entries of degree <= bound

    constraint maps the candidate components to extra matrices that must
    vanish; it has to be affine in the components. Returns a particular
    solution (or None) and a basis of the homogeneous solutions.
    """
    backend = source.backend
    n = source.n
    names = [f"phi{j}" for j in range(n)]
    unknowns = {name: (target.objects[j].rank, source.objects[j].rank) for j, name in enumerate(names)}

    def residual(assignment):
        comps = [assignment[name] for name in names]
        out = []
        for j in range(n):
            nxt = backend.apply_T(comps[0]) if j == n - 1 else comps[j + 1]
            out.append(nxt @ source.diffs[j] - target.diffs[j] @ comps[j])
        if constraint is not None:
            out.extend(constraint(comps))
        return out

    template = LinearTemplate(backend.ring, unknowns, residual)
    particular, basis = solution_space(template, bound)

    def build(assignment):
        return FactMorphism(source, target, [assignment[name] for name in names])

    return (build(particular) if particular is not None else None), [build(b) for b in basis]


def morphism_space(source: NFactorization, target: NFactorization, bound: int = 0) -> List[FactMorphism]:
    """Basis of the morphisms source -> target with entries of degree <= bound"""
    _, basis = solve_morphism(source, target, bound)
    logger.debug(f"📐 Hom space {source.describe()} -> {target.describe()}: dimension {len(basis)} at bound {bound}")
    return basis
