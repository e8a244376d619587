"""
Interval factorizations and the Frobenius structure
theta^s(C) puts T^-1 C in components 0..s-1 and C in components s..n-1,
joined by identities, omega^(-1) at the step into component s and eta at
the end (theta^0 closes with omega_C). theta^s is left adjoint to the
projection pr^s and right adjoint to pr^(n-1) S^s; the transposes below
are the explicit hom-set bijections. Covers, lifting probes and the
stable-category zero test run over field-scalar backends.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, NamedTuple, Optional

from factn.algebra import Matrix
from factn.ambient import Backend, ObjectHandle
from factn.exceptions import DimensionMismatchError
from factn.factcat import (
    Conflation,
    FactMorphism,
    NFactorization,
    cokernel,
    copairing,
    direct_sum,
    identity,
    morphism_space,
    pairing,
    random_factorization,
    random_morphism,
    solve_morphism,
)
from factn.factcat.exact import (
    deflation_surjectivity,
    inflation_injectivity,
    require_field_backend,
)
from factn.factcat.generators import default_morphism_bound
from factn.homotopy import Homotopy
from factn.schemas.report import Report, check
from factn.triangles import morphism_equal, require_even
from factn.utils.seeding import derive_rng, derive_seed

logger = logging.getLogger(__name__)


def _check_index(s: int, n: int):
    if not 0 <= s < n:
        raise DimensionMismatchError(f"index {s} outside 0..{n - 1}")


# ============================================
# Interval factorizations
# ============================================

def theta_s(backend: Backend, c: ObjectHandle, n: int, s: int) -> NFactorization:
    """
    Raises:
        DimensionMismatchError: s outside 0..n-1
        NoInverseDataError: s >= 1 and T has no quasi-inverse
    """
    if n < 2:
        raise DimensionMismatchError(f"n must be at least 2, got {n}")
    _check_index(s, n)
    if s == 0:
        diffs = [backend.identity(c)] * (n - 1) + [backend.omega(c)]
        return NFactorization(backend, [c] * n, diffs)
    data = backend.require_inverse()
    shifted = data.apply_T_inv(c)
    objects = [shifted] * s + [c] * (n - s)
    diffs = []
    for j in range(n - 1):
        if j == s - 1:
            diffs.append(data.omega_inv(c))
        else:
            diffs.append(backend.identity(objects[j]))
    diffs.append(data.eta(c))
    return NFactorization(backend, objects, diffs)


def theta0(backend: Backend, c: ObjectHandle, n: int) -> NFactorization:
    """C -1-> C -1-> ... -> C -omega_C-> T(C)"""
    return theta_s(backend, c, n, 0)


def theta1(backend: Backend, c: ObjectHandle, n: int) -> NFactorization:
    """T^-1 C -omega^(-1)-> C -1-> ... -> C -eta-> T T^-1 C"""
    return theta_s(backend, c, n, 1)


def theta_s_morphism(
    backend: Backend,
    u: Matrix,
    source: ObjectHandle,
    target: ObjectHandle,
    n: int,
    s: int
) -> FactMorphism:
    """theta^s(u): T^-1(u) below index s, u from index s on"""
    if u.shape != (target.rank, source.rank):
        raise DimensionMismatchError(f"u is {u.rows}x{u.cols}, expected {target.rank}x{source.rank}")
    comps = [u] * n
    if s:
        shifted = backend.require_inverse().apply_T_inv(u)
        comps = [shifted] * s + [u] * (n - s)
    return FactMorphism(theta_s(backend, source, n, s), theta_s(backend, target, n, s), comps)


def theta0_contraction(backend: Backend, c: ObjectHandle, n: int) -> Homotopy:
    """id ~ 0 on theta^0(C) via s^j = 1 for even j and 0 for odd j (n even)"""
    require_even(n)
    x = theta0(backend, c, n)
    ring = backend.ring
    diag = []
    for j in range(n):
        if j == n - 1:
            diag.append(Matrix.zeros(ring, c.rank, backend.apply_T(c).rank))
        else:
            diag.append(backend.identity(c) if j % 2 == 0 else backend.zero(c, c))
    zero = FactMorphism(x, x, [backend.zero(c, c)] * n)
    return Homotopy(identity(x), zero, diag)


# ============================================
# Projections
# ============================================

def project(x: NFactorization, s: int) -> ObjectHandle:
    _check_index(s, x.n)
    return x.objects[s]


def project_morphism(f: FactMorphism, s: int) -> Matrix:
    _check_index(s, f.n)
    return f.comps[s]


def shifted_last(x: NFactorization, s: int) -> ObjectHandle:
    """pr^(n-1) S^s (X): X^(n-1) for s = 0, T(X^(s-1)) otherwise"""
    _check_index(s, x.n)
    if s == 0:
        return x.objects[x.n - 1]
    return x.backend.apply_T(x.objects[s - 1])


def shifted_last_morphism(f: FactMorphism, s: int) -> Matrix:
    _check_index(s, f.n)
    if s == 0:
        return f.comps[f.n - 1]
    return f.backend.apply_T(f.comps[s - 1])


# ============================================
# Adjunctions
# ============================================

class AdjunctionId(Enum):
    """The four adjoint pairs (side, s): theta^s left or right adjoint"""
    THETA0_PR0 = 1
    THETA1_PR1 = 2
    PR_LAST_THETA0 = 3
    PR_LAST_S_THETA1 = 4

    @property
    def side(self) -> str:
        return "left" if self.value <= 2 else "right"

    @property
    def s(self) -> int:
        return (self.value - 1) % 2


def left_transpose(g: Matrix, c: ObjectHandle, x: NFactorization, s: int) -> FactMorphism:
    """
    Hom(C, X^s) -> Hom(theta^s(C), X)

    g^s = g and g^j = d^(j-1)...d^s g above s; for s >= 1 the bottom is
    g^0 = epsilon_{X^0} T^-1(d^(n-1)...d^s g) and g^j = d^(j-1)...d^0 g^0 below s.
    """
    _check_index(s, x.n)
    backend = x.backend
    n = x.n
    if g.shape != (x.objects[s].rank, c.rank):
        raise DimensionMismatchError(f"g is {g.rows}x{g.cols}, expected {x.objects[s].rank}x{c.rank}")
    comps: List[Optional[Matrix]] = [None] * n
    for j in range(s, n):
        comps[j] = x.chain(s, j) @ g
    if s:
        data = backend.require_inverse()
        bottom = data.epsilon(x.objects[0]) @ data.apply_T_inv(x.chain(s, n) @ g)
        for j in range(s):
            comps[j] = x.chain(0, j) @ bottom
    return FactMorphism(theta_s(backend, c, n, s), x, comps)


def left_untranspose(phi: FactMorphism, s: int) -> Matrix:
    """Hom(theta^s(C), X) -> Hom(C, X^s)"""
    return project_morphism(phi, s)


def right_transpose(g: Matrix, c: ObjectHandle, x: NFactorization, s: int) -> FactMorphism:
    """
    Hom(pr^(n-1) S^s X, C) -> Hom(X, theta^s(C))

    For s = 0: g^j = g d^(n-2)...d^j. For s >= 1:
    g^(s-1) = T^-1(g) epsilon^-1, g^j = g^(s-1) d^(s-2)...d^j below s-1 and
    g^j = g T(d^(s-2)...d^0) d^(n-1)...d^j from s on.
    """
    _check_index(s, x.n)
    backend = x.backend
    n = x.n
    source = shifted_last(x, s)
    if g.shape != (c.rank, source.rank):
        raise DimensionMismatchError(f"g is {g.rows}x{g.cols}, expected {c.rank}x{source.rank}")
    if s == 0:
        comps = [g @ x.chain(j, n - 1) for j in range(n)]
        return FactMorphism(x, theta_s(backend, c, n, 0), comps)
    data = backend.require_inverse()
    comps: List[Optional[Matrix]] = [None] * n
    top = data.apply_T_inv(g) @ data.epsilon_inv(x.objects[s - 1])
    for j in range(s):
        comps[j] = top @ x.chain(j, s - 1)
    wrap = g @ backend.apply_T(x.chain(0, s - 1))
    for j in range(s, n):
        comps[j] = wrap @ x.chain(j, n)
    return FactMorphism(x, theta_s(backend, c, n, s), comps)


def right_untranspose(phi: FactMorphism, s: int) -> Matrix:
    """Hom(X, theta^s(C)) -> Hom(pr^(n-1) S^s X, C)"""
    _check_index(s, phi.n)
    if s == 0:
        return phi.comps[phi.n - 1]
    data = phi.backend.require_inverse()
    c = phi.target.objects[s]
    return data.eta_inv(c) @ phi.backend.apply_T(phi.comps[s - 1])


def transpose(
    adj: AdjunctionId,
    direction: str,
    m,
    x: Optional[NFactorization] = None,
    c: Optional[ObjectHandle] = None
):
    """
    Forward sends a matrix to a morphism of factorizations (x and c are
    needed); backward sends a morphism back to a matrix.
    """
    if direction == "forward":
        if x is None or c is None:
            raise DimensionMismatchError("forward transpose needs the factorization and the object")
        if adj.side == "left":
            return left_transpose(m, c, x, adj.s)
        return right_transpose(m, c, x, adj.s)
    if direction == "backward":
        if adj.side == "left":
            return left_untranspose(m, adj.s)
        return right_untranspose(m, adj.s)
    raise ValueError(f"direction must be forward or backward, got {direction!r}")


def naturality_report(
    side: str,
    s: int,
    g: Matrix,
    c: ObjectHandle,
    x: NFactorization,
    h: FactMorphism,
    u: Matrix,
    other: ObjectHandle
) -> Report:
    """
    Both naturality rectangles of the (side, s) adjunction

    left:  g: C -> X^s, h: X -> X', u: C' -> C (other = C')
    right: g: pr S^s X -> C, h: X' -> X, u: C -> C' (other = C')
    """
    backend = x.backend
    n = x.n
    report = Report()
    prefix = f"naturality.{side}{s}"
    if side == "left":
        lhs = left_transpose(project_morphism(h, s) @ g, c, h.target, s)
        rhs = h @ left_transpose(g, c, x, s)
        report.add(morphism_equal(f"{prefix}.factorization", lhs, rhs))
        lhs = left_transpose(g @ u, other, x, s)
        rhs = left_transpose(g, c, x, s) @ theta_s_morphism(backend, u, other, c, n, s)
        report.add(morphism_equal(f"{prefix}.object", lhs, rhs))
    else:
        lhs = right_transpose(g @ shifted_last_morphism(h, s), c, h.source, s)
        rhs = right_transpose(g, c, x, s) @ h
        report.add(morphism_equal(f"{prefix}.factorization", lhs, rhs))
        lhs = right_transpose(u @ g, other, x, s)
        rhs = theta_s_morphism(backend, u, c, other, n, s) @ right_transpose(g, c, x, s)
        report.add(morphism_equal(f"{prefix}.object", lhs, rhs))
    return report


# ============================================
# Canonical covers
# ============================================

@dataclass(frozen=True)
class CoverData:
    """deflation theta-sum -> X, or inflation X -> theta-sum"""
    mode: str
    obj: NFactorization
    morphism: FactMorphism
    report: Report


def _cover_indices(n: int, mode: str) -> List[int]:
    if mode == "paper":
        return [0, 1]
    if mode == "full":
        return list(range(n))
    raise ValueError(f"mode must be paper or full, got {mode!r}")


def canonical_deflation(x: NFactorization, mode: str = "full") -> CoverData:
    """
    Copairing of the transposes of id_{X^s}: theta^s(X^s) -> X

    mode paper uses s in {0, 1}, mode full every s. Whether the result is a
    deflation is checked, not assumed.
    """
    require_field_backend(identity(x))
    maps = [left_transpose(x.backend.identity(x.objects[s]), x.objects[s], x, s)
            for s in _cover_indices(x.n, mode)]
    morphism = copairing(maps)
    report = Report().extend(deflation_surjectivity(morphism, f"deflation.{mode}.surjective"))
    if not report.ok:
        logger.warning(f"⚠️ {mode} cover of {x.describe()} is not a deflation: {report.describe_failure()}")
    return CoverData(mode, morphism.source, morphism, report)


def canonical_inflation(x: NFactorization, mode: str = "full") -> CoverData:
    """Pairing of the transposes of the identities of pr^(n-1) S^s X: X -> theta^s(...)"""
    require_field_backend(identity(x))
    maps = []
    for s in _cover_indices(x.n, mode):
        target = shifted_last(x, s)
        maps.append(right_transpose(x.backend.identity(target), target, x, s))
    morphism = pairing(maps)
    report = Report().extend(inflation_injectivity(morphism, f"inflation.{mode}.injective"))
    if not report.ok:
        logger.warning(f"⚠️ {mode} cover of {x.describe()} is not an inflation: {report.describe_failure()}")
    return CoverData(mode, morphism.target, morphism, report)


# ============================================
# Lifting probes and the stable category
# ============================================

class ProbeResult(NamedTuple):
    found: bool
    morphism: Optional[FactMorphism]


def probe_projective(p: NFactorization, m: FactMorphism, c: Conflation, bound: int = 0) -> ProbeResult:
    """Lift m: P -> Z through the deflation c.p: Y -> Z"""
    require_field_backend(m, c.p)
    if m.source != p or m.target != c.p.target:
        raise DimensionMismatchError("m must run from P to the end of the conflation")
    lift, _ = solve_morphism(p, c.p.source, bound, lambda comps: [
        c.p.comps[j] @ comps[j] - m.comps[j] for j in range(p.n)
    ])
    return ProbeResult(lift is not None, lift)


def probe_injective(i: NFactorization, m: FactMorphism, c: Conflation, bound: int = 0) -> ProbeResult:
    """Extend m: X -> I along the inflation c.l: X -> Y"""
    require_field_backend(m, c.l)
    if m.target != i or m.source != c.l.source:
        raise DimensionMismatchError("m must run from the start of the conflation to I")
    extension, _ = solve_morphism(c.l.target, i, bound, lambda comps: [
        comps[j] @ c.l.comps[j] - m.comps[j] for j in range(i.n)
    ])
    return ProbeResult(extension is not None, extension)


def stably_zero(f: FactMorphism, bound: int = 0) -> bool:
    """f factors through a projective-injective object, i.e. extends along the full canonical inflation"""
    require_field_backend(f)
    cover = canonical_inflation(f.source, "full")
    extension, _ = solve_morphism(cover.obj, f.target, bound, lambda comps: [
        comps[j] @ cover.morphism.comps[j] - f.comps[j] for j in range(f.n)
    ])
    return extension is not None


def is_projective_injective(x: NFactorization) -> bool:
    return stably_zero(identity(x))


def random_conflation(backend: Backend, n: int, max_rank: int, seed: int, split: bool = False) -> Conflation:
    """
    Non-split: the full canonical inflation X -> J with its cokernel.
    Split: X -> X + Y -> Y twisted by the automorphism 1 + i_Y h p_X.
    """
    rng = derive_rng(seed, "conflation", n)
    x = random_factorization(backend, n, max_rank, derive_seed(rng))
    if not split:
        cover = canonical_inflation(x, "full")
        return Conflation(cover.morphism, cokernel(cover.morphism).projection)
    y = random_factorization(backend, n, max_rank, derive_seed(rng))
    bp = direct_sum(x, y)
    h = random_morphism(x, y, derive_seed(rng))
    twist = bp.injections[1] @ h @ bp.projections[0]
    a = identity(bp.obj) + twist
    a_inv = identity(bp.obj) - twist
    return Conflation(a @ bp.injections[0], bp.projections[1] @ a_inv)


def adjunction_round_trip(
    adj: AdjunctionId,
    g: Matrix,
    c: ObjectHandle,
    x: NFactorization,
    bound: Optional[int] = None
) -> Report:
    """
    backward(forward(g)) = g, and forward(backward(phi)) = phi for every
    basis morphism phi of Hom(theta^s(C), X) (left) or Hom(X, theta^s(C))
    (right) within the degree bound
    """
    phi = transpose(adj, "forward", g, x, c)
    back = transpose(adj, "backward", phi)
    report = Report()
    report.add(check(f"adjunction.{adj.name}.backward_forward", back == g, lhs=back, rhs=g))
    if bound is None:
        bound = default_morphism_bound(x.backend)
    theta = theta_s(x.backend, c, x.n, adj.s)
    space = morphism_space(theta, x, bound) if adj.side == "left" else morphism_space(x, theta, bound)
    for k, basis in enumerate(space):
        again = transpose(adj, "forward", transpose(adj, "backward", basis), x, c)
        report.add(morphism_equal(f"adjunction.{adj.name}.forward_backward.{k}", again, basis))
    return report
