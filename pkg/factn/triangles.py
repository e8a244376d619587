"""
Right triangulated structure on the homotopy category (n even)
Suspension, mapping cones, cone triangles and the explicit constructions
behind the four axioms: contraction of the identity cone, rotation, the
filling morphism and the octahedron. Every construction comes with a
report function that re-checks its strict identities and its witnesses.
"""
import logging
from dataclasses import dataclass
from typing import List, Sequence

from factn.algebra import Matrix
from factn.exceptions import DimensionMismatchError, HomotopyError, ParityError
from factn.factcat import (
    FactMorphism,
    NFactorization,
    identity,
    validate_factorization,
    validate_morphism,
    zero_morphism,
)
from factn.homotopy import (
    Homotopy,
    negate_witness,
    require_verified,
    verify_homotopy,
    witness_shape,
)
from factn.schemas.report import CheckResult, Report, check

logger = logging.getLogger(__name__)


def require_even(n: int):
    if n % 2:
        raise ParityError(f"triangles need an even number of components, got n={n}")


def _blocks(ring, grid, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return Matrix.block(ring, grid, list(rows), list(cols))


# ============================================
# Suspension
# ============================================

def suspend(x: NFactorization) -> NFactorization:
    """Sigma X = X^1 -> ... -> X^(n-1) -> T(X^0) with every differential negated"""
    require_even(x.n)
    backend = x.backend
    objects = list(x.objects[1:]) + [backend.apply_T(x.objects[0])]
    diffs = [-d for d in x.diffs[1:]] + [-backend.apply_T(x.diffs[0])]
    return NFactorization(backend, objects, diffs)


def suspend_morphism(f: FactMorphism) -> FactMorphism:
    """Sigma f = (f^1, ..., f^(n-1), T(f^0))"""
    require_even(f.n)
    comps = list(f.comps[1:]) + [f.backend.apply_T(f.comps[0])]
    return FactMorphism(suspend(f.source), suspend(f.target), comps)


def suspend_homotopy(h: Homotopy) -> Homotopy:
    """Witness for Sigma f ~ Sigma g: (-s^1, ..., -s^(n-1), -T(s^0))"""
    diag = [-s for s in h.diag[1:]] + [-h.f.backend.apply_T(h.diag[0])]
    result = Homotopy(suspend_morphism(h.f), suspend_morphism(h.g), diag)
    return require_verified(result, "suspended witness")


def unsuspend(x: NFactorization) -> NFactorization:
    """
    Right rotation, inverse to Sigma when T is invertible

    Components T^-1(X^(n-1)), X^0, ..., X^(n-2) with differentials
    -epsilon T^-1(d^(n-1)), -d^0, ..., -d^(n-3), -eta d^(n-2).

    Raises:
        NoInverseDataError: T is not invertible
    """
    require_even(x.n)
    backend = x.backend
    data = backend.require_inverse()
    n = x.n
    first = data.apply_T_inv(x.objects[n - 1])
    objects = [first] + list(x.objects[:n - 1])
    diffs = [-(data.epsilon(x.objects[0]) @ data.apply_T_inv(x.diffs[n - 1]))]
    diffs.extend(-x.diffs[j - 1] for j in range(1, n - 1))
    diffs.append(-(data.eta(x.objects[n - 1]) @ x.diffs[n - 2]))
    return NFactorization(backend, objects, diffs)


def unsuspend_morphism(f: FactMorphism) -> FactMorphism:
    """(T^-1(f^(n-1)), f^0, ..., f^(n-2))"""
    require_even(f.n)
    data = f.backend.require_inverse()
    comps = [data.apply_T_inv(f.comps[-1])] + list(f.comps[:-1])
    return FactMorphism(unsuspend(f.source), unsuspend(f.target), comps)


# ============================================
# Mapping cones
# ============================================

@dataclass(frozen=True)
class ConeData:
    """C_f = Sigma X + Y with i_f: Y -> C_f and pi_f: C_f -> Sigma X"""
    morphism: FactMorphism
    cone: NFactorization
    inject: FactMorphism
    project: FactMorphism


def mapping_cone(f: FactMorphism) -> ConeData:
    """
    d_C^j = [[d_SigmaX^j, 0], [(Sigma f)^j, d_Y^j]]

    Raises:
        ParityError: odd n
    """
    require_even(f.n)
    backend = f.backend
    ring = backend.ring
    sx = suspend(f.source)
    y = f.target
    sf = suspend_morphism(f)
    n = f.n
    objects = [a + b for a, b in zip(sx.objects, y.objects)]
    diffs = [
        _blocks(
            ring,
            [[sx.diffs[j], None], [sf.comps[j], y.diffs[j]]],
            [sx.target_of(j).rank, y.target_of(j).rank],
            [sx.objects[j].rank, y.objects[j].rank],
        )
        for j in range(n)
    ]
    cone = NFactorization(backend, objects, diffs)
    inject = FactMorphism(y, cone, [
        _blocks(ring, [[None], [1]], [sx.objects[j].rank, y.objects[j].rank], [y.objects[j].rank])
        for j in range(n)
    ])
    project = FactMorphism(cone, sx, [
        _blocks(ring, [[1, None]], [sx.objects[j].rank], [sx.objects[j].rank, y.objects[j].rank])
        for j in range(n)
    ])
    logger.debug(f"🔺 Cone of {f.source.describe()} -> {y.describe()}: {cone.describe()}")
    return ConeData(f, cone, inject, project)


@dataclass(frozen=True)
class Triangle:
    """X -f-> Y -g-> Z -h-> Sigma X"""
    f: FactMorphism
    g: FactMorphism
    h: FactMorphism

    def __post_init__(self):
        if self.f.target != self.g.source or self.g.target != self.h.source:
            raise DimensionMismatchError("triangle morphisms do not chain")
        if self.h.target != suspend(self.f.source):
            raise DimensionMismatchError("third morphism must end at Sigma X")


def cone_triangle(f: FactMorphism) -> Triangle:
    """X -f-> Y -i_f-> C_f -pi_f-> Sigma X"""
    data = mapping_cone(f)
    return Triangle(f, data.inject, data.project)


def triangle_report(t: Triangle, prefix: str = "triangle") -> Report:
    """Validity of the three objects and the three morphisms"""
    report = Report()
    for name, m in (("f", t.f), ("g", t.g), ("h", t.h)):
        report.extend(validate_morphism(m).prefixed(f"{prefix}.{name}"))
    for name, x in (("X", t.f.source), ("Y", t.g.source), ("Z", t.h.source)):
        report.extend(validate_factorization(x).prefixed(f"{prefix}.{name}"))
    return report


def morphism_equal(name: str, a: FactMorphism, b: FactMorphism) -> CheckResult:
    """One check comparing two parallel morphisms; prints the first differing component"""
    for j, (x, y) in enumerate(zip(a.comps, b.comps)):
        if x != y:
            return check(name, False, index=j, lhs=x, rhs=y)
    return check(name, True)


# ============================================
# Identity cone contraction
# ============================================

def contract_identity_cone(x: NFactorization) -> Homotopy:
    """id ~ 0 on C_{Id_X} via s^j = [[0, 1], [0, 0]]"""
    require_even(x.n)
    data = mapping_cone(identity(x))
    cone = data.cone
    ring = x.backend.ring
    sx = suspend(x)
    diag = []
    for j in range(x.n):
        diag.append(_blocks(
            ring, [[None, 1], [None, None]],
            [sx.objects[j].rank, x.objects[j].rank],
            [sx.target_of(j).rank, x.target_of(j).rank],
        ))
    return Homotopy(identity(cone), zero_morphism(cone, cone), diag)


# ============================================
# Rotation
# ============================================

@dataclass(frozen=True)
class RotationData:
    """alpha: Sigma X -> C_{i_f} and beta back, with the two witnesses and the rotated triangle"""
    alpha: FactMorphism
    beta: FactMorphism
    witness_ab: Homotopy
    witness_nat: Homotopy
    rotated: Triangle
    cone: ConeData
    cone_of_inject: ConeData


def rotate(f: FactMorphism) -> RotationData:
    """
    Compare C_{i_f} = Sigma Y + Sigma X + Y with Sigma X

    alpha^j = [-(Sigma f)^j; 1; 0], beta^j = [0 1 0]; beta alpha = 1 holds on
    the nose, alpha beta ~ 1 via the identity block at (0, 2), and
    i_{i_f} ~ alpha pi_f via the identity block at (0, 1).
    """
    require_even(f.n)
    backend = f.backend
    ring = backend.ring
    n = f.n
    cf = mapping_cone(f)
    ci = mapping_cone(cf.inject)
    sx, sy, y = suspend(f.source), suspend(f.target), f.target
    sf = suspend_morphism(f)

    def sizes(j):
        return [sy.objects[j].rank, sx.objects[j].rank, y.objects[j].rank]

    def next_sizes(j):
        return [sy.target_of(j).rank, sx.target_of(j).rank, y.target_of(j).rank]

    alpha = FactMorphism(sx, ci.cone, [
        _blocks(ring, [[-sf.comps[j]], [1], [None]], sizes(j), [sx.objects[j].rank])
        for j in range(n)
    ])
    beta = FactMorphism(ci.cone, sx, [
        _blocks(ring, [[None, 1, None]], [sx.objects[j].rank], sizes(j))
        for j in range(n)
    ])
    witness_ab = Homotopy(identity(ci.cone), alpha @ beta, [
        _blocks(ring, [[None, None, 1], [None] * 3, [None] * 3], sizes(j), next_sizes(j))
        for j in range(n)
    ])
    witness_nat = Homotopy(ci.inject, alpha @ cf.project, [
        _blocks(ring, [[None, 1], [None, None], [None, None]], sizes(j),
                [sx.target_of(j).rank, y.target_of(j).rank])
        for j in range(n)
    ])
    rotated = Triangle(cf.inject, cf.project, -suspend_morphism(f))
    return RotationData(alpha, beta, witness_ab, witness_nat, rotated, cf, ci)


def rotation_report(data: RotationData, prefix: str = "RTR2") -> Report:
    report = Report()
    sx = data.alpha.source
    report.add(morphism_equal(f"{prefix}.beta_alpha_id", data.beta @ data.alpha, identity(sx)))
    sf = suspend_morphism(data.cone.morphism)
    report.add(morphism_equal(f"{prefix}.pi_alpha_minus_sigma_f", data.cone_of_inject.project @ data.alpha, -sf))
    report.extend(verify_homotopy(data.witness_ab).prefixed(f"{prefix}.witness_ab"))
    report.extend(verify_homotopy(data.witness_nat).prefixed(f"{prefix}.witness_nat"))
    report.extend(triangle_report(data.rotated, f"{prefix}.rotated").checks)
    return report


# ============================================
# Filling morphism
# ============================================

def fill_morphism(
    f1: FactMorphism,
    f2: FactMorphism,
    alpha: FactMorphism,
    beta: FactMorphism,
    s: Homotopy
) -> FactMorphism:
    """
    gamma: C_{f1} -> C_{f2} with gamma^j = [[(Sigma alpha)^j, 0], [s^j, beta^j]]

    s must witness beta f1 ~ f2 alpha.

    Raises:
        HomotopyError: s is not a verified witness for that pair
    """
    require_even(f1.n)
    if s.f != beta @ f1 or s.g != f2 @ alpha:
        raise HomotopyError("witness is not a homotopy between beta f1 and f2 alpha")
    require_verified(s, "filling witness")
    c1, c2 = mapping_cone(f1), mapping_cone(f2)
    ring = f1.backend.ring
    sa = suspend_morphism(alpha)
    sx1, y1 = suspend(f1.source), f1.target
    sx2, y2 = suspend(f2.source), f2.target
    comps = [
        _blocks(
            ring,
            [[sa.comps[j], None], [s.diag[j], beta.comps[j]]],
            [sx2.objects[j].rank, y2.objects[j].rank],
            [sx1.objects[j].rank, y1.objects[j].rank],
        )
        for j in range(f1.n)
    ]
    return FactMorphism(c1.cone, c2.cone, comps)


def fill_report(
    f1: FactMorphism,
    f2: FactMorphism,
    alpha: FactMorphism,
    beta: FactMorphism,
    gamma: FactMorphism,
    prefix: str = "RTR3"
) -> Report:
    """gamma valid, gamma i_{f1} = i_{f2} beta and pi_{f2} gamma = Sigma alpha pi_{f1}"""
    c1, c2 = mapping_cone(f1), mapping_cone(f2)
    report = Report()
    report.extend(validate_morphism(gamma).prefixed(f"{prefix}.gamma"))
    report.add(morphism_equal(f"{prefix}.left_square", gamma @ c1.inject, c2.inject @ beta))
    report.add(morphism_equal(f"{prefix}.right_square", c2.project @ gamma, suspend_morphism(alpha) @ c1.project))
    return report


# ============================================
# Octahedron
# ============================================

@dataclass(frozen=True)
class OctahedronData:
    f: FactMorphism
    g: FactMorphism
    alpha: FactMorphism
    beta: FactMorphism
    gamma: FactMorphism
    sigma: FactMorphism
    tau: FactMorphism
    w_sigma_tau: Homotopy
    w_i_alpha: Homotopy
    cone_f: ConeData
    cone_g: ConeData
    cone_gf: ConeData
    cone_alpha: ConeData


def octahedron(f: FactMorphism, g: FactMorphism) -> OctahedronData:
    """
    Octahedral data for X -f-> Y -g-> Z

    alpha = [[1, 0], [0, g]]: C_f -> C_gf, beta = [[Sigma f, 0], [0, 1]]:
    C_gf -> C_g and gamma = Sigma(i_f) pi_g. The cone of alpha splits as
    Sigma Sigma X + Sigma Y + Sigma X + Z; sigma and tau compare it with C_g.
    """
    require_even(f.n)
    if f.target != g.source:
        raise DimensionMismatchError("f and g are not composable")
    backend = f.backend
    ring = backend.ring
    n = f.n
    gf = g @ f
    cf, cg, cgf = mapping_cone(f), mapping_cone(g), mapping_cone(gf)
    x, y, z = f.source, f.target, g.target
    sx, sy = suspend(x), suspend(y)
    ssx = suspend(sx)
    sf = suspend_morphism(f)

    alpha = FactMorphism(cf.cone, cgf.cone, [
        _blocks(ring, [[1, None], [None, g.comps[j]]],
                [sx.objects[j].rank, z.objects[j].rank], [sx.objects[j].rank, y.objects[j].rank])
        for j in range(n)
    ])
    beta = FactMorphism(cgf.cone, cg.cone, [
        _blocks(ring, [[sf.comps[j], None], [None, 1]],
                [sy.objects[j].rank, z.objects[j].rank], [sx.objects[j].rank, z.objects[j].rank])
        for j in range(n)
    ])
    gamma = suspend_morphism(cf.inject) @ cg.project
    ca = mapping_cone(alpha)

    def four(j):
        return [ssx.objects[j].rank, sy.objects[j].rank, sx.objects[j].rank, z.objects[j].rank]

    def four_next(j):
        return [ssx.target_of(j).rank, sy.target_of(j).rank, sx.target_of(j).rank, z.target_of(j).rank]

    sigma = FactMorphism(cg.cone, ca.cone, [
        _blocks(ring, [[None, None], [1, None], [None, None], [None, 1]],
                four(j), [sy.objects[j].rank, z.objects[j].rank])
        for j in range(n)
    ])
    tau = FactMorphism(ca.cone, cg.cone, [
        _blocks(ring, [[None, 1, sf.comps[j], None], [None, None, None, 1]],
                [sy.objects[j].rank, z.objects[j].rank], four(j))
        for j in range(n)
    ])
    w_sigma_tau = Homotopy(identity(ca.cone), sigma @ tau, [
        _blocks(ring, [[None, None, 1, None]] + [[None] * 4] * 3, four(j), four_next(j))
        for j in range(n)
    ])
    w_i_alpha = Homotopy(ca.inject, sigma @ beta, [
        _blocks(ring, [[1, None]] + [[None, None]] * 3, four(j),
                [sx.target_of(j).rank, z.target_of(j).rank])
        for j in range(n)
    ])
    logger.debug(f"🔷 Octahedron on {x.describe()} -> {y.describe()} -> {z.describe()}")
    return OctahedronData(f, g, alpha, beta, gamma, sigma, tau, w_sigma_tau, w_i_alpha, cf, cg, cgf, ca)


def octahedron_report(data: OctahedronData, prefix: str = "RTR4") -> Report:
    """The commuting ladder, tau sigma = 1, pi_alpha sigma = gamma and both witnesses"""
    cf, cg, cgf, ca = data.cone_f, data.cone_g, data.cone_gf, data.cone_alpha
    sf = suspend_morphism(data.f)
    report = Report()
    report.extend(validate_morphism(data.alpha).prefixed(f"{prefix}.alpha"))
    report.extend(validate_morphism(data.beta).prefixed(f"{prefix}.beta"))
    report.add(morphism_equal(f"{prefix}.ladder_alpha_inject", data.alpha @ cf.inject, cgf.inject @ data.g))
    report.add(morphism_equal(f"{prefix}.ladder_beta_inject", data.beta @ cgf.inject, cg.inject))
    report.add(morphism_equal(f"{prefix}.ladder_alpha_project", cgf.project @ data.alpha, cf.project))
    report.add(morphism_equal(f"{prefix}.ladder_beta_project", sf @ cgf.project, cg.project @ data.beta))
    report.add(morphism_equal(f"{prefix}.tau_sigma_id", data.tau @ data.sigma, identity(cg.cone)))
    report.add(morphism_equal(f"{prefix}.pi_alpha_sigma_gamma", ca.project @ data.sigma, data.gamma))
    report.extend(verify_homotopy(data.w_sigma_tau).prefixed(f"{prefix}.w_sigma_tau"))
    report.extend(verify_homotopy(data.w_i_alpha).prefixed(f"{prefix}.w_i_alpha"))
    return report


# ============================================
# Cones of homotopic morphisms
# ============================================

@dataclass(frozen=True)
class ConeIsoData:
    lam: FactMorphism
    mu: FactMorphism
    w_mu_lam: Homotopy
    w_lam_mu: Homotopy


def cone_homotopy_iso(f1: FactMorphism, f2: FactMorphism, s: Homotopy) -> ConeIsoData:
    """
    C_{f1} and C_{f2} for a witness s of f1 ~ f2

    lambda^j = [[1, 0], [s^j, 1]] and mu^j = [[1, 0], [-s^j, 1]] are strict
    inverses, so both round-trip witnesses are zero.
    """
    if s.f != f1 or s.g != f2:
        raise HomotopyError("witness does not relate f1 and f2")
    x, y = f1.source, f1.target
    id_x, id_y = identity(x), identity(y)
    forward = Homotopy(id_y @ f1, f2 @ id_x, s.diag)
    backward = negate_witness(forward)
    lam = fill_morphism(f1, f2, id_x, id_y, forward)
    mu = fill_morphism(f2, f1, id_x, id_y, backward)
    c1, c2 = lam.source, lam.target
    w_mu_lam = Homotopy(mu @ lam, identity(c1), _zero_diag(mu @ lam))
    w_lam_mu = Homotopy(lam @ mu, identity(c2), _zero_diag(lam @ mu))
    return ConeIsoData(lam, mu, w_mu_lam, w_lam_mu)


def _zero_diag(f: FactMorphism) -> List[Matrix]:
    return [Matrix.zeros(f.backend.ring, *witness_shape(f, j)) for j in range(f.n)]


def printed_cone_iso_report(f1: FactMorphism, f2: FactMorphism, s: Homotopy) -> Report:
    """
    Check the variant with blocks [[1, 0], [s^j, 0]] and [[1, 0], [-s^j, 0]]
    alongside the working one; the variant fails to invert
    """
    require_verified(s, "cone witness")
    ring = f1.backend.ring
    c1, c2 = mapping_cone(f1), mapping_cone(f2)
    sx, y = suspend(f1.source), f1.target
    n = f1.n

    def variant(sign, source, target):
        comps = [
            _blocks(ring, [[1, None], [s.diag[j].scale(sign), None]],
                    [sx.objects[j].rank, y.objects[j].rank], [sx.objects[j].rank, y.objects[j].rank])
            for j in range(n)
        ]
        return FactMorphism(source, target, comps, validate=False)

    lam, mu = variant(1, c1.cone, c2.cone), variant(-1, c2.cone, c1.cone)
    report = Report()
    report.extend(validate_morphism(lam).prefixed("printed.lambda"))
    report.extend(validate_morphism(mu).prefixed("printed.mu"))
    report.add(morphism_equal("printed.mu_lambda_id", mu @ lam, identity(c1.cone)))
    corrected = cone_homotopy_iso(f1, f2, s)
    report.add(morphism_equal("corrected.mu_lambda_id", corrected.mu @ corrected.lam, identity(c1.cone)))
    report.add(morphism_equal("corrected.lambda_mu_id", corrected.lam @ corrected.mu, identity(c2.cone)))
    return report
