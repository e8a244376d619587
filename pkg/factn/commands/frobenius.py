"""
Frobenius commands
Interval factorizations, projections, adjunction transposes, canonical
covers, lifting probes and the stable-category zero test.
"""
import logging

from factn.ambient import ObjectHandle
from factn.commands.router import CommandContext, CommandRouter, add_backend_arguments
from factn.exceptions import UsageError
from factn.factcat import (
    Conflation,
    is_conflation,
    random_factorization,
    random_morphism,
    validate_factorization,
)
from factn.factcat.generators import default_morphism_bound
from factn.frobenius import (
    AdjunctionId,
    adjunction_round_trip,
    canonical_deflation,
    canonical_inflation,
    is_projective_injective,
    naturality_report,
    probe_injective,
    probe_projective,
    project,
    project_morphism,
    random_conflation,
    shifted_last,
    shifted_last_morphism,
    stably_zero,
    theta0_contraction,
    theta_s,
    transpose,
)
from factn.homotopy import verify_homotopy
from factn.repositories import Document
from factn.schemas.report import Report, check
from factn.triangles import morphism_equal
from factn.utils.seeding import derive_rng, derive_seed

logger = logging.getLogger(__name__)

router = CommandRouter("frobenius")


def _object_artifact(c: ObjectHandle) -> dict:
    return {"rank": c.rank, "degrees": list(c.degrees) if c.degrees is not None else None}


# ============================================
# Interval factorizations and projections
# ============================================

def _theta_arguments(parser):
    add_backend_arguments(parser)
    parser.add_argument("--s", type=int, default=0, help="Index s, 0 <= s < n")
    parser.add_argument("--rank", type=int, default=1, help="Rank of C")
    parser.add_argument("--contract", action="store_true", help="Also verify id ~ 0 on theta^0(C)")


@router.command(
    "theta",
    help="theta^s(C) for a free C of rank --rank",
    operations=("theta0", "theta1", "theta_s", "theta0_contraction"),
    arguments=_theta_arguments,
)
def theta(ctx: CommandContext) -> Report:
    backend = ctx.backend()
    n, s = ctx.n(), ctx.args.s
    if ctx.args.rank < 0:
        raise UsageError("--rank must be non-negative")
    c = backend.make_object(ctx.args.rank)
    x = theta_s(backend, c, n, s)
    report = Report().extend(validate_factorization(x).prefixed(f"theta{s}"))
    if ctx.args.contract:
        if s != 0:
            raise UsageError("--contract applies to s = 0 only")
        report.extend(verify_homotopy(theta0_contraction(backend, c, n)).prefixed("theta0.contraction"))
    report.artifacts["theta"] = ctx.factorization_artifact(x)
    return report


def _project_arguments(parser):
    parser.add_argument("--s", type=int, default=0, help="Component index")
    parser.add_argument("--shifted", action="store_true", help="Project with pr^(n-1) S^s instead of pr^s")


@router.command(
    "project",
    help="Component s of --x or --f",
    operations=("project", "project_morphism", "shifted_last", "shifted_last_morphism"),
    arguments=_project_arguments,
)
def project_command(ctx: CommandContext) -> Report:
    s = ctx.args.s
    report = Report()
    if ctx.args.f:
        f = ctx.morphism("f")
        m = shifted_last_morphism(f, s) if ctx.args.shifted else project_morphism(f, s)
        report.artifacts["component"] = m.to_strings()
    else:
        x = ctx.factorization("x")
        c = shifted_last(x, s) if ctx.args.shifted else project(x, s)
        report.artifacts["component"] = _object_artifact(c)
    report.add(check("project.component", True, index=s))
    return report


# ============================================
# Adjunctions
# ============================================

def _transpose_arguments(parser):
    parser.add_argument("--adj", type=int, choices=[1, 2, 3, 4], required=True,
                        help="1: theta0 -| pr0, 2: theta1 -| pr1, 3: pr S^0 -| theta0, 4: pr S^1 -| theta1")
    parser.add_argument("--dir", choices=["fwd", "bwd"], required=True, help="Direction of the bijection")
    parser.add_argument("--rank", type=int, default=1, help="Rank of C for the forward direction")


def _transpose_forward(ctx: CommandContext, adj: AdjunctionId) -> Report:
    """Random g on C and --x; checks both round trips and both naturality rectangles"""
    x = ctx.factorization("x")
    backend = x.backend
    seed = ctx.seed()
    rng = derive_rng(seed, "transpose", adj.value)
    degree = default_morphism_bound(backend)
    max_rank = ctx.settings.MAX_RANK
    c = backend.make_object(ctx.args.rank)
    other = backend.random_object(rng, max_rank)
    x2 = random_factorization(backend, x.n, max_rank, derive_seed(rng))
    s = adj.s
    if adj.side == "left":
        g = backend.random_matrix(rng, x.objects[s].rank, c.rank, degree)
        h = random_morphism(x, x2, derive_seed(rng))
        u = backend.random_matrix(rng, c.rank, other.rank, degree)
    else:
        g = backend.random_matrix(rng, c.rank, shifted_last(x, s).rank, degree)
        h = random_morphism(x2, x, derive_seed(rng))
        u = backend.random_matrix(rng, other.rank, c.rank, degree)
    report = Report(seed=seed)
    report.extend(adjunction_round_trip(adj, g, c, x).checks)
    report.extend(naturality_report(adj.side, s, g, c, x, h, u, other).checks)
    report.artifacts["transpose"] = ctx.morphism_artifact(transpose(adj, "forward", g, x, c))
    return report


def _transpose_backward(ctx: CommandContext, adj: AdjunctionId) -> Report:
    """--f is a morphism theta^s(C) -> X (left) or X -> theta^s(C) (right)"""
    phi = ctx.morphism("f")
    s = adj.s
    if adj.side == "left":
        c, x = phi.source.objects[s], phi.target
        expected = theta_s(phi.backend, c, phi.n, s)
        end = phi.source
    else:
        c, x = phi.target.objects[s], phi.source
        expected = theta_s(phi.backend, c, phi.n, s)
        end = phi.target
    report = Report()
    report.add(check(f"adjunction.{adj.name}.theta_end", end == expected,
                     detail=None if end == expected else f"--f does not touch theta^{s}(C)"))
    if not report.ok:
        return report
    g = transpose(adj, "backward", phi)
    report.add(morphism_equal(f"adjunction.{adj.name}.forward_backward", transpose(adj, "forward", g, x, c), phi))
    report.artifacts["transpose"] = g.to_strings()
    return report


@router.command(
    "transpose",
    help="Hom-set bijection of an adjoint pair, forward on random data or backward on --f",
    operations=("transpose", "adjunction_round_trip", "naturality_report"),
    arguments=_transpose_arguments,
)
def transpose_command(ctx: CommandContext) -> Report:
    adj = AdjunctionId(ctx.args.adj)
    if ctx.args.dir == "fwd":
        return _transpose_forward(ctx, adj)
    return _transpose_backward(ctx, adj)


# ============================================
# Covers and probes
# ============================================

def _frobenius_arguments(parser):
    kind = parser.add_mutually_exclusive_group(required=True)
    kind.add_argument("--deflation", action="store_true", help="Cover theta-sum -> X")
    kind.add_argument("--inflation", action="store_true", help="Cover X -> theta-sum")
    parser.add_argument("--mode", choices=["paper", "full"], default="full",
                        help="paper: s in {0, 1}; full: every s")


@router.command(
    "frobenius",
    help="Canonical deflation onto --x or inflation out of --x",
    operations=("canonical_deflation", "canonical_inflation"),
    arguments=_frobenius_arguments,
)
def frobenius(ctx: CommandContext) -> Report:
    x = ctx.factorization("x")
    mode = ctx.args.mode
    cover = canonical_deflation(x, mode) if ctx.args.deflation else canonical_inflation(x, mode)
    report = Report().extend(cover.report.checks)
    report.extend(validate_factorization(cover.obj).prefixed("cover"))
    report.artifacts["cover"] = ctx.factorization_artifact(cover.obj)
    return report


def _probe_arguments(parser):
    kind = parser.add_mutually_exclusive_group(required=True)
    kind.add_argument("--projective", action="store_true", help="Lift --f: --x -> Z through --p")
    kind.add_argument("--injective", action="store_true", help="Extend --f: X -> --x along --l")


@router.command(
    "probe",
    help="Lifting test of --x against the conflation --l, --p",
    operations=("probe_projective", "probe_injective"),
    arguments=_probe_arguments,
)
def probe(ctx: CommandContext) -> Report:
    x, m = ctx.factorization("x"), ctx.morphism("f")
    conflation = Conflation(ctx.morphism("l"), ctx.morphism("p"))
    report = Report().extend(is_conflation(conflation).checks)
    if not report.ok:
        return report
    bound = ctx.bound() or 0
    if ctx.args.projective:
        name, result = "probe.lift", probe_projective(x, m, conflation, bound)
    else:
        name, result = "probe.extension", probe_injective(x, m, conflation, bound)
    report.add(check(name, result.found, detail=None if result.found else "no morphism solves the lifting problem"))
    if result.morphism is not None:
        report.artifacts["morphism"] = ctx.morphism_artifact(result.morphism)
    return report


def _random_conflation_arguments(parser):
    add_backend_arguments(parser)
    parser.add_argument("--split", action="store_true", help="Twisted split conflation instead of a cover")


@router.command(
    "random-conflation",
    help="Random conflation X -> Y -> Z as a document",
    operations=("random_conflation",),
    arguments=_random_conflation_arguments,
    randomized=True,
)
def random_conflation_command(ctx: CommandContext) -> Report:
    backend = ctx.backend()
    seed = ctx.seed()
    c = random_conflation(backend, ctx.n(), ctx.settings.MAX_RANK, seed, ctx.args.split)
    report = Report(seed=seed).extend(is_conflation(c).checks)
    doc = Document(backend, {"X": c.l.source, "Y": c.l.target, "Z": c.p.target}, {"l": c.l, "p": c.p})
    report.artifacts["document"] = ctx.document_artifact(doc)
    return report


# ============================================
# Stable category
# ============================================

@router.command(
    "stably-zero",
    help="Does --f factor through a projective-injective; with --x, is --x projective-injective",
    operations=("stably_zero", "is_projective_injective"),
)
def stably_zero_command(ctx: CommandContext) -> Report:
    bound = ctx.bound() or 0
    if ctx.args.f:
        result = stably_zero(ctx.morphism("f"), bound)
        name = "stably_zero"
    else:
        x = ctx.factorization("x")
        result = is_projective_injective(x)
        name = "projective_injective"
    report = Report().add(check(name, result))
    report.artifacts["verdict"] = result
    return report
