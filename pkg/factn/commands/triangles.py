"""
Triangulated-structure commands
Suspension, cones and the constructions behind the four axioms, run on named
document entries; the suite runs all of them on random samples.
"""
import logging

from factn.commands.router import CommandContext, CommandRouter, add_backend_arguments
from factn.exceptions import UsageError
from factn.factcat import identity, validate_factorization, validate_morphism, zero_morphism
from factn.homotopy import Homotopy, verify_homotopy
from factn.schemas.report import Report, check
from factn.services import run_axiom_suite
from factn.triangles import (
    cone_homotopy_iso,
    cone_triangle,
    contract_identity_cone,
    fill_morphism,
    fill_report,
    mapping_cone,
    morphism_equal,
    octahedron,
    octahedron_report,
    printed_cone_iso_report,
    rotate,
    rotation_report,
    suspend,
    suspend_homotopy,
    suspend_morphism,
    triangle_report,
    unsuspend,
    unsuspend_morphism,
)

logger = logging.getLogger(__name__)

router = CommandRouter("triangles")


def _given(ctx: CommandContext, *flags: str) -> str:
    present = [flag for flag in flags if getattr(ctx.args, flag, None)]
    if len(present) != 1:
        options = " or ".join(f"--{flag}" for flag in flags)
        raise UsageError(f"'{ctx.args.command}' needs exactly one of {options}")
    return present[0]


# ============================================
# Suspension
# ============================================

@router.command(
    "suspend",
    help="Sigma of the factorization --x, the morphism --f or the homotopy --h",
    operations=("suspend", "suspend_morphism", "suspend_homotopy"),
)
def suspend_command(ctx: CommandContext) -> Report:
    which = _given(ctx, "x", "f", "h")
    report = Report()
    if which == "x":
        result = suspend(ctx.factorization("x"))
        report.extend(validate_factorization(result).prefixed("suspend"))
        report.artifacts["suspend"] = ctx.factorization_artifact(result)
    elif which == "f":
        result = suspend_morphism(ctx.morphism("f"))
        report.extend(validate_morphism(result).prefixed("suspend"))
        report.artifacts["suspend"] = ctx.morphism_artifact(result)
    else:
        h = ctx.homotopy("h")
        checked = verify_homotopy(h)
        if not checked.ok:
            return Report().extend(checked.prefixed("input"))
        result = suspend_homotopy(h)
        report.extend(verify_homotopy(result).prefixed("suspend"))
        report.artifacts["suspend"] = {"s": [s.to_strings() for s in result.diag]}
    return report


@router.command(
    "unsuspend",
    help="Right rotation of --x or --f; needs an invertible T",
    operations=("unsuspend", "unsuspend_morphism"),
)
def unsuspend_command(ctx: CommandContext) -> Report:
    which = _given(ctx, "x", "f")
    report = Report()
    if which == "x":
        x = ctx.factorization("x")
        down = unsuspend(x)
        report.extend(validate_factorization(down).prefixed("unsuspend"))
        report.add(check("unsuspend.round_trip", suspend(down) == x and unsuspend(suspend(x)) == x))
        report.artifacts["unsuspend"] = ctx.factorization_artifact(down)
    else:
        f = ctx.morphism("f")
        down = unsuspend_morphism(f)
        report.extend(validate_morphism(down).prefixed("unsuspend"))
        report.add(morphism_equal("unsuspend.round_trip", suspend_morphism(down), f))
        report.artifacts["unsuspend"] = ctx.morphism_artifact(down)
    return report


# ============================================
# Cones
# ============================================

@router.command("cone", help="Mapping cone and cone triangle of --f", operations=("mapping_cone", "cone_triangle"))
def cone(ctx: CommandContext) -> Report:
    f = ctx.morphism("f")
    data = mapping_cone(f)
    report = Report().extend(triangle_report(cone_triangle(f), "cone_triangle").checks)
    report.add(morphism_equal("cone.pi_i_zero", data.project @ data.inject,
                              zero_morphism(data.inject.source, data.project.target)))
    report.artifacts["cone"] = ctx.factorization_artifact(data.cone)
    return report


@router.command("contract", help="Witness id ~ 0 on the cone of id_X for --x", operations=("contract_identity_cone",))
def contract(ctx: CommandContext) -> Report:
    witness = contract_identity_cone(ctx.factorization("x"))
    report = Report().extend(verify_homotopy(witness).prefixed("contraction"))
    report.artifacts["witness"] = {"s": [s.to_strings() for s in witness.diag]}
    return report


@router.command("rotate", help="Rotation of the cone triangle of --f", operations=("rotate",))
def rotate_command(ctx: CommandContext) -> Report:
    return rotation_report(rotate(ctx.morphism("f")))


def _fill_arguments(parser):
    parser.add_argument("--alpha", help="Morphism X1 -> X2")
    parser.add_argument("--beta", help="Morphism Y1 -> Y2")


@router.command(
    "fill",
    help="Fill the square --alpha, --beta between --f and --g; --h holds the witness for beta f ~ g alpha",
    operations=("fill_morphism",),
    arguments=_fill_arguments,
)
def fill(ctx: CommandContext) -> Report:
    f1, f2 = ctx.morphism("f"), ctx.morphism("g")
    alpha, beta = ctx.morphism("alpha"), ctx.morphism("beta")
    given = ctx.homotopy("h")
    lhs, rhs = beta @ f1, f2 @ alpha
    if given.f != lhs or given.g != rhs:
        raise UsageError("--h must relate beta f and g alpha")
    s = Homotopy(lhs, rhs, given.diag)
    checked = verify_homotopy(s)
    if not checked.ok:
        return Report().extend(checked.prefixed("RTR3.witness"))
    gamma = fill_morphism(f1, f2, alpha, beta, s)
    report = fill_report(f1, f2, alpha, beta, gamma)
    report.artifacts["gamma"] = ctx.morphism_artifact(gamma)
    return report


@router.command("octahedron", help="Octahedral data for --f then --g", operations=("octahedron",))
def octahedron_command(ctx: CommandContext) -> Report:
    return octahedron_report(octahedron(ctx.morphism("f"), ctx.morphism("g")))


@router.command(
    "cone-iso",
    help="Cones of the homotopic morphisms related by --h",
    operations=("cone_homotopy_iso", "printed_cone_iso_report"),
    arguments=lambda p: p.add_argument("--printed", action="store_true",
                                       help="Also check the blocks [[1, 0], [s, 0]]"),
)
def cone_iso(ctx: CommandContext) -> Report:
    h = ctx.homotopy("h")
    checked = verify_homotopy(h)
    if not checked.ok:
        return Report().extend(checked.prefixed("input"))
    data = cone_homotopy_iso(h.f, h.g, h)
    report = Report()
    report.add(morphism_equal("cone_iso.mu_lambda_id", data.mu @ data.lam, identity(data.lam.source)))
    report.add(morphism_equal("cone_iso.lambda_mu_id", data.lam @ data.mu, identity(data.lam.target)))
    report.extend(verify_homotopy(data.w_mu_lam).prefixed("cone_iso.w_mu_lambda"))
    report.extend(verify_homotopy(data.w_lam_mu).prefixed("cone_iso.w_lambda_mu"))
    if ctx.args.printed:
        report.extend(printed_cone_iso_report(h.f, h.g, h).checks)
    report.artifacts["lambda"] = ctx.morphism_artifact(data.lam)
    report.artifacts["mu"] = ctx.morphism_artifact(data.mu)
    return report


# ============================================
# Suite
# ============================================

@router.command(
    "suite",
    help="Every axiom construction on seeded random samples",
    operations=("run_axiom_suite",),
    arguments=add_backend_arguments,
    randomized=True,
)
def suite(ctx: CommandContext) -> Report:
    seed = ctx.seed()
    samples = ctx.samples()
    if samples < 1:
        raise UsageError("--samples must be at least 1")
    return run_axiom_suite(ctx.backend(), ctx.n(), samples, seed, ctx.bound(), ctx.settings.THREADS)
