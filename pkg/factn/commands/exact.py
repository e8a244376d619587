"""
Exact-structure commands (field-scalar backends)
"""
import logging

from factn.commands.router import CommandContext, CommandRouter
from factn.factcat import (
    Conflation,
    cokernel,
    is_conflation,
    kernel,
    pullback_deflation,
    pushout_inflation,
    validate_factorization,
    validate_morphism,
    zero_morphism,
)
from factn.factcat.exact import deflation_surjectivity, inflation_injectivity
from factn.schemas.report import Report
from factn.triangles import morphism_equal

logger = logging.getLogger(__name__)

router = CommandRouter("exact")


@router.command(
    "kernel",
    help="Componentwise kernel of --f; --g is factored through it when given",
    operations=("kernel",),
)
def kernel_command(ctx: CommandContext) -> Report:
    f = ctx.morphism("f")
    data = kernel(f)
    report = Report()
    report.extend(validate_factorization(data.obj).prefixed("kernel"))
    report.extend(validate_morphism(data.inclusion).prefixed("kernel.inclusion"))
    report.add(morphism_equal("kernel.f_inclusion_zero", f @ data.inclusion,
                              zero_morphism(data.obj, f.target)))
    report.extend(inflation_injectivity(data.inclusion, "kernel.inclusion_injective"))
    if ctx.args.g:
        g = ctx.morphism("g")
        report.add(morphism_equal("kernel.factorization", data.inclusion @ data.factor(g), g))
    report.artifacts["kernel"] = ctx.factorization_artifact(data.obj)
    report.artifacts["inclusion"] = ctx.morphism_artifact(data.inclusion)
    return report


@router.command(
    "cokernel",
    help="Componentwise cokernel of --f; --g is factored through it when given",
    operations=("cokernel",),
)
def cokernel_command(ctx: CommandContext) -> Report:
    f = ctx.morphism("f")
    data = cokernel(f)
    report = Report()
    report.extend(validate_factorization(data.obj).prefixed("cokernel"))
    report.extend(validate_morphism(data.projection).prefixed("cokernel.projection"))
    report.add(morphism_equal("cokernel.projection_f_zero", data.projection @ f,
                              zero_morphism(f.source, data.obj)))
    report.extend(deflation_surjectivity(data.projection, "cokernel.projection_surjective"))
    if ctx.args.g:
        g = ctx.morphism("g")
        report.add(morphism_equal("cokernel.factorization", data.factor(g) @ data.projection, g))
    report.artifacts["cokernel"] = ctx.factorization_artifact(data.obj)
    report.artifacts["projection"] = ctx.morphism_artifact(data.projection)
    return report


@router.command("conflation", help="Is --l then --p a conflation", operations=("is_conflation",))
def conflation(ctx: CommandContext) -> Report:
    return is_conflation(Conflation(ctx.morphism("l"), ctx.morphism("p")))


@router.command("pullback", help="Pull the deflation --p back along --f", operations=("pullback_deflation",))
def pullback(ctx: CommandContext) -> Report:
    p, f = ctx.morphism("p"), ctx.morphism("f")
    data = pullback_deflation(p, f)
    report = Report()
    report.extend(validate_factorization(data.obj).prefixed("pullback"))
    report.add(morphism_equal("pullback.square", p @ data.f1, f @ data.p1))
    report.extend(deflation_surjectivity(data.p1, "pullback.p1_deflation"))
    report.artifacts["pullback"] = ctx.factorization_artifact(data.obj)
    return report


@router.command("pushout", help="Push the inflation --l out along --f", operations=("pushout_inflation",))
def pushout(ctx: CommandContext) -> Report:
    l, f = ctx.morphism("l"), ctx.morphism("f")
    data = pushout_inflation(l, f)
    report = Report()
    report.extend(validate_factorization(data.obj).prefixed("pushout"))
    report.add(morphism_equal("pushout.square", data.f1 @ l, data.l1 @ f))
    report.extend(inflation_injectivity(data.l1, "pushout.l1_inflation"))
    report.artifacts["pushout"] = ctx.factorization_artifact(data.obj)
    return report
