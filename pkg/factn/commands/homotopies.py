"""
Homotopy commands
"""
import logging

from factn.ambient import FieldScalarBackend
from factn.commands.router import CommandContext, CommandRouter, add_backend_arguments
from factn.exceptions import UsageError
from factn.homotopy import Verdict, is_contractible, solve_homotopy, verify_homotopy
from factn.schemas.report import Report, check
from factn.services import homotopy_classes_respect_ops

logger = logging.getLogger(__name__)

router = CommandRouter("homotopies")


def _homotopy_arguments(parser):
    mode = parser.add_mutually_exclusive_group(required=True)
    mode.add_argument("--verify", action="store_true", help="Verify the witness named by --h")
    mode.add_argument("--solve", action="store_true", help="Search a witness for --f ~ --g")


@router.command(
    "homotopy",
    help="Verify a homotopy witness or search one within the degree bound",
    operations=("verify_homotopy", "solve_homotopy"),
    arguments=_homotopy_arguments,
)
def homotopy(ctx: CommandContext) -> Report:
    if ctx.args.verify:
        return verify_homotopy(ctx.homotopy("h"))
    f, g = ctx.morphism("f"), ctx.morphism("g")
    bound = ctx.bound()
    found = solve_homotopy(f, g, bound)
    report = Report()
    if found is not None:
        report.add(check("homotopy.found", True))
        report.artifacts["witness"] = {"s": [s.to_strings() for s in found.diag]}
        return report
    definitive = isinstance(f.backend, FieldScalarBackend)
    detail = "no witness exists" if definitive else "unknown: no witness within the degree bound"
    report.add(check("homotopy.found", False, detail=detail))
    return report


@router.command(
    "contractible",
    help="Is id ~ 0 on --x",
    operations=("is_contractible",),
)
def contractible(ctx: CommandContext) -> Report:
    verdict = is_contractible(ctx.factorization("x"), ctx.bound())
    report = Report().add(check("contractible", verdict == Verdict.YES, detail=verdict.value))
    report.artifacts["verdict"] = verdict.value
    return report


@router.command(
    "laws",
    help="Witnessed checks that homotopy respects sums and composites",
    operations=("homotopy_classes_respect_ops",),
    arguments=add_backend_arguments,
    randomized=True,
)
def laws(ctx: CommandContext) -> Report:
    seed = ctx.seed()
    if ctx.samples() < 1:
        raise UsageError("--samples must be at least 1")
    return homotopy_classes_respect_ops(ctx.backend(), ctx.n(), ctx.samples(), seed, ctx.settings.THREADS)
