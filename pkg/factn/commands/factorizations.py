"""
Factorization commands
Document validation, sums, shifts, isomorphism tests, random instances and
the ambient coherence checks
"""
import logging

from factn.ambient import check_adjunction_identities, check_omega_coherence
from factn.commands.router import CommandContext, CommandRouter, add_backend_arguments
from factn.factcat import (
    check_homogeneity,
    direct_sum,
    is_isomorphism,
    random_factorization,
    random_morphism,
    shift_S,
    validate_factorization,
    validate_morphism,
)
from factn.homotopy import verify_homotopy
from factn.repositories import Document
from factn.schemas.report import Report, check
from factn.utils.seeding import derive_rng, derive_seed

logger = logging.getLogger(__name__)

router = CommandRouter("factorizations")


# ============================================
# Validation
# ============================================

@router.command(
    "validate",
    help="Validate every factorization, morphism and homotopy of a document",
    operations=("load_document", "validate_factorization", "validate_morphism", "check_homogeneity"),
    arguments=lambda p: p.add_argument("--check-homogeneous", action="store_true",
                                       help="Also check graded homogeneity of the differentials"),
)
def validate(ctx: CommandContext) -> Report:
    doc = ctx.document()
    report = Report()
    for name, x in doc.factorizations.items():
        report.extend(validate_factorization(x).prefixed(name))
        if ctx.args.check_homogeneous:
            report.extend(check_homogeneity(x).prefixed(name))
    for name, f in doc.morphisms.items():
        report.extend(validate_morphism(f).prefixed(name))
    for name, h in doc.homotopies.items():
        report.extend(verify_homotopy(h).prefixed(name))
    logger.info(f"🔍 Validated {len(report.checks)} checks")
    return report


# ============================================
# Constructions
# ============================================

@router.command("sum", help="Direct sum of --x and --y", operations=("direct_sum",))
def sum_(ctx: CommandContext) -> Report:
    total = direct_sum(ctx.factorization("x"), ctx.factorization("y")).obj
    report = Report().extend(validate_factorization(total).prefixed("sum"))
    report.artifacts["sum"] = ctx.factorization_artifact(total)
    return report


@router.command(
    "shift",
    help="Rotation S of --x",
    operations=("shift_S",),
    arguments=lambda p: p.add_argument("--signed", action="store_true", help="Negate the differentials"),
)
def shift(ctx: CommandContext) -> Report:
    shifted = shift_S(ctx.factorization("x"), signed=ctx.args.signed)
    report = Report().extend(validate_factorization(shifted).prefixed("shift"))
    report.artifacts["shift"] = ctx.factorization_artifact(shifted)
    return report


@router.command("iso", help="Is --f an isomorphism", operations=("is_isomorphism",))
def iso(ctx: CommandContext) -> Report:
    result = is_isomorphism(ctx.morphism("f"))
    report = Report().add(check("iso.is_isomorphism", result.is_iso,
                                detail=None if result.is_iso else "some component is not invertible"))
    if result.inverse is not None:
        report.artifacts["inverse"] = ctx.morphism_artifact(result.inverse)
    return report


# ============================================
# Random instances
# ============================================

@router.command(
    "random",
    help="Random factorizations X, Y and a morphism f: X -> Y",
    operations=("random_factorization", "random_morphism"),
    arguments=add_backend_arguments,
    randomized=True,
)
def random_instance(ctx: CommandContext) -> Report:
    backend = ctx.backend()
    n = ctx.n()
    seed = ctx.seed()
    rng = derive_rng(seed, "cli-random")
    max_rank = ctx.settings.MAX_RANK
    x = random_factorization(backend, n, max_rank, derive_seed(rng))
    y = random_factorization(backend, n, max_rank, derive_seed(rng))
    f = random_morphism(x, y, derive_seed(rng), ctx.bound())
    report = Report(seed=seed)
    report.extend(validate_factorization(x).prefixed("X"))
    report.extend(validate_factorization(y).prefixed("Y"))
    report.extend(validate_morphism(f).prefixed("f"))
    doc = Document(backend, {"X": x, "Y": y}, {"f": f})
    report.artifacts["document"] = ctx.document_artifact(doc)
    return report


@router.command(
    "coherence",
    help="omega_{T(X)} = T(omega_X) and naturality of omega on random samples",
    operations=("check_omega_coherence",),
    arguments=lambda p: add_backend_arguments(p, with_n=False),
    randomized=True,
)
def coherence(ctx: CommandContext) -> Report:
    seed = ctx.seed()
    report = check_omega_coherence(ctx.backend(), ctx.samples(), seed)
    report.seed = seed
    return report


@router.command(
    "adjoint-identities",
    help="The six identities of the quasi-inverse data on random samples",
    operations=("check_adjunction_identities",),
    arguments=lambda p: add_backend_arguments(p, with_n=False),
    randomized=True,
)
def adjoint_identities(ctx: CommandContext) -> Report:
    seed = ctx.seed()
    report = check_adjunction_identities(ctx.backend(), ctx.samples(), seed)
    report.seed = seed
    return report
