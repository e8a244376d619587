"""
Axiom suite runner
Runs the constructions behind RTR1 to RTR4, the cone isomorphism, the
functoriality of Sigma and the right rotation on seeded random samples
and collects every strict identity and witness check into one report.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from factn.ambient import Backend
from factn.config import get_settings
from factn.exceptions import HomotopyError, NoInverseDataError
from factn.factcat import (
    direct_sum,
    identity,
    random_factorization,
    random_morphism,
    validate_factorization,
    zero_morphism,
)
from factn.homotopy import Homotopy, solve_homotopy, verify_homotopy
from factn.schemas.report import CheckResult, Report, check
from factn.services.instances import perturb, random_null_homotopic
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
    require_even,
    rotate,
    rotation_report,
    suspend,
    suspend_homotopy,
    suspend_morphism,
    triangle_report,
    unsuspend,
)
from factn.utils.logging import log_function_call
from factn.utils.seeding import derive_rng, derive_seed

logger = logging.getLogger(__name__)


class AxiomSuiteRunner:
    """
    One sample = random X, Y, Z with f: X -> Y and g: Y -> Z; every
    construction below is run on that data.
    """

    def __init__(self, backend: Backend, n: int, bound: Optional[int] = None, max_rank: Optional[int] = None):
        require_even(n)
        self.backend = backend
        self.n = n
        self.bound = bound
        self.max_rank = max_rank if max_rank is not None else get_settings().MAX_RANK
        logger.info(f"🧪 Axiom suite on {backend.describe()}, n={n}")

    def _object(self, rng):
        return random_factorization(self.backend, self.n, self.max_rank, derive_seed(rng))

    # ============================================
    # Per-axiom checks
    # ============================================

    def _rtr1(self, x, f) -> Report:
        report = Report()
        cone = mapping_cone(identity(x))
        report.extend(validate_factorization(cone.cone).prefixed("RTR1.identity_cone"))
        contraction = contract_identity_cone(x)
        report.extend(verify_homotopy(contraction).prefixed("RTR1.contraction"))
        found = solve_homotopy(contraction.f, contraction.g, self.bound)
        report.add(check("RTR1.solver_witness", found is not None,
                         detail=None if found else "no witness for id ~ 0 on the identity cone"))
        data = mapping_cone(f)
        report.extend(triangle_report(cone_triangle(f), "RTR1.cone_triangle").checks)
        report.add(morphism_equal("RTR1.pi_i_zero", data.project @ data.inject,
                                  zero_morphism(data.inject.source, data.project.target)))
        return report

    def _rtr3(self, rng, x, y, f) -> Report:
        """
        Square with a homotopy defect: either alpha = 1 and f2 = beta f1 + h,
        or beta = 1 and f1 = f2 alpha + h, with h null-homotopic
        """
        if rng.randrange(2):
            y2 = self._object(rng)
            alpha = identity(x)
            beta = random_morphism(y, y2, derive_seed(rng))
            null = random_null_homotopic(x, y2, derive_seed(rng), self.max_rank)
            f1, f2 = f, beta @ f + null.f
            s = Homotopy(beta @ f1, f2 @ alpha, [-d for d in null.diag])
        else:
            x2 = self._object(rng)
            beta = identity(y)
            alpha = random_morphism(x, x2, derive_seed(rng))
            f2 = random_morphism(x2, y, derive_seed(rng))
            null = random_null_homotopic(x, y, derive_seed(rng), self.max_rank)
            f1 = f2 @ alpha + null.f
            s = Homotopy(beta @ f1, f2 @ alpha, null.diag)
        gamma = fill_morphism(f1, f2, alpha, beta, s)
        return fill_report(f1, f2, alpha, beta, gamma)

    def _cone_iso(self, rng, f) -> Report:
        p = perturb(f, derive_seed(rng))
        data = cone_homotopy_iso(p.f, p.g, p)
        report = Report()
        report.add(morphism_equal("cone_iso.mu_lambda_id", data.mu @ data.lam, identity(data.lam.source)))
        report.add(morphism_equal("cone_iso.lambda_mu_id", data.lam @ data.mu, identity(data.lam.target)))
        report.extend(verify_homotopy(data.w_mu_lam).prefixed("cone_iso.w_mu_lambda"))
        report.extend(verify_homotopy(data.w_lam_mu).prefixed("cone_iso.w_lambda_mu"))
        return report

    def _suspension(self, rng, x, y, f, g) -> Report:
        report = Report()
        report.add(morphism_equal("sigma.identity", suspend_morphism(identity(x)), identity(suspend(x))))
        report.add(morphism_equal("sigma.composite", suspend_morphism(g @ f),
                                  suspend_morphism(g) @ suspend_morphism(f)))
        other = random_morphism(x, y, derive_seed(rng))
        report.add(morphism_equal("sigma.additive", suspend_morphism(f + other),
                                  suspend_morphism(f) + suspend_morphism(other)))
        summed = suspend(direct_sum(x, y).obj)
        report.add(check("sigma.direct_sum", summed == direct_sum(suspend(x), suspend(y)).obj))
        try:
            suspend_homotopy(perturb(f, derive_seed(rng)))
            report.add(check("sigma.homotopy", True))
        except HomotopyError as e:
            report.add(check("sigma.homotopy", False, detail=str(e)))
        return report

    def _unsuspend(self, x) -> CheckResult:
        try:
            down = unsuspend(x)
        except NoInverseDataError as e:
            return check("unsuspend.unavailable", True, detail=str(e))
        ok = suspend(down) == x and unsuspend(suspend(x)) == x
        return check("unsuspend.round_trip", ok)

    # ============================================
    # Samples
    # ============================================

    def check_sample(self, seed: int, index: int) -> List[CheckResult]:
        rng = derive_rng(seed, "suite", index)
        sample_seed = derive_seed(rng)
        x, y, z = (self._object(rng) for _ in range(3))
        f = random_morphism(x, y, derive_seed(rng))
        g = random_morphism(y, z, derive_seed(rng))
        report = Report()
        report.extend(self._rtr1(x, f).checks)
        report.extend(rotation_report(rotate(f)).checks)
        report.extend(self._rtr3(rng, x, y, f).checks)
        report.extend(octahedron_report(octahedron(f, g)).checks)
        report.extend(self._cone_iso(rng, f).checks)
        report.extend(self._suspension(rng, x, y, f, g).checks)
        report.add(self._unsuspend(x))
        return [c.model_copy(update={"seed": sample_seed}) for c in report.checks]

    @log_function_call(logger)
    def run(self, samples: int, seed: int, threads: int = 1) -> Report:
        report = Report(seed=seed)
        with ThreadPoolExecutor(max_workers=max(threads, 1)) as pool:
            for index, batch in enumerate(pool.map(lambda i: self.check_sample(seed, i), range(samples))):
                report.extend(batch)
                logger.debug(f"📋 Sample {index}: {len(batch)} checks")
        summary = report.summary
        if report.ok:
            logger.info(f"✅ Axiom suite passed: {summary['pass']} checks over {samples} samples")
        else:
            logger.warning(f"⚠️ Axiom suite: {summary['fail']} failed checks, first {report.describe_failure()}")
        return report


def run_axiom_suite(
    backend: Backend,
    n: int,
    samples: int,
    seed: int,
    bound: Optional[int] = None,
    threads: Optional[int] = None
) -> Report:
    """
    Raises:
        ParityError: odd n
    """
    if threads is None:
        threads = get_settings().THREADS
    return AxiomSuiteRunner(backend, n, bound).run(samples, seed, threads)
