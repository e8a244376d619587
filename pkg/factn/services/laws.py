"""
Randomized checks that homotopy is a congruence
Every check builds an explicit witness from perturbed morphisms and
verifies it, so a pass is a proof for that sample.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from factn.ambient import Backend
from factn.config import get_settings
from factn.factcat import random_factorization, random_morphism
from factn.homotopy import (
    add_witnesses,
    chain_witnesses,
    compose_witness_left,
    compose_witness_right,
    compose_witnesses,
    negate_witness,
    reflexive_witness,
    verify_homotopy,
)
from factn.schemas.report import CheckResult, Report
from factn.services.instances import perturb, random_null_homotopic
from factn.triangles import require_even
from factn.utils.logging import log_function_call
from factn.utils.seeding import derive_rng, derive_seed

logger = logging.getLogger(__name__)


class HomotopyLawChecker:
    """
    Checks the equivalence relation, additivity, composition and the
    ideal of null-homotopic morphisms on seeded random samples
    """

    def __init__(self, backend: Backend, n: int, max_rank: Optional[int] = None):
        require_even(n)
        self.backend = backend
        self.n = n
        self.max_rank = max_rank if max_rank is not None else get_settings().MAX_RANK

    def _object(self, rng):
        return random_factorization(self.backend, self.n, self.max_rank, derive_seed(rng))

    def check_sample(self, seed: int, index: int) -> List[CheckResult]:
        """All law checks for one sample; the sample seed is stored on every entry"""
        rng = derive_rng(seed, "laws", index)
        sample_seed = derive_seed(rng)
        w, x, y, z = (self._object(rng) for _ in range(4))
        f1 = random_morphism(x, y, derive_seed(rng))
        f2 = random_morphism(x, y, derive_seed(rng))
        k = random_morphism(y, z, derive_seed(rng))
        p1 = perturb(f1, derive_seed(rng))
        p2 = perturb(f2, derive_seed(rng))
        pk = perturb(k, derive_seed(rng))
        q1 = perturb(f1, derive_seed(rng))

        witnesses = {
            "reflexive": reflexive_witness(f1),
            "symmetric": negate_witness(p1),
            "transitive": chain_witnesses(p1, negate_witness(q1)),
            "sum": add_witnesses(p1, p2),
            "composite": compose_witnesses(p1, pk),
        }
        null = random_null_homotopic(x, y, derive_seed(rng), self.max_rank)
        u = random_morphism(w, x, derive_seed(rng))
        v = random_morphism(y, z, derive_seed(rng))
        witnesses["ideal"] = compose_witness_left(v, compose_witness_right(null, u))

        results: List[CheckResult] = []
        for name, h in witnesses.items():
            results.extend(verify_homotopy(h).prefixed(f"laws.{name}", seed=sample_seed))
        return results

    @log_function_call(logger)
    def run(self, samples: int, seed: int, threads: int = 1) -> Report:
        report = Report(seed=seed)
        with ThreadPoolExecutor(max_workers=max(threads, 1)) as pool:
            batches = pool.map(lambda i: self.check_sample(seed, i), range(samples))
            for batch in batches:
                report.extend(batch)
        logger.info(f"✅ Homotopy laws: {report.summary['pass']} passed, {report.summary['fail']} failed")
        return report


def homotopy_classes_respect_ops(
    backend: Backend,
    n: int,
    samples: int,
    seed: int,
    threads: Optional[int] = None
) -> Report:
    """
    Witnessed checks that homotopy is compatible with sums and composites

    Raises:
        ParityError: odd n
    """
    if threads is None:
        threads = get_settings().THREADS
    return HomotopyLawChecker(backend, n).run(samples, seed, threads)
