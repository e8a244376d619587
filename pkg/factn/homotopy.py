"""
Homotopies between morphisms of factorizations
A witness s = (s^0, ..., s^(n-1)) with s^j: X^(j+1) -> Y^j and
s^(n-1): T(X^0) -> Y^(n-1) satisfies

    T(f^0 - g^0) = d_Y^(n-1) s^(n-1) + T(s^0 d_X^0)
    f^j - g^j    = d_Y^(j-1) s^(j-1) + s^j d_X^j      (j >= 1)

The equations are linear over the base field in the entries of s, so the
witness search is one degree-bounded linear solve.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from factn.algebra import LinearTemplate, Matrix, bounded_poly_solve
from factn.ambient import FieldScalarBackend
from factn.exceptions import DimensionMismatchError, HomotopyError
from factn.factcat import FactMorphism, NFactorization, identity, zero_morphism
from factn.schemas.report import Report, check

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    """Contractibility answer; UNKNOWN means the bounded search found nothing"""
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


# ============================================
# Witnesses
# ============================================

def witness_shape(f: FactMorphism, j: int) -> Tuple[int, int]:
    x, y = f.source, f.target
    source = f.backend.apply_T(x.objects[0]) if j == f.n - 1 else x.objects[j + 1]
    return (y.objects[j].rank, source.rank)


@dataclass(frozen=True)
class Homotopy:
    """Diagonal witness for f ~ g"""
    f: FactMorphism
    g: FactMorphism
    diag: Tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "diag", tuple(self.diag))
        if self.f.source != self.g.source or self.f.target != self.g.target:
            raise DimensionMismatchError("homotopy between non-parallel morphisms")
        if len(self.diag) != self.f.n:
            raise DimensionMismatchError(f"{len(self.diag)} diagonal maps for n={self.f.n}")
        for j, s in enumerate(self.diag):
            if s.shape != witness_shape(self.f, j):
                rows, cols = witness_shape(self.f, j)
                raise DimensionMismatchError(f"s^{j} is {s.rows}x{s.cols}, expected {rows}x{cols}")

    @property
    def n(self) -> int:
        return self.f.n


def _sides(f: FactMorphism, g: FactMorphism, diag: Sequence[Matrix]) -> List[Tuple[Matrix, Matrix]]:
    """(f - g side, witness side) for each index"""
    backend = f.backend
    x, y = f.source, f.target
    n = f.n
    out = []
    difference = f.comps[0] - g.comps[0]
    witness = y.diffs[n - 1] @ diag[n - 1] + backend.apply_T(diag[0] @ x.diffs[0])
    out.append((backend.apply_T(difference), witness))
    for j in range(1, n):
        out.append((f.comps[j] - g.comps[j], y.diffs[j - 1] @ diag[j - 1] + diag[j] @ x.diffs[j]))
    return out


def verify_homotopy(h: Homotopy) -> Report:
    """Check the twisted equation at index 0 and the n-1 plain ones"""
    report = Report()
    for j, (lhs, rhs) in enumerate(_sides(h.f, h.g, h.diag)):
        report.add(check("homotopy.equation", lhs == rhs, index=j, lhs=lhs, rhs=rhs))
    return report


def require_verified(h: Homotopy, what: str = "homotopy") -> Homotopy:
    report = verify_homotopy(h)
    if not report.ok:
        raise HomotopyError(f"{what} fails: {report.describe_failure()}", report)
    return h


# ============================================
# Search
# ============================================

def default_bound(f: FactMorphism, g: FactMorphism) -> int:
    """Largest entry degree among f, g and both differentials, plus deg(w)"""
    backend = f.backend
    if isinstance(backend, FieldScalarBackend):
        return 0
    degrees = [f.max_degree(), g.max_degree()]
    for x in (f.source, f.target):
        degrees.extend(d.max_degree() for d in x.diffs)
    return max(max(degrees), 0) + backend.omega_degree()


def solve_homotopy(f: FactMorphism, g: FactMorphism, bound: Optional[int] = None) -> Optional[Homotopy]:
    """
    Find a witness for f ~ g with entries of degree <= bound

    None means no witness exists within the bound; over a field backend it
    means no witness at all.

    Raises:
        DimensionMismatchError: f and g are not parallel
        NegativeBoundError: bound < 0
    """
    if f.source != g.source or f.target != g.target:
        raise DimensionMismatchError("homotopy between non-parallel morphisms")
    if bound is None:
        bound = default_bound(f, g)
    n = f.n
    names = [f"s{j}" for j in range(n)]
    unknowns = {name: witness_shape(f, j) for j, name in enumerate(names)}

    def residual(assignment):
        diag = [assignment[name] for name in names]
        return [rhs - lhs for lhs, rhs in _sides(f, g, diag)]

    template = LinearTemplate(f.backend.ring, unknowns, residual)
    solution = bounded_poly_solve(template, bound)
    if solution is None:
        logger.debug(f"🔍 No homotopy witness within degree {bound}")
        return None
    h = Homotopy(f, g, [solution[name] for name in names])
    return require_verified(h, "solver witness")


def is_contractible(x: NFactorization, bound: Optional[int] = None) -> Verdict:
    """YES iff id_X ~ 0 within the bound; NO only over field backends"""
    if x.is_zero():
        return Verdict.YES
    found = solve_homotopy(identity(x), zero_morphism(x, x), bound)
    if found is not None:
        return Verdict.YES
    if isinstance(x.backend, FieldScalarBackend):
        return Verdict.NO
    logger.warning(f"⚠️ Contractibility of {x.describe()} unknown within the degree bound")
    return Verdict.UNKNOWN


# ============================================
# Witness algebra
# ============================================

def reflexive_witness(f: FactMorphism) -> Homotopy:
    """f ~ f via s = 0"""
    return Homotopy(f, f, [Matrix.zeros(f.backend.ring, *witness_shape(f, j)) for j in range(f.n)])


def negate_witness(h: Homotopy) -> Homotopy:
    """g ~ f from f ~ g"""
    return Homotopy(h.g, h.f, [-s for s in h.diag])


def chain_witnesses(first: Homotopy, second: Homotopy) -> Homotopy:
    """f ~ k from f ~ g and g ~ k"""
    if first.g != second.f:
        raise DimensionMismatchError("witnesses do not chain")
    return Homotopy(first.f, second.g, [a + b for a, b in zip(first.diag, second.diag)])


def add_witnesses(first: Homotopy, second: Homotopy) -> Homotopy:
    """f1 + f2 ~ g1 + g2 from f1 ~ g1 and f2 ~ g2"""
    return Homotopy(first.f + second.f, first.g + second.g,
                    [a + b for a, b in zip(first.diag, second.diag)])


def compose_witness_left(u: FactMorphism, h: Homotopy) -> Homotopy:
    """u f ~ u g with witness u^j s^j"""
    return Homotopy(u @ h.f, u @ h.g, [u.comps[j] @ s for j, s in enumerate(h.diag)])


def compose_witness_right(h: Homotopy, v: FactMorphism) -> Homotopy:
    """f v ~ g v with witness s^j v^(j+1), and s^(n-1) T(v^0) on the last level"""
    n = h.n
    diag = [h.diag[j] @ v.comps[j + 1] for j in range(n - 1)]
    diag.append(h.diag[n - 1] @ v.backend.apply_T(v.comps[0]))
    return Homotopy(h.f @ v, h.g @ v, diag)


def compose_witnesses(inner: Homotopy, outer: Homotopy) -> Homotopy:
    """f2 f1 ~ g2 g1 from f1 ~ g1 (inner) and f2 ~ g2 (outer)"""
    return chain_witnesses(
        compose_witness_left(outer.f, inner),
        compose_witness_right(outer, inner.g),
    )
