"""
Exact linear solving
Gauss-Jordan elimination over the base field with a fixed pivoting rule
(first nonzero entry, columns left to right), and degree-bounded solving of
linear templates over polynomial rings by coefficient comparison.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from factn.algebra.fields import Field, Scalar
from factn.algebra.matrix import Matrix
from factn.algebra.polynomial import Exponent, Polynomial, Ring
from factn.exceptions import (
    DimensionMismatchError,
    NegativeBoundError,
    TemplateShapeError,
)

logger = logging.getLogger(__name__)

Assignment = Dict[str, Matrix]


# ============================================
# Row reduction
# ============================================

def _reduce(field_: Field, rows: List[List[Scalar]], pivot_limit: int) -> Tuple[List[List[Scalar]], List[int]]:
    """
    Reduced row echelon form, pivoting only in the first pivot_limit columns

    Returns the reduced rows and the pivot column of each leading row.
    """
    rows = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for col in range(pivot_limit):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field_.inv(rows[r][col])
        prow = [field_.mul(v, inv) if v else 0 for v in rows[r]]
        rows[r] = prow
        support = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(rows):
            if i == r:
                continue
            factor = row[col]
            if factor:
                for j in support:
                    row[j] = field_.sub(row[j], field_.mul(factor, prow[j]))
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


@dataclass(frozen=True)
class SolveResult:
    """Particular solution (None when inconsistent) and a nullspace basis of column vectors"""
    particular: Optional[Matrix]
    nullspace: List[Matrix] = field(default_factory=list)

    @property
    def solvable(self) -> bool:
        return self.particular is not None


def field_solve(a: Matrix, b: Matrix) -> SolveResult:
    """
    Solve a @ x = b over the base field

    Args:
        a: m x k matrix with constant entries
        b: m x r matrix with constant entries

    Returns:
        SolveResult with a k x r particular solution (free variables set to
        zero) and one k x 1 vector per free column of a

    Raises:
        DimensionMismatchError: a.rows != b.rows
    """
    if a.rows != b.rows:
        raise DimensionMismatchError(f"a has {a.rows} rows but b has {b.rows}")
    b._check_ring(a.ring)
    ring = a.ring
    field_ = ring.field
    k, r = a.cols, b.cols
    augmented = [ra + rb for ra, rb in zip(a.to_scalars(), b.to_scalars())]
    reduced, pivots = _reduce(field_, augmented, k)

    particular = None
    consistent = all(
        not any(row[k:]) for row in reduced[len(pivots):]
    )
    if consistent:
        solution = [[field_.zero] * r for _ in range(k)]
        for idx, col in enumerate(pivots):
            solution[col] = [field_.coerce(v) for v in reduced[idx][k:]]
        particular = Matrix.from_scalars(ring, solution, r)

    basis = []
    pivot_set = set(pivots)
    for free in range(k):
        if free in pivot_set:
            continue
        vector = [field_.zero] * k
        vector[free] = field_.one
        for idx, col in enumerate(pivots):
            vector[col] = field_.neg(field_.coerce(reduced[idx][free]))
        basis.append(Matrix.from_scalars(ring, [[v] for v in vector], 1))
    return SolveResult(particular, basis)


def rank(a: Matrix) -> int:
    """Rank over the base field"""
    _, pivots = _reduce(a.ring.field, a.to_scalars(), a.cols)
    return len(pivots)


def nullspace_matrix(a: Matrix) -> Matrix:
    """Columns form a basis of ker(a)"""
    basis = field_solve(a, Matrix.zeros(a.ring, a.rows, 0)).nullspace
    if not basis:
        return Matrix.zeros(a.ring, a.cols, 0)
    return Matrix.hstack(a.ring, basis)


def left_nullspace_matrix(a: Matrix) -> Matrix:
    """Rows form a basis of the row vectors v with v @ a = 0"""
    return nullspace_matrix(a.transpose()).transpose()


def solve_right(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Some x with x @ a = b, or None"""
    result = field_solve(a.transpose(), b.transpose())
    return result.particular.transpose() if result.solvable else None


# ============================================
# Degree-bounded template solving
# ============================================

@dataclass
class LinearTemplate:
    """
    Linear system in unknown matrices

    residual maps an assignment of every unknown to the list of matrices that
    must vanish. It must be affine in the unknown entries over the base field.
    """
    ring: Ring
    unknowns: Dict[str, Tuple[int, int]]
    residual: Callable[[Assignment], Sequence[Matrix]]

    def zero_assignment(self) -> Assignment:
        return {name: Matrix.zeros(self.ring, r, c) for name, (r, c) in self.unknowns.items()}


def _evaluate(template: LinearTemplate, assignment: Assignment, shapes=None) -> List[Matrix]:
    out = list(template.residual(assignment))
    got = [m.shape for m in out]
    if shapes is not None and got != shapes:
        raise TemplateShapeError(f"residual shapes changed from {shapes} to {got}")
    return out


def solution_space(template: LinearTemplate, bound: int) -> Tuple[Optional[Assignment], List[Assignment]]:
    """
    All solutions with entries of total degree <= bound

    Returns:
        (particular assignment or None, basis of the homogeneous solutions)
    """
    if bound < 0:
        raise NegativeBoundError(f"degree bound {bound} is negative")
    ring = template.ring
    for name, (r, c) in template.unknowns.items():
        if r < 0 or c < 0:
            raise TemplateShapeError(f"unknown '{name}' has shape {r}x{c}")
    monomials = ring.monomials_up_to(bound)
    base_assignment = template.zero_assignment()
    base = _evaluate(template, base_assignment)
    shapes = [m.shape for m in base]

    columns: List[Dict[Tuple[int, int, Exponent], Scalar]] = []
    coordinates: List[Tuple[str, int, Exponent]] = []
    for name, (r, c) in template.unknowns.items():
        for pos in range(r * c):
            for exponent in monomials:
                entries = [ring.zero()] * (r * c)
                entries[pos] = ring.monomial(exponent)
                assignment = dict(base_assignment)
                assignment[name] = Matrix(ring, r, c, entries)
                out = _evaluate(template, assignment, shapes)
                column: Dict[Tuple[int, int, Exponent], Scalar] = {}
                for k, (m, m0) in enumerate(zip(out, base)):
                    for idx, (p, p0) in enumerate(zip(m.entries, m0.entries)):
                        if p == p0:
                            continue
                        for e, coefficient in (p - p0).terms.items():
                            column[(k, idx, e)] = coefficient
                columns.append(column)
                coordinates.append((name, pos, exponent))

    rhs: Dict[Tuple[int, int, Exponent], Scalar] = {}
    for k, m0 in enumerate(base):
        for idx, p0 in enumerate(m0.entries):
            for e, coefficient in (-p0).terms.items():
                rhs[(k, idx, e)] = coefficient

    keys = set(rhs)
    for column in columns:
        keys.update(column)
    row_keys = sorted(keys)
    ncols = len(columns)
    index = {key: i for i, key in enumerate(row_keys)}
    rows: List[List[Scalar]] = [[0] * (ncols + 1) for _ in row_keys]
    for j, column in enumerate(columns):
        for key, value in column.items():
            rows[index[key]][j] = value
    for key, value in rhs.items():
        rows[index[key]][ncols] = value

    logger.debug(f"🧮 Template: {ncols} unknown coefficients, {len(row_keys)} equations")
    field_ = ring.field
    reduced, pivots = _reduce(field_, rows, ncols)

    def to_assignment(vector: List[Scalar]) -> Assignment:
        result = {}
        for name, (r, c) in template.unknowns.items():
            result[name] = [ring.zero()] * (r * c)
        for (name, pos, exponent), value in zip(coordinates, vector):
            if value:
                result[name][pos] = result[name][pos] + ring.monomial(exponent, value)
        return {
            name: Matrix(ring, *template.unknowns[name], entries)
            for name, entries in result.items()
        }

    particular = None
    if all(not row[ncols] for row in reduced[len(pivots):]):
        vector = [field_.zero] * ncols
        for idx, col in enumerate(pivots):
            vector[col] = field_.coerce(reduced[idx][ncols])
        particular = to_assignment(vector)

    basis = []
    pivot_set = set(pivots)
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [field_.zero] * ncols
        vector[free] = field_.one
        for idx, col in enumerate(pivots):
            vector[col] = field_.neg(field_.coerce(reduced[idx][free]))
        basis.append(to_assignment(vector))
    return particular, basis


def bounded_poly_solve(template: LinearTemplate, bound: int) -> Optional[Assignment]:
    """
    Solve a linear template with unknown entries of degree <= bound

    Returns None when no solution exists within the bound, which says nothing
    about solutions of higher degree.

    Raises:
        NegativeBoundError: bound < 0
        TemplateShapeError: inconsistent residual shapes
    """
    particular, _ = solution_space(template, bound)
    return particular
