"""
Dense matrices with polynomial entries
Row-major, immutable. Matrices act on column vectors, so the composite
g after f is the product G @ F.
"""
from typing import Callable, List, Optional, Sequence, Tuple, Union

from factn.algebra.fields import Scalar
from factn.algebra.polynomial import Polynomial, Ring, total_degree
from factn.exceptions import DimensionMismatchError, RingMismatchError

Entry = Union[Polynomial, Scalar, str]
# Block cell: a matrix, None for zero, or an int k meaning k times the identity
Cell = Union["Matrix", None, int]


class Matrix:
    """Immutable rows x cols matrix over a Ring"""

    __slots__ = ("ring", "rows", "cols", "_entries", "_hash")

    def __init__(self, ring: Ring, rows: int, cols: int, entries: Sequence[Polynomial]):
        if rows < 0 or cols < 0:
            raise DimensionMismatchError(f"negative shape {rows}x{cols}")
        if len(entries) != rows * cols:
            raise DimensionMismatchError(
                f"{len(entries)} entries for a {rows}x{cols} matrix"
            )
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self._entries: Tuple[Polynomial, ...] = tuple(entries)
        self._hash = None

    # ============================================
    # Constructors
    # ============================================

    @classmethod
    def from_rows(
        cls,
        ring: Ring,
        rows: Sequence[Sequence[Entry]],
        cols: Optional[int] = None
    ) -> "Matrix":
        """
        Build from nested lists of polynomials, scalars or polynomial text

        cols is required when there are no rows.
        """
        if cols is None:
            if not rows:
                raise DimensionMismatchError("column count needed for an empty matrix")
            cols = len(rows[0])
        entries = []
        for row in rows:
            if len(row) != cols:
                raise DimensionMismatchError(f"ragged row of length {len(row)}, expected {cols}")
            entries.extend(ring.coerce(value) for value in row)
        return cls(ring, len(rows), cols, entries)

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> "Matrix":
        return cls(ring, rows, cols, [ring.zero()] * (rows * cols))

    @classmethod
    def identity(cls, ring: Ring, size: int) -> "Matrix":
        return cls.scalar(ring, size, 1)

    @classmethod
    def scalar(cls, ring: Ring, size: int, value: Entry) -> "Matrix":
        """value times the identity"""
        value = ring.coerce(value)
        zero = ring.zero()
        entries = [value if i == j else zero for i in range(size) for j in range(size)]
        return cls(ring, size, size, entries)

    @classmethod
    def from_scalars(cls, ring: Ring, rows: Sequence[Sequence[Scalar]], cols: int) -> "Matrix":
        entries = [ring.const(value) for row in rows for value in row]
        return cls(ring, len(rows), cols, entries)

    @classmethod
    def block(
        cls,
        ring: Ring,
        grid: Sequence[Sequence[Cell]],
        row_sizes: Sequence[int],
        col_sizes: Sequence[int]
    ) -> "Matrix":
        """
        Assemble a block matrix

        Each cell is a Matrix of the right shape, None (zero block) or an
        int k (k times the identity; the block must be square).
        """
        if len(grid) != len(row_sizes) or any(len(r) != len(col_sizes) for r in grid):
            raise DimensionMismatchError("block grid does not match the block sizes")
        total_rows, total_cols = sum(row_sizes), sum(col_sizes)
        entries = [ring.zero()] * (total_rows * total_cols)
        r0 = 0
        for bi, grid_row in enumerate(grid):
            c0 = 0
            for bj, cell in enumerate(grid_row):
                h, w = row_sizes[bi], col_sizes[bj]
                if isinstance(cell, int) and not isinstance(cell, bool):
                    if cell and h != w:
                        raise DimensionMismatchError(f"identity block of shape {h}x{w}")
                    cell = cls.scalar(ring, h, cell) if cell else None
                if cell is not None:
                    if (cell.rows, cell.cols) != (h, w):
                        raise DimensionMismatchError(
                            f"block ({bi},{bj}) is {cell.rows}x{cell.cols}, expected {h}x{w}"
                        )
                    cell._check_ring(ring)
                    for i in range(h):
                        for j in range(w):
                            entries[(r0 + i) * total_cols + c0 + j] = cell._entries[i * w + j]
                c0 += w
            r0 += h
        return cls(ring, total_rows, total_cols, entries)

    @classmethod
    def hstack(cls, ring: Ring, parts: Sequence["Matrix"], rows: Optional[int] = None) -> "Matrix":
        if rows is None:
            rows = parts[0].rows
        return cls.block(ring, [list(parts)], [rows], [p.cols for p in parts])

    @classmethod
    def vstack(cls, ring: Ring, parts: Sequence["Matrix"], cols: Optional[int] = None) -> "Matrix":
        if cols is None:
            cols = parts[0].cols
        return cls.block(ring, [[p] for p in parts], [p.rows for p in parts], [cols])

    # ============================================
    # Access
    # ============================================

    def _check_ring(self, ring: Ring):
        if self.ring != ring:
            raise RingMismatchError(f"matrix over {self.ring} used with {ring}")

    def __getitem__(self, index: Tuple[int, int]) -> Polynomial:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i},{j}) outside {self.rows}x{self.cols}")
        return self._entries[i * self.cols + j]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> Tuple[Polynomial, ...]:
        return self._entries

    def row(self, i: int) -> List[Polynomial]:
        return list(self._entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> List[List[Polynomial]]:
        return [self.row(i) for i in range(self.rows)]

    def to_strings(self) -> List[List[str]]:
        return [[str(p) for p in row] for row in self.to_rows()]

    def to_scalars(self) -> List[List[Scalar]]:
        """Entries as scalars; every entry must be constant"""
        return [[p.constant_value() for p in row] for row in self.to_rows()]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        entries = [self._entries[i * self.cols + j] for i in range(r0, r1) for j in range(c0, c1)]
        return Matrix(self.ring, r1 - r0, c1 - c0, entries)

    def split(self, row_sizes: Sequence[int], col_sizes: Sequence[int]) -> List[List["Matrix"]]:
        """Inverse of block(): cut into a grid of blocks"""
        if sum(row_sizes) != self.rows or sum(col_sizes) != self.cols:
            raise DimensionMismatchError("block sizes do not add up to the shape")
        grid = []
        r0 = 0
        for h in row_sizes:
            c0 = 0
            grid_row = []
            for w in col_sizes:
                grid_row.append(self.submatrix(r0, r0 + h, c0, c0 + w))
                c0 += w
            grid.append(grid_row)
            r0 += h
        return grid

    # ============================================
    # Predicates
    # ============================================

    def is_zero(self) -> bool:
        return not any(self._entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_constant(self) -> bool:
        return all(p.is_constant() for p in self._entries)

    def is_identity(self) -> bool:
        return self.is_square() and self == Matrix.identity(self.ring, self.rows)

    def max_degree(self) -> int:
        return total_degree(self._entries)

    # ============================================
    # Arithmetic
    # ============================================

    def _same_shape(self, other: "Matrix", op: str):
        if not isinstance(other, Matrix):
            raise TypeError(f"cannot {op} Matrix and {type(other).__name__}")
        other._check_ring(self.ring)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot {op} {self.shape} and {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other, "add")
        return Matrix(self.ring, self.rows, self.cols,
                      [a + b for a, b in zip(self._entries, other._entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other, "subtract")
        return Matrix(self.ring, self.rows, self.cols,
                      [a - b for a, b in zip(self._entries, other._entries)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.ring, self.rows, self.cols, [-a for a in self._entries])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def scale(self, value: Entry) -> "Matrix":
        value = self.ring.coerce(value)
        return Matrix(self.ring, self.rows, self.cols, [value * a for a in self._entries])

    def transpose(self) -> "Matrix":
        entries = [self._entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)]
        return Matrix(self.ring, self.cols, self.rows, entries)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def map(self, fn: Callable[[Polynomial], Polynomial]) -> "Matrix":
        """Apply fn to every entry"""
        return Matrix(self.ring, self.rows, self.cols, [fn(a) for a in self._entries])

    def substitute(self, images) -> "Matrix":
        """Apply a ring endomorphism entrywise"""
        return self.map(lambda p: p.substitute(images))

    # ============================================
    # Determinant and inverse
    # ============================================

    def determinant(self) -> Polynomial:
        """Fraction-free Bareiss elimination; exact over any polynomial ring"""
        if not self.is_square():
            raise DimensionMismatchError(f"determinant of a {self.rows}x{self.cols} matrix")
        n = self.rows
        ring = self.ring
        if n == 0:
            return ring.one()
        m = self.to_rows()
        sign = 1
        previous = ring.one()
        for k in range(n - 1):
            if m[k][k].is_zero():
                swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
                if swap is None:
                    return ring.zero()
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    numerator = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                    m[i][j] = numerator.exact_divide(previous)
            previous = m[k][k]
        det = m[n - 1][n - 1]
        return det if sign == 1 else -det

    def minor(self, i: int, j: int) -> "Matrix":
        rows = [r for r in range(self.rows) if r != i]
        cols = [c for c in range(self.cols) if c != j]
        entries = [self._entries[r * self.cols + c] for r in rows for c in cols]
        return Matrix(self.ring, len(rows), len(cols), entries)

    def inverse(self) -> Optional["Matrix"]:
        """
        Two-sided inverse over the ring, or None

        Invertible exactly when the determinant is a nonzero constant.
        """
        if not self.is_square():
            return None
        n = self.rows
        if n == 0:
            return self
        if self.is_constant():
            from factn.algebra.linsolve import field_solve
            result = field_solve(self, Matrix.identity(self.ring, n))
            if result.particular is None or result.nullspace:
                return None
            return result.particular
        det = self.determinant()
        if det.is_zero() or not det.is_constant():
            return None
        det_inv = self.ring.field.inv(det.constant_value())
        entries = []
        for i in range(n):
            for j in range(n):
                cofactor = self.minor(j, i).determinant()
                if (i + j) % 2:
                    cofactor = -cofactor
                entries.append(cofactor.scale(det_inv))
        return Matrix(self.ring, n, n, entries)

    # ============================================
    # Comparison and printing
    # ============================================

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.shape == other.shape
            and self._entries == other._entries
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._entries))
        return self._hash

    def __str__(self) -> str:
        if not self.rows or not self.cols:
            return f"[{self.rows}x{self.cols} empty]"
        return "[" + "; ".join(", ".join(row) for row in self.to_strings()) + "]"

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} {self})"


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """
    Exact product a @ b

    Raises:
        DimensionMismatchError: a.cols != b.rows
        RingMismatchError: different rings
    """
    if not isinstance(a, Matrix) or not isinstance(b, Matrix):
        raise TypeError("mat_mul expects two matrices")
    b._check_ring(a.ring)
    if a.cols != b.rows:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    ring = a.ring
    zero = ring.zero()
    ae, be = a._entries, b._entries
    n, m, p = a.rows, a.cols, b.cols
    entries = []
    for i in range(n):
        row = ae[i * m:(i + 1) * m]
        for j in range(p):
            total = zero
            for k in range(m):
                x = row[k]
                if x:
                    y = be[k * p + j]
                    if y:
                        total = total + x * y
            entries.append(total)
    return Matrix(ring, n, p, entries)
