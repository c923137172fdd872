"""Exact dense matrices and the canonical eliminations built on them.

All algorithms are deterministic: row reduction always pivots on the first
nonzero entry scanning top to bottom, left to right, so equal inputs yield
byte-equal outputs regardless of platform.  Zero-row and zero-column matrices
are first-class citizens; they show up constantly as maps in and out of the
null object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ShapeError
from .fields import Scalar, ScalarField


@dataclass(frozen=True)
class Matrix:
    """An immutable ``rows x cols`` matrix with entries in one scalar field.

    Entries are stored row-major in a flat tuple.
    """

    rows: int
    cols: int
    entries: tuple
    field: ScalarField

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )
        for e in self.entries:
            if not self.field.contains(e):
                raise ShapeError(f"entry {e!r} does not belong to {self.field}")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, field: ScalarField, rows: Sequence[Sequence[Scalar]],
                  cols: int | None = None) -> Matrix:
        """Build from nested sequences.  ``cols`` disambiguates zero-row shapes."""
        nrows = len(rows)
        if nrows == 0:
            if cols is None:
                raise ShapeError("cols is required for a zero-row matrix")
            return cls(0, cols, (), field)
        ncols = len(rows[0])
        if cols is not None and cols != ncols:
            raise ShapeError(f"row length {ncols} does not match cols={cols}")
        flat: list[Scalar] = []
        for r in rows:
            if len(r) != ncols:
                raise ShapeError("ragged rows")
            flat.extend(r)
        return cls(nrows, ncols, tuple(flat), field)

    @classmethod
    def from_int_rows(cls, field: ScalarField, rows: Sequence[Sequence[int]],
                      cols: int | None = None) -> Matrix:
        lifted = [[field.from_int(x) for x in r] for r in rows]
        return cls.from_rows(field, lifted, cols=cols)

    @classmethod
    def zeros(cls, field: ScalarField, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, (field.zero(),) * (rows * cols), field)

    @classmethod
    def identity(cls, field: ScalarField, n: int) -> Matrix:
        zero, one = field.zero(), field.one()
        ents = tuple(one if i == j else zero for i in range(n) for j in range(n))
        return cls(n, n, ents, field)

    @classmethod
    def column(cls, field: ScalarField, values: Sequence[Scalar]) -> Matrix:
        return cls(len(values), 1, tuple(values), field)

    # -- access ------------------------------------------------------------

    def entry(self, i: int, j: int) -> Scalar:
        return self.entries[i * self.cols + j]

    def row_list(self) -> list[list[Scalar]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols])
                for i in range(self.rows)]

    def col(self, j: int) -> Matrix:
        return Matrix(self.rows, 1,
                      tuple(self.entry(i, j) for i in range(self.rows)),
                      self.field)

    def take_columns(self, idxs: Iterable[int]) -> Matrix:
        idxs = list(idxs)
        ents = tuple(self.entry(i, j) for i in range(self.rows) for j in idxs)
        return Matrix(self.rows, len(idxs), ents, self.field)

    @property
    def is_zero(self) -> bool:
        return not any(self.entries)

    # -- arithmetic ----------------------------------------------------------

    def _same_shape(self, other: Matrix) -> None:
        if not isinstance(other, Matrix):
            raise ShapeError(f"expected a matrix, got {other!r}")
        if self.field != other.field:
            raise ShapeError(f"field mismatch: {self.field} vs {other.field}")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        ents = tuple(a + b for a, b in zip(self.entries, other.entries))
        return Matrix(self.rows, self.cols, ents, self.field)

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        ents = tuple(a - b for a, b in zip(self.entries, other.entries))
        return Matrix(self.rows, self.cols, ents, self.field)

    def __neg__(self) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries), self.field)

    def scale(self, s: Scalar) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(s * a for a in self.entries), self.field)

    def __matmul__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field:
            raise ShapeError(f"field mismatch: {self.field} vs {other.field}")
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        zero = self.field.zero()
        out: list[Scalar] = []
        for i in range(self.rows):
            base = i * self.cols
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self.entries[base + k] * other.entries[k * other.cols + j]
                out.append(acc)
        return Matrix(self.rows, other.cols, tuple(out), self.field)

    def transpose(self) -> Matrix:
        ents = tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows))
        return Matrix(self.cols, self.rows, ents, self.field)

    def hstack(self, other: Matrix) -> Matrix:
        if self.rows != other.rows or self.field != other.field:
            raise ShapeError("hstack needs equal row counts over one field")
        out: list[Scalar] = []
        for i in range(self.rows):
            out.extend(self.entries[i * self.cols:(i + 1) * self.cols])
            out.extend(other.entries[i * other.cols:(i + 1) * other.cols])
        return Matrix(self.rows, self.cols + other.cols, tuple(out), self.field)

    def vstack(self, other: Matrix) -> Matrix:
        if self.cols != other.cols or self.field != other.field:
            raise ShapeError("vstack needs equal column counts over one field")
        return Matrix(self.rows + other.rows, self.cols,
                      self.entries + other.entries, self.field)

    def __str__(self) -> str:
        rows = ["[" + ", ".join(self.field.format(self.entry(i, j))
                                for j in range(self.cols)) + "]"
                for i in range(self.rows)]
        return "[" + ", ".join(rows) + "]"


def _rref_rows(rows: list[list[Scalar]], ncols: int) -> tuple[list[list[Scalar]], list[int]]:
    """Reduce in place; returns (rows, pivot column indices)."""
    pivots: list[int] = []
    pr = 0
    nrows = len(rows)
    for c in range(ncols):
        pivot_row = None
        for r in range(pr, nrows):
            if rows[r][c]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        piv = rows[pr][c]
        rows[pr] = [x / piv for x in rows[pr]]
        for r in range(nrows):
            if r != pr and rows[r][c]:
                factor = rows[r][c]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pr])]
        pivots.append(c)
        pr += 1
        if pr == nrows:
            break
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    """Reduced row echelon form with its pivot columns and rank.

    Pivot choice is the first nonzero entry top to bottom, left to right, so
    the result is canonical for each matrix.
    """
    rows, pivots = _rref_rows(m.row_list(), m.cols)
    flat = tuple(x for row in rows for x in row)
    return Matrix(m.rows, m.cols, flat, m.field), tuple(pivots), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[2]


def nullspace_basis(m: Matrix) -> Matrix:
    """Canonical kernel basis, one column per free column of the rref.

    Each basis vector sets its free variable to one and every other free
    variable to zero; columns are ordered by increasing free column index.
    """
    r, pivots, _ = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    zero, one = m.field.zero(), m.field.one()
    cols: list[list[Scalar]] = []
    for f in free:
        v = [zero] * m.cols
        v[f] = one
        for i, pc in enumerate(pivots):
            v[pc] = -r.entry(i, f)
        cols.append(v)
    ents = tuple(cols[j][i] for i in range(m.cols) for j in range(len(free)))
    return Matrix(m.cols, len(free), ents, m.field)


def left_nullspace_basis(m: Matrix) -> Matrix:
    """Canonical basis of ``{y : y @ m = 0}``, stacked as rows in rref form."""
    n = nullspace_basis(m.transpose())
    reduced, _, _ = rref(n.transpose())
    return reduced


def solve_matrix(m: Matrix, b: Matrix) -> Matrix | None:
    """Solve ``m @ x = b`` column by column; None if any column is inconsistent.

    The particular solution sets every free variable to zero.
    """
    if m.rows != b.rows or m.field != b.field:
        raise ShapeError(f"cannot solve {m.rows}x{m.cols} against {b.rows}x{b.cols}")
    aug, pivots, _ = rref(m.hstack(b))
    if any(p >= m.cols for p in pivots):
        return None
    zero = m.field.zero()
    out = [[zero] * b.cols for _ in range(m.cols)]
    for i, pc in enumerate(pivots):
        for j in range(b.cols):
            out[pc][j] = aug.entry(i, m.cols + j)
    ents = tuple(out[i][j] for i in range(m.cols) for j in range(b.cols))
    return Matrix(m.cols, b.cols, ents, m.field)


def solve(m: Matrix, b: Matrix) -> Matrix | None:
    """Solve ``m @ x = b`` for a single column ``b``."""
    if b.cols != 1:
        raise ShapeError(f"right-hand side must be a column, got {b.rows}x{b.cols}")
    return solve_matrix(m, b)


def solve_with_column_order(m: Matrix, b: Matrix, order: Sequence[int]) -> Matrix | None:
    """Solve ``m @ x = b`` after permuting the unknowns by ``order``.

    A different column order picks a different particular solution, which is
    what well-definedness checks need.
    """
    if sorted(order) != list(range(m.cols)):
        raise ShapeError(f"order must permute range({m.cols})")
    permuted = m.take_columns(order)
    y = solve_matrix(permuted, b)
    if y is None:
        return None
    zero = m.field.zero()
    out = [[zero] * b.cols for _ in range(m.cols)]
    for pos, original in enumerate(order):
        for j in range(b.cols):
            out[original][j] = y.entry(pos, j)
    ents = tuple(out[i][j] for i in range(m.cols) for j in range(b.cols))
    return Matrix(m.cols, b.cols, ents, m.field)
