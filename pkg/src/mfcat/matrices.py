"""Dense matrices of polynomials.

Shapes are carried explicitly so that empty matrices (0 rows or 0 columns)
compose correctly; those show up as soon as the zero factorization enters a
cone or direct sum.  Entries are Polynomial values over a common field.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UsageError
from .poly import Polynomial


@dataclass(frozen=True)
class PolyMatrix:
    nrows: int
    ncols: int
    nvars: int
    field: object
    entries: tuple  # tuple of row tuples of Polynomial

    def __post_init__(self):
        if len(self.entries) != self.nrows:
            raise UsageError("row count mismatch")
        for row in self.entries:
            if len(row) != self.ncols:
                raise UsageError("column count mismatch")

    @classmethod
    def from_rows(cls, rows, nvars, field, ncols=None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise UsageError("cannot infer column count of an empty matrix")
            ncols = len(rows[0])
        return cls(len(rows), ncols, nvars, field, rows)

    @classmethod
    def zero(cls, nrows, ncols, nvars, field):
        z = Polynomial.zero(nvars, field)
        return cls(nrows, ncols, nvars, field, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n, nvars, field):
        z = Polynomial.zero(nvars, field)
        one = Polynomial.const(nvars, 1, field)
        return cls(
            n, n, nvars, field,
            tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)),
        )

    @classmethod
    def scalar(cls, f, n):
        """f times the n x n identity."""
        z = Polynomial.zero(f.nvars, f.field)
        return cls(
            n, n, f.nvars, f.field,
            tuple(tuple(f if i == j else z for j in range(n)) for i in range(n)),
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise UsageError(
                "shape mismatch: %dx%d @ %dx%d"
                % (self.nrows, self.ncols, other.nrows, other.ncols)
            )
        z = Polynomial.zero(self.nvars, self.field)
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                row.append(acc)
            rows.append(tuple(row))
        return PolyMatrix(self.nrows, other.ncols, self.nvars, self.field, tuple(rows))

    def __add__(self, other):
        self._same_shape(other)
        return PolyMatrix(
            self.nrows, self.ncols, self.nvars, self.field,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other):
        self._same_shape(other)
        return PolyMatrix(
            self.nrows, self.ncols, self.nvars, self.field,
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __neg__(self):
        return PolyMatrix(
            self.nrows, self.ncols, self.nvars, self.field,
            tuple(tuple(-a for a in row) for row in self.entries),
        )

    def scale(self, c):
        c = self.field.coerce(c)
        return PolyMatrix(
            self.nrows, self.ncols, self.nvars, self.field,
            tuple(tuple(a * c for a in row) for row in self.entries),
        )

    def poly_mul(self, f):
        return PolyMatrix(
            self.nrows, self.ncols, self.nvars, self.field,
            tuple(tuple(a * f for a in row) for row in self.entries),
        )

    def map_entries(self, fn):
        return PolyMatrix(
            self.nrows, self.ncols, self.nvars, self.field,
            tuple(tuple(fn(a) for a in row) for row in self.entries),
        )

    def map_entries_indexed(self, fn):
        return PolyMatrix(
            self.nrows, self.ncols, self.nvars, self.field,
            tuple(
                tuple(fn(i, j, a) for j, a in enumerate(row))
                for i, row in enumerate(self.entries)
            ),
        )

    def is_zero(self):
        return all(a.is_zero() for row in self.entries for a in row)

    def _same_shape(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise UsageError("matrix shapes differ")

    def to_json(self):
        return [[a.to_json() for a in row] for row in self.entries]

    @classmethod
    def from_json(cls, data, nvars, field, nrows=None, ncols=None):
        rows = tuple(
            tuple(Polynomial.from_json(cell, nvars, field) for cell in row)
            for row in data
        )
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(nrows, ncols, nvars, field, rows)


def hstack(blocks):
    """Join matrices left to right."""
    blocks = [b for b in blocks]
    if not blocks:
        raise UsageError("hstack of nothing")
    nrows = blocks[0].nrows
    for b in blocks:
        if b.nrows != nrows:
            raise UsageError("hstack needs equal row counts")
    rows = []
    for i in range(nrows):
        row = []
        for b in blocks:
            row.extend(b.entries[i])
        rows.append(tuple(row))
    return PolyMatrix(
        nrows, sum(b.ncols for b in blocks), blocks[0].nvars, blocks[0].field,
        tuple(rows),
    )


def vstack(blocks):
    """Join matrices top to bottom."""
    blocks = [b for b in blocks]
    if not blocks:
        raise UsageError("vstack of nothing")
    ncols = blocks[0].ncols
    for b in blocks:
        if b.ncols != ncols:
            raise UsageError("vstack needs equal column counts")
    rows = []
    for b in blocks:
        rows.extend(b.entries)
    return PolyMatrix(
        sum(b.nrows for b in blocks), ncols, blocks[0].nvars, blocks[0].field,
        tuple(rows),
    )


def block(grid):
    """Assemble a matrix from a 2d grid of blocks."""
    return vstack([hstack(row) for row in grid])
