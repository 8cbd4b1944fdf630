"""Exact rational matrices and row reduction.

Scalars are :class:`fractions.Fraction`, so every entry is kept in lowest
terms with a positive denominator and arbitrary-precision components.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


def to_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, str or Fraction")
    return Fraction(value)


class Matrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable] = (), cols: int | None = None):
        rows = tuple(tuple(to_rational(v) for v in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("column count does not match data")
        else:
            width = cols or 0
        self.rows = len(rows)
        self.cols = width
        self._data = rows

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> Matrix:
        if not columns:
            return cls.zeros(rows or 0, 0)
        return cls(list(zip(*columns)), cols=len(columns))

    def __getitem__(self, key):
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(v == 0 for r in self._data for v in r)

    def transpose(self) -> Matrix:
        return Matrix(zip(*self._data), cols=self.rows) if self.rows else Matrix.zeros(self.cols, 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def _check_same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(
            ([a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)), cols=self.cols
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(
            ([a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)), cols=self.cols
        )

    def __neg__(self) -> Matrix:
        return Matrix(([-a for a in r] for r in self._data), cols=self.cols)

    def scale(self, c) -> Matrix:
        c = to_rational(c)
        return Matrix(([c * a for a in r] for r in self._data), cols=self.cols)

    def __rmul__(self, c) -> Matrix:
        return self.scale(c)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.transpose()._data if other.rows else ()
        out = []
        for r in self._data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * c[k] for k, a in nz), Fraction(0)) for c in cols] if cols else [0] * other.cols)
        return Matrix(out, cols=other.cols)

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return [sum((a * to_rational(v) for a, v in zip(r, vec) if a and v), Fraction(0)) for r in self._data]


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        if inv != 1:
            rows[r] = [v * inv for v in rows[r]]
        prow = rows[r]
        nz = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for k in nz:
                        row[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows, pivots = _rref_rows(m.tolist(), m.cols)
    return Matrix(rows, cols=m.cols), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix) -> list[list[Fraction]]:
    """Basis of the kernel, one vector per free column."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r, free]
        basis.append(v)
    return basis


def coords_in_span(v: Sequence, basis: Sequence[Sequence]) -> list[Fraction] | None:
    """Coordinates of ``v`` in ``basis``, or ``None`` when ``v`` is not in the span.

    When the basis vectors are dependent the coordinates returned are the
    ones with every free coefficient set to zero.
    """
    n = len(v)
    if any(len(b) != n for b in basis):
        raise ValueError("all vectors must have the same length")
    k = len(basis)
    aug = [[to_rational(b[i]) for b in basis] + [to_rational(v[i])] for i in range(n)]
    rows, pivots = _rref_rows(aug, k + 1)
    if k in pivots:
        return None
    coords = [Fraction(0)] * k
    for r, pc in enumerate(pivots):
        coords[pc] = rows[r][k]
    return coords


def span_basis(vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    """Row-reduced basis of the span of ``vectors``."""
    if not vectors:
        return []
    reduced, pivots = rref(Matrix(vectors))
    return [list(reduced.row(i)) for i in range(len(pivots))]
