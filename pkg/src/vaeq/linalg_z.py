"""Exact integer matrices and the row-monotone decomposition A = B U.

Matrices act on row vectors from the right (``x -> x M``), so solving
``X B = c`` is done with column operations on ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class MatrixShapeError(ValueError):
    pass


class NotUnimodularError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major as a tuple of row tuples."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise MatrixShapeError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise MatrixShapeError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise MatrixShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ocols = [other.col(j) for j in range(other.cols)]
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(self.row(i), c)) for c in ocols] for i in range(self.rows)],
            other.cols,
        )

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.col(j) for j in range(self.cols)], self.rows)

    def __repr__(self):
        return f"IntMatrix({self.to_rows()})"


def vec_mat(v: Sequence[int], m: IntMatrix) -> tuple[int, ...]:
    """Row vector times matrix."""
    if len(v) != m.rows:
        raise MatrixShapeError(f"vector of length {len(v)} against {m.rows} rows")
    return tuple(sum(v[i] * m[i, j] for i in range(m.rows) if v[i]) for j in range(m.cols))


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise MatrixShapeError("determinant of a non-square matrix")
    n = m.rows
    a = m.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def _row_sign(row: Sequence[int]) -> int:
    """+1, -1, 0 (all zero) or None when the row mixes signs."""
    pos = any(x > 0 for x in row)
    neg = any(x < 0 for x in row)
    if pos and neg:
        return None
    return 1 if pos else (-1 if neg else 0)


def is_upper_triangular(m: IntMatrix) -> bool:
    return all(m[i, j] == 0 for i in range(m.rows) for j in range(min(i, m.cols)))


def is_row_monotone(m: IntMatrix) -> bool:
    """Upper triangular with every row entirely >= 0 or entirely <= 0."""
    if not m.is_square:
        raise MatrixShapeError("row monotone is only defined for square matrices")
    return is_upper_triangular(m) and all(_row_sign(m.row(i)) is not None for i in range(m.rows))


@dataclass(frozen=True)
class UnimodularDecomposition:
    original: IntMatrix
    monotone: IntMatrix
    unimodular: IntMatrix


class _ColumnReducer:
    """Mutable working copy M with a companion U such that original = M U.

    Every column operation M <- M E is mirrored by U <- E^-1 U.
    """

    def __init__(self, a: IntMatrix):
        self.n = a.rows
        self.m = a.to_rows()
        self.u = IntMatrix.identity(self.n).to_rows()

    def swap(self, i: int, j: int):
        if i == j:
            return
        for row in self.m:
            row[i], row[j] = row[j], row[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]

    def negate(self, j: int):
        for row in self.m:
            row[j] = -row[j]
        self.u[j] = [-x for x in self.u[j]]

    def add(self, src: int, dst: int, mult: int):
        """column dst += mult * column src."""
        if mult == 0:
            return
        for row in self.m:
            row[dst] += mult * row[src]
        urow = self.u[dst]
        self.u[src] = [a - mult * b for a, b in zip(self.u[src], urow)]

    def triangularize(self):
        # bottom row first: clear row r in columns < r onto the diagonal
        for r in range(self.n - 1, -1, -1):
            row = self.m[r]
            while True:
                nz = [j for j in range(r + 1) if row[j] != 0]
                if len(nz) <= 1:
                    break
                p = min(nz, key=lambda j: (abs(row[j]), j))
                for j in nz:
                    if j != p:
                        self.add(p, j, -(row[j] // row[p]))
            nz = [j for j in range(r + 1) if row[j] != 0]
            if nz:
                self.swap(nz[0], r)

    def make_monotone(self):
        # grow the leading block one column at a time; rows of the block
        # stay sign-consistent because only non-negative multiples of a
        # column are ever added to another
        for m in range(1, self.n):
            for r in range(m - 1, -1, -1):
                block = self.m[r][:m]
                s = _row_sign(block)
                c = self.m[r][m]
                if s == 0 or c == 0 or (c > 0) == (s > 0):
                    continue
                i = next(j for j in range(r, m) if block[j] != 0)
                self.add(i, m, abs(c))


def row_monotone_decompose(a: IntMatrix) -> UnimodularDecomposition:
    """Write a square integer matrix as B U with B row monotone and U unimodular."""
    if not a.is_square:
        raise MatrixShapeError("row monotone decomposition needs a square matrix")
    red = _ColumnReducer(a)
    red.triangularize()
    red.make_monotone()
    b = IntMatrix.from_rows(red.m, a.cols)
    u = IntMatrix.from_rows(red.u, a.cols)
    return UnimodularDecomposition(a, b, u)


def unimodular_inverse(u: IntMatrix) -> IntMatrix:
    """Integer inverse of a matrix with determinant +1 or -1."""
    if not u.is_square:
        raise MatrixShapeError("inverse of a non-square matrix")
    det = determinant(u)
    if det not in (1, -1):
        raise NotUnimodularError(f"determinant {det} is not a unit")
    n = u.rows
    # Gauss-Jordan over Z: pivots are units at every stage for unimodular input
    a = [list(u.row(i)) + [int(i == j) for j in range(n)] for i in range(n)]
    for k in range(n):
        # Euclid on column k below the diagonal until a unit pivot appears
        while True:
            nz = [i for i in range(k, n) if a[i][k] != 0]
            p = min(nz, key=lambda i: (abs(a[i][k]), i))
            a[k], a[p] = a[p], a[k]
            done = True
            for i in range(k + 1, n):
                if a[i][k]:
                    q = a[i][k] // a[k][k]
                    a[i] = [x - q * y for x, y in zip(a[i], a[k])]
                    if a[i][k]:
                        done = False
            if done:
                break
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                q = a[i][k]
                a[i] = [x - q * y for x, y in zip(a[i], a[k])]
    return IntMatrix.from_rows([row[n:] for row in a], n)
