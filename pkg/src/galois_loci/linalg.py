"""Exact dense linear algebra over the cyclotomic element type.

Everything here is plain Gaussian elimination with exact field arithmetic;
the matrices in this project are tiny (a handful of rows either way), so
clarity wins over cleverness.  No floating point enters this module.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .cyclotomic import Cyc

ZERO = Cyc.of(0)
ONE = Cyc.of(1)


class Matrix:
    """Immutable exact matrix; entries are coerced to Cyc on construction."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(Cyc.of(v) for v in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, *_):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def row(self, i: int) -> tuple[Cyc, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[Cyc, ...]:
        return tuple(row[j] for row in self.data)

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        cols = other.transpose().data
        return Matrix(
            [[_dot(r, c) for c in cols] for r in self.data]
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        )

    def scale(self, c) -> "Matrix":
        c = Cyc.of(c)
        return Matrix([[c * v for v in row] for row in self.data])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.data == other.data

    def __hash__(self):
        return hash(tuple(tuple(v.key() for v in row) for row in self.data))

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.data]})"

    # -- elimination-based queries -------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot column indices."""
        m = [list(row) for row in self.data]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            pivot = next((i for i in range(r, self.rows) if not m[i][c].is_zero()), None)
            if pivot is None:
                continue
            m[r], m[pivot] = m[pivot], m[r]
            inv = m[r][c].inverse()
            m[r] = [v * inv for v in m[r]]
            for i in range(self.rows):
                if i != r and not m[i][c].is_zero():
                    f = m[i][c]
                    m[i] = [v - f * w for v, w in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix(m), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> Cyc:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(row) for row in self.data]
        det = ONE
        for c in range(self.cols):
            pivot = next((i for i in range(c, self.rows) if not m[i][c].is_zero()), None)
            if pivot is None:
                return ZERO
            if pivot != c:
                m[c], m[pivot] = m[pivot], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c].inverse()
            for i in range(c + 1, self.rows):
                if not m[i][c].is_zero():
                    f = m[i][c] * inv
                    m[i] = [v - f * w for v, w in zip(m[i], m[c])]
        return det

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = Matrix([list(self.data[i]) + [ONE if j == i else ZERO for j in range(n)]
                      for i in range(n)])
        red, pivots = aug.rref()
        if pivots != tuple(range(n)):
            raise ValueError("matrix is singular")
        return Matrix([red.data[i][n:] for i in range(n)])

    def solve(self, rhs: Sequence) -> tuple[Cyc, ...] | None:
        """One exact solution of A x = rhs, or None if inconsistent."""
        b = [Cyc.of(v) for v in rhs]
        if len(b) != self.rows:
            raise ValueError("right-hand side length mismatch")
        aug = Matrix([list(row) + [b[i]] for i, row in enumerate(self.data)])
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [ZERO] * self.cols
        for r, c in enumerate(pivots):
            x[c] = red.data[r][self.cols]
        return tuple(x)


def _dot(u: Sequence[Cyc], v: Sequence[Cyc]) -> Cyc:
    total = ZERO
    for a, b in zip(u, v):
        if not (a.is_zero() or b.is_zero()):
            total = total + a * b
    return total


def kernel_basis(mat: Matrix) -> list[tuple[Cyc, ...]]:
    """Exact basis of the right null space; empty iff full column rank."""
    red, pivots = mat.rref()
    free = [c for c in range(mat.cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [ZERO] * mat.cols
        vec[f] = ONE
        for r, c in enumerate(pivots):
            vec[c] = -red.data[r][f]
        basis.append(tuple(vec))
    return basis


def row_space_equal(a: Matrix, b: Matrix) -> bool:
    """Whether two matrices with the same number of columns span the same row space."""
    if a.cols != b.cols:
        raise ValueError("column count mismatch")
    stacked = Matrix(list(a.data) + list(b.data))
    r = a.rank()
    return r == b.rank() == stacked.rank()
