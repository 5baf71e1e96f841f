"""Dense matrices over a finite field, exact Gaussian elimination.

Vectors are rows and matrices act on the right (x -> x g), so products
compose left to right: x (g h) = (x g) h.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import FieldMismatchError, ShapeMismatchError, SingularMatrixError
from .field import Field, FieldElement


def _codes(field: Field, rows) -> np.ndarray:
    if isinstance(rows, np.ndarray):
        arr = rows.astype(np.int64, copy=True)
    else:
        arr = np.array(
            [[e.code if isinstance(e, FieldElement) else int(e) for e in row] for row in rows],
            dtype=np.int64,
        )
    if arr.ndim != 2:
        raise ShapeMismatchError("matrix entries must form a 2-d array")
    if arr.size and (arr.min() < 0 or arr.max() >= field.q):
        raise ValueError(f"entry outside {field!r}")
    return arr


class Matrix:
    """Immutable matrix of field-element codes."""

    __slots__ = ("field", "a", "_key")

    def __init__(self, field: Field, rows):
        self.field = field
        a = _codes(field, rows)
        a.setflags(write=False)
        self.a = a
        self._key = None

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int | None = None) -> Matrix:
        return cls(field, np.zeros((rows, cols if cols is not None else rows), dtype=np.int64))

    @classmethod
    def permutation(cls, field: Field, images: Sequence[int]) -> Matrix:
        """Matrix sending basis vector i to basis vector images[i]."""
        n = len(images)
        a = np.zeros((n, n), dtype=np.int64)
        a[np.arange(n), list(images)] = 1
        return cls(field, a)

    @classmethod
    def diagonal(cls, field: Field, diag: Iterable[int | FieldElement]) -> Matrix:
        d = [e.code if isinstance(e, FieldElement) else int(e) for e in diag]
        a = np.zeros((len(d), len(d)), dtype=np.int64)
        a[np.arange(len(d)), np.arange(len(d))] = d
        return cls(field, a)

    @classmethod
    def block_diagonal(cls, blocks: Sequence[Matrix]) -> Matrix:
        field = blocks[0].field
        n = sum(b.rows for b in blocks)
        a = np.zeros((n, n), dtype=np.int64)
        k = 0
        for b in blocks:
            a[k:k + b.rows, k:k + b.cols] = b.a
            k += b.rows
        return cls(field, a)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __getitem__(self, idx) -> FieldElement:
        i, j = idx
        return self.field.element(int(self.a[i, j]))

    def _check(self, other: Matrix) -> None:
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix(self.field, self.field.dot(self.a, other.a))

    __mul__ = __matmul__

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatchError("shape mismatch in addition")
        return Matrix(self.field, self.field.add(self.a, other.a))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        return Matrix(self.field, self.field.sub(self.a, other.a))

    def scale(self, c: int | FieldElement) -> Matrix:
        c = c.code if isinstance(c, FieldElement) else int(c)
        return Matrix(self.field, self.field.mul(self.a, c))

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.a.T)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def __pow__(self, n: int) -> Matrix:
        if n < 0:
            return self.inverse() ** (-n)
        result = Matrix.identity(self.field, self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def apply(self, vectors: np.ndarray) -> np.ndarray:
        """Images x g of the rows of ``vectors``."""
        return self.field.dot(np.atleast_2d(vectors), self.a)

    def conjugate_by(self, p: Matrix) -> Matrix:
        """p g p^-1: the same map written in the basis given by the rows of p."""
        return p @ self @ p.inverse()

    # -- elimination -------------------------------------------------------
    def _echelon(self):
        """Reduced row echelon form; returns (rref, pivot columns, row ops matrix, det)."""
        F = self.field
        m, n = self.shape
        a = self.a.copy()
        ops = np.eye(m, dtype=np.int64)
        pivots: list[int] = []
        det = 1
        r = 0
        for c in range(n):
            if r == m:
                break
            nz = np.flatnonzero(a[r:, c])
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                a[[r, k]] = a[[k, r]]
                ops[[r, k]] = ops[[k, r]]
                det = int(F.neg(det))
            piv = int(a[r, c])
            det = int(F.mul(det, piv))
            inv = int(F.inv(piv))
            a[r] = F.mul(a[r], inv)
            ops[r] = F.mul(ops[r], inv)
            col = a[:, c].copy()
            col[r] = 0
            rows = np.flatnonzero(col)
            if rows.size:
                a[rows] = F.sub(a[rows], F.mul(col[rows, None], a[r][None, :]))
                ops[rows] = F.sub(ops[rows], F.mul(col[rows, None], ops[r][None, :]))
            pivots.append(c)
            r += 1
        return a, pivots, ops, det

    def rank(self) -> int:
        return len(self._echelon()[1])

    def det(self) -> FieldElement:
        if self.rows != self.cols:
            raise ShapeMismatchError("determinant of a non-square matrix")
        _, piv, _, det = self._echelon()
        return self.field.element(det if len(piv) == self.rows else 0)

    def inverse(self) -> Matrix:
        if self.rows != self.cols:
            raise ShapeMismatchError("inverse of a non-square matrix")
        _, piv, ops, _ = self._echelon()
        if len(piv) < self.rows:
            raise SingularMatrixError("matrix is singular")
        return Matrix(self.field, ops)

    def row_space(self) -> Matrix:
        rref, piv, _, _ = self._echelon()
        return Matrix(self.field, rref[: len(piv)])

    def kernel_basis(self) -> list[np.ndarray]:
        """Basis of {x : x A = 0} (row vectors, matching the right action)."""
        rref, piv, ops, _ = Matrix(self.field, self.a)._echelon()
        # rows of ops beyond the rank combine the rows of A to zero
        return [ops[i].copy() for i in range(len(piv), self.rows)]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    # -- identity and printing ----------------------------------------------
    def key(self) -> bytes:
        if self._key is None:
            self._key = self.a.astype(np.int32).tobytes()
        return self._key

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and np.array_equal(self.a, other.a)
        )

    def __hash__(self) -> int:
        return hash((self.field.q, self.shape, self.key()))

    def is_identity(self) -> bool:
        return self.rows == self.cols and np.array_equal(self.a, np.eye(self.rows, dtype=np.int64))

    def to_text(self) -> str:
        """Stable row-major text: one row per line, entries as element codes."""
        return "\n".join(" ".join(str(int(v)) for v in row) for row in self.a)

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.a.tolist()})"


def matrix_algebra(op: str, *args):
    """Name-dispatched access to the matrix operations."""
    if op == "mul":
        return args[0] @ args[1]
    if op == "inv":
        return args[0].inverse()
    if op == "rank":
        return args[0].rank()
    if op == "transpose":
        return args[0].transpose()
    if op == "det":
        return args[0].det()
    if op == "kernel_basis":
        return args[0].kernel_basis()
    raise ValueError(f"unknown matrix operation {op!r}")


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; (x (x) y)(a (x) b) = xa (x) yb with index i*dim(b)+j."""
    F = a.field
    out = F.mul(a.a[:, None, :, None], b.a[None, :, None, :])
    return Matrix(F, out.reshape(a.rows * b.rows, a.cols * b.cols))
