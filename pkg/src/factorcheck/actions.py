"""Point universes on which matrix and permutation groups act.

Each action turns a group element into a permutation of a canonically
ordered, explicitly materialized point set.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import BudgetExceededError, PointNotInUniverseError, ShapeMismatchError
from .field import Field
from .linalg import Matrix
from .perm import DEGREE_BUDGET, DTYPE

VECTOR_BUDGET = 1 << 24


def encode_vectors(F: Field, vecs: np.ndarray) -> np.ndarray:
    """Integer code of each row, first coordinate most significant."""
    vecs = np.atleast_2d(vecs)
    code = np.zeros(len(vecs), dtype=np.int64)
    for j in range(vecs.shape[1]):
        code = code * F.q + vecs[:, j]
    return code


def decode_vectors(F: Field, codes: np.ndarray, dim: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64).copy()
    out = np.empty((len(codes), dim), dtype=np.int64)
    for j in range(dim - 1, -1, -1):
        out[:, j] = codes % F.q
        codes //= F.q
    return out


def normalize(F: Field, vecs: np.ndarray) -> np.ndarray:
    """Scale each nonzero row so that its first nonzero entry is 1."""
    vecs = np.atleast_2d(vecs)
    nz = vecs != 0
    if not nz.any(axis=1).all():
        raise ValueError("zero vector has no projective point")
    lead = vecs[np.arange(len(vecs)), nz.argmax(axis=1)]
    return F.mul(vecs, F.inv(lead)[:, None])


class ProjectiveAction:
    """Right action of invertible matrices on the 1-spaces of F^dim."""

    def __init__(self, field: Field, dim: int):
        if field.q ** dim > VECTOR_BUDGET:
            raise BudgetExceededError(f"{field.q}^{dim} vectors exceed the enumeration budget")
        self.field = field
        self.dim = dim
        codes = np.arange(1, field.q ** dim, dtype=np.int64)
        vecs = decode_vectors(field, codes, dim)
        lead = vecs[np.arange(len(vecs)), (vecs != 0).argmax(axis=1)]
        keep = lead == 1
        self.points = vecs[keep]
        self.points.setflags(write=False)
        self._index = np.full(field.q ** dim, -1, dtype=np.int64)
        self._index[codes[keep]] = np.arange(int(keep.sum()))

    @property
    def degree(self) -> int:
        return len(self.points)

    def index(self, vecs: np.ndarray) -> np.ndarray:
        vecs = np.atleast_2d(np.asarray(vecs, dtype=np.int64))
        if vecs.shape[1] != self.dim:
            raise ShapeMismatchError(f"vectors of length {vecs.shape[1]} in dimension {self.dim}")
        return self._index[encode_vectors(self.field, normalize(self.field, vecs))]

    def point(self, vec) -> int:
        return int(self.index(np.asarray(vec, dtype=np.int64)[None, :])[0])

    def perm(self, g: Matrix) -> np.ndarray:
        if g.shape != (self.dim, self.dim):
            raise ShapeMismatchError(f"{g.shape} matrix on dimension {self.dim}")
        return self.index(g.apply(self.points)).astype(DTYPE)

    def perms(self, gens: Sequence[Matrix]) -> list[np.ndarray]:
        return [self.perm(g) for g in gens]


class VectorAction:
    """Right action on the nonzero vectors of F^dim."""

    def __init__(self, field: Field, dim: int):
        if field.q ** dim > VECTOR_BUDGET:
            raise BudgetExceededError(f"{field.q}^{dim} vectors exceed the enumeration budget")
        self.field = field
        self.dim = dim
        self.points = decode_vectors(field, np.arange(1, field.q ** dim), dim)

    @property
    def degree(self) -> int:
        return len(self.points)

    def index(self, vecs: np.ndarray) -> np.ndarray:
        return encode_vectors(self.field, np.atleast_2d(vecs)) - 1

    def point(self, vec) -> int:
        return int(self.index(np.asarray(vec, dtype=np.int64)[None, :])[0])

    def perm(self, g: Matrix) -> np.ndarray:
        return self.index(g.apply(self.points)).astype(DTYPE)

    def perms(self, gens: Sequence[Matrix]) -> list[np.ndarray]:
        return [self.perm(g) for g in gens]


class QuadraticFormAction:
    """Isometries of an alternating form acting on the quadratic forms that
    polarize to it (characteristic 2).

    Such a form is fixed by its values on the basis vectors, so the universe
    is F^dim.  The action is Q -> Q^g with Q^g(x) = Q(x g^-1).
    """

    def __init__(self, gram: Matrix):
        F = gram.field
        if F.p != 2:
            raise ValueError("quadratic form action needs characteristic 2")
        n = gram.rows
        if F.q ** n > VECTOR_BUDGET:
            raise BudgetExceededError(f"{F.q}^{n} forms exceed the enumeration budget")
        self.field = F
        self.gram = gram
        self.dim = n
        self.diagonals = decode_vectors(F, np.arange(F.q ** n), n)
        self._upper = np.triu(gram.a, 1)

    @property
    def degree(self) -> int:
        return len(self.diagonals)

    def form(self, idx: int):
        from .forms import QuadraticForm

        c = self._upper.copy()
        c[np.arange(self.dim), np.arange(self.dim)] = self.diagonals[idx]
        return QuadraticForm(Matrix(self.field, c))

    def index_of(self, Q) -> int:
        c = Q.coeffs.a
        if not np.array_equal(np.triu(c, 1), self._upper):
            raise PointNotInUniverseError("form does not polarize to the fixed Gram matrix")
        return int(encode_vectors(self.field, np.diag(c)[None, :])[0])

    def _values(self, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Split Q(r) = sum_i d_i r_i^2 + cross(r) for each row r."""
        F = self.field
        sq = F.mul(rows, rows)
        cross = np.zeros(len(rows), dtype=np.int64)
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                b = int(self._upper[i, j])
                if b:
                    cross = F.add(cross, F.mul(b, F.mul(rows[:, i], rows[:, j])))
        return sq, cross

    def perm(self, g: Matrix) -> np.ndarray:
        F = self.field
        rows = g.inverse().a
        sq, cross = self._values(rows)
        new = F.add(F.dot(self.diagonals, sq.T), cross[None, :])
        return encode_vectors(F, new).astype(DTYPE)

    def perms(self, gens: Sequence[Matrix]) -> list[np.ndarray]:
        return [self.perm(g) for g in gens]


# -- set-valued points --------------------------------------------------------

def _row_keys(rows: np.ndarray) -> np.ndarray:
    """Byte-string keys ordered like the integer rows (big-endian)."""
    rows = np.ascontiguousarray(rows.astype(">u4"))
    return rows.view(f"S{4 * rows.shape[1]}").ravel()


def canonical_sets(rows: np.ndarray, blocks: int = 1) -> np.ndarray:
    """Canonical form of points that are sets of ``blocks`` equal-size subsets:
    each block sorted, blocks in increasing order."""
    n, width = rows.shape
    k = width // blocks
    out = np.sort(rows.reshape(n, blocks, k), axis=2)
    if blocks == 2:
        a = _row_keys(out[:, 0])
        b = _row_keys(out[:, 1])
        swap = a > b
        out[swap] = out[swap][:, ::-1]
    elif blocks != 1:
        raise ValueError("only one or two blocks are supported")
    return out.reshape(n, width)


def set_orbit(gens: Sequence[np.ndarray], start: Sequence[int], blocks: int = 1,
              limit: int = DEGREE_BUDGET) -> np.ndarray:
    """Orbit of a set-valued point under permutations of the base points.

    Returns the canonical rows in BFS order (point by point, generator by
    generator), starting with the canonical form of ``start``.
    """
    first = canonical_sets(np.asarray(start, dtype=np.int64)[None, :], blocks)
    found = [first]
    seen = _row_keys(first)
    frontier = first
    total = 1
    while len(frontier):
        imgs = np.stack([g[frontier] for g in gens], axis=1).reshape(-1, first.shape[1])
        imgs = canonical_sets(imgs, blocks)
        keys = _row_keys(imgs)
        uniq, idx = np.unique(keys, return_index=True)
        fresh = ~np.isin(uniq, seen)
        if not fresh.any():
            break
        idx = np.sort(idx[fresh])
        new = imgs[idx]
        total += len(new)
        if total > limit:
            raise BudgetExceededError(f"set orbit exceeds {limit} points", partial=total)
        found.append(new)
        seen = np.concatenate([seen, keys[idx]])
        frontier = new
    return np.concatenate(found)


class SetAction:
    """Induced action on an explicit list of set-valued points."""

    def __init__(self, sets: np.ndarray, blocks: int = 1):
        self.blocks = blocks
        self.sets = canonical_sets(np.asarray(sets, dtype=np.int64), blocks)
        keys = _row_keys(self.sets)
        self._order = np.argsort(keys, kind="stable")
        self._sorted = keys[self._order]
        if len(np.unique(self._sorted)) != len(keys):
            raise ValueError("duplicate points in set universe")

    @property
    def degree(self) -> int:
        return len(self.sets)

    def index(self, rows: np.ndarray) -> np.ndarray:
        keys = _row_keys(canonical_sets(np.atleast_2d(rows), self.blocks))
        pos = np.searchsorted(self._sorted, keys)
        pos = np.minimum(pos, len(self._sorted) - 1)
        if not np.all(self._sorted[pos] == keys):
            raise PointNotInUniverseError("image outside the set universe")
        return self._order[pos]

    def perm(self, base_perm: np.ndarray) -> np.ndarray:
        return self.index(base_perm[self.sets]).astype(DTYPE)

    def perms(self, base_perms: Sequence[np.ndarray]) -> list[np.ndarray]:
        return [self.perm(p) for p in base_perms]


def subspace_points(action: ProjectiveAction, basis: np.ndarray) -> np.ndarray:
    """Indices of the projective points of the span of the rows of ``basis``."""
    F = action.field
    basis = np.atleast_2d(np.asarray(basis, dtype=np.int64))
    k = len(basis)
    coeffs = decode_vectors(F, np.arange(1, F.q ** k), k)
    vecs = F.dot(coeffs, basis)
    return np.unique(action.index(vecs))
