"""Bilinear and quadratic forms, isometries, Dickson invariant, Witt types.

A quadratic form is stored as an upper-triangular coefficient matrix C with
Q(x) = sum_{i <= j} C[i, j] x_i x_j; its polarization has Gram C + C^T.
Classification and the Dickson invariant are implemented for characteristic 2
only, which is all the group constructions need.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    BudgetExceededError,
    DegenerateFormError,
    NotAnIsometryError,
    OddDimensionError,
    ShapeMismatchError,
)
from .field import Field, irreducible_quadratic_d
from .linalg import Matrix

SINGULAR_COUNT_BUDGET = 1 << 24


@dataclass(frozen=True)
class BilinearForm:
    gram: Matrix

    @property
    def field(self) -> Field:
        return self.gram.field

    @property
    def dim(self) -> int:
        return self.gram.rows

    def value(self, x, y) -> int:
        F = self.field
        xg = F.dot(np.atleast_2d(x), self.gram.a)
        return int(F.sum(F.mul(xg[0], np.asarray(y)), axis=-1))

    def values(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Row-wise B(xs[k], ys[k])."""
        F = self.field
        return F.sum(F.mul(F.dot(xs, self.gram.a), ys), axis=-1)

    def is_alternating(self) -> bool:
        a = self.gram.a
        F = self.field
        return bool(np.all(np.diag(a) == 0)) and np.array_equal(a, F.neg(a.T))

    def is_nondegenerate(self) -> bool:
        return self.gram.rank() == self.dim


@dataclass(frozen=True)
class QuadraticForm:
    coeffs: Matrix

    def __post_init__(self):
        if np.any(np.tril(self.coeffs.a, -1)):
            raise ValueError("quadratic form coefficients must be upper triangular")

    @classmethod
    def from_values(cls, field: Field, diag, gram: Matrix) -> QuadraticForm:
        """Form with Q(e_i) = diag[i] and polarization ``gram``."""
        n = gram.rows
        c = np.triu(gram.a, 1).copy()
        c[np.arange(n), np.arange(n)] = np.asarray(diag, dtype=np.int64)
        return cls(Matrix(field, c))

    @property
    def field(self) -> Field:
        return self.coeffs.field

    @property
    def dim(self) -> int:
        return self.coeffs.rows

    def values(self, xs: np.ndarray) -> np.ndarray:
        F = self.field
        xs = np.atleast_2d(xs)
        return F.sum(F.mul(F.dot(xs, self.coeffs.a), xs), axis=-1)

    def value(self, x) -> int:
        return int(self.values(np.atleast_2d(x))[0])

    def __call__(self, x) -> int:
        return self.value(x)

    def polarize(self) -> BilinearForm:
        return BilinearForm(Matrix(self.field, self.field.add(self.coeffs.a, self.coeffs.a.T)))

    def transform(self, basis: Matrix) -> QuadraticForm:
        """The form x -> Q(x basis), written in the basis given by the rows of ``basis``."""
        F = self.field
        n = self.dim
        diag = self.values(basis.a)
        gram = self.polarize().gram
        g2 = F.dot(F.dot(basis.a, gram.a), basis.a.T)
        c = np.triu(g2, 1).copy()
        c[np.arange(n), np.arange(n)] = diag
        return QuadraticForm(Matrix(F, c))

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadraticForm) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)


def polarize(Q: QuadraticForm) -> BilinearForm:
    return Q.polarize()


@dataclass(frozen=True)
class FormedSpace:
    """A vector space with a distinguished basis and the forms it carries."""

    field: Field
    dim: int
    bilinear: BilinearForm | None = None
    quadratic: QuadraticForm | None = None
    basis: Matrix | None = None
    shape: str = ""
    labels: tuple[str, ...] = dc_field(default=())

    def __post_init__(self):
        if self.quadratic is not None and self.bilinear is None:
            object.__setattr__(self, "bilinear", self.quadratic.polarize())
        if self.basis is None:
            object.__setattr__(self, "basis", Matrix.identity(self.field, self.dim))


# -- standard forms -----------------------------------------------------------

def standard_symplectic_gram(field: Field, m: int) -> Matrix:
    """Gram of the standard alternating form on pairs (e_1, f_1, ..., e_m, f_m)."""
    a = np.zeros((2 * m, 2 * m), dtype=np.int64)
    minus_one = int(field.neg(1))
    for i in range(m):
        a[2 * i, 2 * i + 1] = 1
        a[2 * i + 1, 2 * i] = minus_one
    return Matrix(field, a)


def standard_quadratic(field: Field, m: int, sign: int) -> QuadraticForm:
    """Standard plus (sign=+1) or minus (sign=-1) form in dimension 2m, char 2."""
    if field.p != 2:
        raise ValueError("standard quadratic forms are only provided in characteristic 2")
    c = np.zeros((2 * m, 2 * m), dtype=np.int64)
    for i in range(m):
        c[2 * i, 2 * i + 1] = 1
    if sign < 0:
        c[2 * m - 2, 2 * m - 2] = 1
        c[2 * m - 1, 2 * m - 1] = irreducible_quadratic_d(field).code
    return QuadraticForm(Matrix(field, c))


def symplectic_space(field: Field, m: int) -> FormedSpace:
    return FormedSpace(field, 2 * m, BilinearForm(standard_symplectic_gram(field, m)),
                       shape="symplectic")


def orthogonal_space(field: Field, m: int, sign: int) -> FormedSpace:
    Q = standard_quadratic(field, m, sign)
    return FormedSpace(field, 2 * m, Q.polarize(), Q, shape="plus" if sign > 0 else "minus")


# -- isometries ----------------------------------------------------------------

def is_isometry(g: Matrix, space: FormedSpace) -> bool:
    if g.shape != (space.dim, space.dim):
        raise ShapeMismatchError(f"{g.shape} matrix on a {space.dim}-dimensional space")
    F = space.field
    if space.bilinear is not None:
        G = space.bilinear.gram.a
        if not np.array_equal(F.dot(F.dot(g.a, G), g.a.T), G):
            return False
    if space.quadratic is not None:
        Q = space.quadratic
        n = space.dim
        eye = np.eye(n, dtype=np.int64)
        iu, ju = np.triu_indices(n, 1)
        pairs = F.add(eye[iu], eye[ju])
        test = np.concatenate([eye, pairs]) if len(iu) else eye
        if not np.array_equal(Q.values(F.dot(test, g.a)), Q.values(test)):
            return False
    return True


def dickson_invariant(g: Matrix, space: FormedSpace, check: bool = True) -> int:
    if space.field.p != 2:
        raise ValueError("Dickson invariant is only defined here in characteristic 2")
    if check and (space.quadratic is None or not is_isometry(g, space)):
        raise NotAnIsometryError("matrix does not preserve the quadratic form")
    return (g + Matrix.identity(g.field, g.rows)).rank() % 2


def symplectic_transvection(v, scalar: int, form: BilinearForm) -> Matrix:
    """x -> x + scalar * B(x, v) v."""
    F = form.field
    v = np.asarray(v, dtype=np.int64)
    col = F.dot(form.gram.a, v[:, None])[:, 0]  # B(e_i, v)
    delta = F.mul(F.mul(col[:, None], v[None, :]), scalar)
    return Matrix(F, F.add(np.eye(form.dim, dtype=np.int64), delta))


def orthogonal_transvection(v, Q: QuadraticForm) -> Matrix:
    """Reflection x -> x + Q(v)^-1 B(x, v) v for a nonsingular v (char 2)."""
    qv = Q.value(v)
    if qv == 0:
        raise ValueError("orthogonal transvection needs a nonsingular vector")
    F = Q.field
    return symplectic_transvection(v, int(F.inv(qv)), Q.polarize())


# -- classification -------------------------------------------------------------

def _solve_quadratic(F: Field, a: int, b: int, c: int) -> int | None:
    """Smallest t with a t^2 + b t + c = 0, by search."""
    ts = np.arange(F.q)
    vals = F.add(F.add(F.mul(a, F.mul(ts, ts)), F.mul(b, ts)), c)
    hits = np.flatnonzero(vals == 0)
    return int(hits[0]) if hits.size else None


def _find_singular(Q: QuadraticForm, B: BilinearForm, W: np.ndarray) -> np.ndarray | None:
    """A nonzero singular vector in the nondegenerate subspace spanned by rows of W."""
    F = Q.field
    qs = Q.values(W)
    zero = np.flatnonzero(qs == 0)
    if zero.size:
        return W[zero[0]]
    a = W[0]
    bvals = B.values(np.repeat(a[None, :], len(W), axis=0), W)
    j = int(np.flatnonzero(bvals)[0])
    b = W[j]
    # Q(a + t b) = Q(a) + t B(a,b) + t^2 Q(b)
    t = _solve_quadratic(F, int(qs[j]), int(bvals[j]), int(qs[0]))
    if t is not None:
        return F.add(a, F.mul(t, b))
    if len(W) <= 2:
        return None
    # <a, b> is anisotropic; pair a vector c of the complement with one in <a, b>
    U = np.stack([a, b])
    rest = _project_out(B, W, a, b)
    rest = rest[np.any(rest != 0, axis=1)]
    c = rest[0]
    gamma = int(Q.values(c[None, :])[0])
    if gamma == 0:
        return c
    coeffs = np.array([(s, t) for s in range(F.q) for t in range(F.q)], dtype=np.int64)
    cand = F.dot(coeffs, U)
    vals = Q.values(cand)
    k = int(np.flatnonzero(vals == gamma)[0])
    return F.add(cand[k], c)


def _project_out(B: BilinearForm, W: np.ndarray, e: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Project rows of W onto <e, f>^perp; needs B(e, e) = B(f, f) = 0 and B(e, f) != 0."""
    F = B.field
    n = len(W)
    bf = B.values(W, np.repeat(f[None, :], n, axis=0))
    be = B.values(W, np.repeat(e[None, :], n, axis=0))
    inv_ef = int(F.inv(B.value(e, f)))
    inv_fe = int(F.inv(B.value(f, e)))
    out = F.sub(W, F.mul(F.mul(bf, inv_ef)[:, None], e[None, :]))
    out = F.sub(out, F.mul(F.mul(be, inv_fe)[:, None], f[None, :]))
    return out


def _basis_of(F: Field, rows: np.ndarray) -> np.ndarray:
    if len(rows) == 0:
        return rows
    return Matrix(F, rows).row_space().a


def classify_quadratic(Q: QuadraticForm) -> tuple[str, int, Matrix]:
    """Witt type, Witt index and a basis putting Q into standard shape.

    The returned matrix has as rows the new basis vectors; Q.transform(basis)
    equals standard_quadratic(field, m, +1 or -1) exactly.
    """
    F = Q.field
    if F.p != 2:
        raise ValueError("classification is implemented for characteristic 2")
    n = Q.dim
    if n % 2:
        raise OddDimensionError(f"dimension {n} is odd")
    B = Q.polarize()
    if not B.is_nondegenerate():
        raise DegenerateFormError("polarization is degenerate")
    W = np.eye(n, dtype=np.int64)
    pairs: list[tuple[np.ndarray, np.ndarray]] = []
    while len(W) > 0:
        e = _find_singular(Q, B, W)
        if e is None:
            break
        bvals = B.values(np.repeat(e[None, :], len(W), axis=0), W)
        j = int(np.flatnonzero(bvals)[0])
        f = F.mul(W[j], int(F.inv(bvals[j])))
        qf = Q.value(f)
        f = F.add(f, F.mul(qf, e))
        pairs.append((e, f))
        W = _basis_of(F, _project_out(B, W, e, f))
    rows = [v for pair in pairs for v in pair]
    m = n // 2
    if len(W) == 0:
        sign = 1
    else:
        # anisotropic plane: find a with Q(a) = 1 and b with B(a,b) = 1, Q(b) = d
        sign = -1
        d = irreducible_quadratic_d(F).code
        coeffs = np.array([(s, t) for s in range(F.q) for t in range(F.q)], dtype=np.int64)
        cand = F.dot(coeffs, W)
        vals = Q.values(cand)
        a = cand[int(np.flatnonzero(vals == 1)[0])]
        bv = B.values(np.repeat(a[None, :], len(cand), axis=0), cand)
        b0 = cand[int(np.flatnonzero(bv == 1)[0])]
        t = _solve_quadratic(F, 1, 1, int(F.add(Q.value(b0), d)))
        b = F.add(b0, F.mul(t, a))
        rows += [a, b]
    basis = Matrix(F, np.array(rows, dtype=np.int64))
    witt = len(pairs)
    assert Q.transform(basis) == standard_quadratic(F, m, sign)
    return ("plus" if sign > 0 else "minus"), witt, basis


def form_sign(Q: QuadraticForm) -> int:
    return 1 if classify_quadratic(Q)[0] == "plus" else -1


def count_singular(Q: QuadraticForm) -> int:
    """Number of nonzero x with Q(x) = 0, by enumerating the whole space."""
    F = Q.field
    total = F.q ** Q.dim
    if total > SINGULAR_COUNT_BUDGET:
        raise BudgetExceededError(f"{total} vectors exceed the enumeration budget")
    count = 0
    step = 1 << 16
    weights = F.q ** np.arange(Q.dim - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, step):
        codes = np.arange(start, min(total, start + step), dtype=np.int64)
        vecs = (codes[:, None] // weights[None, :]) % F.q
        count += int(np.count_nonzero(Q.values(vecs) == 0))
    return count - 1


def singular_count_formula(q: int, m: int, sign: int) -> int:
    if sign > 0:
        return (q**m - 1) * (q ** (m - 1) + 1)
    return (q**m + 1) * (q ** (m - 1) - 1)


def symplectic_standard_basis(B: BilinearForm) -> Matrix:
    """Symplectic Gram-Schmidt: rows u_1, v_1, ..., u_m, v_m with B(u_i, v_i) = 1.

    The pivot is always the first remaining vector, paired with the first
    remaining vector it pairs nontrivially with.
    """
    F = B.field
    n = B.dim
    if not B.is_nondegenerate():
        raise DegenerateFormError("form is degenerate")
    if n % 2:
        raise OddDimensionError("alternating forms need even dimension")
    W = np.eye(n, dtype=np.int64)
    rows = []
    while len(W):
        u = W[0]
        bu = B.values(np.repeat(u[None, :], len(W), axis=0), W)
        nz = np.flatnonzero(bu)
        if nz.size == 0:
            raise DegenerateFormError("form is degenerate")
        j = int(nz[0])
        v = F.mul(W[j], int(F.inv(bu[j])))
        rows += [u, v]
        rest = np.delete(W, [0, j], axis=0)
        if len(rest) == 0:
            break
        # w -> w - B(w, v) u + B(w, u) v
        k = len(rest)
        bwv = B.values(rest, np.repeat(v[None, :], k, axis=0))
        bwu = B.values(rest, np.repeat(u[None, :], k, axis=0))
        rest = F.sub(rest, F.mul(bwv[:, None], u[None, :]))
        rest = F.add(rest, F.mul(bwu[:, None], v[None, :]))
        W = rest
    P = Matrix(F, np.array(rows, dtype=np.int64))
    m = n // 2
    assert np.array_equal(F.dot(F.dot(P.a, B.gram.a), P.a.T), standard_symplectic_gram(F, m).a)
    return P
