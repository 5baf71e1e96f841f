"""Generator sets for the classical, exceptional and permutation groups used
by the verifier, together with the subgroup constructions that realize the
factor groups (wreath, field extension, tensor, G2, Suzuki, stabilizers).

Every constructor records a predicted order; ``MatrixGroup.chain()`` builds
a BSGS on the projective points (or nonzero vectors outside characteristic 2)
and fails with OrderMismatchError when the order comes out different.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from importlib import resources
from math import factorial
from typing import Sequence

import numpy as np

from .actions import ProjectiveAction, VectorAction, decode_vectors
from .arith import g2_order, go_order, omega_order, sp_order, sz_order
from .errors import (
    NotAnIsometryError,
    OrderMismatchError,
    PointNotInUniverseError,
    StrategyPreconditionError,
)
from .field import Field, gf
from .forms import (
    BilinearForm,
    FormedSpace,
    QuadraticForm,
    classify_quadratic,
    dickson_invariant,
    is_isometry,
    orthogonal_space,
    orthogonal_transvection,
    standard_symplectic_gram,
    symplectic_space,
    symplectic_standard_basis,
    symplectic_transvection,
)
from .linalg import Matrix, kron
from .perm import (
    BsgsChain,
    index2_kernel,
    orbit_points,
    perm_from_cycles,
    schreier_sims,
    stabilizer_chain,
)


@lru_cache(maxsize=None)
def projective_action(field: Field, dim: int) -> ProjectiveAction:
    return ProjectiveAction(field, dim)


@lru_cache(maxsize=None)
def vector_action(field: Field, dim: int) -> VectorAction:
    return VectorAction(field, dim)


@dataclass(eq=False)
class MatrixGroup:
    """A matrix group given by generators, with the forms it preserves."""

    field: Field
    dimension: int
    generators: list[Matrix]
    preserved: FormedSpace
    predicted_order: int | None = None
    label: str = ""
    order_is_bound: bool = False
    extras: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self._perms = None
        self._chain = None

    @property
    def action(self):
        # -1 is the only nontrivial scalar isometry, and it is 1 in characteristic 2
        if self.field.p == 2:
            return projective_action(self.field, self.dimension)
        return vector_action(self.field, self.dimension)

    def perms(self) -> list[np.ndarray]:
        if self._perms is None:
            self._perms = self.action.perms(self.generators)
        return self._perms

    def chain(self) -> BsgsChain:
        if self._chain is None:
            self._chain = schreier_sims(
                self.perms(), self.action.degree, self.predicted_order,
                order_is_upper_bound=self.order_is_bound, label=self.label)
        return self._chain

    @property
    def order(self) -> int:
        return self.chain().order

    def perm(self, g: Matrix) -> np.ndarray:
        return self.action.perm(g)

    def contains(self, g: Matrix) -> bool:
        return self.chain().contains(self.perm(g))

    def check_isometries(self) -> None:
        for k, g in enumerate(self.generators):
            if not is_isometry(g, self.preserved):
                raise NotAnIsometryError(f"{self.label}: generator {k} is not an isometry")

    def conjugate(self, x: Matrix) -> MatrixGroup:
        """The group x^-1 G x (forms transported accordingly)."""
        xi = x.inverse()
        gens = [xi @ g @ x for g in self.generators]
        return MatrixGroup(self.field, self.dimension, gens, transport_space(self.preserved, x),
                           self.predicted_order, f"{self.label}^x", self.order_is_bound)


def transport_space(space: FormedSpace, x: Matrix) -> FormedSpace:
    """Forms preserved by x^-1 G x when G preserves ``space``: B(u x^-1, v x^-1)."""
    xi = x.inverse()
    bil = BilinearForm(xi @ space.bilinear.gram @ xi.T) if space.bilinear is not None else None
    quad = space.quadratic.transform(xi) if space.quadratic is not None else None
    return FormedSpace(space.field, space.dim, bil, quad, shape=space.shape)


@dataclass(eq=False)
class PermGroup:
    degree: int
    generators: list[np.ndarray]
    predicted_order: int | None = None
    label: str = ""

    def __post_init__(self):
        self._chain = None
        for g in self.generators:
            if len(g) != self.degree or not np.array_equal(np.sort(g), np.arange(self.degree)):
                raise ValueError(f"{self.label}: generator is not a permutation of {self.degree} points")

    def perms(self) -> list[np.ndarray]:
        return self.generators

    def chain(self) -> BsgsChain:
        if self._chain is None:
            self._chain = schreier_sims(self.generators, self.degree, self.predicted_order,
                                        label=self.label)
        return self._chain

    @property
    def order(self) -> int:
        return self.chain().order


def _field_scalars(F: Field) -> list[int]:
    return F.additive_basis()


def _unit(n: int, *idx: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.int64)
    v[list(idx)] = 1
    return v


# -- symplectic and orthogonal groups -------------------------------------------

def sp_group(m: int, q: int) -> MatrixGroup:
    """Sp_{2m}(q) on the standard basis e_1, f_1, ..., e_m, f_m."""
    if m < 1:
        raise ValueError("need m >= 1")
    F = gf(q)
    space = symplectic_space(F, m)
    n = 2 * m
    vecs = []
    for i in range(m):
        vecs += [_unit(n, 2 * i), _unit(n, 2 * i + 1)]
        if i + 1 < m:
            vecs += [_unit(n, 2 * i, 2 * i + 2), _unit(n, 2 * i + 1, 2 * i + 3)]
    gens = [symplectic_transvection(v, lam, space.bilinear)
            for v in vecs for lam in _field_scalars(F)]
    return MatrixGroup(F, n, gens, space, sp_order(n, q), f"Sp_{n}({q})", order_is_bound=True)


def _reflection_vectors(F: Field, m: int, sign: int) -> list[np.ndarray]:
    n = 2 * m
    z = F.generator.code
    plus_pairs = m if sign > 0 else m - 1
    vecs = []
    for i in range(plus_pairs):
        e, f = 2 * i, 2 * i + 1
        vecs.append(_unit(n, e, f))
        v = _unit(n, e)
        v[f] = z
        vecs.append(v)
        if i + 1 < m:
            vecs += [_unit(n, e, f, e + 2), _unit(n, e, f, f + 2),
                     _unit(n, e, e + 2, e + 3), _unit(n, f, e + 2, e + 3)]
    if sign < 0:
        e, f = n - 2, n - 1
        vecs += [_unit(n, e), _unit(n, f), _unit(n, e, f)]
        v = _unit(n, e)
        v[f] = z
        vecs.append(v)
        if m > 1:
            vecs.append(_unit(n, e, n - 4))
    return vecs


def o_group(m: int, q: int, sign: int) -> tuple[MatrixGroup, MatrixGroup]:
    """GO^sign_{2m}(q) and its Omega for q even, on the standard form."""
    F = gf(q)
    if F.p != 2:
        raise ValueError("orthogonal groups are constructed in characteristic 2 only")
    space = orthogonal_space(F, m, sign)
    Q = space.quadratic
    gens = [orthogonal_transvection(v, Q) for v in _reflection_vectors(F, m, sign) if Q.value(v)]
    if (m, q, sign) == (2, 2, 1):
        # reflections generate only an index-2 subgroup of GO_4^+(2)
        gens.append(Matrix.permutation(F, [2, 3, 0, 1]))
    name = "+" if sign > 0 else "-"
    n = 2 * m
    full = MatrixGroup(F, n, gens, space, go_order(n, q, sign), f"GO_{n}^{name}({q})",
                       order_is_bound=True)
    kernel = index2_kernel(gens, lambda g: dickson_invariant(g, space, check=False),
                           multiply=lambda a, b: a @ b, invert=lambda a: a.inverse())
    omega = MatrixGroup(F, n, _dedupe(kernel), space, omega_order(n, q, sign),
                        f"Omega_{n}^{name}({q})", order_is_bound=True)
    return full, omega


def _dedupe(mats: Sequence[Matrix]) -> list[Matrix]:
    seen, out = set(), []
    for g in mats:
        if g.is_identity() or g.key() in seen:
            continue
        seen.add(g.key())
        out.append(g)
    return out


def go_minus_in_sp(l: int, q: int) -> MatrixGroup:
    """GO^-_{4l}(q) inside Sp_{4l}(q): the standard minus form polarizes to
    the standard alternating form in characteristic 2."""
    full, _ = o_group(2 * l, q, -1)
    J = standard_symplectic_gram(full.field, 2 * l)
    if full.preserved.bilinear.gram != J:
        raise AssertionError("standard minus form does not polarize to the standard form")
    full.label = f"GO_{4 * l}^-({q}) in Sp_{4 * l}({q})"
    return full


def omega_extension(full: MatrixGroup, omega: MatrixGroup) -> MatrixGroup:
    """Omega with one Dickson-odd generator adjoined (the first reflection)."""
    odd = next(g for g in full.generators if dickson_invariant(g, full.preserved, check=False))
    return MatrixGroup(omega.field, omega.dimension, omega.generators + [odd], omega.preserved,
                       2 * omega.predicted_order, omega.label + ".2", order_is_bound=True)


# -- stabilizers of subspaces ---------------------------------------------------

def block_sum(groups: Sequence[MatrixGroup], label: str = "") -> MatrixGroup:
    """Direct sum acting on the orthogonal sum of the given spaces."""
    F = groups[0].field
    dims = [g.dimension for g in groups]
    gens = []
    for k, grp in enumerate(groups):
        for g in grp.generators:
            blocks = [Matrix.identity(F, d) for d in dims]
            blocks[k] = g
            gens.append(Matrix.block_diagonal(blocks))
    bil = _sum_bilinear([g.preserved for g in groups])
    space = FormedSpace(F, sum(dims), bil, shape="symplectic")
    order = 1
    for g in groups:
        order *= g.predicted_order
    return MatrixGroup(F, sum(dims), gens, space, order,
                       label or " x ".join(g.label for g in groups), order_is_bound=True)


def _sum_bilinear(spaces: Sequence[FormedSpace]) -> BilinearForm:
    return BilinearForm(Matrix.block_diagonal([s.bilinear.gram for s in spaces]))


def n_k_stabilizer(ambient: MatrixGroup, k: int, sign: int | None = None) -> MatrixGroup:
    """Stabilizer of a standard nondegenerate k-subspace.

    Symplectic ambient: k even, W spanned by the first k basis vectors.
    Orthogonal ambient: k = 1, W spanned by the nonsingular vector e_1 + f_1.
    """
    shape = ambient.preserved.shape
    q = ambient.field.q
    if shape == "symplectic":
        if k % 2 or not 0 < k < ambient.dimension:
            raise StrategyPreconditionError(f"no nondegenerate {k}-subspace decomposition")
        m1, m2 = k // 2, (ambient.dimension - k) // 2
        return block_sum([sp_group(m1, q), sp_group(m2, q)],
                         f"N_{k}[{ambient.label}] = Sp_{k}({q}) x Sp_{2 * m2}({q})")
    if shape in ("plus", "minus") and k == 1:
        action = ambient.action
        v = _unit(ambient.dimension, 0, 1)
        point = action.point(v)
        chain = ambient.chain()
        orbit = orbit_points(chain.generators(), point, action.degree)
        stab = stabilizer_chain(chain, point)
        gens = [matrix_from_projective_perm(action, p, ambient.preserved)
                for p in stab.generators()]
        grp = MatrixGroup(ambient.field, ambient.dimension, _dedupe(gens), ambient.preserved,
                          chain.order // len(orbit), f"N_1[{ambient.label}]", order_is_bound=True)
        grp.extras["vector"] = v
        return grp
    raise StrategyPreconditionError(f"unsupported decomposition k={k} for {shape} ambient")


def matrix_from_projective_perm(action: ProjectiveAction, perm: np.ndarray,
                                space: FormedSpace) -> Matrix:
    """Recover the isometry inducing ``perm`` on projective points.

    The images of <e_i> and <e_1 + ... + e_n> fix the matrix up to a scalar,
    which is then pinned by requiring the form to be preserved.
    """
    F = action.field
    n = action.dim
    eye = np.eye(n, dtype=np.int64)
    w = action.points[perm[action.index(eye)]]
    u = action.points[perm[action.point(np.ones(n, dtype=np.int64))]]
    mu = Matrix(F, u[None, :]) @ Matrix(F, w).inverse()
    g0 = Matrix(F, F.mul(mu.a[0][:, None], w))
    G = space.bilinear.gram.a
    img = F.dot(F.dot(g0.a, G), g0.a.T)
    nz = np.argwhere(G != 0)
    i, j = nz[0]
    ratio = F.mul(G[i, j], F.inv(img[i, j]))  # c^2
    roots = [c for c in range(1, F.q) if F.mul(c, c) == ratio]
    for c in roots:
        g = g0.scale(c)
        if is_isometry(g, space):
            return g
    raise PointNotInUniverseError("permutation is not induced by an isometry")


# -- wreath products --------------------------------------------------------------

def wreath_pair(inner: MatrixGroup, copies: int = 2, swap: bool = True) -> MatrixGroup:
    """inner wr S_2 on the orthogonal sum of two copies (swap=False: the base group)."""
    if copies != 2:
        raise ValueError("only two copies are supported")
    base = block_sum([inner, inner], f"{inner.label} x {inner.label}")
    if not swap:
        return base
    d = inner.dimension
    images = [i + d for i in range(d)] + list(range(d))
    sw = Matrix.permutation(inner.field, images)
    return MatrixGroup(base.field, 2 * d, base.generators + [sw], base.preserved,
                       base.predicted_order * 2, f"{inner.label} wr S_2", order_is_bound=True)


# -- field extension ----------------------------------------------------------------

class SubfieldCoordinates:
    """GF(q^b) as a b-dimensional GF(q)-space with basis 1, t, ..., t^{b-1}
    (t the generator of GF(q^b)).

    A vector of length n over GF(q^b) becomes one of length n*b with the
    coordinate of t^k e_i at position i*b + k.
    """

    def __init__(self, big: Field, small: Field):
        if big.p != small.p or big.f % small.f:
            raise ValueError(f"{small!r} is not a subfield of {big!r}")
        self.big = big
        self.small = small
        self.degree = big.f // small.f
        # embed GF(q) by sending x to the smallest root of its modulus
        zeta = next((x for x in range(1, big.q) if _is_root_of_modulus(big, small, x)), None)
        if zeta is None:
            raise AssertionError("subfield embedding not found")
        powers = [1]
        for _ in range(small.f - 1):
            powers.append(int(big.mul(powers[-1], zeta)))
        digits = decode_vectors(gf(small.p), np.arange(small.q), small.f)[:, ::-1]
        emb = np.zeros(small.q, dtype=np.int64)
        for i, zp in enumerate(powers):
            emb = big.add(emb, big.mul(digits[:, i], zp))
        self.embed = emb
        theta = big.generator.code
        self.basis = [int(big.power(theta, k)) for k in range(self.degree)]
        # coordinates of every element of GF(q^b)
        b = self.degree
        coeffs = decode_vectors(small, np.arange(small.q ** b), b)
        values = np.zeros(len(coeffs), dtype=np.int64)
        for k in range(b):
            values = big.add(values, big.mul(emb[coeffs[:, k]], self.basis[k]))
        self.coords = np.zeros((big.q, b), dtype=np.int64)
        self.coords[values] = coeffs
        if len(np.unique(values)) != big.q:
            raise AssertionError("powers of the generator are not a basis")

    def blow_up(self, g: Matrix) -> Matrix:
        """GF(q)-matrix of the GF(q^b)-linear map g."""
        big, b = self.big, self.degree
        n = g.rows
        out = np.zeros((n * b, n * b), dtype=np.int64)
        for k, tk in enumerate(self.basis):
            img = big.mul(g.a, tk)  # rows: images of t^k e_i
            c = self.coords[img]    # (n, n, b)
            out[k::b, :] = c.reshape(n, n * b)
        return Matrix(self.small, out)

    def frobenius(self, n: int) -> Matrix:
        """Matrix of x -> x^q applied to each of the n coordinates."""
        big, b = self.big, self.degree
        out = np.zeros((n * b, n * b), dtype=np.int64)
        for k, tk in enumerate(self.basis):
            c = self.coords[int(big.power(tk, self.small.q))]
            for i in range(n):
                out[i * b + k, i * b:(i + 1) * b] = c
        return Matrix(self.small, out)

    def vector(self, vec) -> np.ndarray:
        """Coordinates of a GF(q^b)-vector."""
        return self.coords[np.asarray(vec, dtype=np.int64)].reshape(-1)

    def trace_form(self, B: BilinearForm, scalar: int = 1) -> BilinearForm:
        """Tr(scalar * B) on the blown-up space."""
        big, small, b = self.big, self.small, self.degree
        n = B.dim
        N = n * b
        gram = np.zeros((N, N), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                bij = int(B.gram.a[i, j])
                for k in range(b):
                    for l in range(b):
                        x = big.mul(big.mul(self.basis[k], self.basis[l]), big.mul(bij, scalar))
                        gram[i * b + k, j * b + l] = self.to_small(int(big.trace(x, small.q)))
        return BilinearForm(Matrix(small, gram))

    def to_small(self, x: int) -> int:
        hit = np.flatnonzero(self.embed == x)
        if not hit.size:
            raise ValueError(f"{x} is not in the subfield")
        return int(hit[0])

    def norm_form(self, P: QuadraticForm) -> QuadraticForm:
        """Q(u) = Tr(P(u)) on the blown-up space."""
        big, small = self.big, self.small
        n, b = P.dim, self.degree
        N = n * b
        eye = np.eye(N, dtype=np.int64)

        def q_of(rows):
            vecs = _compress(self, rows, n)
            return np.array([self.to_small(int(big.trace(int(v), small.q))) for v in P.values(vecs)],
                            dtype=np.int64)

        diag = q_of(eye)
        iu, ju = np.triu_indices(N, 1)
        pair_vals = q_of(small.add(eye[iu], eye[ju]))
        c = np.zeros((N, N), dtype=np.int64)
        c[np.arange(N), np.arange(N)] = diag
        c[iu, ju] = small.sub(small.sub(pair_vals, diag[iu]), diag[ju])
        return QuadraticForm(Matrix(small, c))


def _compress(sc: SubfieldCoordinates, rows: np.ndarray, n: int) -> np.ndarray:
    """Inverse of SubfieldCoordinates.vector for a batch of rows."""
    big, b = sc.big, sc.degree
    rows = rows.reshape(len(rows), n, b)
    out = np.zeros((len(rows), n), dtype=np.int64)
    for k in range(b):
        out = big.add(out, big.mul(sc.embed[rows[:, :, k]], sc.basis[k]))
    return out


def _is_root_of_modulus(big: Field, small: Field, x: int) -> bool:
    acc, xp = 0, 1
    for c in small.modulus:  # prime-field digits, lowest degree first
        acc = big.add(acc, big.mul(int(c), xp))
        xp = big.mul(xp, x)
    return int(acc) == 0


@dataclass(eq=False)
class FieldExtensionEmbedding:
    """Sp_{2a}(q^b) inside Sp_{2ab}(q), in standard symplectic coordinates."""

    coords: SubfieldCoordinates
    basis: Matrix  # rows: the standard symplectic basis in blown-up coordinates
    a: int

    def embed(self, g: Matrix) -> Matrix:
        return self.coords.blow_up(g).conjugate_by(self.basis)

    @property
    def frobenius(self) -> Matrix:
        return self.coords.frobenius(2 * self.a).conjugate_by(self.basis)


def field_extension_embedding(a: int, b: int, q: int) -> FieldExtensionEmbedding:
    small = gf(q)
    big = gf(q ** b)
    sc = SubfieldCoordinates(big, small)
    B = BilinearForm(standard_symplectic_gram(big, a))
    T = sc.trace_form(B, 1)
    if not T.is_nondegenerate():
        raise AssertionError("trace form is degenerate")
    P = symplectic_standard_basis(T)
    return FieldExtensionEmbedding(sc, P, a)


def field_ext_subgroup(a: int, b: int, q: int, frobenius: bool = True) -> MatrixGroup:
    """Sp_{2a}(q^b).b inside Sp_{2ab}(q) (without the .b when frobenius=False)."""
    emb = field_extension_embedding(a, b, q)
    inner = sp_group(a, q ** b)
    gens = [emb.embed(g) for g in inner.generators]
    order = inner.predicted_order
    label = f"Sp_{2 * a}({q ** b})"
    if frobenius and b > 1:
        gens.append(emb.frobenius)
        order *= b
        label += f".{b}"
    small = gf(q)
    grp = MatrixGroup(small, 2 * a * b, gens, symplectic_space(small, a * b), order,
                      f"{label} in Sp_{2 * a * b}({q})", order_is_bound=True)
    grp.extras["embedding"] = emb
    return grp


def subfield_norm_form(P: QuadraticForm) -> QuadraticForm:
    """Q(u) = P(u) + P(u)^q on the GF(q)-space underlying a GF(q^2)-space
    (for GF(4) over GF(2): P(u) + P(u)^2)."""
    big = P.field
    if big.p != 2 or big.f % 2:
        raise ValueError("norm form needs a field GF(q^2) of characteristic 2")
    small = gf(2 ** (big.f // 2))
    return SubfieldCoordinates(big, small).norm_form(P)


# -- tensor products ------------------------------------------------------------

def tensor_form(field: Field, m: int) -> QuadraticForm:
    """Q on W (x) V with Q(w (x) v) = 0 and polarization alpha(w,w') beta(v,v').

    Basis index i*2m + j for w_i (x) (j-th vector of u_1, v_1, ..., u_m, v_m).
    """
    gram = kron(standard_symplectic_gram(field, 1), standard_symplectic_gram(field, m))
    return QuadraticForm(Matrix(field, np.triu(gram.a, 1)))


def tensor_subgroup(m: int, q: int) -> tuple[MatrixGroup, QuadraticForm]:
    """Sp_2(q) (x) Sp_2m(q) acting on W (x) V."""
    F = gf(q)
    Q = tensor_form(F, m)
    space = FormedSpace(F, 4 * m, quadratic=Q, shape="plus")
    left, right = sp_group(1, q), sp_group(m, q)
    I2, Iv = Matrix.identity(F, 2), Matrix.identity(F, 2 * m)
    gens = [kron(g, Iv) for g in left.generators] + [kron(I2, h) for h in right.generators]
    grp = MatrixGroup(F, 4 * m, gens, space, left.predicted_order * right.predicted_order,
                      f"Sp_2({q}) x Sp_{2 * m}({q})", order_is_bound=True)
    for g in gens:
        if not is_isometry(g, space):
            raise NotAnIsometryError("tensor generator does not preserve Q")
    return grp, Q


def tensor_factor(m: int, q: int, side: str, generators: Sequence[Matrix] | None = None,
                  order: int | None = None, label: str = "") -> MatrixGroup:
    """1 (x) S (side='right') or S (x) 1 (side='left') for given generators of S."""
    F = gf(q)
    Q = tensor_form(F, m)
    space = FormedSpace(F, 4 * m, quadratic=Q, shape="plus")
    if generators is None:
        src = sp_group(m, q) if side == "right" else sp_group(1, q)
        generators, order = src.generators, src.predicted_order
        label = label or src.label
    I2, Iv = Matrix.identity(F, 2), Matrix.identity(F, 2 * m)
    if side == "right":
        gens = [kron(I2, h) for h in generators]
    else:
        gens = [kron(g, Iv) for g in generators]
    return MatrixGroup(F, 4 * m, gens, space, order, label, order_is_bound=True)


def conjugate_to_form(gens: Sequence[Matrix], Q: QuadraticForm) -> list[Matrix]:
    """Standard-form isometries rewritten as isometries of Q.

    With P from classify_quadratic (Q.transform(P) standard) the map
    s -> P^-1 s P carries isometries of the standard form to those of Q.
    """
    _, _, P = classify_quadratic(Q)
    Pi = P.inverse()
    return [Pi @ s @ P for s in gens]


def omega_on_form(Q: QuadraticForm, full: bool = False) -> MatrixGroup:
    """Omega (or GO) of an arbitrary nondegenerate form, via its standard shape."""
    kind, _, _ = classify_quadratic(Q)
    sign = 1 if kind == "plus" else -1
    F = Q.field
    go, om = o_group(Q.dim // 2, F.q, sign)
    src = go if full else om
    gens = conjugate_to_form(src.generators, Q)
    space = FormedSpace(F, Q.dim, quadratic=Q, shape=kind)
    return MatrixGroup(F, Q.dim, gens, space, src.predicted_order, src.label, order_is_bound=True)


# -- G2 -----------------------------------------------------------------------------

# basis x1, x2, x3, x6, x7, x8 -> indices 0..5; antidiagonal Gram
_G2_STANDARD_ORDER = [2, 3, 0, 5, 1, 4]  # x3, x6, x1, x8, x2, x7


def _g2_raw_generators(F: Field) -> dict[str, list[Matrix]]:
    z = F.generator.code

    def perm(images):
        return Matrix.permutation(F, images)

    def torus(lam, mu):
        li, mi = int(F.inv(lam)), int(F.inv(mu))
        return Matrix.diagonal(F, [lam, mu, F.mul(lam, mi), F.mul(li, mu), mi, li])

    def shear(rows):
        a = np.eye(6, dtype=np.int64)
        for (i, j), v in rows.items():
            a[i, j] = v
        return Matrix(F, a)

    r = perm([0, 2, 1, 4, 3, 5])
    s = perm([1, 0, 3, 2, 5, 4])
    alphas = F.additive_basis()
    A = [shear({(4, 0): al, (5, 1): al}) for al in alphas]
    Fa = [shear({(1, 0): al, (3, 2): int(F.mul(al, al)), (5, 4): al}) for al in alphas]
    T = [torus(z, 1), torus(1, z)] if F.q > 2 else []
    return {"r": [r], "s": [s], "T": T, "A": A, "F": Fa}


def _g2_change_of_basis(F: Field) -> Matrix:
    return Matrix(F, np.eye(6, dtype=np.int64)[_G2_STANDARD_ORDER])


def g2_subgroup(f: int) -> MatrixGroup:
    """G2(2^f) inside Sp_6(2^f), written in the standard basis
    (x3, x6, x1, x8, x2, x7) so that <x3, x6> is the first hyperbolic pair."""
    q = 2 ** f
    F = gf(q)
    raw = _g2_raw_generators(F)
    P = _g2_change_of_basis(F)
    gens = [g.conjugate_by(P) for fam in ("r", "s", "T", "A", "F") for g in raw[fam]]
    grp = MatrixGroup(F, 6, _dedupe(gens), symplectic_space(F, 3), g2_order(q), f"G2({q})")
    grp.check_isometries()
    return grp


def g2_m_subgroup(f: int) -> MatrixGroup:
    """<s, (rs)^3, T, A, F> inside G2(2^f), same coordinates as g2_subgroup.

    No order is asserted; callers compare it against their expectation.
    """
    q = 2 ** f
    F = gf(q)
    raw = _g2_raw_generators(F)
    r, s = raw["r"][0], raw["s"][0]
    gens = [s, (r @ s) ** 3] + raw["T"] + raw["A"] + raw["F"]
    P = _g2_change_of_basis(F)
    gens = [g.conjugate_by(P) for g in gens]
    return MatrixGroup(F, 6, _dedupe(gens), symplectic_space(F, 3), None, f"M < G2({q})")


def g2_raw(f: int) -> dict[str, list[Matrix]]:
    """The five generator families in the original x-basis (antidiagonal Gram)."""
    return _g2_raw_generators(gf(2 ** f))


def antidiagonal_space(F: Field, n: int) -> FormedSpace:
    a = np.eye(n, dtype=np.int64)[::-1]
    return FormedSpace(F, n, BilinearForm(Matrix(F, a)), shape="symplectic")


# -- Suzuki groups ---------------------------------------------------------------------

_SZ_STANDARD_ORDER = [0, 3, 1, 2]  # x1, x4, x2, x3 on the antidiagonal form


def _sz_raw_generators(F: Field) -> list[Matrix]:
    f = F.f
    if f % 2 == 0 or f < 3:
        raise ValueError("Suzuki groups need 2^f with f odd and f >= 3")
    m = (f - 1) // 2
    t = 2 ** (m + 1)  # x -> x^t squares to the Frobenius

    def th(x):
        return int(F.power(x, t))

    def pw(x, k):
        return int(F.power(x, k))

    def mul(*xs):
        out = 1
        for x in xs:
            out = int(F.mul(out, x))
        return out

    def add(*xs):
        out = 0
        for x in xs:
            out = int(F.add(out, x))
        return out

    def unipotent(a, b):
        rows = [
            [1, 0, 0, 0],
            [a, 1, 0, 0],
            [b, th(a), 1, 0],
            [add(mul(pw(a, 2), th(a)), mul(a, b), th(b)), add(mul(a, th(a)), b), a, 1],
        ]
        return Matrix(F, rows)

    z = F.generator.code
    zm = pw(z, 2 ** m)
    torus = Matrix.diagonal(F, [mul(z, zm), zm, int(F.inv(zm)), int(F.inv(mul(z, zm)))])
    w = Matrix(F, np.eye(4, dtype=np.int64)[::-1])
    gens = [unipotent(a, 0) for a in F.additive_basis()] + [unipotent(0, b) for b in F.additive_basis()]
    return gens + [torus, w]


def sz_group(f: int) -> MatrixGroup:
    """Sz(2^f) inside Sp_4(2^f), in the standard basis (x1, x4, x2, x3)."""
    q = 2 ** f
    F = gf(q)
    raw = _sz_raw_generators(F)
    anti = antidiagonal_space(F, 4)
    for g in raw:
        if not is_isometry(g, anti):
            raise NotAnIsometryError("Suzuki generator does not preserve the form")
    P = Matrix(F, np.eye(4, dtype=np.int64)[_SZ_STANDARD_ORDER])
    gens = [g.conjugate_by(P) for g in raw]
    grp = MatrixGroup(F, 4, _dedupe(gens), symplectic_space(F, 2), sz_order(q), f"Sz({q})")
    grp.check_isometries()
    return grp


def swap_pairs_involution(F: Field, m: int) -> Matrix:
    """The involution e_i <-> f_i on the standard symplectic basis."""
    images = []
    for i in range(m):
        images += [2 * i + 1, 2 * i]
    return Matrix.permutation(F, images)


# -- permutation groups -----------------------------------------------------------------

def _cycle(points: Sequence[int], n: int) -> np.ndarray:
    p = np.arange(n, dtype=np.int32)
    for a, b in zip(points, list(points[1:]) + [points[0]]):
        p[a] = b
    return p


def alternating_group(n: int) -> PermGroup:
    if not 3 <= n <= 32:
        raise ValueError("alternating groups are provided for 3 <= n <= 32")
    gens = [_cycle([0, 1, 2], n)]
    if n > 3:
        gens.append(_cycle(list(range(n)), n) if n % 2 else _cycle(list(range(1, n)), n))
    return PermGroup(n, gens, factorial(n) // 2, f"A_{n}")


def symmetric_group(n: int) -> PermGroup:
    if not 2 <= n <= 32:
        raise ValueError("symmetric groups are provided for 2 <= n <= 32")
    return PermGroup(n, [_cycle([0, 1], n), _cycle(list(range(n)), n)], factorial(n), f"S_{n}")


_DATA_FILES = {
    "M12": "m12.txt",
    "M24": "m24.txt",
    "PGammaL_2_8": "pgaml28.txt",
    "SL_2_8": "sl28.txt",
}


def load_perm_data(filename: str) -> PermGroup:
    text = resources.files("factorcheck.data").joinpath(filename).read_text()
    header: dict[str, str] = {}
    gens_text = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            if value:
                header[key.strip()] = value.strip()
            continue
        gens_text.append(line)
    degree = int(header["degree"])
    order = int(header["order"])
    gens = [perm_from_cycles(t, degree) for t in gens_text]
    return PermGroup(degree, gens, order, header.get("name", filename))


def perm_atlas(name: str, n: int | None = None, degree: int | None = None) -> PermGroup:
    """Alternating/symmetric groups and the data-file groups.

    ``degree`` pads a data-file group with fixed points (PGammaL_2_8 on 10 points).
    """
    if name in ("alternating", "A"):
        grp = alternating_group(n)
    elif name in ("symmetric", "S"):
        grp = symmetric_group(n)
    elif name in _DATA_FILES:
        grp = load_perm_data(_DATA_FILES[name])
    else:
        raise ValueError(f"unknown permutation group {name!r}")
    if degree is not None and degree != grp.degree:
        if degree < grp.degree:
            raise ValueError("cannot shrink the degree")
        pad = np.arange(grp.degree, degree, dtype=np.int32)
        gens = [np.concatenate([g, pad]) for g in grp.generators]
        grp = PermGroup(degree, gens, grp.predicted_order, grp.label)
    order = grp.chain().order
    if grp.predicted_order is not None and order != grp.predicted_order:
        raise OrderMismatchError(grp.label, grp.predicted_order, order)
    return grp


def direct_product_perm(groups: Sequence[PermGroup], label: str = "") -> PermGroup:
    """Intransitive direct product on consecutive blocks of points."""
    n = sum(g.degree for g in groups)
    gens = []
    offset = 0
    order = 1
    for grp in groups:
        for g in grp.generators:
            p = np.arange(n, dtype=np.int32)
            p[offset:offset + grp.degree] = g + offset
            gens.append(p)
        offset += grp.degree
        order *= grp.predicted_order
    return PermGroup(n, gens, order, label or " x ".join(g.label for g in groups))


def even_part(group: PermGroup, label: str = "") -> PermGroup:
    """group ∩ A_n via the sign homomorphism."""
    from .perm import sign

    gens = index2_kernel(group.generators, lambda g: 0 if sign(g) > 0 else 1)
    odd = any(sign(g) < 0 for g in group.generators)
    order = group.predicted_order // 2 if odd and group.predicted_order else group.predicted_order
    return PermGroup(group.degree, gens, order, label or f"{group.label} ∩ A_{group.degree}")
