import numpy as np
import pytest

from factorcheck.errors import DegenerateFormError, NotAnIsometryError, ShapeMismatchError, SingularMatrixError
from factorcheck.field import gf
from factorcheck.forms import (BilinearForm, QuadraticForm, classify_quadratic, count_singular,
                               dickson_invariant, form_sign, is_isometry, orthogonal_space,
                               orthogonal_transvection, singular_count_formula,
                               standard_quadratic, standard_symplectic_gram,
                               symplectic_space, symplectic_standard_basis,
                               symplectic_transvection)
from factorcheck.linalg import Matrix, kron


def _rand_invertible(F, n, rng):
    while True:
        m = Matrix(F, rng.integers(0, F.q, size=(n, n)))
        if m.is_invertible():
            return m


def test_inverse_and_determinant():
    F = gf(4)
    rng = np.random.default_rng(1)
    for _ in range(10):
        g = _rand_invertible(F, 4, rng)
        assert (g @ g.inverse()).is_identity()
        assert g.det() != F.zero
        h = _rand_invertible(F, 4, rng)
        assert (g @ h).det() == g.det() * h.det()


def test_singular_matrix():
    F = gf(2)
    z = Matrix(F, np.array([[1, 1], [1, 1]]))
    assert z.rank() == 1
    assert not z.is_invertible()
    with pytest.raises(SingularMatrixError):
        z.inverse()
    assert len(z.kernel_basis()) == 1


def test_shape_mismatch():
    F = gf(2)
    with pytest.raises(ShapeMismatchError):
        Matrix.identity(F, 2) @ Matrix.identity(F, 3)


def test_power_and_identity():
    F = gf(8)
    g = Matrix.diagonal(F, [F.generator, F.one])
    assert (g ** 7).is_identity()
    assert not (g ** 3).is_identity()


def test_kron_mixed_product():
    F = gf(4)
    rng = np.random.default_rng(2)
    a, b = _rand_invertible(F, 2, rng), _rand_invertible(F, 2, rng)
    c, d = _rand_invertible(F, 2, rng), _rand_invertible(F, 2, rng)
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


def test_singular_counts_small():
    F2 = gf(2)
    assert count_singular(standard_quadratic(F2, 1, 1)) == 2
    assert count_singular(standard_quadratic(F2, 1, -1)) == 0
    assert count_singular(standard_quadratic(gf(4), 2, -1)) == 51


@pytest.mark.parametrize("q,m,sign", [(2, 2, 1), (2, 3, -1), (4, 2, 1), (8, 2, -1), (2, 4, 1)])
def test_singular_count_formula_matches_enumeration(q, m, sign):
    assert count_singular(standard_quadratic(gf(q), m, sign)) == singular_count_formula(q, m, sign)


def test_classify_recovers_sign():
    F = gf(4)
    rng = np.random.default_rng(3)
    for sign in (1, -1):
        Q = standard_quadratic(F, 2, sign)
        g = _rand_invertible(F, 4, rng)
        moved = Q.transform(g)
        kind, witt, basis = classify_quadratic(moved)
        assert form_sign(moved) == sign
        assert witt == (2 if sign > 0 else 1)
        assert moved.transform(basis) == standard_quadratic(F, 2, sign)


def test_classify_degenerate():
    F = gf(2)
    Q = QuadraticForm(Matrix(F, np.array([[1, 0], [0, 0]])))
    with pytest.raises(DegenerateFormError):
        classify_quadratic(Q)


def test_transvections_preserve_forms():
    F = gf(4)
    sp = symplectic_space(F, 2)
    v = np.array([1, 2, 0, 3])
    t = symplectic_transvection(v, 1, sp.bilinear)
    assert is_isometry(t, sp)
    ortho = orthogonal_space(F, 2, -1)
    Q = ortho.quadratic
    vecs = [x for x in (np.array([1, 1, 0, 0]), np.array([0, 0, 1, 0]), np.array([1, 0, 0, 1]))
            if Q.value(x)]
    for x in vecs:
        r = orthogonal_transvection(x, Q)
        assert is_isometry(r, ortho)
        assert dickson_invariant(r, ortho) == 1
        assert (r @ r).is_identity()
    if len(vecs) >= 2:
        prod = orthogonal_transvection(vecs[0], Q) @ orthogonal_transvection(vecs[1], Q)
        assert dickson_invariant(prod, ortho) == 0


def test_dickson_rejects_non_isometry():
    F = gf(2)
    sp = orthogonal_space(F, 2, 1)
    g = Matrix(F, np.array([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    assert not is_isometry(g, sp)
    with pytest.raises(NotAnIsometryError):
        dickson_invariant(g, sp)


def test_symplectic_standard_basis():
    F = gf(8)
    rng = np.random.default_rng(4)
    J = standard_symplectic_gram(F, 3)
    g = _rand_invertible(F, 6, rng)
    B = BilinearForm(g @ J @ g.T)
    basis = symplectic_standard_basis(B)
    assert basis @ B.gram @ basis.T == J


def test_polarization_is_alternating():
    F = gf(16)
    B = standard_quadratic(F, 3, -1).polarize()
    assert B.is_alternating() and B.is_nondegenerate()
