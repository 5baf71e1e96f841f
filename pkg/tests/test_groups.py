import numpy as np
import pytest

from factorcheck import arith
from factorcheck.field import gf
from factorcheck.forms import dickson_invariant, is_isometry, orthogonal_space
from factorcheck.groups import (field_ext_subgroup, g2_m_subgroup, g2_subgroup, go_minus_in_sp,
                                n_k_stabilizer, o_group, perm_atlas, sp_group,
                                swap_pairs_involution, sz_group, tensor_factor, tensor_subgroup,
                                wreath_pair)
from factorcheck.linalg import Matrix


@pytest.mark.parametrize("m,q,order", [(1, 4, 60), (2, 2, 720), (2, 4, 979200), (3, 2, 1451520)])
def test_sp_orders(m, q, order):
    G = sp_group(m, q)
    G.check_isometries()
    assert G.order == order == arith.sp_order(2 * m, q)


def test_sp64_order():
    assert sp_group(3, 4).order == 4106059776000


def test_orthogonal_orders_and_dickson():
    full, omega = o_group(1, 2, -1)
    assert full.order == 6
    full, omega = o_group(4, 2, 1)
    assert full.order == 348364800
    assert omega.order == 174182400
    space = omega.preserved
    assert all(dickson_invariant(g, space) == 0 for g in omega.generators)
    assert o_group(2, 4, -1)[1].order == 4080


def test_go_minus_in_sp():
    G = go_minus_in_sp(2, 2)
    assert G.order == 394813440
    sp = sp_group(4, 2)
    assert all(is_isometry(g, sp.preserved) for g in G.generators)


@pytest.mark.parametrize("a,b,q,order", [(1, 2, 2, 120), (1, 2, 4, 8160), (2, 2, 2, 1958400)])
def test_field_ext_orders(a, b, q, order):
    G = field_ext_subgroup(a, b, q)
    G.check_isometries()
    assert G.order == order


def test_wreath_pair():
    inner = sp_group(1, 4)
    assert wreath_pair(inner).order == 7200
    assert wreath_pair(inner, swap=False).order == 3600


def test_g2_orders():
    assert g2_subgroup(1).order == 12096
    assert g2_subgroup(2).order == 251596800


def test_g2_m_subgroup_is_omega4_plus():
    # the M subgroup of G2(4) has the order of Omega_4^+(4)
    M = g2_m_subgroup(2)
    assert M.order == arith.omega_order(4, 4, 1) == 3600
    G2 = g2_subgroup(2)
    assert all(G2.contains(g) for g in M.generators)


def test_suzuki():
    S = sz_group(3)
    assert S.order == 29120
    w = swap_pairs_involution(S.field, 2)
    assert S.contains(w)
    assert is_isometry(w, sp_group(2, 8).preserved)


def test_n1_stabilizer_in_omega8():
    _, omega = o_group(4, 2, 1)
    N1 = n_k_stabilizer(omega, 1)
    assert N1.order == 1451520


def test_tensor_subgroup_and_factors_commute():
    G, Q = tensor_subgroup(2, 2)
    assert G.order == 6 * 720
    left = tensor_factor(2, 2, "left")
    right = tensor_factor(2, 2, "right")
    for a in left.generators:
        for b in right.generators:
            assert a @ b == b @ a
    space = orthogonal_space(gf(2), 4, 1)
    assert Q.dim == space.dim


@pytest.mark.parametrize("name,order", [("M12", 95040), ("M24", 244823040),
                                        ("PGammaL_2_8", 1512), ("SL_2_8", 504)])
def test_perm_atlas_orders(name, order):
    assert perm_atlas(name).order == order


def test_perm_atlas_padding():
    G = perm_atlas("PGammaL_2_8", degree=10)
    assert G.degree == 10 and G.order == 1512
    with pytest.raises(ValueError):
        perm_atlas("nonsense")


def test_conjugate_transports_forms():
    G = sp_group(2, 2)
    rng = np.random.default_rng(7)
    while True:
        x = Matrix(G.field, rng.integers(0, 2, size=(4, 4)))
        if x.is_invertible():
            break
    H = G.conjugate(x)
    H.check_isometries()
    assert H.order == 720
