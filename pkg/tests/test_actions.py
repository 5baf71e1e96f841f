import numpy as np
import pytest

from factorcheck.actions import (ProjectiveAction, QuadraticFormAction, SetAction, VectorAction,
                                 set_orbit, subspace_points)
from factorcheck.errors import PointNotInUniverseError
from factorcheck.field import gf
from factorcheck.forms import standard_quadratic, standard_symplectic_gram
from factorcheck.groups import sp_group
from factorcheck.perm import compose, orbit, schreier_sims


def test_projective_points_count():
    for q, n in ((2, 3), (4, 2), (4, 4), (8, 2)):
        assert ProjectiveAction(gf(q), n).degree == (q ** n - 1) // (q - 1)


def test_action_is_homomorphism():
    G = sp_group(2, 4)
    act = ProjectiveAction(G.field, 4)
    g, h = G.generators[0], G.generators[1]
    assert np.array_equal(act.perm(g @ h), compose(act.perm(g), act.perm(h)))


def test_sp44_orbits():
    G = sp_group(2, 4)
    vec = VectorAction(G.field, 4)
    assert len(orbit(vec.perms(G.generators), 0)) == 255
    forms = QuadraticFormAction(standard_symplectic_gram(G.field, 2))
    assert forms.degree == 256
    start = forms.index_of(standard_quadratic(G.field, 2, -1))
    assert len(orbit(forms.perms(G.generators), start)) == 120
    plus = forms.index_of(standard_quadratic(G.field, 2, 1))
    assert len(orbit(forms.perms(G.generators), plus)) == 136


def test_form_action_roundtrip():
    F = gf(2)
    forms = QuadraticFormAction(standard_symplectic_gram(F, 2))
    for i in (0, 5, 15):
        assert forms.index_of(forms.form(i)) == i
    with pytest.raises(ValueError):
        QuadraticFormAction(standard_symplectic_gram(gf(3), 1))


def test_set_action():
    gens = [np.array([1, 2, 3, 4, 0], dtype=np.int32), np.array([1, 0, 2, 3, 4], dtype=np.int32)]
    sets = set_orbit(gens, [0, 1])
    assert len(sets) == 10
    act = SetAction(sets)
    ch = schreier_sims(act.perms(gens), act.degree)
    assert ch.order == 120
    with pytest.raises(PointNotInUniverseError):
        act.index(np.array([[0, 7]]))


def test_two_block_sets():
    gens = [np.roll(np.arange(4), 1).astype(np.int32), np.array([1, 0, 2, 3], dtype=np.int32)]
    pairs = set_orbit(gens, [0, 1, 2, 3], blocks=2)
    # the three ways to split four points into two pairs
    assert len(pairs) == 3


def test_subspace_points():
    act = ProjectiveAction(gf(4), 4)
    pts = subspace_points(act, np.array([[1, 0, 0, 0], [0, 1, 0, 0]]))
    assert len(pts) == 5
