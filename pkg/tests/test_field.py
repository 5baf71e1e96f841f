import pytest

from factorcheck.errors import FieldMismatchError, NotPrimeError, UnknownModulusError
from factorcheck.field import (Field, field_arith, field_make, frobenius, gf,
                               irreducible_quadratic_d, is_prime, modulus_table,
                               trace_to_subfield)


def test_gf4_modulus_and_omega():
    F = field_make(2, 2)
    assert F.modulus == (1, 1, 1)
    w = F.omega
    assert w * w == w + 1
    assert (w + 1) * w == F.one


def test_gf8_multiplicative_group_exponent():
    F = gf(8)
    for x in F.elements():
        if x:
            assert x ** 7 == F.one


def test_same_field_same_modulus():
    assert field_make(2, 5).modulus == gf(32).modulus
    assert gf(16) is gf(16) or gf(16).modulus == gf(16).modulus


def test_modulus_table_coverage():
    _, table = modulus_table()
    for f in range(1, 9):
        assert (2, f) in table
    for p in (2, 3, 5, 7, 11, 13, 17):
        assert (p, 1) in table


def test_construction_errors():
    with pytest.raises(NotPrimeError):
        field_make(4, 1)
    with pytest.raises(UnknownModulusError):
        field_make(2, 17)


def test_field_arith_ops():
    F = gf(4)
    w = F.omega
    assert field_arith("add", w, w) == F.zero
    assert field_arith("mul", w, w) == w + 1
    assert field_arith("neg", w) == w
    assert field_arith("inv", w) == w + 1
    assert field_arith("pow", w, 3) == F.one
    with pytest.raises(ZeroDivisionError):
        field_arith("inv", F.zero)
    with pytest.raises(FieldMismatchError):
        field_arith("add", w, gf(8).one)


def test_frobenius_and_trace():
    F = gf(4)
    w = F.omega
    assert frobenius(w, 2) == w * w
    assert trace_to_subfield(w, 2) == F.one
    K = gf(16)
    kernel = [x for x in K.elements() if not trace_to_subfield(x, 4)]
    assert len(kernel) == 4
    # Frobenius over GF(4) has order 2 on GF(16)
    for x in K.elements():
        assert frobenius(frobenius(x, 4), 4) == x


def test_frobenius_rejects_non_subfield():
    with pytest.raises(ValueError):
        frobenius(gf(16).generator, 8)


def test_trace_is_additive_and_lands_in_subfield():
    K = gf(64)
    sub = set(int(c) for c in K.subfield_codes(8))
    xs = K.elements()[:20]
    for x in xs:
        t = trace_to_subfield(x, 8)
        assert int(t) in sub
        for y in xs[:5]:
            assert trace_to_subfield(x + y, 8) == t + trace_to_subfield(y, 8)


def test_irreducible_quadratic_d():
    assert irreducible_quadratic_d(gf(2)) == gf(2).one
    for q in (2, 4, 8, 16):
        F = gf(q)
        d = irreducible_quadratic_d(F)
        # x^2 + x + d has no root
        assert all(x * x + x + d for x in F.elements())


def test_odd_prime_fields():
    F = gf(7)
    assert F.p == 7 and F.f == 1
    assert F.element(3) * F.element(5) == F.element(1)
    assert is_prime(17) and not is_prime(15)


def test_field_class_counts():
    for q in (2, 4, 8, 9, 16, 25):
        F = gf(q)
        assert isinstance(F, Field)
        assert len(F.elements()) == q
