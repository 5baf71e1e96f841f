import pytest

from factorcheck import arith
from factorcheck.arith import (GroupOrderSpec, classical_order, divisibility_filter, evaluate,
                               format_factorization, ppd, ppd_by_definition, ppd_lemma_check)
from factorcheck.errors import ConstraintViolationError


def test_small_orders():
    assert arith.sp_order(4, 4) == 979200
    assert arith.sp_order(2, 4) == 60
    assert arith.go_order(2, 2, -1) == 6
    assert arith.go_order(8, 2, 1) == 348364800
    assert arith.g2_order(2) == 12096
    assert arith.sz_order(8) == 29120
    assert arith.psl_order(2, 8) == 504


def test_g2_index_416():
    assert arith.g2_order(4) == 251596800
    assert 251596800 % 416 == 0


def test_classical_order_specs():
    spec = GroupOrderSpec("Sp", (4, 4))
    assert classical_order(spec) == 979200
    assert classical_order(spec * 2) == 1958400
    prod = GroupOrderSpec("SL", (2, 4)) * GroupOrderSpec("SL", (2, 16))
    assert classical_order(prod * 2) == 60 * 4080 * 2
    with pytest.raises(ValueError):
        classical_order(GroupOrderSpec("E8", (2,)))


def test_omega_quotient_factorization():
    q = classical_order(GroupOrderSpec("Omega_plus", (8, 4)))
    d = classical_order(GroupOrderSpec("SL", (2, 4)) * GroupOrderSpec("SL", (2, 16)) * 2)
    assert q % d == 0
    assert q // d == 136868659200
    assert format_factorization(q // d) == "2^17*3^3*5^2*7*13*17"


def test_ppd_values():
    assert ppd(2, 6) == {7}
    assert ppd(2, 4) == {5}
    assert ppd(4, 3) == {7}
    assert ppd(3, 5) == {11}
    with pytest.raises(ValueError):
        ppd(2, 2)


def test_ppd_two_routes_agree():
    for a in range(2, 17):
        for n in range(3, 21):
            assert ppd(a, n) == ppd_by_definition(a, n)


def test_ppd_lemma_and_zsigmondy():
    for a in range(2, 17):
        for n in range(3, 21):
            assert ppd(a, n), (a, n)
            assert ppd_lemma_check(a, n)


def test_divisibility_filter_examples():
    res = divisibility_filter(979200, 7200, 8160, 979200, 7200, 8160, 1)
    assert res == {"a": True, "b": True, "c": True, "d": True}
    res = divisibility_filter(1056706560, 508032, 29120, 1056706560, 508032, 29120, 1)
    assert all(res.values())
    res = divisibility_filter(1056706560, 508032, 1456, 1056706560, 508032, 1456, 1)
    assert not res["a"]
    with pytest.raises(ValueError):
        divisibility_filter(0, 1, 1, 1, 1, 1, 1)


def test_evaluate():
    env = {"f": 2, "l": 1}
    assert evaluate("Sp(4*l, 2**f)", env) == 979200
    assert evaluate("f >= 1 and l == 1", env) is True
    assert evaluate("3 if is_prime(f) else 4", env) == 3
    assert evaluate("log_p(16)", {}) == 4
    assert evaluate("min_nonsolvable_psl2(16)", {}) == 60
    with pytest.raises(ValueError):
        evaluate("x + 1", env)
    with pytest.raises(ValueError):
        evaluate("7 // 2", env)
    with pytest.raises(ValueError):
        evaluate("__import__('os')", env)


def test_require():
    arith.require(True, "fine")
    with pytest.raises(ConstraintViolationError):
        arith.require(False, "broken")
