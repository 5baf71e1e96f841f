import json

import numpy as np
import pytest

from factorcheck.errors import BrokenLinkError, StrategyPreconditionError
from factorcheck.groups import alternating_group, symmetric_group
from factorcheck.perm import DTYPE, perm_from_cycles
from factorcheck.verify import (REPORT_FIELDS, Domain, Link, Subgroup, check_chain,
                                check_factorization, conjugation_invariance, overgroup_identity,
                                stabilizer, strategy_agreement, symmetry)


def _s5_setting():
    dom = Domain(5)
    G = Subgroup("S_5", dom.lift(symmetric_group(5).generators), 120)
    C5 = Subgroup("C_5", dom.lift([perm_from_cycles("(1,2,3,4,5)", 5)]), 5)
    S4 = Subgroup("S_4", dom.lift([perm_from_cycles("(1,2)", 5), perm_from_cycles("(1,2,3,4)", 5)]),
                  24, point=4)
    return dom, G, C5, S4


def test_orbit_and_oracle_verify_s5():
    dom, G, C5, S4 = _s5_setting()
    rep = check_factorization(dom, G, C5, stabilizer("S_4", 4), "orbit-transitivity")
    assert rep.verdict == "verified" and rep.intersection == 1
    rep = check_factorization(dom, G, C5, S4, "order-oracle")
    assert rep.verdict == "verified" and rep.intersection == 1
    assert rep.details["identity"] == "1*120 == 5*24"


def test_refutation():
    dom, G, _, S4 = _s5_setting()
    C3 = Subgroup("C_3", dom.lift([perm_from_cycles("(1,2,3)", 5)]), 3)
    for s in ("orbit-transitivity", "order-oracle"):
        rep = check_factorization(dom, G, C3, S4, s)
        assert rep.verdict == "refuted"
        assert not rep.ok


def test_strategy_preconditions():
    dom, G, C5, S4 = _s5_setting()
    with pytest.raises(StrategyPreconditionError):
        check_factorization(dom, G, C5, Subgroup("C_5'", C5.generators, 5), "orbit-transitivity")
    with pytest.raises(StrategyPreconditionError):
        check_factorization(dom, G, C5, S4, "nonsense")
    A5 = Subgroup("A_5", dom.lift(alternating_group(5).generators), 60)
    odd = Subgroup("<(1,2)>", dom.lift([perm_from_cycles("(1,2)", 5)]), 2)
    with pytest.raises(StrategyPreconditionError):
        check_factorization(dom, A5, C5, odd)


def test_index_two():
    dom, G, _, S4 = _s5_setting()
    A5 = Subgroup("A_5", dom.lift(alternating_group(5).generators), 60)
    rep = check_factorization(dom, G, A5, S4, "index-two")
    assert rep.verdict == "verified" and rep.intersection == 12
    A4 = Subgroup("A_4", dom.lift([perm_from_cycles("(1,2,3)", 5), perm_from_cycles("(2,3,4)", 5)]), 12)
    rep = check_factorization(dom, G, A5, A4, "index-two")
    assert rep.verdict == "refuted"


def test_chain_and_broken_link():
    dom = Domain(6)
    G = Subgroup("S_6", dom.lift(symmetric_group(6).generators), 720)
    M = stabilizer("S_5", 5)
    six = perm_from_cycles("(1,2,3,4,5,6)", 6)
    K = Subgroup("C_6", dom.lift([six]), 6)
    # S_6 = S_5 C_6 and S_5 = A_5 (C_6 ∩ S_5) fails since C_6 ∩ S_5 = 1
    A5 = Subgroup("A_5", dom.lift([np.concatenate([g, [5]]).astype(DTYPE)
                                   for g in alternating_group(5).generators]), 60)
    one = Subgroup("1", [], 1)
    rep = check_chain(dom, [Link(G, M, K, "orbit-transitivity"), Link(M, A5, one, "index-two")])
    assert rep.verdict == "refuted"
    assert rep.details["broken_link"] == 2
    with pytest.raises(BrokenLinkError):
        check_chain(dom, [Link(G, M, K), Link(G, A5, one)])
    with pytest.raises(ValueError):
        check_chain(dom, [])


def test_single_link_chain_matches_direct_check():
    dom, G, C5, _ = _s5_setting()
    K = stabilizer("S_4", 4)
    chain = check_chain(dom, [Link(G, C5, K, "orbit-transitivity")])
    direct = check_factorization(dom, G, C5, K, "orbit-transitivity")
    assert chain.verdict == direct.verdict == "verified"
    assert chain.intersection == direct.intersection


def test_properties_small():
    dom, G, C5, S4 = _s5_setting()
    agree = strategy_agreement(dom, G, C5, S4)
    assert set(agree) == {"orbit-transitivity", "order-oracle"}
    assert len(set(agree.values())) == 1
    base, moved = conjugation_invariance(dom, G, C5, S4)
    assert (base.verdict, base.intersection) == (moved.verdict, moved.intersection)
    a, b = symmetry(dom, G, C5, S4)
    assert (a.verdict, a.intersection) == (b.verdict, b.intersection)
    A5 = Subgroup("A_5", dom.lift(alternating_group(5).generators), 60)
    C5_in = Subgroup("C_5", C5.generators, 5)
    lhs, rhs = overgroup_identity(dom, G, C5_in, S4, A5, 1)
    assert lhs == rhs == 60


def test_report_record_is_ordered_and_deterministic():
    dom, G, C5, S4 = _s5_setting()
    r1 = check_factorization(dom, G, C5, S4, "order-oracle", "s5")
    r2 = check_factorization(dom, G, C5, S4, "order-oracle", "s5")
    assert list(r1.to_record()) == list(REPORT_FIELDS)
    assert r1.to_json() == r2.to_json()
    rec = json.loads(r1.to_json())
    assert rec["order_G"] == 120 and rec["verdict"] == "verified"
    r1.elapsed = 0.5
    assert "elapsed" in r1.to_record(with_time=True)
    assert "elapsed" not in r1.to_record()
