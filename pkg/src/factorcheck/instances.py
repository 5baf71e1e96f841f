"""Concrete factorization instances small enough to verify exactly.

Each builder returns a DeskInstance: a domain, the groups G, H, K as
Subgroups on it, the preferred strategy, and optional extras (a chain of
links, overgroups of H, a subgroup that should equal H ∩ K, an intersection
prediction).  Builders are registered under a stable instance id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .actions import QuadraticFormAction, SetAction, set_orbit, subspace_points
from .arith import sp_order
from .field import gf
from .forms import standard_quadratic
from .groups import (
    MatrixGroup,
    PermGroup,
    SubfieldCoordinates,
    alternating_group,
    direct_product_perm,
    even_part,
    field_extension_embedding,
    g2_m_subgroup,
    g2_subgroup,
    go_minus_in_sp,
    o_group,
    omega_on_form,
    perm_atlas,
    projective_action,
    sp_group,
    symmetric_group,
    sz_group,
    tensor_factor,
    tensor_subgroup,
    wreath_pair,
)
from .linalg import Matrix
from .perm import DTYPE
from .verify import (
    Domain,
    Engine,
    Link,
    Report,
    Subgroup,
    check_chain,
    check_factorization,
    check_intersection_prediction,
    stabilizer,
)


@dataclass(eq=False)
class DeskInstance:
    id: str
    domain: Domain
    G: Subgroup
    H: Subgroup
    K: Subgroup
    strategy: str = "auto"
    links: list[Link] | None = None
    overgroups: list[Subgroup] = field(default_factory=list)
    intersection_witness: Subgroup | None = None
    prediction: tuple[Subgroup, Subgroup, Subgroup] | None = None
    expected: int | None = None
    expect_refuted: bool = False
    notes: dict = field(default_factory=dict)


def verify_instance(inst: DeskInstance, strategy: str | None = None) -> Report:
    """Run the instance's check (chain if it has links) and attach the
    intersection-witness and prediction results to the report details."""
    if inst.links is not None and strategy in (None, "auto", "chain"):
        rep = check_chain(inst.domain, inst.links, inst.id)
    else:
        s = inst.strategy if strategy in (None, "chain") else strategy
        rep = check_factorization(inst.domain, inst.G, inst.H, inst.K, s, inst.id)
    if inst.intersection_witness is not None and rep.verdict == "verified":
        w = inst.intersection_witness
        eng = Engine(inst.domain, inst.G)
        inside = all(eng.contains(inst.H, g) and eng.contains(inst.K, g) for g in w.generators)
        rep.details["intersection_is"] = {
            "label": w.label, "order": eng.order(w), "inside_H_and_K": inside,
            "equal": inside and eng.order(w) == rep.intersection,
        }
    if inst.prediction is not None:
        M, B, P = inst.prediction
        pr = check_intersection_prediction(inst.domain, inst.G, M, B, P, inst.id + "/prediction")
        rep.details["prediction"] = pr.to_record()
        if pr.verdict == "refuted" and rep.verdict == "verified":
            rep.verdict = "refuted"
    return rep


# -- helpers -------------------------------------------------------------------------

def matrix_domain(F, dim: int) -> Domain:
    action = projective_action(F, dim)
    return Domain(action.degree, action)


def lift(domain: Domain, grp: MatrixGroup | PermGroup, label: str | None = None,
         point: int | None = None, gens: list | None = None, order: int | None = None,
         bound: bool | None = None) -> Subgroup:
    src = gens if gens is not None else grp.generators
    return Subgroup(label or grp.label, domain.lift(src),
                    order if order is not None else grp.predicted_order,
                    grp.order_is_bound if bound is None and isinstance(grp, MatrixGroup) else bool(bound),
                    point)


def _form_point(domain: Domain, gram: Matrix, Q) -> int:
    forms = QuadraticFormAction(gram)
    block = domain.add_forms(forms)
    return domain.point(block, forms.index_of(Q))


def _set_block(domain: Domain, base_gens: list[np.ndarray], start: np.ndarray,
               blocks: int = 1, name: str = "sets") -> int:
    """Add the G-orbit of a set-valued point as a block; returns the point."""
    rows = set_orbit(base_gens, start, blocks=blocks)
    sets = SetAction(rows, blocks=blocks)
    block = domain.add_sets(sets, name)
    return domain.point(block, int(sets.index(np.asarray(start)[None, :])[0]))


REGISTRY: dict[str, Callable[[], DeskInstance]] = {}


def register(instance_id: str):
    def deco(fn):
        REGISTRY[instance_id] = fn
        return fn
    return deco


@lru_cache(maxsize=None)
def build(instance_id: str) -> DeskInstance:
    if instance_id not in REGISTRY:
        raise KeyError(f"unknown desk instance {instance_id!r}")
    return REGISTRY[instance_id]()


# -- Table 1 row 1: wreath products against the minus-type orthogonal group ---------

def _sp_with_minus_form(m: int, q: int, sign: int = -1) -> tuple[Domain, Subgroup, int, MatrixGroup]:
    F = gf(q)
    G = sp_group(m, q)
    dom = matrix_domain(F, 2 * m)
    pt = _form_point(dom, G.preserved.bilinear.gram, standard_quadratic(F, m, sign))
    return dom, lift(dom, G, point=None), pt, G


def _t1r1(f: int, l: int, a: int, b: int, *, swap: bool = True,
          omega_only: bool = False, sign: int = -1) -> DeskInstance:
    q = 2 ** f
    dom, G, pt, Gm = _sp_with_minus_form(2 * l, q, sign)
    inner = wreath_pair(sp_group(a, q ** b), swap=swap)
    if b == 1:
        gens = inner.generators
    else:
        # Sp_2a(q^b) wr S_2 inside Sp_4a(q^b), written over GF(q)
        emb = field_extension_embedding(2 * a, b, q)
        gens = [emb.embed(g) for g in inner.generators]
    H = Subgroup(inner.label, dom.lift(gens), inner.predicted_order, True)
    if omega_only:
        _, Om = o_group(2 * l, q, -1)
        K = lift(dom, Om)
    elif sign == 1:
        GO, _ = o_group(2 * l, q, 1)
        K = lift(dom, GO, point=pt)
    else:
        K = lift(dom, go_minus_in_sp(l, q), point=pt)
    iid = f"T1.r1[f={f},l={l},a={a},b={b}]"
    return DeskInstance(iid, dom, G, H, K, "auto",
                        expected=inner.predicted_order * K.order // sp_order(4 * l, q))


def _block_frobenius(emb, a: int) -> Matrix:
    """x -> x^q on the coordinates of the first block only (a GF(q)-linear map)."""
    sc = emb.coords
    b = sc.degree
    n = 4 * a
    first = sc.frobenius(2 * a)
    full = np.eye(n * b, dtype=np.int64)
    full[:2 * a * b, :2 * a * b] = first.a
    return Matrix(sc.small, full).conjugate_by(emb.basis)


@register("T1.r1[f=2,l=1,a=1,b=1]")
def ac1() -> DeskInstance:
    inst = _t1r1(2, 1, 1, 1)
    inst.expected = 60
    return inst


@register("T1.r1[f=2,l=1,a=1,b=1].control")
def ac1_control() -> DeskInstance:
    """No swap and no .2 on the orthogonal side: must be refuted."""
    inst = _t1r1(2, 1, 1, 1, swap=False, omega_only=True)
    inst.id += ".control"
    inst.strategy = "order-oracle"
    inst.expected = None
    inst.expect_refuted = True
    return inst


@register("T1.r1[f=2,l=1,a=1,b=1].sign=+")
def ac1_plus() -> DeskInstance:
    """Plus-type form in place of the minus type: must be refuted."""
    inst = _t1r1(2, 1, 1, 1, sign=1)
    inst.id += ".sign=+"
    inst.strategy = "orbit-transitivity"
    inst.expected = None
    inst.expect_refuted = True
    return inst


@register("T1.r1[f=2,l=1,a=1,b=1].Q=1")
def ac1_omega() -> DeskInstance:
    """K ∩ L = Omega^-_4(4): G = H GO, then GO = Omega (H ∩ GO)."""
    base = ac1()
    return _omega_variant(base, 2, 4)


def _omega_variant(base: DeskInstance, m: int, q: int) -> DeskInstance:
    dom = base.domain
    _, Om = o_group(m, q, -1)
    omega = lift(dom, Om)
    K = base.K
    stab = stabilizer(f"{base.H.label} ∩ {K.label}", K.point, ambient=base.H)
    links = [Link(base.G, K, base.H, "orbit-transitivity"), Link(K, omega, stab, "index-two")]
    inst = DeskInstance(base.id + ".Q=1", dom, base.G, base.H, omega, "chain", links=links)
    inst.expected = base.expected // 2 if base.expected else None
    inst.notes["claim"] = "G = Omega * H, equivalently G = H * Omega"
    return inst


@register("T1.r1[f=1,l=2,a=1,b=2]")
def ac2() -> DeskInstance:
    """Sp_8(2) = (Sp_2(4) wr S_2) GO^-_8(2) through Sp_4(4):2."""
    dom, G, pt, Gm = _sp_with_minus_form(4, 2)
    M_grp = _field_ext(2, 2, 2)
    M = lift(dom, M_grp)
    emb = M_grp.extras["embedding"]
    inner = wreath_pair(sp_group(1, 4))
    H = Subgroup("Sp_2(4) wr S_2", dom.lift([emb.embed(g) for g in inner.generators]),
                 inner.predicted_order, True)
    K = lift(dom, go_minus_in_sp(2, 2), point=pt)
    links = [Link(G, M, K, "orbit-transitivity"),
             Link(M, H, stabilizer("GO^-_8(2) ∩ Sp_4(4):2", pt, ambient=M), "orbit-transitivity")]
    inst = DeskInstance("T1.r1[f=1,l=2,a=1,b=2]", dom, G, H, K, "orbit-transitivity",
                        links=links, overgroups=[M], expected=60)
    return inst


@lru_cache(maxsize=None)
def _field_ext(a: int, b: int, q: int) -> MatrixGroup:
    from .groups import field_ext_subgroup

    return field_ext_subgroup(a, b, q)


@register("T1.r1[f=1,l=2,a=1,b=2].R=bxb")
def ac2_max() -> DeskInstance:
    """R = b x b: a Frobenius on one block and one on both."""
    dom, G, pt, _ = _sp_with_minus_form(4, 2)
    emb = field_extension_embedding(2, 2, 2)
    inner = wreath_pair(sp_group(1, 4))
    gens = [emb.embed(g) for g in inner.generators]
    Hmin = Subgroup("Sp_2(4) wr S_2", dom.lift(gens), inner.predicted_order, True)
    gens_max = gens + [_block_frobenius(emb, 1)]
    H = Subgroup("(Sp_2(4) x Sp_2(4)).(2 x 2).2", dom.lift(gens_max),
                 inner.predicted_order * 4, True)
    K = lift(dom, go_minus_in_sp(2, 2), point=pt)
    return DeskInstance("T1.r1[f=1,l=2,a=1,b=2].R=bxb", dom, G, Hmin, K, "orbit-transitivity",
                        overgroups=[H], expected=60)


@register("T1.r1[f=1,l=2,a=2,b=1]")
def t1r1_a2() -> DeskInstance:
    inst = _t1r1(1, 2, 2, 1)
    inst.expected = 8640
    return inst


# -- Table 1 row 2: G2 wreath -----------------------------------------------------------

@register("T1.r2[f=1,l=1]")
def t1r2() -> DeskInstance:
    dom, G, pt, _ = _sp_with_minus_form(6, 2)
    inner = g2_subgroup(1)
    Hm = wreath_pair(inner)
    H = Subgroup("G2(2) wr S_2", dom.lift(Hm.generators), Hm.predicted_order, True)
    K = lift(dom, go_minus_in_sp(3, 2), point=pt)
    return DeskInstance("T1.r2[f=1,l=1]", dom, G, H, K, "orbit-transitivity", expected=145152)


@register("T1.r2[f=1,l=1].Q=1")
def t1r2_omega() -> DeskInstance:
    return _omega_variant(t1r2(), 6, 2)


# -- Table 1 row 5: (Sp_2(4) x Sp_2(4)).P inside Sp_8(2) --------------------------------------

def _omega_plus_gf4_blown(dom: Domain, with_reflection: bool) -> Subgroup:
    """Omega^+_4(4):phi (or GO^+_4(4):phi) inside GammaSp_4(4), blown up to Sp_8(2)."""
    emb = field_extension_embedding(2, 2, 2)
    GO, Om = o_group(2, 4, 1)
    src = GO if with_reflection else Om
    gens = [emb.embed(g) for g in src.generators] + [emb.frobenius]
    name = "GO^+_4(4):phi" if with_reflection else "Omega^+_4(4):phi"
    return Subgroup(name, dom.lift(gens), src.predicted_order * 2, True)


@register("T1.r5[l=1]")
def t1r5() -> DeskInstance:
    dom, G, pt, _ = _sp_with_minus_form(4, 2)
    H = _omega_plus_gf4_blown(dom, False)
    K = lift(dom, go_minus_in_sp(2, 2), point=pt)
    return DeskInstance("T1.r5[l=1]", dom, G, H, K, "orbit-transitivity",
                        overgroups=[_omega_plus_gf4_blown(dom, True)], expected=60)


@register("T1.r5[l=1].P=4")
def t1r5_max() -> DeskInstance:
    dom, G, pt, _ = _sp_with_minus_form(4, 2)
    H = _omega_plus_gf4_blown(dom, True)
    K = lift(dom, go_minus_in_sp(2, 2), point=pt)
    return DeskInstance("T1.r5[l=1].P=4", dom, G, H, K, "orbit-transitivity", expected=120)


# -- Table 1 row 6: Suzuki ------------------------------------------------------------------

def _sz_instance(f: int, swap: bool) -> DeskInstance:
    q = 2 ** f
    F = gf(q)
    Gm = sp_group(2, q)
    dom = matrix_domain(F, 4)
    act = dom.action
    eye = np.eye(4, dtype=np.int64)
    W, Wp = subspace_points(act, eye[:2]), subspace_points(act, eye[2:])
    pt = _set_block(dom, Gm.perms(), np.concatenate([W, Wp]), blocks=2, name="decompositions")
    G = lift(dom, Gm)
    Hm = wreath_pair(sp_group(1, q), swap=swap)
    H = lift(dom, Hm, point=pt if swap else None)
    K = lift(dom, sz_group(f))
    iid = f"T1.r6[f={f}]" + ("" if swap else ".P=1")
    return DeskInstance(iid, dom, G, H, K, "order-oracle",
                        expected=Hm.predicted_order * K.order // sp_order(4, q))


@register("T1.r6[f=3]")
def ac3() -> DeskInstance:
    inst = _sz_instance(3, True)
    inst.notes["anchor"] = "dihedral of order 2(2^f - 1)"
    return inst


@register("T1.r6[f=3].P=1")
def ac3_min() -> DeskInstance:
    """The base group alone meets Sz(8) in a dihedral group of order 14, so it
    does not factorize: both the torus and the block swap fix <x1, x4>."""
    inst = _sz_instance(3, False)
    inst.expected = None
    inst.expect_refuted = True
    return inst


# -- Table 1 row 7: G2 against the stabilizer of a nondegenerate 2-space -------------------------

@register("T1.r7[f=2]")
def ac4() -> DeskInstance:
    f = 2
    q = 2 ** f
    F = gf(q)
    Gm = sp_group(3, q)
    dom = matrix_domain(F, 6)
    W = subspace_points(dom.action, np.eye(6, dtype=np.int64)[:2])
    pt = _set_block(dom, Gm.perms(), W, name="2-spaces")
    G = lift(dom, Gm)
    from .groups import n_k_stabilizer

    H = lift(dom, n_k_stabilizer(Gm, 2), point=pt)
    K = lift(dom, g2_subgroup(f))
    Mg = g2_m_subgroup(f)
    M = Subgroup("<s, (rs)^3, T, A, F>", dom.lift(Mg.generators), None)
    return DeskInstance("T1.r7[f=2]", dom, G, H, K, "orbit-transitivity",
                        intersection_witness=M, expected=3600)


# -- orthogonal rows over the subfield norm form --------------------------------------------------

def _norm_form_setting(q_big: int, q_small: int):
    big, small = gf(q_big), gf(q_small)
    sc = SubfieldCoordinates(big, small)
    P = standard_quadratic(big, 2, 1)
    Q = sc.norm_form(P)
    G = omega_on_form(Q)
    dom = matrix_domain(small, 8)
    t = big.generator.code
    v = sc.vector(np.array([1, t, 0, 0]))
    if Q.value(v) == 0:
        raise AssertionError("chosen vector is singular")
    return sc, Q, G, dom, dom.action.point(v)


def _norm_form_H(sc: SubfieldCoordinates, dom: Domain, full: bool, frobenius: bool) -> Subgroup:
    q_big = sc.big.q
    GO, Om = o_group(2, q_big, 1)
    src = GO if full else Om
    gens = [sc.blow_up(g) for g in src.generators]
    order = src.predicted_order
    name = ("GO" if full else "Omega") + f"^+_4({q_big})"
    if frobenius:
        gens.append(sc.frobenius(4))
        order *= 2
        name += ":phi"
    return Subgroup(name, dom.lift(gens), order, True)


def _norm_form_instance(iid: str, q_big: int, q_small: int, full: bool, frobenius: bool,
                        expected: int | None) -> DeskInstance:
    sc, Q, Gm, dom, pt = _norm_form_setting(q_big, q_small)
    G = lift(dom, Gm, label=f"Omega^+_8({q_small})")
    H = _norm_form_H(sc, dom, full, frobenius)
    K = stabilizer(f"N_1[Omega^+_8({q_small})]", pt)
    inst = DeskInstance(iid, dom, G, H, K, "orbit-transitivity", expected=expected)
    inst.notes["coords"] = sc
    return inst


@register("T2.r7")
def ac5() -> DeskInstance:
    inst = _norm_form_instance("T2.r7", 4, 2, True, True, 120)
    inst.notes["K_order"] = sp_order(6, 2)
    return inst


@register("T5.r2[l=1]")
def ac7() -> DeskInstance:
    inst = _norm_form_instance("T5.r2[l=1]", 4, 2, False, True, 60)
    inst.notes["K_order"] = sp_order(6, 2)
    inst.overgroups = [_norm_form_H(inst.notes["coords"], inst.domain, True, True)]
    return inst


@register("T5.r2[l=1].P=1")
def ac7_control() -> DeskInstance:
    inst = _norm_form_instance("T5.r2[l=1].P=1", 4, 2, False, False, None)
    inst.expect_refuted = True
    return inst


# Over GF(16)/GF(4) the Frobenius pairs up the trace classes, so GO^+_4(16):phi has
# two orbits of 8160 on nonsingular points: it does not factorize with N_1.  The
# Sp_6(4) partner of that row is another class, which is not built here.

@register("T2.r8.K=N1")
def t2r8_probe() -> DeskInstance:
    inst = _norm_form_instance("T2.r8.K=N1", 16, 4, True, True, None)
    inst.expect_refuted = True
    return inst


# -- Table 5 row 1: tensor decomposition --------------------------------------------------------

def _tensor_setting(m: int, q: int):
    Hm, Q = tensor_subgroup(m, q)
    Gm = omega_on_form(Q)
    F = gf(q)
    dom = matrix_domain(F, 4 * m)
    x = np.zeros(4 * m, dtype=np.int64)
    x[0] = 1
    x[2 * m + 1] = 1  # w_1 (x) u_1 + w_2 (x) v_1
    if Q.value(x) == 0:
        raise AssertionError("tensor point is singular")
    return Hm, Q, Gm, dom, dom.action.point(x)


def _tensor_prediction(dom: Domain, m: int, q: int, pt: int):
    F = gf(q)
    M = tensor_factor(m, q, "right")
    src = [Matrix.block_diagonal([Matrix.identity(F, 2), g]) for g in sp_group(m - 1, q).generators]
    P = tensor_factor(m, q, "right", src, sp_order(2 * m - 2, q), f"Sp_{2 * m - 2}({q}) on <u_1, v_1>^perp")
    return (lift(dom, M, label=f"1 (x) Sp_{2 * m}({q})"),
            stabilizer(f"N_1[Omega^+_{4 * m}({q})]", pt),
            lift(dom, P))


@register("T5.r1[l=2,q=4]")
def ac6() -> DeskInstance:
    Hm, Q, Gm, dom, pt = _tensor_setting(2, 4)
    G = lift(dom, Gm, label="Omega^+_8(4)")
    H = lift(dom, Hm)
    K = stabilizer("N_1[Omega^+_8(4)]", pt)
    inst = DeskInstance("T5.r1[l=2,q=4]", dom, G, H, K, "orbit-transitivity", expected=3600)
    inst.prediction = _tensor_prediction(dom, 2, 4, pt)
    return inst


@register("T5.r1[l=2,q=4].U=1")
def ac6_m() -> DeskInstance:
    """The second factor alone: 1 (x) Sp_4(4) already factorizes."""
    Hm, Q, Gm, dom, pt = _tensor_setting(2, 4)
    G = lift(dom, Gm, label="Omega^+_8(4)")
    H = lift(dom, tensor_factor(2, 4, "right"), label="1 (x) Sp_4(4)")
    K = stabilizer("N_1[Omega^+_8(4)]", pt)
    inst = DeskInstance("T5.r1[l=2,q=4].U=1", dom, G, H, K, "orbit-transitivity", expected=60)
    inst.overgroups = [lift(dom, Hm)]
    return inst


def tensor_prediction_instance(m: int, q: int) -> tuple[Domain, Subgroup, tuple]:
    Hm, Q, Gm, dom, pt = _tensor_setting(m, q)
    G = lift(dom, Gm, label=f"Omega^+_{4 * m}({q})")
    return dom, G, _tensor_prediction(dom, m, q, pt)


# -- part (a): alternating groups ---------------------------------------------------------------

def _perm_lift(dom: Domain, grp: PermGroup, label: str | None = None, point: int | None = None,
               order: int | None = None) -> Subgroup:
    return Subgroup(label or grp.label, dom.lift(grp.generators),
                    order if order is not None else grp.predicted_order, False, point)


def _pad(grp: PermGroup, n: int) -> PermGroup:
    pad = np.arange(grp.degree, n, dtype=DTYPE)
    return PermGroup(n, [np.concatenate([g, pad]) for g in grp.generators], grp.predicted_order,
                     grp.label)


def _a2(kname: str, korder_label: str, expected: int) -> DeskInstance:
    n = 10
    dom = Domain(n)
    A10 = alternating_group(n)
    halves = np.arange(n)
    pt = _set_block(dom, A10.generators, halves, blocks=2, name="5+5 partitions")
    G = _perm_lift(dom, A10)
    S5 = symmetric_group(5)
    base = direct_product_perm([S5, S5])
    swap = np.concatenate([np.arange(5, 10), np.arange(5)]).astype(DTYPE)
    wr = PermGroup(n, base.generators + [swap], 2 * 120 * 120, "S_5 wr S_2")
    Hg = even_part(wr, "(S_5 wr S_2) ∩ A_10")
    H = _perm_lift(dom, Hg, point=pt)
    K = _perm_lift(dom, perm_atlas(kname, degree=n), korder_label)
    return DeskInstance("", dom, G, H, K, "order-oracle", expected=expected)


@register("A.a2[n=10]")
def ac8() -> DeskInstance:
    inst = _a2("PGammaL_2_8", "PGammaL_2(8)", 12)
    inst.id = "A.a2[n=10]"
    return inst


@register("A.a2[n=10].K=SL2(8)")
def ac8_sl() -> DeskInstance:
    inst = _a2("SL_2_8", "SL_2(8)", 4)
    inst.id = "A.a2[n=10].K=SL2(8)"
    return inst


def _young_setting(n: int, k: int):
    """A_n with the orbit of the k-set {n-k, ..., n-1} as an extra block."""
    dom = Domain(n)
    An = alternating_group(n)
    pt = _set_block(dom, An.generators, np.arange(n - k, n), name=f"{k}-sets")
    return dom, An, pt


@register("A.a3[n=12]")
def ac9() -> DeskInstance:
    dom, A12, pt = _young_setting(12, 5)
    G = _perm_lift(dom, A12)
    Hg = direct_product_perm([alternating_group(7), alternating_group(5)])
    H = _perm_lift(dom, Hg, "A_7 x A_5")
    K = _perm_lift(dom, perm_atlas("M12"), "M_12")
    Mg = even_part(direct_product_perm([symmetric_group(7), symmetric_group(5)]))
    M = _perm_lift(dom, Mg, "(S_7 x S_5) ∩ A_12", point=pt)
    return DeskInstance("A.a3[n=12]", dom, G, H, K, "order-oracle", overgroups=[M], expected=60)


@register("A.a3[n=12].H=max")
def ac9_max() -> DeskInstance:
    base = ac9()
    M = base.overgroups[0]
    return DeskInstance("A.a3[n=12].H=max", base.domain, base.G, M, base.K,
                        "orbit-transitivity", expected=120)


@register("A.a4[n=24]")
def ac10() -> DeskInstance:
    dom, A24, pt = _young_setting(24, 5)
    G = _perm_lift(dom, A24)
    Hg = direct_product_perm([alternating_group(19), alternating_group(5)])
    H = _perm_lift(dom, Hg, "A_19 x A_5")
    K = _perm_lift(dom, perm_atlas("M24"), "M_24")
    M = stabilizer("(S_19 x S_5) ∩ A_24", pt)
    KM = stabilizer("M_24 ∩ (S_19 x S_5)", pt, ambient=K)
    links = [Link(G, M, K, "orbit-transitivity"), Link(M, H, KM, "index-two")]
    return DeskInstance("A.a4[n=24]", dom, G, H, K, "chain", links=links, overgroups=[M],
                        expected=2880)


@register("A.a1[n=10]")
def a1_sym() -> DeskInstance:
    n = 10
    dom = Domain(n)
    G = _perm_lift(dom, symmetric_group(n))
    cyc = np.roll(np.arange(n), -1).astype(DTYPE)
    H = Subgroup(f"C_{n}", dom.lift([cyc]), n)
    K = _perm_lift(dom, _pad(symmetric_group(n - 1), n), f"S_{n - 1}", point=n - 1)
    return DeskInstance("A.a1[n=10]", dom, G, H, K, "orbit-transitivity", expected=1)


@register("A.a1[n=11]")
def a1_alt() -> DeskInstance:
    n = 11
    dom = Domain(n)
    G = _perm_lift(dom, alternating_group(n))
    cyc = np.roll(np.arange(n), -1).astype(DTYPE)
    H = Subgroup(f"C_{n}", dom.lift([cyc]), n)
    K = _perm_lift(dom, _pad(alternating_group(n - 1), n), f"A_{n - 1}", point=n - 1)
    return DeskInstance("A.a1[n=11]", dom, G, H, K, "orbit-transitivity", expected=1)


def instance_ids() -> list[str]:
    return sorted(REGISTRY)
