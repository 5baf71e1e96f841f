"""Deciding G = HK exactly for groups of permutations on a common domain.

A domain is a disjoint union of point blocks.  Block 0 carries a faithful
action (projective points of the natural module, or the natural points of a
permutation group); BSGS chains are built on that block alone.  Further
blocks hold the extra points a factor may be the stabilizer of: quadratic
forms, subspaces, partitions.  Orbits are always taken on the full domain.

Strategies:

* ``orbit-transitivity``: one factor is the full stabilizer of a point, and
  the other factor must be transitive on the G-orbit of that point.
* ``order-oracle``: |H ∩ K| by listing the smaller factor, then the identity
  |H ∩ K| |G| = |H| |K|.
* ``index-two``: [G:H] = 2, and K has an element outside H.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .actions import QuadraticFormAction, SetAction
from .errors import (
    BrokenLinkError,
    BudgetExceededError,
    OrderMismatchError,
    StrategyPreconditionError,
)
from .linalg import Matrix
from .perm import (
    DEFAULT_SEED,
    DTYPE,
    TRAVERSAL_BUDGET,
    BsgsChain,
    PointStabilizer,
    compose,
    conjugate,
    identity,
    inverse,
    orbit,
    random_elements,
    schreier_sims,
    stabilizer_chain,
    tiny_intersection_order,
)

ORBIT_LIMIT = 10**6
ORACLE_LIMIT = 10**7
STRATEGIES = ("auto", "orbit-transitivity", "order-oracle", "index-two")
VERDICTS = ("verified", "refuted", "screened-consistent", "budget-exceeded")
REPORT_FIELDS = ("instance", "strategy", "order_G", "order_H", "order_K",
                 "intersection", "verdict", "details", "engine")
REPORT_SCHEMA_VERSION = 1


# -- domains -------------------------------------------------------------------

class Domain:
    """Disjoint union of point blocks; block 0 is acted on faithfully.

    ``action`` is the projective (or vector) action for matrix groups and
    None for permutation groups.
    """

    def __init__(self, base_degree: int, action=None, name: str = "points"):
        self.action = action
        self.blocks: list[tuple[str, int, object]] = [(name, base_degree, None)]

    @property
    def faithful(self) -> int:
        return self.blocks[0][1]

    @property
    def degree(self) -> int:
        return sum(size for _, size, _ in self.blocks)

    def offset(self, block: int) -> int:
        return sum(size for _, size, _ in self.blocks[:block])

    def add_forms(self, forms: QuadraticFormAction, name: str = "forms") -> int:
        self.blocks.append((name, forms.degree, forms))
        return len(self.blocks) - 1

    def add_sets(self, sets: SetAction, name: str = "sets") -> int:
        self.blocks.append((name, sets.degree, sets))
        return len(self.blocks) - 1

    def point(self, block: int, index: int) -> int:
        return self.offset(block) + int(index)

    def lift(self, elements: Sequence) -> list[np.ndarray]:
        """Full-domain permutations of matrices or base permutations."""
        out = []
        for g in elements:
            if isinstance(g, Matrix):
                if self.action is None:
                    raise ValueError("matrix given on a permutation domain")
                base = self.action.perm(g)
            else:
                base = np.asarray(g, dtype=DTYPE)
            parts = [base]
            off = self.faithful
            for _, size, extra in self.blocks[1:]:
                if isinstance(extra, QuadraticFormAction):
                    if not isinstance(g, Matrix):
                        raise ValueError("form blocks need matrices")
                    parts.append(extra.perm(g) + off)
                else:
                    parts.append(extra.perm(base) + off)
                off += size
            out.append(np.concatenate(parts).astype(DTYPE))
        return out

    def describe(self) -> list[list]:
        return [[name, size] for name, size, _ in self.blocks]


# -- subgroups -------------------------------------------------------------------

@dataclass(eq=False)
class Subgroup:
    """A subgroup given by full-domain generators, or implicitly as the
    stabilizer of ``point`` in ``ambient`` (generators None).

    With both generators and a point, the generators are claimed to generate
    the full stabilizer of the point; the orbit strategy checks the claim.
    """

    label: str
    generators: list[np.ndarray] | None = None
    order: int | None = None
    order_is_bound: bool = False
    point: int | None = None
    ambient: Subgroup | None = None
    _chain: BsgsChain | None = field(default=None, repr=False)
    _full: list[np.ndarray] | None = field(default=None, repr=False)

    @property
    def implicit(self) -> bool:
        return self.generators is None

    def conjugated(self, x: np.ndarray, ambient: Subgroup | None = None) -> Subgroup:
        gens = None if self.generators is None else [conjugate(g, x) for g in self.generators]
        point = None if self.point is None else int(x[self.point])
        return Subgroup(f"{self.label}^x", gens, self.order, self.order_is_bound, point,
                        ambient if ambient is not None else self.ambient)


def stabilizer(label: str, point: int, ambient: Subgroup | None = None) -> Subgroup:
    return Subgroup(label, None, point=point, ambient=ambient)


class Engine:
    """Chains and orbits for the subgroups of one domain, cached per object.

    Implicit stabilizers without an explicit ambient live in ``top``.
    """

    def __init__(self, domain: Domain, top: Subgroup, seed: int = DEFAULT_SEED):
        if top.implicit and top.ambient is None:
            raise StrategyPreconditionError(f"{top.label} is a stabilizer with no ambient group to live in")
        self.domain = domain
        self.top = top
        self.seed = seed
        self._orbits: dict[tuple[int, int], int] = {}

    def ambient_of(self, sub: Subgroup) -> Subgroup:
        return sub.ambient if sub.ambient is not None else self.top

    def full_generators(self, sub: Subgroup) -> list[np.ndarray]:
        if sub.generators is not None:
            return sub.generators
        return self.stabilizer_generators(sub)

    def orbit_size(self, sub: Subgroup, point: int, limit: int | None = None) -> int:
        key = (id(sub), point)
        if key not in self._orbits:
            gens = self.full_generators(sub)
            self._orbits[key] = len(orbit(gens, point, self.domain.degree, limit))
        return self._orbits[key]

    def chain(self, sub: Subgroup) -> BsgsChain:
        if sub._chain is not None:
            return sub._chain
        f = self.domain.faithful
        if sub.generators is not None:
            sub._chain = schreier_sims([g[:f] for g in sub.generators], f, sub.order,
                                       order_is_upper_bound=sub.order_is_bound,
                                       seed=self.seed, label=sub.label)
            return sub._chain
        amb = self.ambient_of(sub)
        if sub.point < f:
            sub._chain = stabilizer_chain(self.chain(amb), sub.point, seed=self.seed)
        else:
            self.stabilizer_generators(sub)
        if sub.order is not None and sub._chain.order != sub.order:
            raise OrderMismatchError(sub.label, sub.order, sub._chain.order)
        return sub._chain

    def order(self, sub: Subgroup) -> int:
        if sub.implicit and sub._chain is None:
            amb = self.ambient_of(sub)
            return self.order(amb) // self.orbit_size(amb, sub.point)
        return self.chain(sub).order

    def stabilizer_generators(self, sub: Subgroup) -> list[np.ndarray]:
        """Full-domain generators of an implicit stabilizer, from random
        Schreier generators; done once the chain reaches |ambient|/|orbit|."""
        if sub._full is not None:
            return sub._full
        amb = self.ambient_of(sub)
        amb_gens = self.full_generators(amb)
        n = self.domain.degree
        orb = orbit(amb_gens, sub.point, n)
        target = self.order(amb) // len(orb)
        reps: dict[int, np.ndarray] = {0: identity(n)}

        def rep(k: int) -> np.ndarray:
            path = []
            while k not in reps:
                path.append(k)
                k = int(orb.parent[k])
            g = reps[k]
            for j in reversed(path):
                g = compose(g, amb_gens[int(orb.via[j])])
                reps[j] = g
            return g

        f = self.domain.faithful
        found: list[np.ndarray] = []
        count, rounds = 16, 0
        while True:
            rounds += 1
            for r in random_elements(amb_gens, count, seed=self.seed + rounds, degree=n):
                y = int(r[sub.point])
                s = compose(r, inverse(rep(int(orb.pos[y]))))
                if not np.array_equal(s, identity(n)):
                    found.append(s)
            if not found:
                if target == 1:
                    found = [identity(n)]
                else:
                    count *= 2
                    continue
            ch = schreier_sims([g[:f] for g in found], f, None, seed=self.seed, label=sub.label)
            if ch.order == target:
                # reaching the orbit-stabilizer order certifies the chain
                ch = schreier_sims([g[:f] for g in found], f, target, order_is_upper_bound=True,
                                   seed=self.seed, label=sub.label)
                break
            if ch.order > target or rounds > 12:
                raise OrderMismatchError(sub.label, target, ch.order)
            count *= 2
        sub._full = found
        sub._chain = ch
        return found

    def oracle_operand(self, sub: Subgroup):
        f = self.domain.faithful
        if sub.implicit and sub.point < f:
            amb = self.ambient_of(sub)
            return PointStabilizer(self.chain(amb), sub.point, self.orbit_size(amb, sub.point))
        return self.chain(sub)

    def contains(self, sub: Subgroup, g: np.ndarray) -> bool:
        f = self.domain.faithful
        if sub.implicit:
            amb = self.ambient_of(sub)
            return int(g[sub.point]) == sub.point and self.contains(amb, g)
        return self.chain(sub).contains(g[:f])

    def engine_stats(self, *subs: Subgroup) -> dict:
        out = {}
        for name, s in zip(("G", "H", "K"), subs):
            if s._chain is not None:
                out[name] = {"base_length": len(s._chain.levels), "certified": s._chain.certified}
        return out


# -- reports ------------------------------------------------------------------------

@dataclass
class Report:
    instance: str
    strategy: str
    order_G: int
    order_H: int
    order_K: int
    intersection: int | None
    verdict: str
    details: dict = field(default_factory=dict)
    engine: dict = field(default_factory=dict)
    elapsed: float | None = None

    @property
    def ok(self) -> bool:
        return self.verdict in ("verified", "screened-consistent")

    def to_record(self, with_time: bool = False) -> dict:
        rec = {name: getattr(self, name) for name in REPORT_FIELDS}
        if with_time and self.elapsed is not None:
            rec["elapsed"] = round(self.elapsed, 3)
        return rec

    def to_json(self, with_time: bool = False) -> str:
        return json.dumps(self.to_record(with_time), separators=(", ", ": "), ensure_ascii=False)


def _identity_holds(G: int, H: int, K: int, inter: int) -> bool:
    return inter * G == H * K


# -- factorizations --------------------------------------------------------------------

def _check_inside(engine: Engine, outer: Subgroup, inner: Subgroup, name: str) -> None:
    if inner.generators is None:
        amb = engine.ambient_of(inner)
        if amb is outer:
            return
        gens = engine.full_generators(inner)
    else:
        gens = inner.generators
    for k, g in enumerate(gens):
        if not engine.contains(outer, g):
            raise StrategyPreconditionError(
                f"{name} generator {k} ({inner.label}) does not lie in {outer.label}")


def choose_strategy(engine: Engine, G: Subgroup, H: Subgroup, K: Subgroup) -> str:
    for realized in (K, H):
        if realized.point is not None:
            try:
                engine.orbit_size(G, realized.point, ORBIT_LIMIT)
                return "orbit-transitivity"
            except BudgetExceededError:
                break
    if min(engine.order(H), engine.order(K)) <= ORACLE_LIMIT:
        return "order-oracle"
    raise StrategyPreconditionError("no strategy fits: orbit too large and both factors too big")


def _orbit_check(engine: Engine, G: Subgroup, H: Subgroup, K: Subgroup) -> tuple[int, bool, dict]:
    realized, other = (K, H) if K.point is not None else (H, K)
    if realized.point is None:
        raise StrategyPreconditionError("orbit-transitivity needs a factor realized as a point stabilizer")
    if realized.generators is None and engine.ambient_of(realized) is not G:
        raise StrategyPreconditionError(f"{realized.label} is a stabilizer in another group")
    pt = realized.point
    orbit_G = engine.orbit_size(G, pt, ORBIT_LIMIT)
    order_G = engine.order(G)
    if realized.generators is not None:
        if any(int(g[pt]) != pt for g in realized.generators):
            raise StrategyPreconditionError(f"{realized.label} does not fix its point")
        if engine.order(realized) * orbit_G != order_G:
            raise StrategyPreconditionError(
                f"{realized.label} is not the full stabilizer: {engine.order(realized)} * {orbit_G} != {order_G}")
    orbit_other = engine.orbit_size(other, pt, ORBIT_LIMIT)
    order_other = engine.order(other)
    if order_other % orbit_other:
        raise AssertionError("orbit length does not divide the group order")
    inter = order_other // orbit_other
    details = {
        "point_block": _block_name(engine.domain, pt),
        "orbit_G": orbit_G,
        f"orbit_{'H' if other is H else 'K'}": orbit_other,
        "stabilizer_side": "K" if realized is K else "H",
    }
    return inter, orbit_other == orbit_G, details


def _block_name(domain: Domain, pt: int) -> str:
    off = 0
    for name, size, _ in domain.blocks:
        if pt < off + size:
            return name
        off += size
    raise ValueError(f"point {pt} outside the domain")


def _oracle_check(engine: Engine, G: Subgroup, H: Subgroup, K: Subgroup) -> tuple[int, bool, dict]:
    A, B = engine.oracle_operand(H), engine.oracle_operand(K)
    inter = tiny_intersection_order(A, B, budget=TRAVERSAL_BUDGET,
                                    ambient_base=engine.chain(G).base)
    ok = _identity_holds(engine.order(G), engine.order(H), engine.order(K), inter)
    return inter, ok, {"traversed": "H" if A.order <= B.order else "K"}


def _index_two_check(engine: Engine, G: Subgroup, H: Subgroup, K: Subgroup) -> tuple[int, bool, dict]:
    oG, oH, oK = engine.order(G), engine.order(H), engine.order(K)
    if oG != 2 * oH:
        raise StrategyPreconditionError(f"index-two needs [G:H] = 2, got {oG}/{oH}")
    gens = engine.chain(K).generators() if K.implicit else [g[:engine.domain.faithful] for g in K.generators]
    hchain = engine.chain(H)
    outside = next((k for k, g in enumerate(gens) if not hchain.contains(g)), None)
    if outside is None:
        # K lies in H
        return oK, False, {"witness": None}
    return oH * oK // oG, True, {"witness": "generator %d of K lies outside H" % outside}


_CHECKS = {
    "orbit-transitivity": _orbit_check,
    "order-oracle": _oracle_check,
    "index-two": _index_two_check,
}


def check_factorization(domain: Domain, G: Subgroup, H: Subgroup, K: Subgroup,
                        strategy: str = "auto", instance: str = "",
                        engine: Engine | None = None) -> Report:
    """Decide G = HK with the given strategy; H and K must lie in G."""
    if strategy not in STRATEGIES:
        raise StrategyPreconditionError(f"unknown strategy {strategy!r}")
    engine = engine or Engine(domain, G)
    _check_inside(engine, G, H, "H")
    _check_inside(engine, G, K, "K")
    oG, oH, oK = engine.order(G), engine.order(H), engine.order(K)
    if strategy == "auto":
        try:
            strategy = choose_strategy(engine, G, H, K)
        except StrategyPreconditionError as exc:
            return Report(instance, "auto", oG, oH, oK, None, "budget-exceeded",
                          {"reason": str(exc)}, engine.engine_stats(G, H, K))
    try:
        inter, ok, details = _CHECKS[strategy](engine, G, H, K)
    except BudgetExceededError as exc:
        return Report(instance, strategy, oG, oH, oK, None, "budget-exceeded",
                      {"reason": str(exc)}, engine.engine_stats(G, H, K))
    if ok and (oH * oK) % oG:
        raise AssertionError("verified factorization with inexact |H||K|/|G|")
    details["identity"] = f"{inter}*{oG} {'==' if _identity_holds(oG, oH, oK, inter) else '!='} {oH}*{oK}"
    return Report(instance, strategy, oG, oH, oK, inter, "verified" if ok else "refuted",
                  details, engine.engine_stats(G, H, K))


# -- chains ------------------------------------------------------------------------------

@dataclass(eq=False)
class Link:
    """ambient = inner * other, with other = K ∩ ambient."""

    ambient: Subgroup
    inner: Subgroup
    other: Subgroup
    strategy: str = "auto"


def check_chain(domain: Domain, links: Sequence[Link], instance: str = "") -> Report:
    """G = M_1 K, M_1 = M_2 (K ∩ M_1), ... give G = M_last K.

    Link i+1 must live in the inner group of link i, and its other factor
    must lie in the other factor of link i.
    """
    if not links:
        raise ValueError("empty chain")
    G = links[0].ambient
    engine = Engine(domain, G)
    link_reports = []
    for i, link in enumerate(links):
        if i and link.ambient is not links[i - 1].inner:
            raise BrokenLinkError(i, "ambient is not the previous inner factor")
        if i:
            prev = links[i - 1].other
            same_point = (link.other.point is not None and link.other.point == prev.point)
            if not same_point:
                _check_inside(engine, prev, link.other, f"link {i} other")
        rep = check_factorization(domain, link.ambient, link.inner, link.other, link.strategy,
                                  f"{instance}/link{i + 1}", engine)
        link_reports.append(rep)
        if rep.verdict != "verified":
            return Report(instance, "chain", engine.order(G), engine.order(links[-1].inner),
                          engine.order(links[0].other), None,
                          "refuted" if rep.verdict == "refuted" else rep.verdict,
                          {"broken_link": i + 1, "links": [r.to_record() for r in link_reports]},
                          engine.engine_stats(G))
    oG = engine.order(G)
    oH = engine.order(links[-1].inner)
    oK = engine.order(links[0].other)
    if (oH * oK) % oG:
        raise AssertionError("composed intersection is not an integer")
    details = {
        "links": [r.to_record() for r in link_reports],
        "claim": f"{G.label} = ({links[-1].inner.label})({links[0].other.label})",
    }
    return Report(instance, "chain", oG, oH, oK, oH * oK // oG, "verified", details,
                  engine.engine_stats(G))


# -- intersection predictions ------------------------------------------------------------------

def check_intersection_prediction(domain: Domain, top: Subgroup, M: Subgroup, B: Subgroup,
                                  predicted: Subgroup, instance: str = "") -> Report:
    """Predicted generators must lie in M and in B, and the predicted order
    must equal |M ∩ B| computed by the oracle (or a partial verdict)."""
    engine = Engine(domain, top)
    for side in (M, B):
        _check_inside(engine, top, side, side.label)
    inside = {}
    for name, side in (("M", M), ("B", B)):
        inside[name] = all(engine.contains(side, g) for g in predicted.generators)
    oP, oM, oB = engine.order(predicted), engine.order(M), engine.order(B)
    details = {"predicted_order": oP, "in_M": inside["M"], "in_B": inside["B"]}
    try:
        inter = tiny_intersection_order(engine.oracle_operand(M), engine.oracle_operand(B),
                                        ambient_base=engine.chain(top).base)
    except BudgetExceededError:
        verdict = "budget-exceeded" if all(inside.values()) else "refuted"
        details["partial"] = "containment only; |M ∩ B| >= predicted order"
        return Report(instance, "prediction", engine.order(top), oM, oB, None, verdict, details,
                      engine.engine_stats(top, M, B))
    ok = all(inside.values()) and inter == oP
    return Report(instance, "prediction", engine.order(top), oM, oB, inter,
                  "verified" if ok else "refuted", details, engine.engine_stats(top, M, B))


# -- property checks -----------------------------------------------------------------------------

def strategy_agreement(domain: Domain, G: Subgroup, H: Subgroup, K: Subgroup) -> dict:
    """Run every applicable strategy; verdicts and intersections must agree."""
    results = {}
    for s in ("orbit-transitivity", "order-oracle", "index-two"):
        try:
            rep = check_factorization(domain, G, H, K, s)
        except StrategyPreconditionError:
            continue
        if rep.verdict != "budget-exceeded":
            results[s] = (rep.verdict, rep.intersection)
    return results


def conjugation_invariance(domain: Domain, G: Subgroup, H: Subgroup, K: Subgroup,
                           strategy: str = "auto", seed: int = DEFAULT_SEED) -> tuple[Report, Report]:
    """The verdict for (H, K) and for (H^x, K^y) with seeded random x, y in G."""
    base = check_factorization(domain, G, H, K, strategy)
    x, y = random_elements(G.generators, 2, seed=seed, degree=domain.degree)
    Hx = H.conjugated(x)
    Ky = K.conjugated(y)
    moved = check_factorization(domain, G, Hx, Ky, base.strategy)
    return base, moved


def symmetry(domain: Domain, G: Subgroup, H: Subgroup, K: Subgroup,
             strategy: str = "auto") -> tuple[Report, Report]:
    return (check_factorization(domain, G, H, K, strategy),
            check_factorization(domain, G, K, H, strategy))


def overgroup_identity(domain: Domain, G: Subgroup, H: Subgroup, K: Subgroup, M: Subgroup,
                       intersection: int) -> tuple[int, int]:
    """Both sides of |M| |H ∩ K| = |H| |K ∩ M| for H <= M <= G.

    |K ∩ M| comes from an orbit when K or M is a point stabilizer in G,
    otherwise from the oracle.
    """
    engine = Engine(domain, G)
    _check_inside(engine, M, H, "H")
    oM, oH = engine.order(M), engine.order(H)
    if K.point is not None and (K.ambient is None or K.ambient is G):
        km = oM // engine.orbit_size(M, K.point)
    elif M.implicit and engine.ambient_of(M) is G:
        # K ∩ M is the stabilizer of M's point in K
        km = engine.order(K) // engine.orbit_size(K, M.point)
    else:
        km = tiny_intersection_order(engine.oracle_operand(K), engine.oracle_operand(M),
                                     ambient_base=engine.chain(G).base)
    return oM * intersection, oH * km
