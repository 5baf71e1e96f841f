"""Permutation groups: orbits, Schreier-Sims base and strong generating sets,
membership, stabilizers, index-2 kernels and a brute-force intersection oracle.

Permutations are int32 numpy arrays p with p[i] the image of point i.  They
compose left to right: (a * b)[i] = b[a[i]], matching row vectors acted on
from the right.

The construction is randomized Schreier-Sims (product replacement, fixed
seed) followed, when the cost is affordable, by the deterministic Schreier
generator test.  When a target order is known to be an upper bound for the
group (the generators preserve a form whose isometry group has that order, or
are images of generators of a group of that order), reaching it already
proves completeness, since the orbit product of a partial chain never
exceeds the true order.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import (
    BudgetExceededError,
    NotAHomomorphismError,
    OrderMismatchError,
    PointNotInUniverseError,
)

DTYPE = np.int32
DEFAULT_SEED = 0x5EED
MEMORY_BUDGET_ENV = "FACTORCHECK_MEMORY_BUDGET"
DEGREE_BUDGET = 1 << 24
TRAVERSAL_BUDGET = 10**7


def memory_budget() -> int:
    """Bytes available to one engine computation (default 2 GiB)."""
    raw = os.environ.get(MEMORY_BUDGET_ENV)
    if raw:
        mult = {"k": 1 << 10, "m": 1 << 20, "g": 1 << 30}
        raw = raw.strip().lower()
        if raw[-1] in mult:
            return int(float(raw[:-1]) * mult[raw[-1]])
        return int(raw)
    return 2 << 30


# -- elementary permutation helpers ------------------------------------------

def identity(n: int) -> np.ndarray:
    return np.arange(n, dtype=DTYPE)


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a then b."""
    return b[a]


def inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(len(a), dtype=a.dtype)
    return inv


def is_identity(a: np.ndarray) -> bool:
    return bool(np.array_equal(a, np.arange(len(a), dtype=a.dtype)))


def power(a: np.ndarray, k: int) -> np.ndarray:
    if k < 0:
        a, k = inverse(a), -k
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = base[result]
        base = base[base]
        k >>= 1
    return result


def cycle_lengths(a: np.ndarray) -> list[int]:
    seen = np.zeros(len(a), dtype=bool)
    out = []
    for i in range(len(a)):
        if not seen[i]:
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                n += 1
            out.append(n)
    return out


def perm_order(a: np.ndarray) -> int:
    from math import lcm

    return lcm(*cycle_lengths(a)) if len(a) else 1


def sign(a: np.ndarray) -> int:
    """+1 for even permutations, -1 for odd ones."""
    return -1 if sum(c - 1 for c in cycle_lengths(a)) % 2 else 1


def conjugate(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """x^-1 a x."""
    return x[a[inverse(x)]]


_CYCLE = re.compile(r"\(([^()]*)\)")


def perm_from_cycles(text: str, degree: int, one_based: bool = True) -> np.ndarray:
    p = identity(degree)
    off = 1 if one_based else 0
    for body in _CYCLE.findall(text):
        pts = [int(t) - off for t in body.replace(",", " ").split()]
        for i, x in enumerate(pts):
            p[x] = pts[(i + 1) % len(pts)]
    if len(np.unique(p)) != degree:
        raise ValueError(f"not a permutation: {text!r}")
    return p


def cycles_text(a: np.ndarray, one_based: bool = True) -> str:
    off = 1 if one_based else 0
    seen = np.zeros(len(a), dtype=bool)
    parts = []
    for i in range(len(a)):
        if seen[i] or a[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + off)
            j = int(a[j])
        parts.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


# -- orbits ----------------------------------------------------------------------

@dataclass
class Orbit:
    points: np.ndarray          # BFS order, points[0] is the start
    pos: np.ndarray             # pos[x] = index of x in points, or -1
    parent: np.ndarray          # index of the BFS parent (-1 for the start)
    via: np.ndarray             # generator index mapping parent to point

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, x: int) -> bool:
        return 0 <= x < len(self.pos) and self.pos[x] >= 0


def _grow(points: list[np.ndarray], pos: np.ndarray, parent: list[np.ndarray],
          via: list[np.ndarray], frontier: np.ndarray, frontier_idx: np.ndarray,
          gens: Sequence[np.ndarray], gen_ids: Sequence[int], limit: int | None,
          count: int) -> int:
    """Layered BFS: images are taken point by point, generator by generator."""
    while len(frontier):
        imgs = np.stack([g[frontier] for g in gens], axis=1).ravel()
        src = np.repeat(frontier_idx, len(gens))
        gid = np.tile(np.asarray(gen_ids, dtype=DTYPE), len(frontier))
        fresh = pos[imgs] < 0
        if not fresh.any():
            break
        imgs, src, gid = imgs[fresh], src[fresh], gid[fresh]
        uniq, first = np.unique(imgs, return_index=True)
        order = np.sort(first)
        new = imgs[order]
        if limit is not None and count + len(new) > limit:
            raise BudgetExceededError(f"orbit exceeds {limit} points", partial=count + len(new))
        new_idx = np.arange(count, count + len(new), dtype=np.int64)
        pos[new] = new_idx
        points.append(new)
        parent.append(src[order])
        via.append(gid[order])
        count += len(new)
        frontier, frontier_idx = new, new_idx
    return count


def orbit(gens: Sequence[np.ndarray], start: int, degree: int | None = None,
          limit: int | None = None) -> Orbit:
    """Orbit of ``start`` with a Schreier vector, in deterministic BFS order."""
    if degree is None:
        degree = len(gens[0])
    if not 0 <= start < degree:
        raise PointNotInUniverseError(f"point {start} outside 0..{degree - 1}")
    pos = np.full(degree, -1, dtype=np.int64)
    pos[start] = 0
    points = [np.array([start], dtype=DTYPE)]
    parent = [np.array([-1], dtype=np.int64)]
    via = [np.array([-1], dtype=DTYPE)]
    gens = [g for g in gens]
    if gens:
        _grow(points, pos, parent, via, points[0], np.array([0]), gens,
              list(range(len(gens))), limit, 1)
    return Orbit(np.concatenate(points), pos, np.concatenate(parent), np.concatenate(via))


def orbit_points(gens: Sequence[np.ndarray], start: int, degree: int | None = None,
                 limit: int | None = None) -> np.ndarray:
    return orbit(gens, start, degree, limit).points


def orbits(gens: Sequence[np.ndarray], degree: int) -> list[np.ndarray]:
    seen = np.zeros(degree, dtype=bool)
    out = []
    for x in range(degree):
        if not seen[x]:
            o = orbit_points(gens, x, degree)
            seen[o] = True
            out.append(o)
    return out


def is_transitive_on(gens: Sequence[np.ndarray], point_set: np.ndarray) -> bool:
    """True iff the orbit of the first point of ``point_set`` is the whole set."""
    point_set = np.asarray(point_set)
    if len(point_set) == 0:
        return True
    degree = len(gens[0]) if gens else int(point_set.max()) + 1
    orb = orbit_points(gens, int(point_set[0]), degree)
    return len(orb) == len(point_set) and bool(np.all(np.isin(point_set, orb)))


# -- base and strong generating set ----------------------------------------------

class Level:
    """One level of the stabilizer chain: orbit of the base point under the
    strong generators fixing the earlier base points."""

    def __init__(self, chain: BsgsChain, base_point: int):
        self.chain = chain
        self.base_point = base_point
        self.gen_ids: list[int] = []
        n = chain.degree
        self.pos = np.full(n, -1, dtype=np.int64)
        self.pos[base_point] = 0
        self._points = [np.array([base_point], dtype=DTYPE)]
        self._parent = [np.array([-1], dtype=np.int64)]
        self._via = [np.array([-1], dtype=DTYPE)]
        self.size = 1
        self.explicit = True
        self.uinv: np.ndarray | None = np.arange(n, dtype=DTYPE)[None, :].copy()
        self._flat = None

    @property
    def points(self) -> np.ndarray:
        if self._flat is None or len(self._flat[0]) != self.size:
            self._flat = (np.concatenate(self._points), np.concatenate(self._parent),
                          np.concatenate(self._via))
        return self._flat[0]

    def _vectors(self):
        self.points
        return self._flat

    def add_generator(self, gid: int) -> None:
        chain = self.chain
        self.gen_ids.append(gid)
        pts, par, via = self._vectors()
        old = self.size
        # the new generator applied to the existing orbit, then full BFS
        g = chain.strong[gid]
        imgs = g[pts]
        fresh = self.pos[imgs] < 0
        points, parent, vias = list(self._points), list(self._parent), list(self._via)
        count = self.size
        if fresh.any():
            imgs_f = imgs[fresh]
            src = np.flatnonzero(fresh)
            uniq, first = np.unique(imgs_f, return_index=True)
            order = np.sort(first)
            new = imgs_f[order]
            new_idx = np.arange(count, count + len(new), dtype=np.int64)
            self.pos[new] = new_idx
            points.append(new)
            parent.append(src[order].astype(np.int64))
            vias.append(np.full(len(new), len(self.gen_ids) - 1, dtype=DTYPE))
            count += len(new)
            gens = [chain.strong[i] for i in self.gen_ids]
            count = _grow(points, self.pos, parent, vias, new, new_idx, gens,
                          list(range(len(gens))), None, count)
        self._points, self._parent, self._via = points, parent, vias
        self.size = count
        self._flat = None
        if count > old:
            self._extend_transversal(old)

    def _extend_transversal(self, old: int) -> None:
        chain = self.chain
        if self.explicit and not chain._reserve(self, (self.size - old) * chain.degree * 4):
            self.explicit = False
            chain._release(self)
            self.uinv = None
        if not self.explicit:
            return
        pts, par, via = self._vectors()
        new_u = np.empty((self.size, chain.degree), dtype=DTYPE)
        new_u[:old] = self.uinv
        ginv = [chain.strong_inv[i] for i in self.gen_ids]
        # parents always precede children in BFS order
        k = old
        while k < self.size:
            # process in runs whose parents are already available
            stop = k
            while stop < self.size and par[stop] < k:
                stop += 1
            stop = max(stop, k + 1)
            idx = np.arange(k, stop)
            gi = via[idx]
            for g in np.unique(gi):
                sel = idx[gi == g]
                # u_y^-1 = g^-1 * u_parent^-1
                new_u[sel] = np.take_along_axis(new_u[par[sel]], np.broadcast_to(ginv[g], (len(sel), chain.degree)), axis=1)
            k = stop
        self.uinv = new_u

    def transversal_inverse(self, k: int) -> np.ndarray:
        """u^-1 where u maps the base point to points[k]."""
        if self.explicit:
            return self.uinv[k]
        pts, par, via = self._vectors()
        chain = self.chain
        word = []
        while k > 0:
            word.append(int(via[k]))
            k = int(par[k])
        # u = g_1 g_2 ... g_r along the path from the root, so u^-1 = g_r^-1 ... g_1^-1
        res = identity(chain.degree)
        for g in word:
            res = chain.strong_inv[self.gen_ids[g]][res]
        return res

    def transversal(self, k: int) -> np.ndarray:
        if self.explicit:
            return inverse(self.uinv[k])
        pts, par, via = self._vectors()
        chain = self.chain
        word = []
        while k > 0:
            word.append(int(via[k]))
            k = int(par[k])
        res = identity(chain.degree)
        for g in reversed(word):
            res = chain.strong[self.gen_ids[g]][res]
        return res


class BsgsChain:
    """Base and strong generating set for a permutation group."""

    def __init__(self, degree: int, memory: int | None = None):
        self.degree = degree
        self.strong: list[np.ndarray] = []
        self.strong_inv: list[np.ndarray] = []
        self.levels: list[Level] = []
        self.certified = "none"
        self.stats: dict[str, int | str] = {}
        self._memory = memory_budget() // 4 if memory is None else memory
        self._used: dict[int, int] = {}

    # -- bookkeeping for explicit transversals
    def _reserve(self, level: Level, nbytes: int) -> bool:
        total = sum(self._used.values())
        if total + nbytes > self._memory:
            return False
        self._used[id(level)] = self._used.get(id(level), 0) + nbytes
        return True

    def _release(self, level: Level) -> None:
        self._used.pop(id(level), None)

    @property
    def base(self) -> list[int]:
        return [lv.base_point for lv in self.levels]

    @property
    def order(self) -> int:
        out = 1
        for lv in self.levels:
            out *= lv.size
        return out

    @property
    def orbit_sizes(self) -> list[int]:
        return [lv.size for lv in self.levels]

    def generators(self) -> list[np.ndarray]:
        """Strong generators (they generate the whole group)."""
        return list(self.strong)

    # -- sifting
    def sift(self, h: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        """Returns the residue and the level where sifting stopped
        (len(levels) when every base point was matched)."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            k = lv.pos[h[lv.base_point]]
            if k < 0:
                return h, i
            h = lv.transversal_inverse(int(k))[h]
        return h, len(self.levels)

    def contains(self, g: np.ndarray) -> bool:
        if len(g) != self.degree:
            return False
        res, lvl = self.sift(np.asarray(g, dtype=DTYPE))
        return lvl == len(self.levels) and is_identity(res)

    __contains__ = contains

    def contains_batch(self, perms: np.ndarray, ambient_base: Sequence[int] | None = None) -> np.ndarray:
        """Vectorized membership for the rows of ``perms``.

        When every row lies in a group with base ``ambient_base`` (containing
        this one), only the images of that base and of our own base points are
        tracked: a sifting residue inside that group which fixes its base is
        the identity.
        """
        perms = np.asarray(perms, dtype=DTYPE)
        n = self.degree
        if ambient_base is None:
            cols = np.arange(n)
        else:
            cols = np.unique(np.concatenate([np.asarray(ambient_base, dtype=np.int64),
                                             np.asarray(self.base, dtype=np.int64)]))
        where = {int(c): j for j, c in enumerate(cols)}
        ok = np.ones(len(perms), dtype=bool)
        cur = perms if ambient_base is None else perms[:, cols]
        alive = np.arange(len(perms))
        for lv in self.levels:
            if not len(alive):
                break
            k = lv.pos[cur[:, where[lv.base_point]]]
            good = k >= 0
            ok[alive[~good]] = False
            cur, alive, k = cur[good], alive[good], k[good]
            if lv.explicit:
                flat = lv.uinv.reshape(-1)
                cur = flat[k[:, None] * n + cur]
            else:
                cur = np.stack([lv.transversal_inverse(int(kk))[row] for kk, row in zip(k, cur)]) if len(cur) else cur
        if len(alive):
            ident = cols.astype(DTYPE)
            ok[alive[~np.all(cur == ident[None, :], axis=1)]] = False
        return ok

    # -- growth
    def _add_strong(self, h: np.ndarray, level: int) -> None:
        gid = len(self.strong)
        self.strong.append(h)
        self.strong_inv.append(inverse(h))
        if level == len(self.levels):
            moved = np.flatnonzero(h != np.arange(self.degree))
            base = set(self.base)
            bp = next(int(x) for x in moved if int(x) not in base)
            self.levels.append(Level(self, bp))
        for i in range(level + 1):
            self.levels[i].add_generator(gid)

    def _sift_and_add(self, h: np.ndarray) -> bool:
        res, lvl = self.sift(h)
        if lvl == len(self.levels) and is_identity(res):
            return False
        self._add_strong(res, lvl)
        return True

    # -- enumeration of elements
    def transversal_perms(self, i: int) -> np.ndarray:
        lv = self.levels[i]
        if lv.explicit:
            return np.stack([inverse(u) for u in lv.uinv]) if lv.size > 1 else lv.uinv.copy()
        return np.stack([lv.transversal(k) for k in range(lv.size)])

    def point_images(self, x: int) -> np.ndarray:
        """x^g for every element g (each element exactly once)."""
        if self.order > TRAVERSAL_BUDGET:
            raise BudgetExceededError(f"group of order {self.order} exceeds the traversal budget")
        X = np.array([x], dtype=DTYPE)
        for i in range(len(self.levels) - 1, -1, -1):
            lv = self.levels[i]
            if lv.explicit:
                # u[X] for each u, where u = inverse(uinv[k])
                rows = []
                for k in range(lv.size):
                    u = inverse(lv.uinv[k])
                    rows.append(u[X])
                X = np.concatenate(rows)
            else:
                X = np.concatenate([lv.transversal(k)[X] for k in range(lv.size)])
        return X

    def element_batches(self, batch: int | None = None) -> Iterator[np.ndarray]:
        """All elements as rows of permutation arrays, in chunks."""
        if self.order > TRAVERSAL_BUDGET:
            raise BudgetExceededError(f"group of order {self.order} exceeds the traversal budget")
        n = self.degree
        if batch is None:
            batch = max(1, (1 << 22) // max(1, n))
        trans = [self.transversal_perms(i) for i in range(len(self.levels))]

        def rec(i: int, P: np.ndarray):
            # P holds products u_{L-1} ... u_{i+1}; extend by the level-i transversal
            if i < 0:
                yield P
                return
            U = trans[i]
            if len(P) * len(U) <= batch:
                out = U[np.arange(len(U))[:, None, None], P[None, :, :]].reshape(-1, n)
                yield from rec(i - 1, out)
                return
            for u in U:
                yield from rec(i - 1, u[P])

        ident = identity(n)[None, :]
        yield from rec(len(self.levels) - 1, ident)

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        """Uniform random element via random transversal choices."""
        g = identity(self.degree)
        for i in range(len(self.levels) - 1, -1, -1):
            lv = self.levels[i]
            k = int(rng.integers(lv.size))
            u = inverse(lv.uinv[k]) if lv.explicit else lv.transversal(k)
            g = u[g]
        return g

    def describe(self) -> dict:
        return {
            "degree": self.degree,
            "base_length": len(self.levels),
            "orbit_sizes": self.orbit_sizes,
            "strong_generators": len(self.strong),
            "certified": self.certified,
        }


class _ProductReplacement:
    def __init__(self, gens: Sequence[np.ndarray], degree: int, rng: np.random.Generator):
        self.rng = rng
        state = [g.copy() for g in gens] or [identity(degree)]
        while len(state) < 10:
            state.append(state[len(state) % len(gens)].copy() if gens else identity(degree))
        self.state = state
        self.acc = identity(degree)
        for _ in range(50):
            self.next()

    def next(self) -> np.ndarray:
        s = self.state
        i, j = self.rng.choice(len(s), size=2, replace=False)
        if self.rng.integers(2):
            s[i] = s[j][s[i]]          # s_i * s_j
        else:
            s[i] = s[i][s[j]]          # s_j * s_i
        self.acc = s[i][self.acc]
        return self.acc


def _verify_chain(chain: BsgsChain, budget_ops: float) -> bool:
    """Deterministic Schreier generator test; adds any missing strong generator.

    Returns False when the estimated work exceeded ``budget_ops`` (the chain is
    then left as it was built).
    """
    n = chain.degree
    work = 0.0
    for lv in chain.levels:
        work += lv.size * len(lv.gen_ids) * n * max(1, len(chain.levels))
    if work > budget_ops:
        return False
    i = len(chain.levels) - 1
    while i >= 0:
        lv = chain.levels[i]
        restart = False
        for gid in list(lv.gen_ids):
            s = chain.strong[gid]
            pts = lv.points
            # Schreier generators u_y s u_{y^s}^-1 for every orbit point y
            step = max(1, (1 << 21) // n)
            for a in range(0, lv.size, step):
                ks = np.arange(a, min(lv.size, a + step))
                if lv.explicit:
                    U = np.stack([inverse(lv.uinv[k]) for k in ks])
                else:
                    U = np.stack([lv.transversal(int(k)) for k in ks])
                US = s[U]
                targets = lv.pos[s[pts[ks]]]
                if lv.explicit:
                    SG = np.take_along_axis(lv.uinv[targets], US, axis=1)
                else:
                    SG = np.stack([lv.transversal_inverse(int(t))[row] for t, row in zip(targets, US)])
                member = _batch_sift_from(chain, SG, i + 1)
                if not member.all():
                    bad = SG[int(np.flatnonzero(~member)[0])]
                    res, lvl = chain.sift(bad, i + 1)
                    chain._add_strong(res, lvl)
                    restart = True
                    break
            if restart:
                break
        if restart:
            i = len(chain.levels) - 1
            continue
        i -= 1
    return True


def _batch_sift_from(chain: BsgsChain, perms: np.ndarray, start: int) -> np.ndarray:
    ok = np.ones(len(perms), dtype=bool)
    cur = perms
    alive = np.arange(len(perms))
    for lv in chain.levels[start:]:
        if not len(alive):
            break
        k = lv.pos[cur[:, lv.base_point]]
        good = k >= 0
        ok[alive[~good]] = False
        cur, alive, k = cur[good], alive[good], k[good]
        if lv.explicit:
            cur = np.take_along_axis(lv.uinv[k], cur, axis=1)
        else:
            cur = np.stack([lv.transversal_inverse(int(kk))[row] for kk, row in zip(k, cur)]) if len(cur) else cur
    if len(alive):
        ident = np.arange(chain.degree, dtype=DTYPE)
        ok[alive[~np.all(cur == ident[None, :], axis=1)]] = False
    return ok


def schreier_sims(
    gens: Sequence[np.ndarray],
    degree: int | None = None,
    known_order: int | None = None,
    *,
    base_prefix: Sequence[int] = (),
    order_is_upper_bound: bool = False,
    verify: bool | str = "auto",
    seed: int = DEFAULT_SEED,
    label: str = "group",
    stable_rounds: int = 40,
    verify_budget: float = 4e9,
) -> BsgsChain:
    """Build a BSGS.

    With ``known_order`` the construction stops once the chain reaches that
    order and raises OrderMismatchError if the chain ever exceeds it, or if a
    complete chain turns out smaller.
    """
    gens = [np.asarray(g, dtype=DTYPE) for g in gens]
    if degree is None:
        if not gens:
            raise ValueError("degree needed for an empty generator list")
        degree = len(gens[0])
    if degree > DEGREE_BUDGET:
        raise BudgetExceededError(f"degree {degree} exceeds {DEGREE_BUDGET}")
    chain = BsgsChain(degree)
    for b in base_prefix:
        chain.levels.append(Level(chain, int(b)))
    gens = [g for g in gens if not is_identity(g)]
    for g in gens:
        chain._sift_and_add(g)
    rng = np.random.default_rng(seed)
    sifts = 0
    if gens:
        pr = _ProductReplacement(gens, degree, rng)
        quiet = 0
        while True:
            if known_order is not None:
                if chain.order > known_order:
                    raise OrderMismatchError(label, known_order, chain.order)
                if chain.order == known_order:
                    if order_is_upper_bound:
                        break
                    quiet += 1
                    if quiet >= stable_rounds // 2:
                        break
            h = pr.next()
            sifts += 1
            if chain._sift_and_add(h):
                quiet = 0
            elif known_order is None or chain.order == known_order:
                quiet += 1
                if known_order is None and quiet >= stable_rounds:
                    break
            if sifts > 200000:
                raise BudgetExceededError(f"{label}: random Schreier-Sims did not settle")
    if known_order is not None and order_is_upper_bound and chain.order == known_order:
        chain.certified = "order-bound"
    elif verify is True or (verify == "auto" and _verify_chain_cost(chain) <= verify_budget):
        _verify_chain(chain, float("inf"))
        chain.certified = "schreier-test"
    else:
        chain.certified = "randomized"
    # drop empty prefix levels that never grew (trivial base points are harmless but noisy)
    if known_order is not None and chain.order != known_order:
        raise OrderMismatchError(label, known_order, chain.order)
    chain.stats = {"random_sifts": sifts, "strong_generators": len(chain.strong)}
    return chain


def _verify_chain_cost(chain: BsgsChain) -> float:
    n = chain.degree
    return float(sum(lv.size * len(lv.gen_ids) * n * max(1, len(chain.levels) - i)
                     for i, lv in enumerate(chain.levels)))


def membership(chain: BsgsChain, g: np.ndarray) -> bool:
    return chain.contains(g)


def sifting_residue(chain: BsgsChain, g: np.ndarray) -> tuple[np.ndarray, int]:
    return chain.sift(np.asarray(g, dtype=DTYPE))


def point_stabilizer(chain: BsgsChain, point: int, seed: int = DEFAULT_SEED) -> list[np.ndarray]:
    """Generators of the stabilizer of ``point``, by rebuilding the chain with
    ``point`` as first base point (the known order makes this exact)."""
    if not 0 <= point < chain.degree:
        raise PointNotInUniverseError(f"point {point} outside the domain")
    rebuilt = rebase(chain, [point], seed=seed)
    if rebuilt.levels and rebuilt.levels[0].base_point == point:
        return [rebuilt.strong[i] for i in range(len(rebuilt.strong))
                if rebuilt.strong[i][point] == point] or [identity(chain.degree)]
    return rebuilt.generators()


def stabilizer_chain(chain: BsgsChain, point: int, seed: int = DEFAULT_SEED) -> BsgsChain:
    """BSGS of the stabilizer of ``point``."""
    rebuilt = rebase(chain, [point], seed=seed)
    sub = BsgsChain(chain.degree)
    gens = [g for g in rebuilt.strong if g[point] == point]
    expected = rebuilt.order // rebuilt.levels[0].size
    return schreier_sims(gens, chain.degree, expected, order_is_upper_bound=True,
                         seed=seed, label="stabilizer") if gens else sub


def rebase(chain: BsgsChain, prefix: Sequence[int], seed: int = DEFAULT_SEED) -> BsgsChain:
    """Same group, new chain whose base starts with ``prefix``."""
    return schreier_sims(chain.generators(), chain.degree, chain.order,
                         base_prefix=prefix, order_is_upper_bound=True, seed=seed,
                         label="rebase")


def index2_kernel(gens: Sequence, parity: Callable[[object], int],
                  multiply: Callable[[object, object], object] | None = None,
                  invert: Callable[[object], object] | None = None,
                  checks: int = 32, seed: int = DEFAULT_SEED) -> list:
    """Generators of the kernel of a homomorphism to Z/2.

    Works for any element type given ``multiply`` (left to right) and
    ``invert``; defaults handle permutation arrays.
    """
    if multiply is None:
        multiply = compose
    if invert is None:
        invert = inverse
    gens = list(gens)
    par = [parity(g) % 2 for g in gens]
    rng = np.random.default_rng(seed)
    for _ in range(checks if len(gens) > 1 else 0):
        i, j = rng.integers(len(gens), size=2)
        if parity(multiply(gens[i], gens[j])) % 2 != (par[i] + par[j]) % 2:
            raise NotAHomomorphismError("parity is not multiplicative on generators")
    odd = [g for g, p in zip(gens, par) if p]
    if not odd:
        return gens
    h = odd[0]
    h_inv = invert(h)
    out = []
    for g, p in zip(gens, par):
        if p == 0:
            out.append(g)
            out.append(multiply(multiply(h, g), h_inv))
        else:
            out.append(multiply(g, h_inv))
            out.append(multiply(h, g))
    return out


class PointStabilizer:
    """The stabilizer of a point inside a group with a known chain, kept
    implicit: membership is 'fixes the point and lies in the ambient group'."""

    def __init__(self, ambient: BsgsChain, point: int, orbit_size: int | None = None):
        self.ambient = ambient
        self.point = point
        if orbit_size is None:
            orbit_size = len(orbit_points(ambient.generators(), point, ambient.degree))
        self.orbit_size = orbit_size
        self._chain: BsgsChain | None = None

    @property
    def degree(self) -> int:
        return self.ambient.degree

    @property
    def order(self) -> int:
        return self.ambient.order // self.orbit_size

    def contains(self, g: np.ndarray) -> bool:
        return int(g[self.point]) == self.point and self.ambient.contains(g)

    __contains__ = contains

    def contains_batch(self, perms: np.ndarray, ambient_base: Sequence[int] | None = None) -> np.ndarray:
        fixed = perms[:, self.point] == self.point
        out = np.zeros(len(perms), dtype=bool)
        if fixed.any():
            out[fixed] = self.ambient.contains_batch(perms[fixed], ambient_base)
        return out

    @property
    def chain(self) -> BsgsChain:
        if self._chain is None:
            self._chain = stabilizer_chain(self.ambient, self.point)
        return self._chain


def tiny_intersection_order(A, B, traverse: str = "smaller",
                            budget: int = TRAVERSAL_BUDGET,
                            ambient_base: Sequence[int] | None = None) -> int:
    """|A ∩ B| by listing the elements of one group and testing membership in
    the other.  A and B are BsgsChain or PointStabilizer objects.

    ``ambient_base`` is a base of some group containing both; it lets the
    membership test skip most of each permutation.
    """
    if traverse == "smaller":
        first, other = (A, B) if A.order <= B.order else (B, A)
    elif traverse == "first":
        first, other = A, B
    else:
        first, other = B, A
    if first.order > budget:
        raise BudgetExceededError(f"traversal of {first.order} elements exceeds {budget}",
                                  partial=None)
    chain = first.chain if isinstance(first, PointStabilizer) else first
    if isinstance(other, PointStabilizer) and all(
            other.ambient.contains(g) for g in chain.generators()):
        # every listed element lies in the ambient group, so membership in the
        # stabilizer is just fixing the point
        imgs = chain.point_images(other.point)
        return int(np.count_nonzero(imgs == other.point))
    count = 0
    for blk in chain.element_batches():
        count += int(np.count_nonzero(other.contains_batch(blk, ambient_base)))
    return count


def random_elements(gens: Sequence[np.ndarray], count: int, seed: int = DEFAULT_SEED,
                    degree: int | None = None) -> list[np.ndarray]:
    gens = [np.asarray(g, dtype=DTYPE) for g in gens]
    if degree is None:
        degree = len(gens[0])
    pr = _ProductReplacement(gens, degree, np.random.default_rng(seed))
    return [pr.next().copy() for _ in range(count)]
