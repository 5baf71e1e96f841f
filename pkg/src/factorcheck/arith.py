"""Exact group orders, primitive prime divisors and divisibility screening."""

from __future__ import annotations

import ast
import operator
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, gcd, prod
from typing import Callable, Mapping

from sympy import cyclotomic_poly, factorint

from .errors import ConstraintViolationError


# -- closed-form orders -------------------------------------------------------

def _half(n: int, name: str) -> int:
    if n % 2:
        raise ValueError(f"{name} needs even dimension, got {n}")
    return n // 2


def sp_order(n: int, q: int) -> int:
    m = _half(n, "Sp")
    return q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1))


def psp_order(n: int, q: int) -> int:
    return sp_order(n, q) // gcd(2, q - 1)


def go_order(n: int, q: int, sign: int) -> int:
    """Full isometry group of a nondegenerate quadratic form in dimension n = 2m."""
    m = _half(n, "GO")
    return 2 * q ** (m * (m - 1)) * (q ** m - sign) * prod(q ** (2 * i) - 1 for i in range(1, m))


def omega_order(n: int, q: int, sign: int) -> int:
    return go_order(n, q, sign) // (2 if q % 2 == 0 else 4)


def pomega_order(n: int, q: int, sign: int) -> int:
    m = n // 2
    center = 1 if q % 2 == 0 else gcd(4, q ** m - sign) // 2
    return omega_order(n, q, sign) // center


def omega_odd_order(n: int, q: int) -> int:
    """Omega in odd dimension n = 2m+1."""
    if n % 2 == 0:
        raise ValueError("odd dimension expected")
    m = n // 2
    full = q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1))
    return full if q % 2 == 0 else full // 2


def sl_order(n: int, q: int) -> int:
    return q ** (n * (n - 1) // 2) * prod(q ** i - 1 for i in range(2, n + 1))


def psl_order(n: int, q: int) -> int:
    return sl_order(n, q) // gcd(n, q - 1)


def su_order(n: int, q: int) -> int:
    return q ** (n * (n - 1) // 2) * prod(q ** i - (-1) ** i for i in range(2, n + 1))


def g2_order(q: int) -> int:
    return q ** 6 * (q ** 6 - 1) * (q ** 2 - 1)


def sz_order(q: int) -> int:
    return q * q * (q * q + 1) * (q - 1)


FAMILIES: dict[str, Callable[..., int]] = {
    "Sp": sp_order,
    "PSp": psp_order,
    "GO_plus": lambda n, q: go_order(n, q, 1),
    "GO_minus": lambda n, q: go_order(n, q, -1),
    "Omega_plus": lambda n, q: omega_order(n, q, 1),
    "Omega_minus": lambda n, q: omega_order(n, q, -1),
    "POmega_plus": lambda n, q: pomega_order(n, q, 1),
    "POmega_minus": lambda n, q: pomega_order(n, q, -1),
    "Omega_odd": omega_odd_order,
    "SL": sl_order,
    "PSL": psl_order,
    "SU": su_order,
    "G2": g2_order,
    "Sz": sz_order,
    "Alt": lambda n: factorial(n) // 2,
    "Sym": factorial,
    "Mathieu12": lambda: 95040,
    "Mathieu24": lambda: 244823040,
    "dihedral": lambda n: n,
    "cyclic": lambda n: n,
}


@dataclass(frozen=True)
class GroupOrderSpec:
    """A product of family orders times a decoration multiplier."""

    family: str
    params: tuple[int, ...] = ()
    multiplier: int = 1
    factors: tuple[GroupOrderSpec, ...] = field(default=())

    def __mul__(self, other: GroupOrderSpec | int) -> GroupOrderSpec:
        if isinstance(other, int):
            return GroupOrderSpec(self.family, self.params, self.multiplier * other, self.factors)
        return GroupOrderSpec("product", (), 1, (self, other))

    __rmul__ = __mul__


def classical_order(spec: GroupOrderSpec) -> int:
    if spec.family == "product":
        base = prod(classical_order(f) for f in spec.factors)
    else:
        if spec.family not in FAMILIES:
            raise ValueError(f"unsupported family {spec.family!r}")
        base = FAMILIES[spec.family](*spec.params)
    return base * spec.multiplier


# -- order expressions ---------------------------------------------------------

_BINOPS = {
    ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv, ast.Pow: operator.pow, ast.Mod: operator.mod,
}
_CMPOPS = {
    ast.Eq: operator.eq, ast.NotEq: operator.ne, ast.Lt: operator.lt,
    ast.LtE: operator.le, ast.Gt: operator.gt, ast.GtE: operator.ge,
}


def _is_prime_int(n: int) -> bool:
    from .field import is_prime

    return is_prime(n)


def prime_power_exponent(q: int) -> int:
    """f with q = p^f."""
    p = min(factorint(q))
    f = 0
    while q > 1:
        if q % p:
            raise ValueError(f"{q} is not a prime power")
        q //= p
        f += 1
    return f


def is_prime_power(q: int) -> bool:
    return q > 1 and len(factorint(q)) == 1


def min_nonsolvable_psl2(q: int) -> int:
    """Order of the smallest nonsolvable PSL_2(q0) with GF(q0) a subfield of GF(q)."""
    p = min(factorint(q))
    f = prime_power_exponent(q)
    for d in range(1, f + 1):
        if f % d == 0 and p ** d > 3:
            return psl_order(2, p ** d)
    raise ValueError(f"PSL_2(q0) is solvable for every subfield of GF({q})")


_HELPERS: dict[str, Callable[..., int]] = {
    "gcd": gcd,
    "is_prime": _is_prime_int,
    "is_prime_power": is_prime_power,
    "log_p": prime_power_exponent,
    "min_nonsolvable_psl2": min_nonsolvable_psl2,
}


def evaluate(expr: str, env: Mapping[str, int]) -> int | bool:
    """Evaluate an integer order expression such as ``Sp(4*l, 2**f)*2``.

    Only integer literals, the given names, the order families and a few
    helpers are accepted; division must be exact.
    """
    tree = ast.parse(expr, mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id in env:
                return env[node.id]
            raise ValueError(f"unknown name {node.id!r} in {expr!r}")
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.FloorDiv) and a % b:
                raise ValueError(f"inexact division {a}/{b} in {expr!r}")
            return _BINOPS[type(node.op)](a, b)
        if isinstance(node, ast.Div):
            raise ValueError("use // for exact division")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.IfExp):
            return ev(node.body) if ev(node.test) else ev(node.orelse)
        if isinstance(node, ast.BoolOp):
            vals = [ev(v) for v in node.values]
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, comp in zip(node.ops, node.comparators):
                right = ev(comp)
                if not _CMPOPS[type(op)](left, right):
                    return False
                left = right
            return True
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            args = [ev(a) for a in node.args]
            name = node.func.id
            if name in FAMILIES:
                return FAMILIES[name](*args)
            if name in _HELPERS:
                return _HELPERS[name](*args)
            raise ValueError(f"unknown function {name!r} in {expr!r}")
        raise ValueError(f"unsupported syntax in {expr!r}")

    return ev(tree)


# -- primitive prime divisors ----------------------------------------------------

@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorint(n)))


def multiplicative_order(a: int, r: int) -> int:
    k, x = 1, a % r
    while x != 1:
        x = x * a % r
        k += 1
    return k


def ppd(a: int, n: int) -> frozenset[int]:
    """Primes r with r | a^n - 1 and r not dividing a^i - 1 for i < n.

    By convention ppd(2, 6) = {7}.
    """
    if a < 2 or n < 3:
        raise ValueError("ppd needs a >= 2 and n >= 3")
    if (a, n) == (2, 6):
        return frozenset({7})
    # every ppd divides the cyclotomic value; its other primes divide n
    return frozenset(r for r in _prime_factors(cyclotomic_value(n, a)) if n % r)


def cyclotomic_value(n: int, a: int) -> int:
    return int(cyclotomic_poly(n, a))


def ppd_lemma_check(a: int, n: int) -> bool:
    return all((r - 1) % n == 0 and r > n for r in ppd(a, n))


def ppd_by_definition(a: int, n: int) -> frozenset[int]:
    """Independent route: primes of a^n - 1 whose multiplicative order is n."""
    if (a, n) == (2, 6):
        return frozenset({7})
    return frozenset(r for r in _prime_factors(a ** n - 1)
                     if a % r and multiplicative_order(a, r) == n)


# -- divisibility necessary conditions ---------------------------------------------

CLAUSES = ("a", "b", "c", "d")


def divisibility_filter(G: int, H: int, K: int, L: int, HL: int, KL: int,
                        GL: int) -> dict[str, bool]:
    """Necessary conditions for G = HK given a normal subgroup L.

    (a) |G| | |H||K|          (b) |G| | |H∩L||K||G/L|
    (c) |L| | |H∩L||K|        (d) |L| | |H∩L||K∩L||G/L|
    """
    for name, v in (("G", G), ("H", H), ("K", K), ("L", L), ("H∩L", HL), ("K∩L", KL), ("G/L", GL)):
        if v <= 0:
            raise ValueError(f"order of {name} must be positive")
    return {
        "a": (H * K) % G == 0,
        "b": (HL * K * GL) % G == 0,
        "c": (HL * K) % L == 0,
        "d": (HL * KL * GL) % L == 0,
    }


def factor_exponents(n: int) -> dict[int, int]:
    return dict(sorted(factorint(n).items()))


def format_factorization(n: int) -> str:
    parts = []
    for p, e in factor_exponents(n).items():
        parts.append(f"{p}^{e}" if e > 1 else str(p))
    return "*".join(parts) if parts else "1"


def require(condition: bool, message: str) -> None:
    if not condition:
        raise ConstraintViolationError(message)
