"""Exact arithmetic in GF(p^f) for p^f <= 2**16.

Elements are encoded as integers: the coefficient vector (c_0, ..., c_{f-1})
of the reduced polynomial becomes sum(c_i * p**i).  The integer order of the
codes is the canonical element order (coefficient vectors compared
lexicographically, leading coefficient first); every "smallest element"
choice in the package uses it.

Besides the scalar ``FieldElement`` type, ``Field`` exposes vectorised
operations on numpy arrays of codes.  Those are what the matrix and group
code uses internally.
"""

from __future__ import annotations

import functools
from importlib import resources

import numpy as np

from .errors import (
    FieldMismatchError,
    NotASubfieldError,
    NotPrimeError,
    UnknownModulusError,
)

MAX_ORDER = 1 << 16
_TABLE_FILE = "moduli.txt"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for s in small:
        if n % s == 0:
            return n == s
    if n < 1369:
        return True
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # these witnesses are deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@functools.lru_cache(maxsize=None)
def modulus_table() -> tuple[int, dict[tuple[int, int], tuple[int, ...]]]:
    """Parse the shipped table; returns (version, {(p, f): (c_0, ..., c_f)})."""
    text = resources.files("factorcheck.data").joinpath(_TABLE_FILE).read_text()
    version = None
    table: dict[tuple[int, int], tuple[int, ...]] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("version"):
            version = int(line.split()[1])
            continue
        nums = [int(t) for t in line.split()]
        p, f, coeffs = nums[0], nums[1], tuple(nums[2:])
        if len(coeffs) != f + 1 or coeffs[-1] != 1:
            raise ValueError(f"malformed modulus line: {raw!r}")
        table[(p, f)] = coeffs
    if version is None:
        raise ValueError("modulus table lacks a version header")
    return version, table


def _poly_divides(div: list[int], poly: list[int], p: int) -> bool:
    rem = list(poly)
    dd = len(div) - 1
    inv_lead = pow(div[-1], p - 2, p)
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k] * inv_lead % p
        if c:
            for i in range(dd + 1):
                rem[k - dd + i] = (rem[k - dd + i] - c * div[i]) % p
    return not any(rem[:dd])


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    f = len(poly) - 1
    for d in range(1, f // 2 + 1):
        for code in range(p**d):
            cand = [(code // p**i) % p for i in range(d)] + [1]
            if _poly_divides(cand, list(poly), p):
                return False
    return True


class Field:
    """GF(p^f) with the modulus fixed by the shipped table."""

    __slots__ = (
        "p", "f", "q", "modulus", "_digits", "_weights", "_mul", "_exp",
        "_log", "_inv", "_gen", "__weakref__",
    )

    def __init__(self, p: int, f: int):
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        if f < 1 or p**f > MAX_ORDER:
            raise UnknownModulusError(f"GF({p}^{f}) outside the supported range")
        _, table = modulus_table()
        if (p, f) not in table:
            raise UnknownModulusError(f"no modulus for GF({p}^{f}) in the table")
        self.p, self.f, self.q = p, f, p**f
        self.modulus = table[(p, f)]
        if not _is_irreducible(self.modulus, p):
            raise ValueError(f"table modulus for GF({p}^{f}) is reducible")
        q = self.q
        codes = np.arange(q, dtype=np.int64)
        self._weights = p ** np.arange(f, dtype=np.int64)
        self._digits = (codes[:, None] // self._weights[None, :]) % p
        self._build_mult()

    # -- construction helpers -------------------------------------------
    def _poly_mul(self, a: int, b: int) -> int:
        p, f, mod = self.p, self.f, self.modulus
        av = [(a // p**i) % p for i in range(f)]
        bv = [(b // p**i) % p for i in range(f)]
        out = [0] * (2 * f)
        for i, x in enumerate(av):
            if x:
                for j, y in enumerate(bv):
                    out[i + j] = (out[i + j] + x * y) % p
        for k in range(2 * f - 1, f - 1, -1):
            c = out[k]
            if c:
                for i in range(f + 1):
                    out[k - f + i] = (out[k - f + i] - c * mod[i]) % p
        return sum(c * p**i for i, c in enumerate(out[:f]))

    def _build_mult(self) -> None:
        q = self.q
        # smallest code of multiplicative order q - 1
        for g in range(1, q):
            exp = [1]
            cur = g
            while cur != 1:
                exp.append(cur)
                cur = self._poly_mul(cur, g)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover - q >= 2 always has a generator
            raise AssertionError("no generator found")
        self._gen = g
        self._exp = np.array(exp + exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[np.array(exp, dtype=np.int64)] = np.arange(q - 1, dtype=np.int64)
        self._log = log
        inv = np.zeros(q, dtype=np.int64)
        nz = np.arange(1, q)
        inv[nz] = self._exp[(q - 1 - log[nz]) % (q - 1)]
        self._inv = inv
        if q <= 256:
            a = np.arange(q)[:, None]
            b = np.arange(q)[None, :]
            prod = self._exp[(log[a] + log[b]) % (q - 1)]
            prod[(a == 0) | (b == 0)] = 0
            self._mul = prod.astype(np.int64)
        else:
            self._mul = None

    # -- identity -----------------------------------------------------------
    @property
    def char(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.q

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self) -> int:
        return hash((self.p, self.f))

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        return (field_make, (self.p, self.f))

    # -- scalar elements ------------------------------------------------------
    def __call__(self, value: int | tuple[int, ...] | list[int] | FieldElement) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, (tuple, list)):
            if len(value) > self.f:
                raise ValueError("too many coefficients")
            code = sum((int(c) % self.p) * self.p**i for i, c in enumerate(value))
            return FieldElement(self, code)
        # plain integers are read as elements of the prime field
        return FieldElement(self, int(value) % self.p)

    def element(self, code: int) -> FieldElement:
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self!r}")
        return FieldElement(self, int(code))

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, c) for c in range(self.q)]

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def generator(self) -> FieldElement:
        """Smallest element generating the multiplicative group."""
        return FieldElement(self, self._gen)

    @property
    def omega(self) -> FieldElement:
        """The class of x, i.e. a root of the modulus (equal to the generator here)."""
        if self.f == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def additive_basis(self) -> list[int]:
        """Codes of 1, w, w^2, ..., w^{f-1} for the generator w; a GF(p)-basis."""
        w = self._gen
        out, cur = [], 1
        for _ in range(self.f):
            out.append(cur)
            cur = self.mul(cur, w)
        return [int(c) for c in out]

    # -- vectorised arithmetic on codes --------------------------------------
    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.f == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        da, db = self._digits[a], self._digits[b]
        return ((da + db) % self.p) @ self._weights

    def neg(self, a):
        if self.p == 2:
            return a
        if self.f == 1:
            return (-np.asarray(a)) % self.p
        return ((-self._digits[a]) % self.p) @ self._weights

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._mul is not None:
            return self._mul[a, b]
        a = np.asarray(a)
        b = np.asarray(b)
        res = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, res)

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def power(self, a, n: int):
        a = np.asarray(a)
        n = int(n)
        if n == 0:
            return np.ones_like(a)
        if n < 0:
            a = self.inv(a)
            n = -n
        res = self._exp[(self._log[a] * n) % (self.q - 1)]
        return np.where(a == 0, 0, res)

    def sum(self, a, axis=-1):
        a = np.asarray(a)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.f == 1:
            return a.sum(axis=axis) % self.p
        d = self._digits[a].sum(axis=axis if axis >= 0 else axis - 1) % self.p
        return d @ self._weights

    def dot(self, a, b):
        """Rows of a (N, n) times the matrix b (n, m); chunked to bound memory."""
        a = np.asarray(a)
        b = np.asarray(b)
        n, m = b.shape
        out = np.empty((a.shape[0], m), dtype=np.int64)
        step = max(1, (1 << 22) // max(1, n * m))
        for s in range(0, a.shape[0], step):
            blk = a[s:s + step]
            out[s:s + step] = self.sum(self.mul(blk[:, :, None], b[None, :, :]), axis=1)
        return out

    def log(self, a):
        return self._log[a]

    def exp(self, k):
        return self._exp[np.asarray(k) % (self.q - 1)]

    # -- field automorphisms and subfields -----------------------------------
    def _subfield_degree(self, q0: int) -> int:
        e, t = 0, 1
        while t < q0:
            t *= self.p
            e += 1
        if t != q0 or e == 0 or self.f % e:
            raise NotASubfieldError(f"GF({q0}) is not a subfield of {self!r}")
        return e

    def frobenius(self, a, q0: int):
        self._subfield_degree(q0)
        return self.power(a, q0)

    def trace(self, a, q0: int, q1: int | None = None):
        """Relative trace from GF(q1) (default: this field) down to GF(q0).

        With q1 smaller than q the argument must lie in the subfield GF(q1).
        """
        e = self._subfield_degree(q0)
        k = self.f // e if q1 is None else self._subfield_degree(q1) // e
        a = np.asarray(a)
        acc = a
        cur = a
        for _ in range(k - 1):
            cur = self.power(cur, q0)
            acc = self.add(acc, cur)
        return acc

    def subfield_codes(self, q0: int) -> np.ndarray:
        self._subfield_degree(q0)
        codes = np.arange(self.q)
        return codes[self.power(codes, q0) == codes]


@functools.lru_cache(maxsize=None)
def field_make(p: int, f: int = 1) -> Field:
    """Canonical field for (p, f); cached so equal arguments give the same object."""
    return Field(p, f)


def gf(q: int) -> Field:
    """Field of order q (a prime power)."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    f, t = 0, 1
    while t < q:
        t *= p
        f += 1
    if t != q:
        raise NotPrimeError(f"{q} is not a prime power")
    return field_make(p, f)


class FieldElement:
    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = int(code)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.field._digits[self.code])

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{other.field!r} vs {self.field!r}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def _wrap(self, code) -> FieldElement:
        return FieldElement(self.field, int(code))

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.add(self.code, o))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(self.field.neg(self.code))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.sub(o, self.code))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.mul(self.code, o))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.code == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._wrap(self.field._inv[self.code])

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * self._wrap(o).inverse()

    def __pow__(self, n: int):
        if self.code == 0:
            if n < 0:
                raise ZeroDivisionError("zero has no inverse")
            return self._wrap(0 if n else 1)
        return self._wrap(self.field.power(self.code, n))

    def frobenius(self, q0: int) -> FieldElement:
        return self._wrap(self.field.frobenius(self.code, q0))

    def trace(self, q0: int, q1: int | None = None) -> FieldElement:
        return self._wrap(self.field.trace(self.code, q0, q1))

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.field.p and self.code < self.field.p
        return NotImplemented

    def __lt__(self, other: FieldElement) -> bool:
        return self.code < self._other(other)

    def __hash__(self) -> int:
        return hash((self.field.q, self.code))

    def __int__(self) -> int:
        return self.code

    def __repr__(self) -> str:
        if self.field.f == 1:
            return str(self.code)
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) or "0"


def field_arith(op: str, x: FieldElement, y: FieldElement | int | None = None) -> FieldElement:
    """Dispatcher over the elementary operations by name."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    if op == "pow":
        return x ** int(y)
    raise ValueError(f"unknown field operation {op!r}")


def frobenius(x: FieldElement, q0: int) -> FieldElement:
    return x.frobenius(q0)


def trace_to_subfield(x: FieldElement, q0: int, q1: int | None = None) -> FieldElement:
    return x.trace(q0, q1)


def irreducible_quadratic_d(field: Field) -> FieldElement:
    """Smallest d with x^2 + x + d irreducible, i.e. absolute trace 1."""
    if field.p != 2:
        raise ValueError("irreducible_quadratic_d needs characteristic 2")
    tr = field.trace(np.arange(field.q), 2)
    return field.element(int(np.flatnonzero(tr == 1)[0]))
