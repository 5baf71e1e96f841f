"""The factorization catalog: table rows, parameter constraints, order
expressions, construction recipes and desk-feasibility classification.

The catalog ships as ``data/catalog.txt``; ``parse_catalog`` and
``serialize_catalog`` round-trip it exactly.
"""

from __future__ import annotations

import ast
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping

from . import field as field_module
from . import forms as forms_module
from . import groups as groups_module
from .arith import CLAUSES, divisibility_filter, evaluate
from .errors import ConstraintViolationError
from .perm import DEGREE_BUDGET, TRAVERSAL_BUDGET, memory_budget

FORMAT = "factorcheck-catalog"
VERSION = 1
TABLES = ("T1", "T2", "T5", "A")
ORBIT_BUDGET = 10**6

# key order of a serialized record; every record carries every key
KEYS = (
    "table", "row", "L", "H", "K", "example", "params", "constraints", "q", "dim",
    "order_L", "order_HL", "order_KL", "out", "decorations", "recipe_G", "recipe_H",
    "recipe_K", "intersection", "smallest", "larger", "sweep", "desk", "witnesses", "note",
)
_OPTIONAL = {"intersection", "larger", "sweep", "desk", "witnesses", "note"}
CELL_KEYS = ("table", "row", "L", "H", "K", "example")


@dataclass(frozen=True)
class Decoration:
    name: str
    low: str
    high: str


@dataclass(frozen=True)
class CatalogRow:
    table: str
    row: str
    cells: dict[str, str]
    params: tuple[str, ...]
    constraints: tuple[str, ...]
    q: str
    dim: str
    order_L: str
    order_HL: str
    order_KL: str
    out: str
    decorations: tuple[Decoration, ...]
    recipes: dict[str, tuple[str, ...]]
    intersection: str | None = None
    smallest: dict[str, int] | None = None
    larger: dict[str, int] | None = None
    sweep: dict[str, tuple[int, int]] = field(default_factory=dict)
    desk: dict[tuple, str] = field(default_factory=dict)
    witnesses: tuple[tuple[str, str], ...] = ()
    note: str | None = None

    @property
    def key(self) -> str:
        if self.table == "A":
            return "A." + self.row.replace(".", "")
        return f"{self.table}.r{self.row}"

    def violations(self, params: Mapping[str, int]) -> list[str]:
        missing = [p for p in self.params if p not in params]
        if missing:
            return [f"missing parameter {m}" for m in missing]
        extra = [p for p in params if p not in self.params]
        if extra:
            return [f"unknown parameter {e}" for e in extra]
        return [c for c in self.constraints if not evaluate(c, params)]

    def check(self, params: Mapping[str, int]) -> None:
        bad = self.violations(params)
        if bad:
            raise ConstraintViolationError(f"{self.key}{_fmt(params)} violates: " + "; ".join(bad))

    def decoration_values(self, params: Mapping[str, int], choice: str | Mapping[str, int]) -> dict[str, int]:
        out = {}
        for d in self.decorations:
            if isinstance(choice, str):
                if choice not in ("min", "max"):
                    raise ValueError(f"decoration choice must be min, max or a mapping, got {choice!r}")
                out[d.name] = evaluate(d.low if choice == "min" else d.high, params)
            else:
                low, high = evaluate(d.low, params), evaluate(d.high, params)
                v = choice.get(d.name, high)
                if not low <= v <= high and v != 1:
                    raise ConstraintViolationError(f"{d.name}={v} outside {low}..{high}")
                out[d.name] = v
        return out

    def sweep_points(self) -> Iterable[dict[str, int]]:
        if not self.params:
            yield {}
            return
        ranges = [range(self.sweep[p][0], self.sweep[p][1] + 1) for p in self.params]
        for values in itertools.product(*ranges):
            env = dict(zip(self.params, values))
            if not self.violations(env):
                yield env


@dataclass
class CatalogInstance:
    row: CatalogRow
    params: dict[str, int]
    decorations: dict[str, int]
    orders: dict[str, int]
    feasibility: str
    degree: int
    memory: int
    desk_id: str | None
    reason: str = ""
    predicted_intersection: int | None = None

    @property
    def id(self) -> str:
        return self.desk_id or f"{self.row.key}{_fmt(self.params)}"

    def to_record(self) -> dict:
        return {
            "row": self.row.key, "params": dict(self.params), "decorations": dict(self.decorations),
            "orders": dict(self.orders), "feasibility": self.feasibility, "degree": self.degree,
            "memory": self.memory, "desk_id": self.desk_id, "reason": self.reason,
        }


def _fmt(params: Mapping[str, int]) -> str:
    return "[" + ",".join(f"{k}={v}" for k, v in params.items()) + "]" if params else ""


# -- parsing -----------------------------------------------------------------------

def _split(value: str, sep: str = ";") -> list[str]:
    return [v.strip() for v in value.split(sep) if v.strip()]


def _assignments(value: str) -> dict[str, int]:
    out = {}
    for part in _split(value, ","):
        k, v = part.split("=")
        out[k.strip()] = int(v)
    return out


def _parse_record(rec: dict[str, str]) -> CatalogRow:
    missing = [k for k in KEYS if k not in rec and k not in _OPTIONAL]
    if missing:
        raise ValueError(f"catalog record {rec.get('table')}.{rec.get('row')} lacks {missing}")
    decorations = []
    for part in _split(rec["decorations"]):
        name, rng = part.split("=", 1)
        low, high = rng.split("..")
        decorations.append(Decoration(name.strip(), low.strip(), high.strip()))
    sweep = {}
    for part in _split(rec.get("sweep", "")):
        name, rng = part.split("=")
        low, high = rng.split("..")
        sweep[name.strip()] = (int(low), int(high))
    desk = {}
    for part in _split(rec.get("desk", "")):
        lhs, iid = part.split("->")
        desk[tuple(sorted(_assignments(lhs).items()))] = iid.strip()
    witnesses = []
    for part in _split(rec.get("witnesses", "")):
        lhs, rhs = part.split("->")
        witnesses.append((lhs.strip(), rhs.strip()))
    return CatalogRow(
        table=rec["table"], row=rec["row"],
        cells={k: rec[k] for k in ("L", "H", "K", "example")},
        params=tuple(_split(rec["params"], ",")),
        constraints=tuple(_split(rec["constraints"])),
        q=rec["q"], dim=rec["dim"],
        order_L=rec["order_L"], order_HL=rec["order_HL"], order_KL=rec["order_KL"], out=rec["out"],
        decorations=tuple(decorations),
        recipes={s: tuple(_split(rec[f"recipe_{s}"])) for s in "GHK"},
        intersection=rec.get("intersection") or None,
        smallest=_assignments(rec["smallest"]) if rec["smallest"] or not rec["params"] else None,
        larger=_assignments(rec["larger"]) if rec.get("larger") else None,
        sweep=sweep, desk=desk, witnesses=tuple(witnesses),
        note=rec.get("note") or None,
    )


def parse_catalog(text: str) -> tuple[dict[str, str], list[dict[str, str]]]:
    """Split catalog text into its header and raw records (key -> value)."""
    header: dict[str, str] = {}
    records: list[dict[str, str]] = []
    current: dict[str, str] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        if line.startswith("#"):
            continue
        if not line:
            current = None
            continue
        if ":" not in line:
            raise ValueError(f"line {lineno}: expected 'key: value'")
        key, value = line.split(":", 1)
        key, value = key.strip(), value.strip()
        if key == "table":
            current = {}
            records.append(current)
        target = header if current is None else current
        if key in target:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        target[key] = value
    if header.get("format") != FORMAT:
        raise ValueError(f"not a catalog file (format {header.get('format')!r})")
    if int(header.get("version", 0)) != VERSION:
        raise ValueError(f"unsupported catalog version {header.get('version')}")
    seen = set()
    for rec in records:
        key = (rec.get("table"), rec.get("row"))
        if key in seen:
            raise ValueError(f"duplicate catalog row {key[0]}.{key[1]}")
        seen.add(key)
    return header, records


def serialize_catalog(header: Mapping[str, str], records: Iterable[Mapping[str, str]]) -> str:
    lines = [f"{k}: {v}" for k, v in header.items()]
    for rec in records:
        lines.append("")
        for k in KEYS:
            if k in rec:
                lines.append(f"{k}: {rec[k]}".rstrip())
    return "\n".join(lines) + "\n"


def catalog_text() -> str:
    return resources.files("factorcheck.data").joinpath("catalog.txt").read_text()


@lru_cache(maxsize=None)
def _load() -> tuple[CatalogRow, ...]:
    _, records = parse_catalog(catalog_text())
    return tuple(_parse_record(r) for r in records)


def list_rows(table: str | None = None) -> list[CatalogRow]:
    rows = list(_load())
    if table is not None:
        if table not in TABLES:
            raise ValueError(f"unknown table {table!r}; expected one of {TABLES}")
        rows = [r for r in rows if r.table == table]
    return rows


def get_row(table: str, row: str | int) -> CatalogRow:
    for r in _load():
        if r.table == table and r.row == str(row):
            return r
    raise KeyError(f"no row {row} in table {table}")


# -- recipes ---------------------------------------------------------------------------

_ATLAS = (groups_module, forms_module, field_module)


def unresolved_names(row: CatalogRow) -> list[str]:
    """Names in the recipes that are neither parameters nor atlas constructors."""
    bad = []
    for exprs in row.recipes.values():
        for expr in exprs:
            for node in ast.walk(ast.parse(expr, mode="eval")):
                if isinstance(node, ast.Name) and node.id not in row.params:
                    if not any(callable(getattr(m, node.id, None)) for m in _ATLAS):
                        bad.append(node.id)
    return bad


# -- instantiation ------------------------------------------------------------------------

def _memory_estimate(q: int, dim: int, degree: int) -> int:
    """Rough peak bytes: the vector table plus some 64 int32 arrays of the degree."""
    if q == 0:
        return degree * 4 * 64
    return q ** dim * (dim + 1) * 8 + degree * 4 * 64


def _projective_degree(q: int, dim: int) -> int:
    return (q ** dim - 1) // (q - 1)


def instantiate(row: CatalogRow, params: Mapping[str, int],
                decorations: str | Mapping[str, int] = "max") -> CatalogInstance:
    params = dict(params)
    row.check(params)
    dec = row.decoration_values(params, decorations)
    env = {**params, **dec}
    L, HL, KL = (evaluate(e, env) for e in (row.order_L, row.order_HL, row.order_KL))
    out = evaluate(row.out, env)
    q, dim = evaluate(row.q, env), evaluate(row.dim, env)
    orders = {"L": L, "H∩L": HL, "K∩L": KL, "Out": out}
    if q:
        degree = q ** dim - 1
        memory = _memory_estimate(q, dim, _projective_degree(q, dim))
    else:
        degree, memory = dim, _memory_estimate(0, dim, dim)
    orbit = L // max(HL, KL) if L % max(HL, KL) == 0 else L // max(HL, KL) + 1
    desk_id = row.desk.get(tuple(sorted(params.items())))
    reasons = []
    if q and q % 2:
        reasons.append("odd characteristic (no Omega membership)")
    if degree > DEGREE_BUDGET:
        reasons.append(f"degree {degree} over 2^24")
    if memory > memory_budget():
        reasons.append(f"memory estimate {memory} over budget")
    if orbit > ORBIT_BUDGET and min(HL, KL) > TRAVERSAL_BUDGET:
        reasons.append("orbit and oracle budgets both exceeded")
    if not reasons and desk_id is None:
        reasons.append("no desk construction")
    predicted = evaluate(row.intersection, env) if row.intersection else None
    return CatalogInstance(row, params, dec, orders, "screen-only" if reasons else "full-verify",
                           degree, memory, desk_id, "; ".join(reasons), predicted)


def desk_instances() -> list[CatalogInstance]:
    """Every row at its smallest parameters, plus every other desk tuple."""
    seen = set()
    out = []
    for row in list_rows():
        tuples = [row.smallest or {}] + [dict(k) for k in row.desk]
        for params in tuples:
            params = {p: params[p] for p in row.params}
            key = (row.key, tuple(sorted(params.items())))
            if key in seen:
                continue
            seen.add(key)
            out.append(instantiate(row, params))
    return out


# -- screening ----------------------------------------------------------------------------

def screen_instance(row: CatalogRow, params: Mapping[str, int], mode: str = "max",
                    overrides: Mapping[str, str] | None = None) -> dict:
    """Divisibility clauses with G = L.Out (max) or G = L (min).

    ``overrides`` replaces order expressions (keys order_HL / order_KL) and is
    how mutations are screened.
    """
    params = dict(params)
    row.check(params)
    dec = row.decoration_values(params, mode)
    env = {**params, **dec}
    exprs = {"order_L": row.order_L, "order_HL": row.order_HL, "order_KL": row.order_KL}
    exprs.update(overrides or {})
    L, HL, KL = (evaluate(exprs[k], env) for k in ("order_L", "order_HL", "order_KL"))
    GL = evaluate(row.out, env) if mode == "max" else 1
    clauses = divisibility_filter(L * GL, HL * GL, KL * GL, L, HL, KL, GL)
    return {"row": row.key, "params": params, "mode": mode, "decorations": dec,
            "orders": {"L": L, "H∩L": HL, "K∩L": KL, "G/L": GL}, "clauses": clauses,
            "pass": all(clauses[c] for c in CLAUSES)}


def screen_catalog(tables: Iterable[str] = ("T1", "T2", "T5"), sweep: bool = False) -> list[dict]:
    """Screen each row at its smallest and larger tuples (or its whole sweep)
    in both decoration modes."""
    results = []
    for table in tables:
        for row in list_rows(table):
            if sweep:
                points = list(row.sweep_points())
            else:
                points = [p for p in (row.smallest, row.larger) if p is not None]
            for params in points:
                for mode in ("max", "min"):
                    results.append(screen_instance(row, params, mode))
    return results


# Documented mutations: each must fail screening or be refuted by a desk instance.
MUTATIONS = {
    "wrong-form-sign": {
        "row": ("T1", "1"), "params": {"f": 1, "l": 2, "a": 1, "b": 2},
        "overrides": {"order_KL": "Omega_plus(4*l, 2**f) * Q"},
        "desk": "T1.r1[f=2,l=1,a=1,b=1].sign=+",
    },
    "dropped-decoration": {
        "row": ("T5", "2"), "params": {"l": 1},
        "overrides": {"order_HL": "Sp(2, 4) * Sp(2*l, 4)"},
        "desk": "T5.r2[l=1].P=1",
    },
    "wrong-subgroup": {
        "row": ("T1", "6"), "params": {"f": 3},
        "overrides": {"order_KL": "1456"},
        "desk": None,
    },
}


def screen_mutation(name: str) -> dict:
    m = MUTATIONS[name]
    row = get_row(*m["row"])
    return screen_instance(row, m["params"], "max", m["overrides"])
