"""Command line entry point: ``factorcheck <verb> ...``.

Every verification verb writes one JSON record per instance to standard
output, sorted by instance id.  Exit status is 0 when every verdict is
verified or screened-consistent, 1 when something was refuted or ran out of
budget, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from . import arith
from .catalog import TABLES, get_row, instantiate, list_rows, screen_catalog, screen_instance
from .errors import ConstraintViolationError, FactorcheckError
from .instances import build, instance_ids, verify_instance
from .verify import REPORT_SCHEMA_VERSION, STRATEGIES, Report

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _dump(rec: dict) -> str:
    return json.dumps(rec, separators=(", ", ": "), ensure_ascii=False)


def _parse_params(text: str | None) -> dict[str, int]:
    out: dict[str, int] = {}
    if not text:
        return out
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"parameter {part!r} is not of the form name=value")
        k, v = part.split("=", 1)
        try:
            out[k.strip()] = int(v)
        except ValueError:
            raise UsageError(f"parameter {k!r} needs an integer value, got {v!r}") from None
    return out


def _screen_report(instance: str, screen: dict, reason: str) -> Report:
    o = screen["orders"]
    return Report(instance, "screen", o["L"] * o["G/L"], o["H∩L"] * o["G/L"], o["K∩L"] * o["G/L"],
                  None, "screened-consistent" if screen["pass"] else "refuted",
                  {"mode": screen["mode"], "clauses": screen["clauses"],
                   "decorations": screen["decorations"], "reason": reason})


def _run_desk(instance_id: str, strategy: str | None) -> Report:
    t0 = time.perf_counter()
    rep = verify_instance(build(instance_id), strategy)
    rep.elapsed = time.perf_counter() - t0
    return rep


def cmd_verify(args) -> list[Report]:
    if args.instance:
        if args.table or args.row:
            raise UsageError("--instance cannot be combined with --table/--row")
        if args.instance not in instance_ids():
            raise UsageError(f"unknown desk instance {args.instance!r}")
        return [_run_desk(args.instance, args.strategy)]
    if not (args.table and args.row):
        raise UsageError("verify needs --table and --row (or --instance)")
    try:
        row = get_row(args.table, args.row)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    params = _parse_params(args.params)
    ci = instantiate(row, params)
    if ci.feasibility == "full-verify" and ci.desk_id:
        return [_run_desk(ci.desk_id, args.strategy)]
    if args.strategy not in (None, "auto", "screen"):
        raise UsageError(f"{ci.id} is screen-only ({ci.reason}); strategy {args.strategy} unavailable")
    return [_screen_report(ci.id, screen_instance(row, params, "max"), ci.reason)]


def _within(params: dict, max_q: int | None, max_l: int | None, row) -> bool:
    if max_l is not None and params.get("l", 0) > max_l:
        return False
    if max_q is not None:
        q = arith.evaluate(row.q, params)
        if q > max_q:
            return False
    return True


def cmd_screen(args) -> list[Report]:
    tables = args.table or ["T1", "T2", "T5"]
    reports = []
    if args.sweep or args.max_q or args.max_l:
        for t in tables:
            for row in list_rows(t):
                for params in row.sweep_points():
                    if not _within(params, args.max_q, args.max_l, row):
                        continue
                    for mode in ("max", "min"):
                        s = screen_instance(row, params, mode)
                        reports.append(_screen_report(_key(row, params, mode), s, ""))
    else:
        for s in screen_catalog(tables):
            row = get_row(*_split_key(s["row"]))
            reports.append(_screen_report(_key(row, s["params"], s["mode"]), s, ""))
    return reports


def _key(row, params: dict, mode: str) -> str:
    body = ",".join(f"{k}={v}" for k, v in params.items())
    return f"{row.key}[{body}]/{mode}" if body else f"{row.key}/{mode}"


def _split_key(key: str) -> tuple[str, str]:
    table, row = key.split(".", 1)
    if table == "A":
        return table, row[0] + "." + row[1:]
    return table, row[1:]


def _failures_count(reports: Sequence[Report]) -> int:
    # screening in min mode is informational
    return sum(not r.ok for r in reports
               if not (r.strategy == "screen" and r.details.get("mode") == "min"))


def cmd_selftest(args) -> list[Report]:
    reports = []
    for iid in instance_ids():
        inst = build(iid)
        rep = _run_desk(iid, None)
        if inst.expect_refuted:
            met = rep.verdict == "refuted"
        else:
            met = rep.verdict == "verified" and (inst.expected is None or rep.intersection == inst.expected)
        rep.details["expectation"] = {"expected": "refuted" if inst.expect_refuted else inst.expected,
                                      "met": met}
        reports.append(rep)
    return reports


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="factorcheck", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("verify", help="verify one catalog instance")
    v.add_argument("--table", choices=TABLES)
    v.add_argument("--row")
    v.add_argument("--params", help="comma separated name=value pairs")
    v.add_argument("--instance", help="a desk instance id instead of table/row/params")
    v.add_argument("--strategy", choices=STRATEGIES + ("chain", "screen"))
    v.add_argument("--time", action="store_true", help="include elapsed seconds")

    s = sub.add_parser("screen", help="divisibility screening of the catalog")
    s.add_argument("--table", action="append", choices=TABLES)
    s.add_argument("--sweep", action="store_true", help="every tuple of each row's sweep range")
    s.add_argument("--max-q", type=int)
    s.add_argument("--max-l", type=int)

    pp = sub.add_parser("ppd", help="primitive prime divisors of a^n - 1")
    pp.add_argument("a", type=int)
    pp.add_argument("n", type=int)

    o = sub.add_parser("order", help="order of a classical group")
    o.add_argument("family", choices=sorted(arith.FAMILIES))
    o.add_argument("args", type=int, nargs="*")

    t = sub.add_parser("selftest", help="run every desk instance against its expectation")
    t.add_argument("--time", action="store_true")

    sub.add_parser("instances", help="list desk instance ids")
    sub.add_parser("schema", help="print the report schema")
    return p


def run_cli(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.verb == "ppd":
            if args.a < 2 or args.n < 3:
                raise UsageError("ppd needs a >= 2 and n >= 3")
            primes = sorted(arith.ppd(args.a, args.n))
            print("{" + ", ".join(map(str, primes)) + "}", file=out)
            return EXIT_OK
        if args.verb == "order":
            try:
                print(arith.FAMILIES[args.family](*args.args), file=out)
            except (TypeError, ValueError) as exc:
                raise UsageError(f"{args.family}: {exc}") from None
            return EXIT_OK
        if args.verb == "instances":
            for iid in instance_ids():
                print(iid, file=out)
            return EXIT_OK
        if args.verb == "schema":
            from .verify import REPORT_FIELDS

            print(_dump({"version": REPORT_SCHEMA_VERSION, "fields": list(REPORT_FIELDS)}), file=out)
            return EXIT_OK
        handler = {"verify": cmd_verify, "screen": cmd_screen, "selftest": cmd_selftest}[args.verb]
        reports = handler(args)
    except (UsageError, ConstraintViolationError) as exc:
        print(f"factorcheck: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FactorcheckError as exc:
        print(f"factorcheck: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_REFUTED
    reports.sort(key=lambda r: r.instance)
    with_time = getattr(args, "time", False)
    for rep in reports:
        print(rep.to_json(with_time), file=out)
    if args.verb == "selftest":
        return EXIT_OK if all(r.details["expectation"]["met"] for r in reports) else EXIT_REFUTED
    return EXIT_OK if _failures_count(reports) == 0 else EXIT_REFUTED


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
