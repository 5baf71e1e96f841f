import csv
from pathlib import Path

import pytest

from factorcheck.catalog import (MUTATIONS, catalog_text, desk_instances, get_row, instantiate,
                                 list_rows, parse_catalog, screen_catalog, screen_instance,
                                 screen_mutation, serialize_catalog, unresolved_names)
from factorcheck.errors import ConstraintViolationError
from factorcheck.instances import build, instance_ids
from factorcheck.verify import Engine

FIXTURE = Path(__file__).parent / "fixtures" / "catalog_cells.tsv"


def _fixture():
    with FIXTURE.open(encoding="utf-8") as fh:
        return list(csv.DictReader(fh, delimiter="\t", quoting=csv.QUOTE_NONE))


def test_row_counts():
    assert len(list_rows("T1")) == 10
    assert len(list_rows("T2")) == 8
    assert len(list_rows("T5")) == 6
    assert len(list_rows("A")) == 4
    assert len(list_rows()) == 28


def test_cells_match_golden_fixture():
    expected = _fixture()
    got = [{"table": r.table, "row": r.row, **{k: r.cells[k] for k in ("L", "H", "K", "example")}}
           for r in list_rows()]
    assert len(got) == len(expected)
    for g, e in zip(got, expected):
        assert g == e


def test_round_trip():
    text = catalog_text()
    header, records = parse_catalog(text)
    again = serialize_catalog(header, records)
    assert parse_catalog(again) == (header, records)


def test_parse_rejects_bad_header():
    with pytest.raises(ValueError):
        parse_catalog("format: something-else\nversion: 1\n")
    _, records = parse_catalog(catalog_text())
    dup = serialize_catalog({"format": "factorcheck-catalog", "version": "1"}, records[:1] * 2)
    with pytest.raises(ValueError):
        parse_catalog(dup)


def test_recipes_resolve():
    for row in list_rows():
        assert unresolved_names(row) == [], row.key


def test_specific_rows():
    r6 = get_row("T1", 6)
    assert r6.cells["K"] == r"$\Sz(2^f)$"
    assert r6.violations({"f": 3}) == []
    assert r6.violations({"f": 4})
    r1 = get_row("T5", 1)
    assert r1.cells["K"] == r"$\Omega_{4\ell-1}(q)$"
    a3 = get_row("A", "a.3")
    assert r"\M_{12}" in a3.cells["K"]


def test_constraint_violation():
    with pytest.raises(ConstraintViolationError):
        instantiate(get_row("T1", 6), {"f": 4})
    with pytest.raises(ConstraintViolationError):
        instantiate(get_row("T1", 6), {"f": 3, "zz": 1})


def test_feasibility_examples():
    ci = instantiate(get_row("T1", 1), {"f": 2, "l": 1, "a": 1, "b": 1})
    assert ci.feasibility == "full-verify" and ci.degree == 255
    ci = instantiate(get_row("T1", 2), {"f": 1, "l": 1})
    assert ci.feasibility == "full-verify" and ci.degree == 4095
    ci = instantiate(get_row("T1", 9), {})
    assert ci.feasibility == "screen-only"
    ci = instantiate(get_row("T2", 6), {"q": 5})
    assert ci.feasibility == "screen-only" and "odd" in ci.reason


def test_desk_instances_cover_every_row():
    cis = desk_instances()
    keys = {ci.row.key for ci in cis}
    assert keys == {r.key for r in list_rows()}
    ids = {ci.id for ci in cis}
    assert {"T2.r7", "A.a2[n=10]"} <= ids


def test_full_verify_instances_build_with_confirmed_orders():
    registered = set(instance_ids())
    for ci in desk_instances():
        if ci.feasibility != "full-verify":
            continue
        assert ci.desk_id in registered
        inst = build(ci.desk_id)
        eng = Engine(inst.domain, inst.G)
        for sub in (inst.G, inst.H, inst.K):
            if sub.order is not None and not sub.order_is_bound:
                assert eng.order(sub) == sub.order, (ci.id, sub.label)


def test_smallest_and_larger_screen():
    results = screen_catalog()
    assert results
    for res in results:
        if res["mode"] == "max":
            assert res["pass"], res


def test_screen_min_mode_reports_both():
    res = screen_instance(get_row("T1", 1), {"f": 2, "l": 1, "a": 1, "b": 1}, "min")
    assert res["mode"] == "min" and res["orders"]["G/L"] == 1
    assert res["decorations"] == {"R": 1, "Q": 1}


def test_mutations():
    assert set(MUTATIONS) == {"wrong-form-sign", "dropped-decoration", "wrong-subgroup"}
    sign = screen_mutation("wrong-form-sign")
    assert not sign["clauses"]["c"]
    wrong = screen_mutation("wrong-subgroup")
    assert not any(wrong["clauses"].values())
    # the dropped decoration survives screening; its desk counterpart is refuted exactly
    assert screen_mutation("dropped-decoration")["pass"]
    assert MUTATIONS["dropped-decoration"]["desk"] in instance_ids()
