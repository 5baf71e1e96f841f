import io
import json
import subprocess
import sys

from factorcheck.cli import EXIT_OK, EXIT_REFUTED, EXIT_USAGE, run_cli
from factorcheck.verify import REPORT_FIELDS


def _run(*argv):
    out = io.StringIO()
    code = run_cli(list(argv), out)
    return code, out.getvalue()


def test_ppd_verb():
    assert _run("ppd", "2", "6") == (EXIT_OK, "{7}\n")
    assert _run("ppd", "4", "3") == (EXIT_OK, "{7}\n")
    assert _run("ppd", "2", "2")[0] == EXIT_USAGE


def test_order_verb():
    assert _run("order", "Sp", "4", "4") == (EXIT_OK, "979200\n")
    assert _run("order", "G2", "4") == (EXIT_OK, "251596800\n")
    assert _run("order", "Sp", "3", "4")[0] == EXIT_USAGE
    assert _run("order", "E8", "2")[0] == EXIT_USAGE


def test_usage_errors():
    assert _run()[0] == EXIT_USAGE
    assert _run("frobnicate")[0] == EXIT_USAGE
    assert _run("verify")[0] == EXIT_USAGE
    assert _run("verify", "--table", "T1", "--row", "6", "--params", "f=4")[0] == EXIT_USAGE
    assert _run("verify", "--table", "T1", "--row", "6", "--params", "f")[0] == EXIT_USAGE
    assert _run("verify", "--table", "T1", "--row", "99")[0] == EXIT_USAGE
    assert _run("verify", "--instance", "nope")[0] == EXIT_USAGE


def test_verify_table_row():
    code, text = _run("verify", "--table", "T1", "--row", "6", "--params", "f=3")
    assert code == EXIT_OK
    rec = json.loads(text)
    assert list(rec) == list(REPORT_FIELDS)
    assert rec["verdict"] == "verified" and rec["intersection"] == 14


def test_verify_screen_only_row():
    code, text = _run("verify", "--table", "T1", "--row", "9")
    assert code == EXIT_OK
    rec = json.loads(text)
    assert rec["strategy"] == "screen" and rec["verdict"] == "screened-consistent"
    assert _run("verify", "--table", "T1", "--row", "9", "--strategy", "order-oracle")[0] == EXIT_USAGE


def test_verify_refuted_instance_exit_code():
    code, text = _run("verify", "--instance", "T1.r1[f=2,l=1,a=1,b=1].sign=+")
    assert code == EXIT_REFUTED
    assert json.loads(text)["verdict"] == "refuted"


def test_verify_time_flag():
    code, text = _run("verify", "--instance", "A.a2[n=10]", "--time")
    assert code == EXIT_OK
    assert "elapsed" in json.loads(text)


def test_screen_verb_sorted_output():
    code, text = _run("screen", "--table", "T5")
    assert code == EXIT_OK
    ids = [json.loads(line)["instance"] for line in text.splitlines()]
    assert ids == sorted(ids) and ids
    code, text = _run("screen", "--table", "T1", "--max-q", "4", "--max-l", "2")
    assert code == EXIT_OK and text


def test_instances_and_schema():
    code, text = _run("instances")
    assert code == EXIT_OK and "T2.r7" in text.split()
    code, text = _run("schema")
    assert json.loads(text) == {"version": 1, "fields": list(REPORT_FIELDS)}


def test_output_is_deterministic():
    a = _run("verify", "--instance", "T1.r1[f=2,l=1,a=1,b=1]")
    b = _run("verify", "--instance", "T1.r1[f=2,l=1,a=1,b=1]")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "factorcheck", "ppd", "2", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "{5}\n"
