import json
import subprocess
import sys

import pytest

from gemturan import graph6
from gemturan.canon import canonical_form
from gemturan.cli import main
from gemturan.families import build_family, extremal_spec, family

S13 = str(canonical_form(build_family(extremal_spec(11))))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build(capsys):
    code, out, _ = run(capsys, "build", "Snk", "7", "2", "--canonical")
    assert code == 0 and out.strip() == S13


def test_build_json(capsys):
    code, out, _ = run(capsys, "--json", "build", "Star", "4")
    d = json.loads(out)
    assert code == 0 and d["m"] == 3 and d["graph6"] == "Cs"


def test_rho(capsys):
    code, out, _ = run(capsys, "rho", "C~", "--json", "--vector", "--family", "Complete", "4")
    d = json.loads(out)["results"]
    assert code == 0
    assert abs(d[0]["rho"] - 3) < 1e-10 and len(d[0]["x"]) == 4
    assert abs(d[1]["rho_exact"] - 3) < 1e-12


def test_free_exit_codes(capsys):
    gem = graph6.encode(family("Fan", 5))
    assert run(capsys, "free", S13)[0] == 0
    code, out, _ = run(capsys, "free", "--json", gem)
    d = json.loads(out)
    assert code == 2 and not d["results"][0]["free"] and d["results"][0]["witness"]
    code, _, _ = run(capsys, "free", "--forbidden", "g6:C~", "C~")
    assert code == 2


def test_enum_count(capsys):
    code, out, _ = run(capsys, "enum", "6", "--count")
    assert code == 0 and out.strip() == "30"
    code, out, _ = run(capsys, "enum", "7", "--count", "--unpruned")
    assert out.strip() == "79"
    code, out, _ = run(capsys, "enum", "4", "--count", "--all")
    assert out.strip() == "11"


def test_enum_stream_and_guard(capsys):
    code, out, _ = run(capsys, "enum", "3")
    assert code == 0 and len(out.split()) == 3
    code, _, err = run(capsys, "enum", "30")
    assert code == 1 and "guard" in err


def test_scan_and_records(capsys, tmp_path):
    store = str(tmp_path / "r.jsonl")
    code, out, _ = run(capsys, "scan", "11", "--store", store, "--json")
    recs = json.loads(out)["records"]
    assert code == 0 and recs[0]["graph6"] == S13
    code, out, _ = run(capsys, "records", store, "--rank", "1")
    assert code == 0 and S13 in out


def test_search(capsys):
    code, out, _ = run(capsys, "search", "11", "--restarts", "3", "--json", "--seed", "5")
    d = json.loads(out)
    assert code == 0 and d["config"]["seed"] == 5 and d["best"]["graph6"] == S13


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "11")
    assert code == 0 and "verdict: PASS" in out
    code, out, _ = run(capsys, "certify", "11", "--margin", "10")
    assert code == 2 and "INDISTINGUISHABLE" in out


def test_check_lemma22(capsys):
    code, out, _ = run(capsys, "check-lemma22", "--m-max", "101", "--json")
    d = json.loads(out)
    assert code == 0 and d["checked"] == 40 and d["verdict"] == "PASS"
    code, _, _ = run(capsys, "--margin", "1", "check-lemma22", "--m-max", "25")
    assert code == 2


def test_identity_check(capsys):
    code, out, _ = run(capsys, "identity-check", "--count", "50")
    assert code == 0 and "PASS" in out
    code, _, _ = run(capsys, "identity-check", "--count", "5", "--threshold", "-1")
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [["--seed", "9", "search", "11", "--restarts", "2", "--json"], ["search", "11", "--restarts", "2", "--json", "--seed", "9"]],
)
def test_global_flags_either_side(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and json.loads(out)["config"]["seed"] == 9


@pytest.mark.parametrize(
    "argv",
    [["build", "Nope", "3"], ["build", "Snk", "3", "3"], ["rho", "!!"], ["nosuch"], ["certify", "11", "--mode", "x"]],
)
def test_errors_exit_one(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "gemturan.cli", "build", "Path", "3"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "Bg"
