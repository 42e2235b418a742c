import json
import subprocess
import sys

import pytest

from qhowe import cli
from qhowe.errors import InvariantViolation
from qhowe.quantumgroup import PBWElem


def run_json(*argv):
    code, out = cli.run([*argv, "--json"])
    return code, (json.loads(out) if out and code != 2 else None)


def test_scalars_qint():
    code, doc = run_json("scalars", "qint", "3")
    assert code == 0
    assert doc["schema"] == cli.SCHEMA
    assert doc["summary"]["status"] == "pass"
    assert doc["command"] == "scalars qint"


@pytest.mark.parametrize("argv,key,value", [
    (["scalars", "qbinom", "4", "2", "--base", "2"], "value", "q^8 + q^4 + 2 + q^-4 + q^-8"),
    (["ring", "normal", "z", "x"], "normal_form", "(q^-2)*x*z"),
    (["verma", "casimir", "--lambda", "0", "--mu", "2", "--depth", "6"], "collisions", [[0, 3], [1, 2]]),
])
def test_value_commands(argv, key, value):
    code, doc = run_json(*argv)
    assert code == 0
    assert doc["certificates"] == []
    assert doc["results"][key] == value


@pytest.mark.parametrize("argv", [
    ["scalars", "fuzz", "--samples", "20"],
    ["ring", "fuzz", "--ring", "xy_n", "--n", "2", "--samples", "200"],
    ["ring", "center", "--degree", "4"],
    ["weyl", "identities", "--samples", "50"],
    ["qgroup", "commutators", "--smax", "4"],
    ["qgroup", "casimir"],
    ["qgroup", "matrices", "--n", "3"],
    ["howe", "verify", "--case", "sln", "--n", "2"],
    ["howe", "harmonics", "--label", "2"],
    ["howe", "fischer", "--degree", "3"],
    ["howe", "bernstein", "--case", "sln", "--n", "3", "--smax", "3"],
    ["howe", "invariants", "--degree", "4"],
    ["verma", "singular", "--lambda", "1", "--mu", "3", "--n", "6"],
    ["verma", "decompose", "--lambda", "generic", "--mu", "sum=2", "--depth", "5"],
    ["verma", "verify", "--lambda", "1", "--mu", "1", "--depth", "5"],
    ["verma", "casimir", "--lambda", "generic", "--depth", "6"],
    ["verma", "embedding", "--lambda", "2"],
    ["verma", "pqmodule", "--lambda-int", "1", "--depth", "6"],
])
def test_verbs_pass(argv):
    code, doc = run_json(*argv)
    assert code == 0, doc
    assert doc["summary"]["failed"] == 0
    assert doc["summary"]["total"] == len(doc["certificates"]) > 0


def test_generic_embedding_is_reported_not_failed():
    code, doc = run_json("verma", "embedding", "--lambda", "generic")
    assert code == 0
    assert any(c["claim"].endswith("no-embedded-verma") for c in doc["certificates"])


@pytest.mark.parametrize("argv", [
    ["howe", "verify", "--case", "sln"],
    ["verma", "singular", "--lambda", "x"],
    ["verma", "pqmodule", "--lambda-int", "3", "--depth", "2"],
    ["scalars", "nope"],
    [],
])
def test_usage_errors(argv):
    code, _ = cli.run(argv)
    assert code == 2


def test_failing_certificate_sets_exit_code(monkeypatch):
    def broken(s, d=1):
        return PBWElem.mono(1, 0, 0), PBWElem()

    monkeypatch.setattr(cli, "commutator_identities", broken)
    code, out = cli.run(["qgroup", "commutators", "--smax", "2", "--json"])
    assert code == 1
    doc = json.loads(out)
    assert doc["summary"]["status"] == "fail"
    bad = [c for c in doc["certificates"] if c["status"] == "fail"]
    assert bad and all(c["residue"] is not None for c in bad)


def test_invariant_violation_becomes_failure():
    def boom():
        raise InvariantViolation("broken", residue="r")

    certs = cli.run_tasks([("claim-1", boom), ("claim-2", lambda: (True, None))], {})
    assert [c.passed for c in certs] == [False, True]
    assert certs[0].residue["error"] == "broken"


def test_empty_report():
    doc = json.loads(cli.report_emit([], command="none"))
    assert doc["summary"] == {"total": 0, "passed": 0, "failed": 0, "status": "pass"}
    assert doc["certificates"] == []


def test_natural_claim_order():
    tasks = [(f"s={s}", lambda: (True, None)) for s in (10, 2, 1)]
    assert [c.claim for c in cli.run_tasks(tasks, {})] == ["s=1", "s=2", "s=10"]


def test_reports_are_deterministic(monkeypatch):
    argv = ["ring", "fuzz", "--ring", "xyz_sl2", "--samples", "300", "--json"]
    first = cli.run(argv)
    monkeypatch.setenv("QHOWE_THREADS", "4")
    assert cli.run(argv) == first
    argv = ["qgroup", "commutators", "--smax", "6", "--json"]
    threaded = cli.run(argv)
    monkeypatch.setenv("QHOWE_THREADS", "1")
    assert cli.run(argv) == threaded


def test_timing_is_opt_in():
    _, doc = run_json("qgroup", "casimir")
    assert "timing_s" not in doc["certificates"][0]
    _, out = cli.run(["qgroup", "casimir", "--json", "--timing"])
    assert "timing_s" in json.loads(out)["certificates"][0]


def test_text_output():
    code, out = cli.run(["qgroup", "casimir"])
    assert code == 0
    assert out.splitlines()[-1].endswith("certificates passed")
    assert any(line.startswith("PASS") for line in out.splitlines())


def test_module_entry_point():
    ok = subprocess.run([sys.executable, "-m", "qhowe", "qgroup", "casimir"], capture_output=True, text=True)
    assert ok.returncode == 0 and "PASS" in ok.stdout
    bad = subprocess.run([sys.executable, "-m", "qhowe", "howe", "verify", "--case", "sln"],
                         capture_output=True, text=True)
    assert bad.returncode == 2 and "usage error" in bad.stderr
