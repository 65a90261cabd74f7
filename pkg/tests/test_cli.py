import json
import os
import subprocess
import sys

import pytest

from qplane.cli import cmd_apply, cmd_check, cmd_normalize, main
from qplane.parser import parse
from qplane.presentations import GAMMA


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("QPLANE_SEED", None)
    if env:
        full_env.update(env)
    return subprocess.run(
        [sys.executable, "-m", "qplane", *args],
        capture_output=True, text=True, env=full_env, timeout=120,
    )


def test_normalize_examples():
    assert cmd_normalize("gamma", "y*dx") == "q^-1*dx*y + (q^-1 - 1)*dy*x"
    assert cmd_normalize("omega", "phi*theta") == "-q^-1*theta*phi"
    assert cmd_normalize("A", "x*xi") == "1"


def test_apply_examples():
    assert cmd_apply("delta", "A", "y") == "y (x) 1 + x (x) y"
    assert cmd_apply("epsilon", "A", "x^3") == "1"
    assert cmd_apply("delta-r", "gamma", "dy") == "dy (x) 1 + dx (x) y"
    assert cmd_apply("delta-l", "gamma", "dy") == "x (x) dy"


def test_apply_outputs_equal_the_uncanonical_spellings():
    # same element, printed in canonical order
    out = cmd_apply("antipode", "gamma", "dx")
    assert parse(out, GAMMA) == parse("-xi*dx*xi", GAMMA)
    assert out == "-q*dx*xi^2"
    out = cmd_apply("d", "gamma", "x*y")
    assert parse(out, GAMMA) == parse("dx*y + x*dy", GAMMA)


def test_main_exit_codes(capsys):
    assert main(["normalize", "--algebra", "A", "y*x"]) == 0
    assert capsys.readouterr().out.strip() == "q^-1*x*y"
    assert main(["normalize", "--algebra", "A", "y*"]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["normalize", "--algebra", "nope", "x"]) == 2
    assert main(["apply", "--map", "d", "--algebra", "A", "x"]) == 2
    assert main(["apply", "--map", "sideways", "--algebra", "A", "x"]) == 2
    assert main(["check", "--suite", "hopf-A", "--max-degree", "1"]) == 2
    assert main([]) == 2


def test_check_report_schema():
    report, text = cmd_check("hopf-A", 4, 7, "json", 10)
    data = json.loads(text)
    assert set(data) == {"suite", "algebra", "seed", "checks", "informational", "pass", "version"}
    assert data["pass"] is True and data["seed"] == 7 and data["suite"] == "hopf-A"
    ids = [c["id"] for c in data["checks"]]
    assert ids == sorted(ids)
    for c in data["checks"]:
        assert set(c) == {"id", "paper_eq", "instances", "failures", "witness"}
        assert (c["witness"] is None) == (c["failures"] == 0)
    eqs = {c["paper_eq"] for c in data["checks"]}
    assert {"3", "5", "8"} <= eqs
    probe = {i["id"]: i for i in data["informational"]}
    assert probe["A:antipode-inverse[y]"]["derived_q_exponent"] == 1
    assert probe["A:antipode-inverse[y]"]["printed_q_exponent"] == -1


def test_confluence_and_forms_suites_pass():
    report, _ = cmd_check("confluence")
    assert report.passed and len(report.checks) == 4
    report, _ = cmd_check("forms", n_random=10)
    assert report.passed


def test_json_is_deterministic_across_processes():
    a = run("check", "--suite", "hopf-A", "--seed", "7", "--format", "json", "--random", "10")
    b = run("check", "--suite", "hopf-A", "--seed", "7", "--format", "json", "--random", "10")
    assert a.returncode == 0 and a.stdout == b.stdout


def test_env_seed_overrides_flag():
    a = run("check", "--suite", "borel", "--seed", "1", "--format", "json", "--random", "5",
            env={"QPLANE_SEED": "5"})
    assert json.loads(a.stdout)["seed"] == 5
    bad = run("check", "--suite", "borel", env={"QPLANE_SEED": "five"})
    assert bad.returncode == 2


def test_failing_check_exits_one(monkeypatch, capsys):
    from qplane import cli
    from qplane.verify import CheckReport, CheckResult

    def fake(suite, max_degree=4, seed=0, n_random=50):
        r = CheckReport(suite, "A", seed)
        r.checks.append(CheckResult("A:fake", "0", 1, 1, "w"))
        return r

    monkeypatch.setattr(cli, "run_suite", fake)
    assert main(["check", "--suite", "hopf-A"]) == 1
    assert "FAIL" in capsys.readouterr().out


@pytest.mark.parametrize("args, code", [
    (("normalize", "--algebra", "gamma", "y*dx"), 0),
    (("normalize", "--algebra", "gamma", "y*(dx"), 2),
    (("apply", "--map", "delta", "--algebra", "A", "y"), 0),
])
def test_module_entry_point(args, code):
    assert run(*args).returncode == code
