from __future__ import annotations

import json
import shutil
import subprocess
from importlib import resources

import jsonschema
import pytest

from eqcdr.cli import main
from eqcdr.verify import Options, parse_l_range, run_suites


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def usage_error(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    capsys.readouterr()
    return exc.value.code


def schema():
    return json.loads(resources.files("eqcdr").joinpath("report_schema.json").read_text())


def strip_times(doc):
    for c in doc["checks"]:
        c.pop("wallTimeMs")
    return doc


# --- kernel ---------------------------------------------------------------------

def test_kernel_latex_rank_one(capsys):
    code, out = run(["kernel", "--l", "1", "--format", "latex"], capsys)
    assert code == 0 and "\\frac{dz}{z}" in out


def test_kernel_json_rank_two(capsys):
    code, out = run(["kernel", "--l", "2", "--format", "json"], capsys)
    doc = json.loads(out)
    assert code == 0 and len(doc["beta"]["terms"]) == 6 and doc["termCount"] == 6


def test_kernel_sexpr(capsys):
    code, out = run(["kernel", "--l", "2", "--format", "sexpr"], capsys)
    assert code == 0 and out.startswith("(kernel 2")


@pytest.mark.parametrize("l", ["0", "5"])
def test_kernel_range(l, capsys):
    assert usage_error(["kernel", "--l", l], capsys) == 2


def test_kernel_bad_format(capsys):
    assert usage_error(["kernel", "--l", "1", "--format", "pdf"], capsys) == 2


# --- verify ---------------------------------------------------------------------

def test_verify_oracle(capsys):
    code, out = run(["verify", "--suite", "oracle", "--l", "1..3"], capsys)
    doc = json.loads(out)
    jsonschema.validate(doc, schema())
    assert code == 0 and [c["l"] for c in doc["checks"]] == [1, 2, 3]
    assert all(c["status"] == "pass" for c in doc["checks"])


def test_verify_integral(capsys):
    code, out = run(["verify", "--suite", "integral", "--l", "1..3"], capsys)
    doc = json.loads(out)
    assert code == 0
    exact = [c for c in doc["checks"] if c["name"] == "integral.sphere_integral_exact"]
    assert len(exact) == 3 and all(c["residualDescription"] == "0" for c in exact)


def test_verify_rr(capsys):
    code, out = run(["verify", "--suite", "rr", "--l", "1..4"], capsys)
    assert code == 0


def test_verify_unknown_suite(capsys):
    assert usage_error(["verify", "--suite", "nonsense"], capsys) == 2


@pytest.mark.parametrize("lrange", ["0..2", "3..1", "x", "1..5"])
def test_verify_bad_range(lrange, capsys):
    assert usage_error(["verify", "--suite", "closedness", "--l", lrange], capsys) == 2


def test_verify_report_is_deterministic(capsys, tmp_path):
    argv = ["verify", "--suite", "bianchi,cech", "--l", "1..2", "--seed", "4",
            "--random-connections", "3", "--random-triples", "3"]
    _, a = run(argv, capsys)
    _, b = run(argv + ["--output", str(tmp_path / "r.json")], capsys)
    assert strip_times(json.loads(a)) == strip_times(json.loads(b))
    assert json.loads((tmp_path / "r.json").read_text()) == json.loads(b)
    assert json.loads(a)["seed"] == 4


def test_verify_parallel_matches_serial():
    opts = Options(seed=2, random_connections=2, random_triples=2)
    serial = run_suites(["closedness", "cech"], [1, 2], opts, jobs=1).to_dict()
    parallel = run_suites(["closedness", "cech"], [1, 2], opts, jobs=2).to_dict()
    assert strip_times(serial) == strip_times(parallel)


def test_verify_with_mc(capsys):
    code, out = run(["verify", "--suite", "integral", "--l", "2", "--mc-samples", "20000"], capsys)
    doc = json.loads(out)
    assert code == 0 and any(c["name"] == "integral.sphere_integral_mc" for c in doc["checks"])


def test_failing_check_gives_exit_one(monkeypatch, capsys):
    import eqcdr.verify as v
    monkeypatch.setitem(v.SUITE_CHECKS, "oracle", [("always_fails", lambda l, o: (False, "boom"))])
    code, out = run(["verify", "--suite", "oracle", "--l", "1"], capsys)
    doc = json.loads(out)
    jsonschema.validate(doc, schema())
    assert code == 1 and doc["checks"][0]["status"] == "fail"


def test_crashing_check_is_reported(monkeypatch):
    import eqcdr.verify as v

    def boom(l, o):
        raise RuntimeError("kaput")

    monkeypatch.setitem(v.SUITE_CHECKS, "oracle", [("crash", boom)])
    rep = run_suites(["oracle"], [1])
    assert not rep.passed and "kaput" in rep.checks[0].residualDescription


def test_parse_l_range():
    assert parse_l_range("2") == [2]
    assert parse_l_range("1..3") == [1, 2, 3]


# --- integrate ------------------------------------------------------------------

def test_integrate_exact(capsys):
    code, out = run(["integrate", "--l", "2", "--method", "exact"], capsys)
    assert code == 0 and json.loads(out)["value"] == "1"


def test_integrate_mc(capsys):
    code, out = run(["integrate", "--l", "2", "--method", "mc", "--samples", "1000000", "--seed", "7"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["method"] == "mc"
    assert abs(doc["value"] - 1) <= max(3 * doc["stderr"], 1e-12)


def test_integrate_zero_samples(capsys):
    assert usage_error(["integrate", "--l", "2", "--method", "mc", "--samples", "0"], capsys) == 2
    assert usage_error(["integrate", "--l", "2", "--method", "mc"], capsys) == 2


def test_console_script_and_log_env():
    exe = shutil.which("eqcdr")
    if exe is None:
        pytest.skip("console script not installed")
    res = subprocess.run([exe, "integrate", "--l", "1"], capture_output=True, text=True,
                         env={"EQCDR_LOG": "DEBUG", "PATH": ""})
    assert res.returncode == 0 and json.loads(res.stdout)["value"] == "1"
    res = subprocess.run([exe, "verify", "--suite", "closedness", "--l", "1"], capture_output=True, text=True,
                         env={"EQCDR_LOG": "INFO", "PATH": ""})
    assert res.returncode == 0 and "closedness/deq_beta_equals_chi" in res.stderr
