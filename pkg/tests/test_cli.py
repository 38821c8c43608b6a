import json
import subprocess
import sys

import pytest

from twyang.cli import SUITE_NAMES, SuiteConfig, main, run_suite
from twyang.identdsl import suite_path


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, [json.loads(x) for x in out.splitlines() if x], err


def test_record_shape(capsys):
    code, recs, _ = run(["verify", "--suite", "qybe", "--type", "so3", "--jobs", "1"], capsys)
    assert code == 0
    assert list(recs[0]) == ["suite", "case_id", "status", "witness", "elapsed_ms"]
    assert recs[0]["case_id"] == "so3" and recs[0]["status"] == "pass" and recs[0]["witness"] == ""


def test_compact_json_line(capsys):
    main(["verify", "--suite", "qybe", "--type", "gl2", "--jobs", "1"])
    out = capsys.readouterr().out
    assert out.startswith('{"suite":"qybe","case_id":"gl2","status":"pass","witness":"",')


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "nope"],
    ["verify", "--suite", "drinfeld", "--type", "CI:1", "--order", "2"],
    ["verify", "--suite", "drinfeld", "--order", "3"],
    ["verify", "--suite", "scalar-k", "--type", "XX:2"],
    ["verify", "--suite", "qybe", "--type", "gl9"],
    ["verify", "--suite", "rtt", "--points", "float"],
])
def test_config_errors(argv, capsys):
    code, recs, err = run(argv, capsys)
    assert code == 2 and not recs and "error" in err


def test_malformed_dsl(tmp_path, capsys):
    f = tmp_path / "bad.idl"
    f.write_text("P[1,2] == I[];\nR[1,2](u ==\n")
    code, recs, err = run(["verify", "--suite", "dsl", "--dsl-file", str(f)], capsys)
    assert code == 2
    assert ":2:" in err


def test_failing_dsl_exits_one(tmp_path, capsys):
    f = tmp_path / "wrong.idl"
    f.write_text("# not commuting\nR[1,2](u)*R[2,3](v) == R[2,3](v)*R[1,2](u);\n")
    code, recs, _ = run(["verify", "--suite", "dsl", "--dsl-file", str(f)], capsys)
    assert code == 1
    assert recs[0]["status"] == "fail" and recs[0]["witness"]


def test_shipped_dsl_file(capsys):
    code, recs, _ = run(["verify", "--suite", "dsl", "--dsl-file",
                         str(suite_path("projector_so3.idl"))], capsys)
    assert code == 0 and all(r["status"] == "pass" for r in recs)


def test_skip_for_unsupported_pair(capsys):
    code, recs, _ = run(["verify", "--suite", "determinants", "--type", "CI:1"], capsys)
    assert code == 0
    assert recs == [{"suite": "determinants", "case_id": "CI:1", "status": "skip",
                     "witness": "", "elapsed_ms": 0.0}]


def test_stable_order_across_jobs():
    cfg = SuiteConfig("scalar-k")
    a = [(r["case_id"], r["status"]) for r in run_suite(cfg, 1)]
    b = [(r["case_id"], r["status"]) for r in run_suite(cfg, 3)]
    assert a == b


def test_out_file(tmp_path):
    out = tmp_path / "r.ndjson"
    assert main(["verify", "--suite", "rtt", "--type", "sp2", "--out", str(out)]) == 0
    assert json.loads(out.read_text().splitlines()[0])["suite"] == "rtt"


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "twyang", "suites"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.split() == list(SUITE_NAMES)


def test_relative_suite_name(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    code, recs, _ = run(["verify", "--suite", "dsl", "--dsl-file", "suites/projector_so3.idl"], capsys)
    assert code == 0 and recs
    code, _, err = run(["verify", "--suite", "dsl", "--dsl-file", "suites/missing.idl"], capsys)
    assert code == 2 and "cannot read" in err
