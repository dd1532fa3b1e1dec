import json
import os
import subprocess
import sys
from fractions import Fraction as F

import pytest

from aleinst.algebra import GradedSeries, UniRatFunc
from aleinst.cli import main, parse_sectors, serialize
from aleinst.reports import CheckReport

K3_EXAMPLE = ["compute", "--k", "3", "--rank", "2", "--w", "2,0,0", "--matter", "pure", "--sector", "1,1",
              "--max-order", "1", "--a", "7/3,-7/3", "--eps", "1/5,1/7"]


def run_cli(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_example(capsys):
    code, out, _ = run_cli(capsys, K3_EXAMPLE)
    assert code == 0
    doc = json.loads(out)
    rows = doc["sectors"]["1,1"]
    assert rows == [{"q": "1", "coeff": "-11025/119402"}]
    a, s = F(7, 3), F(1, 5) + F(1, 7)
    assert F(rows[0]["coeff"]) == -1 / (2 * a * (2 * a - s)) - 1 / (2 * a * (2 * a + s))


def test_list_sectors_example(capsys):
    code, out, _ = run_cli(capsys, ["list-sectors", "--k", "2", "--w", "1,1", "--bound", "2"])
    assert code == 0
    assert json.loads(out) == {"sectors": ["-3/2", "-1/2", "1/2", "3/2"]}


def test_check_pass_report(capsys):
    code, out, _ = run_cli(capsys, ["check", "appendix-b", "--k", "6", "--ranges", "corrected"])
    assert code == 0
    assert out == '{"check":"appendix-b","status":"pass","details":[]}\n'


def test_check_failure_exit_code(capsys):
    code, out, err = run_cli(capsys, ["check", "appendix-b", "--k", "5"])
    assert code == 1
    assert json.loads(out)["status"] == "fail"
    assert json.loads(err.splitlines()[-1])["error"] == "check-failed"


@pytest.mark.parametrize("argv,code_name", [
    (["compute", "--k", "2", "--w", "1,1", "--max-order", "0.5", "--a", "1,-1", "--eps", "1/5,1/7"], "bad-rational"),
    (["compute", "--k", "2", "--w", "1,1", "--max-order", "1"], "config-missing"),
    (["compute", "--k", "2", "--rank", "3", "--w", "1,1", "--max-order", "1"], "rank-mismatch"),
    (["compute", "--k", "2", "--w", "2,0", "--max-order", "1", "--a", "1,1", "--eps", "1/5,1/7"], "degenerate-point"),
    (["compute", "--k", "2", "--w", "1,1", "--max-order", "1", "--a", "1,-1", "--eps", "1/5,1/7", "--sector", "0"],
     "invalid-geometry"),
    (["list-sectors", "--k", "1", "--w", "1", "--bound", "1"], "invalid-geometry"),
])
def test_config_errors(capsys, argv, code_name):
    code, out, err = run_cli(capsys, argv)
    assert code == 2 and out == ""
    assert json.loads(err.splitlines()[-1])["error"] == code_name


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"k": 2, "w": [1, 1], "bound": "1"}))
    code, out, _ = run_cli(capsys, ["list-sectors", "--config", str(cfg)])
    assert json.loads(out)["sectors"] == ["-1/2", "1/2"]
    code, out, _ = run_cli(capsys, ["list-sectors", "--config", str(cfg), "--bound", "2"])
    assert len(json.loads(out)["sectors"]) == 4


def test_config_file_rejects_unknown_keys_and_floats(capsys, tmp_path):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"k": 2, "w": [1, 1], "bound": 0.5}))
    assert run_cli(capsys, ["list-sectors", "--config", str(cfg)])[0] == 2
    cfg.write_text(json.dumps({"k": 2, "w": [1, 1], "radius": 3}))
    code, _, err = run_cli(capsys, ["list-sectors", "--config", str(cfg)])
    assert code == 2 and "config-unknown-key" in err


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    assert main(K3_EXAMPLE + ["--output", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["sectors"]["1,1"][0]["q"] == "1"


def test_serialize_schema_examples():
    assert serialize({}) == b'{"sectors":{}}\n'
    one = {(F(2, 3), F(1, 3)): GradedSeries({(F(1, 3), F(0)): 1}, 1)}
    assert serialize(one) == b'{"sectors":{"2/3,1/3":[{"q":"1/3","coeff":"1"}]}}\n'
    assert serialize(CheckReport("appendix-b", "pass")) == b'{"check":"appendix-b","status":"pass","details":[]}\n'


def test_serialize_rational_function_and_u():
    x = UniRatFunc.x()
    s = {(F(0),): GradedSeries({(F(1), F(1)): 1 / (x + 2), (F(0), F(0)): F(1)}, 1)}
    doc = json.loads(serialize(s))
    assert doc["sectors"]["0"] == [
        {"q": "0", "coeff": "1"},
        {"q": "1", "u": "1", "coeff": {"num": ["1"], "den": ["2", "1"]}},
    ]


def test_round_trip_is_fixed_point(capsys):
    _, out, _ = run_cli(capsys, ["compute", "--k", "2", "--w", "1,1", "--max-order", "3/2", "--a", "7/3,-1/2",
                                 "--eps", "symbolic:-3/7"])
    again = serialize(parse_sectors(out))
    assert again.decode() == out


def test_circ_series_carries_u(capsys):
    _, out, _ = run_cli(capsys, ["compute", "--k", "2", "--w", "1,0", "--max-order", "1", "--a", "7/3",
                                 "--eps", "1/5,1/7", "--series", "circ"])
    rows = json.loads(out)["sectors"]["0"]
    assert any("u" in row for row in rows)


def test_vw_series_counts(capsys):
    _, out, _ = run_cli(capsys, ["compute", "--k", "2", "--w", "1,0", "--max-order", "2", "--series", "vw"])
    assert json.loads(out)["sectors"]["0"] == [{"q": "0", "coeff": "1"}, {"q": "1", "coeff": "2"},
                                               {"q": "2", "coeff": "5"}]


def test_flagged_exit_zero_with_warning(monkeypatch, capsys):
    from aleinst import verify

    monkeypatch.setattr(verify, "check_appendix_d_regression",
                        lambda **kw: CheckReport("appendix-d", "flagged", ["row"]))
    code, out, err = run_cli(capsys, ["check", "appendix-d"])
    assert code == 0 and json.loads(out)["status"] == "flagged"
    assert json.loads(err)["warning"] == "check-flagged"


def test_module_entry_point_and_workers():
    env = dict(os.environ, ALEINST_WORKERS="1")
    argv = [sys.executable, "-m", "aleinst", "compute", "--k", "3", "--w", "1,1,0", "--max-order", "1",
            "--a", "7/3,-7/3", "--eps", "1/5,1/7"]
    one = subprocess.run(argv, env=env, capture_output=True, check=True).stdout
    env["ALEINST_WORKERS"] = "3"
    three = subprocess.run(argv, env=env, capture_output=True, check=True).stdout
    assert one == three and one.startswith(b'{"sectors":{')
