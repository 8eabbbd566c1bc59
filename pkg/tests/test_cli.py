import csv
import io
import json

import pytest

from eulerfan.cli import run

SYM = {"c_v": 1.0, "data": {"left": {"rho": 1, "v2": 1, "p": 1}, "right": {"rho": 1, "v2": -1, "p": 1}}}
RNEG = {"c_v": 1.0, "data": {"left": {"rho": 1, "v2": 0, "p": 1}, "right": {"rho": 2, "v2": 0, "p": 1.5}}}


def call(tmp_path, capsys, argv, doc):
    path = tmp_path / "in.json"
    path.write_text(json.dumps(doc))
    code = run([*argv, "--input", str(path)])
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_riemann(tmp_path, capsys):
    code, out, _ = call(tmp_path, capsys, ["solve-riemann"], SYM)
    assert code == 0
    res = json.loads(out)
    assert abs(res["fan"]["v_M"]) < 1e-12
    assert res["c_v"] == 1.0 and res["data"]["left"]["rho"] == 1.0


def test_verify_reports_failure_as_result(tmp_path, capsys):
    reg = {"rho": 2, "alpha": 0, "beta": 0, "gamma": 0, "delta": 0, "C": 1, "p": 2}
    doc = {**SYM, "candidate": {"n": 1, "mu": [1.0, -1.0], "regions": [reg]}}
    code, out, _ = call(tmp_path, capsys, ["verify"], doc)
    assert code == 0
    assert json.loads(out)["report"]["passed"] is False


def test_heat_capacity_error(tmp_path, capsys):
    code, out, err = call(tmp_path, capsys, ["search-2fan", "--c-v", "0.4"], SYM)
    assert code == 1 and out == ""
    assert json.loads(err)["error"] == "heat_capacity_too_small"


def test_excluded_case_error(tmp_path, capsys):
    code, _, err = call(tmp_path, capsys, ["search-1fan"], SYM)
    assert code == 1
    assert json.loads(err)["error"] == "excluded_case"


@pytest.mark.parametrize(
    "doc",
    [
        {"data": SYM["data"]},
        {"c_v": 1.0, "data": {"left": {"rho": -1, "v2": 0, "p": 1}, "right": {"rho": 1, "v2": 0, "p": 1}}},
        {"c_v": 1.0},
        [1, 2],
    ],
)
def test_malformed_input(tmp_path, capsys, doc):
    code, _, err = call(tmp_path, capsys, ["solve-riemann"], doc)
    assert code == 2
    assert json.loads(err)["error"] == "malformed_input"


def test_bad_flags_exit_two(capsys):
    assert run(["no-such-command"]) == 2
    assert run(["search-2fan", "--max-j", "500", "--input", "/nonexistent"]) == 2


def test_search_2fan_round_trip_and_determinism(tmp_path, capsys):
    code, out, _ = call(tmp_path, capsys, ["search-2fan", "--c-v", "1.5"], SYM)
    assert code == 0
    first = json.loads(out)
    assert first["report"]["passed"]
    _, again, _ = call(tmp_path, capsys, ["search-2fan", "--c-v", "1.5"], SYM)
    assert again == out
    code, ver, _ = call(tmp_path, capsys, ["verify"], first)
    rep = json.loads(ver)["report"]
    assert code == 0 and rep["passed"] is True
    assert rep["relative_residuals"] == first["report"]["relative_residuals"]


def test_search_2fan_scan_csv(tmp_path, capsys):
    code, out, _ = call(tmp_path, capsys, ["search-2fan", "--c-v", "1.5", "--scan", "--max-j", "2", "--max-k", "3"], SYM)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 8
    assert {"order_0", "sc1", "adml", "feasible"} <= set(rows[0])


def test_one_fan_workflow(tmp_path, capsys):
    code, out, _ = call(tmp_path, capsys, ["threshold-u"], RNEG)
    assert code == 0
    thr = json.loads(out)["threshold"]
    doc = {"c_v": 1.0, "data": {"left": {"rho": 1, "v2": 0, "p": 1}, "right": {"rho": 2, "v2": thr["U"], "p": 1.5}}}
    code, out, _ = call(tmp_path, capsys, ["search-1fan", "--rho1", str(thr["rho1"])], doc)
    res = json.loads(out)
    assert code == 0 and res["report"]["passed"]
    code, ver, _ = call(tmp_path, capsys, ["verify"], res)
    assert json.loads(ver)["report"]["passed"] is True


def test_threshold_budget_error(tmp_path, capsys):
    code, _, err = call(tmp_path, capsys, ["threshold-u", "--u-cap", "0.5"], RNEG)
    assert code == 1 and json.loads(err)["error"] == "budget_exhausted"


def test_threshold_scan_csv_and_output_file(tmp_path, capsys):
    target = tmp_path / "scan.csv"
    code, out, _ = call(tmp_path, capsys, ["threshold-scan", "--output", str(target)], RNEG)
    assert code == 0 and out == ""
    rows = list(csv.DictReader(io.StringIO(target.read_text())))
    assert rows and all(r["status"] == "ok" for r in rows)
    assert "y_sign_shifted" in rows[0]
