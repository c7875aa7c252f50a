import json

import pytest

from modnc import selfcheck
from modnc.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_coeffs_json_schema(capsys):
    code, out, _ = run_cli(capsys, "coeffs", "--k", "2", "--n", "8")
    assert code == 0
    rec = json.loads(out)
    assert rec["schema_version"] == "1"
    assert rec["command"] == "coeffs"
    assert rec["parameters"] == {"k": 2, "n": 8}
    assert rec["results"]["exact"] is True
    coeffs = rec["results"]["coefficients"]
    assert coeffs[6] == "1" and coeffs[7] == "2"
    assert all(isinstance(c, str) for c in coeffs)


def test_coeffs_k3_order_zero(capsys):
    code, out, _ = run_cli(capsys, "coeffs", "--k", "3", "--n", "0")
    assert code == 0
    assert json.loads(out)["results"]["coefficients"] == ["1"]


def test_coeffs_csv_contract(capsys):
    code, out, _ = run_cli(capsys, "coeffs", "--k", "2", "--n", "3",
                           "--format", "csv")
    assert code == 0
    assert out == "n,Q_k_n\n0,1\n1,1\n2,1\n3,1\n"


def test_deterministic_output(capsys):
    _, first, _ = run_cli(capsys, "table2", "--digits", "4")
    _, second, _ = run_cli(capsys, "table2", "--digits", "4")
    assert first == second


def test_usage_errors_exit_1(capsys):
    assert run_cli(capsys, "coeffs", "--k", "11", "--n", "2")[0] == 1
    assert run_cli(capsys, "coeffs", "--k", "1", "--n", "2")[0] == 1
    assert run_cli(capsys, "coeffs", "--k", "2", "--n", "2",
                   "--format", "xml")[0] == 1
    assert run_cli(capsys, "asympt", "--k", "3", "--tol", "spam")[0] == 1


def test_table1_check(capsys):
    code, out, _ = run_cli(capsys, "table1-check")
    assert code == 0
    rec = json.loads(out)
    assert rec["results"]["all_pass"] is True
    assert set(rec["results"]["per_k"]) == {str(k) for k in range(2, 10)}


def test_table2_rounding(capsys):
    code, out, _ = run_cli(capsys, "table2", "--digits", "2",
                           "--format", "csv")
    assert code == 0
    assert out.splitlines()[1] == "3,2.54"


def test_table2_k8_row(capsys):
    _, out, _ = run_cli(capsys, "table2", "--digits", "4")
    rows = json.loads(out)["results"]["rows"]
    assert {"k": 8, "rate": "4.3087"}.items() <= {
        "k": rows[5]["k"], "rate": rows[5]["growth_rate"]}.items()


def test_asympt_k2(capsys):
    code, out, _ = run_cli(capsys, "asympt", "--k", "2", "--digits", "4")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["growth_rate"] == "1.8489"
    assert res["theta_derivative_nonzero"] is True
    assert res["fitted_exponent"] is None
    lo, hi = res["gamma_interval"]
    assert "/" in lo and "/" in hi


def test_asympt_with_fit(capsys):
    code, out, _ = run_cli(capsys, "asympt", "--k", "2", "--digits", "4",
                           "--fit-order", "240")
    assert code == 0
    res = json.loads(out)["results"]
    fe = res["fitted_exponent"]
    assert fe["exact"] is False
    assert abs(fe["value"] - 1.5) < 0.2
    assert fe["tolerance"] >= 0
    fc = res["fitted_constant"]
    assert fc["power_law_exponent"] == "3/2"
    assert abs(fc["value"] - 1.4848) < 0.15


def test_remark_command(capsys):
    code, out, _ = run_cli(capsys, "remark", "--n", "12")
    assert code == 0
    assert json.loads(out)["results"]["first_mismatch"] == 8


def test_shapes_command(capsys):
    code, out, _ = run_cli(capsys, "shapes", "--k", "3", "--s", "3",
                           "--classes", "5")
    assert code == 0
    entries = json.loads(out)["results"]["entries"]
    assert {"index": [1, 1, 0, 0, 0], "count": "1"} in entries


def test_oracle_command_agrees_with_coeffs(capsys):
    _, brute, _ = run_cli(capsys, "oracle", "--k", "2", "--n", "8",
                          "--format", "csv")
    _, closed, _ = run_cli(capsys, "coeffs", "--k", "2", "--n", "8",
                           "--format", "csv")
    assert brute == closed


def test_selftest_quick_passes(capsys):
    code, out, _ = run_cli(capsys, "selftest", "--level", "quick")
    assert code == 0
    rec = json.loads(out)
    assert rec["results"]["all_pass"] is True
    assert rec["results"]["failed"] == []


def test_selftest_names_failing_check(capsys, monkeypatch):
    broken = [("always-green", lambda: (True, "fine")),
              ("deliberately-red", lambda: (False, "mutation"))]
    monkeypatch.setattr(selfcheck, "QUICK_CHECKS", broken)
    code, out, _ = run_cli(capsys, "selftest", "--level", "quick")
    assert code == 3
    rec = json.loads(out)
    assert rec["results"]["failed"] == ["deliberately-red"]


def test_csv_rejected_for_non_tabular(capsys):
    code, _, err = run_cli(capsys, "remark", "--format", "csv")
    assert code == 1
