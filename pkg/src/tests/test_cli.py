"""
Test the tdom command line: reports, series files and exit codes
"""
import io
import json
import math
import sys
from pathlib import Path

import pandas as pd
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.components.bounds import LOG_BASE_WARNING, ZERO_BOUND_NOTE
from src.components.families import ExampleId, build, exponential_series
from src.components.series import load_series, max_relative_difference, monomial, save_series, series_from_dict
from src.scripts.tdom import EXIT_CONTRACT, EXIT_OK, EXIT_UNCERTIFIED, EXIT_USAGE, parse_complex, run


def tdom(*argv):
    buffer = io.StringIO()
    code = run([str(a) for a in argv], stdout=buffer)
    return code, buffer.getvalue()


def test_bounds_report():
    """Test the q bound report for p = 1, R = 1, A = 1"""
    code, text = tdom("bounds", "--p", 1, "--R", 1, "--A", 1)
    assert code == EXIT_OK
    report = json.loads(text)
    assert report["command"] == "bounds"
    assert report["outputs"]["q"] == pytest.approx(5 + 5 * math.log(3), abs=1e-9)
    assert report["outputs"]["valid_radius"] == 0.25
    assert LOG_BASE_WARNING in report["warnings"]
    assert ZERO_BOUND_NOTE in report["warnings"]
    print("PASS: Bounds report test passed")


def test_bounds_csv():
    code, text = tdom("bounds", "--p", 2, "--R", 1, "--csv")
    assert code == EXIT_OK
    frame = pd.read_csv(io.StringIO(text))
    assert len(frame) == 1
    assert frame["command"][0] == "bounds"
    assert frame["q"][0] == pytest.approx(10 + 5 * math.log(11), abs=1e-9)


def test_bounds_from_series(tmp_path):
    path = save_series(build(ExampleId("koebe", 1, 40)), tmp_path / "koebe.json")
    code, text = tdom("bounds", "--p", 1, "--R", 1, "--from-series", path, "--kmax", 40)
    assert code == EXIT_OK
    assert json.loads(text)["outputs"]["A"] == pytest.approx(1.0, rel=1e-14)


def test_eta_report():
    code, text = tdom("eta", "--p", 1, "--R", 4)
    assert code == EXIT_OK
    outputs = json.loads(text)["outputs"]
    assert outputs["eta_argmax_k"] == 4
    assert math.exp(outputs["log_eta"]) == pytest.approx(128 / 3, rel=1e-12)


def test_zeros_on_example():
    code, text = tdom("zeros", "--example", "fp", "--p", 3, "--order", 120, "--r", 7)
    assert code == EXIT_OK
    outputs = json.loads(text)["outputs"]
    assert outputs["count"] == 6
    assert outputs["certified"] is True


def test_zeros_with_target():
    code, text = tdom("zeros", "--example", "geometric", "--order", 200, "--r", 0.5, "--c", "1.5,0")
    assert code == EXIT_OK
    assert json.loads(text)["outputs"]["count"] == 1


def test_borel_to_stdout():
    """Test that the Borel transform of the geometric series is written as 1/k!"""
    code, text = tdom("borel", "--example", "geometric", "--order", 20, "--out", "-")
    assert code == EXIT_OK
    g = series_from_dict(json.loads(text))
    assert g.coeffs == exponential_series(20).coeffs


def test_borel_integral(tmp_path):
    path = save_series(exponential_series(120), tmp_path / "exp.json")
    code, text = tdom("borel", "--series", path, "--integral", "--z", "0.5,0")
    assert code == EXIT_OK
    value = json.loads(text)["outputs"]["value"]
    assert complex(*value) == pytest.approx(2.0, abs=1e-8)

    code, text = tdom("borel", "--example", "geometric", "--order", 120, "--integral", "--z", "0.5,0")
    assert code == EXIT_CONTRACT
    assert json.loads(text)["outputs"]["success"] is False


def test_borel_inverse_inline():
    code, text = tdom("borel", "--example", "koebe", "--order", 10, "--inverse")
    assert code == EXIT_OK
    assert json.loads(text)["outputs"]["series"]["order"] == 10


def test_example_borel_roundtrip(tmp_path):
    f_path, g_path, h_path = tmp_path / "f.json", tmp_path / "g.json", tmp_path / "h.json"
    assert tdom("example", "--name", "fp_tilde", "--p", 3, "--order", 60, "--out", f_path)[0] == EXIT_OK
    assert tdom("borel", "--series", f_path, "--out", g_path)[0] == EXIT_OK
    assert tdom("borel", "--series", g_path, "--inverse", "--out", h_path)[0] == EXIT_OK
    assert max_relative_difference(load_series(h_path), load_series(f_path)) <= 4.5e-16


def test_divergent_counterpart_warning(tmp_path):
    code, text = tdom("borel", "--example", "exp_power", "--p", 2, "--order", 10, "--inverse")
    assert code == EXIT_OK
    assert any("divergent" in w for w in json.loads(text)["warnings"])

    path = tmp_path / "h_hat.json"
    assert tdom("borel", "--example", "exp_power", "--p", 2, "--order", 100, "--inverse", "--out", path)[0] == EXIT_OK
    assert load_series(path).divergent
    assert tdom("zeros", "--series", path, "--r", 0.05)[0] == EXIT_CONTRACT


def test_dominate_check():
    code, text = tdom("dominate", "--example", "geometric", "--order", 100, "--N", 0, "--R", 0.5,
                      "--kmax", 100, "--check", 0.4)
    assert code == EXIT_OK
    outputs = json.loads(text)["outputs"]
    assert outputs["minimal_factor"] == pytest.approx(0.5)
    assert outputs["holds"] is False
    assert outputs["worst_k"] == 1


def test_usage_errors(tmp_path):
    assert tdom("bounds")[0] == EXIT_USAGE
    assert tdom("zeros", "--example", "fp", "--r", 7)[0] == EXIT_USAGE
    assert tdom("zeros", "--series", tmp_path / "missing.json", "--r", 1)[0] == EXIT_USAGE
    assert tdom("bounds", "--p", 1, "--R", 1, "--from-series", tmp_path / "x.json")[0] == EXIT_USAGE


def test_contract_violation():
    code, text = tdom("bounds", "--p", 0, "--R", 1)
    assert code == EXIT_CONTRACT
    outputs = json.loads(text)["outputs"]
    assert outputs["success"] is False
    assert "p must be" in outputs["error"]
    assert tdom("zeros", "--example", "geometric", "--order", 40, "--r", 1.5)[0] == EXIT_CONTRACT


def test_uncertified_results(tmp_path):
    path = save_series(monomial(100, order=404), tmp_path / "z100.json")
    code, text = tdom("zeros", "--series", path, "--r", 1, "--samples", 64, "--max-samples", 64)
    assert code == EXIT_UNCERTIFIED
    assert json.loads(text)["outputs"]["certified"] is False

    code, _ = tdom("valency", "--series", path, "--r", 1, "--samples", 64, "--max-samples", 64, "--grid", 2)
    assert code == EXIT_UNCERTIFIED


def test_valency_rows_csv():
    code, text = tdom("valency", "--example", "geometric", "--order", 200, "--r", 0.9, "--min-modulus", 1e-6,
                      "--grid", 3, "--csv")
    assert code == EXIT_OK
    frame = pd.read_csv(io.StringIO(text))
    assert set(frame["count"]) == {1}
    assert frame["certified"].all()


def test_parse_complex():
    assert parse_complex("1.5") == 1.5
    assert parse_complex("1,-2") == complex(1, -2)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
