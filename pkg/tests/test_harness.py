import json
import math
from fractions import Fraction

import pytest

from frobcover.cli import main
from frobcover.errors import BudgetExhausted, DimensionTooSmall, InvalidAlpha
from frobcover.harness import (
    SQRT3,
    DensityRequest,
    _planar_lattice_for,
    density_experiment,
    ratio_table,
    trend_rows,
)
from frobcover.lattice import LatticeSpec
from frobcover.reals import compare_reals
from frobcover.report import emit_report, render

F = Fraction
HEX = LatticeSpec(((F(1, 3), F(1, 3)), (F(1), F(0))))  # mu(S_2, HEX) = 1, det 1/3


def test_request_validation():
    with pytest.raises(InvalidAlpha):
        DensityRequest(3, (F(3, 5), F(2, 5)), F(1, 10))
    with pytest.raises(InvalidAlpha):
        DensityRequest(3, (F(2, 5), F(1)), F(1, 10))
    with pytest.raises(InvalidAlpha):
        DensityRequest(4, (F(1, 5), F(2, 5)), F(1, 10))
    with pytest.raises(DimensionTooSmall):
        DensityRequest(2, (F(1, 2),), F(1, 10))
    with pytest.raises(ValueError):
        DensityRequest(3, (F(2, 5), F(3, 5)), F(0))


def test_pulled_back_lattice_keeps_minimum():
    alpha = (F(2, 5), F(3, 5))
    L, pred, _ = _planar_lattice_for(alpha, None, HEX, F(1, 10), 12, {})
    # exact pull-back of the optimal lattice: normalized minimum is sqrt(3)
    assert compare_reals(pred, SQRT3) == 0
    assert L.det_abs > 0


def test_density_slack_epsilon_takes_first_tuple():
    r = density_experiment(DensityRequest(3, (F(2, 5), F(3, 5)), F(10)), lattice=HEX)
    assert r.tried == 1 and r.verify()


def test_density_three_with_given_lattice():
    r = density_experiment(DensityRequest(3, (F(2, 5), F(3, 5)), F(1, 10)), lattice=HEX)
    assert r.verify() and r.density_ok and r.sharpness_ok
    assert max(r.deviations) < F(1, 10)


def test_density_four():
    r = density_experiment(DensityRequest(4, (F(1, 4), F(2, 4), F(3, 4)), F(1, 2)))
    assert r.verify()
    assert compare_reals(r.ratio, F(7, 2)) < 0


def test_density_budget_exhausted():
    with pytest.raises(BudgetExhausted) as e:
        density_experiment(DensityRequest(3, (F(2, 5), F(3, 5)), F(1, 10**6), t_max=3), lattice=HEX)
    assert e.value.best is not None


def test_ratio_table_small():
    tab = ratio_table(3, 7)
    row = next(r for r in tab.rows if r["a"] == (3, 5, 7))
    assert row["g"] == 4 and row["f"] == 19
    assert abs(float(row["ratio"]) - 19 / math.sqrt(105)) < 1e-12
    assert tab.passed


def test_ratio_table_minimum_above_sqrt3():
    tab = ratio_table(3, 30)
    assert compare_reals(tab.min_ratio, SQRT3) >= 0
    assert all(r["davison_margin"] >= 0 for r in tab.rows)


def test_ratio_table_sampled_is_seeded():
    a = ratio_table(4, 80, seed=5, count=30)
    b = ratio_table(4, 80, seed=5, count=30)
    assert [r["a"] for r in a.rows] == [r["a"] for r in b.rows] and a.passed


def test_ratio_table_rejects_pairs():
    with pytest.raises(DimensionTooSmall):
        ratio_table(2, 10)


def test_trend_rows():
    rows = trend_rows(range(3, 13))
    assert [r["N"] for r in rows] == list(range(3, 13))
    vals = [float(r["lower_over_dim"]) for r in rows]
    assert all(v > 1 / math.e for v in vals)


def test_render_empty_csv_has_header():
    assert render([], "csv", columns=["a", "f"]) == "a,f\n"


def test_emit_exit_codes(tmp_path):
    assert emit_report([{"f": 19, "pass": True}], "json", tmp_path / "ok.json") == 0
    assert emit_report([{"f": 19, "pass": False}], "json", tmp_path / "bad.json") == 2
    assert emit_report([{"f": 19}], "json", tmp_path / "missing" / "x.json") == 1


def test_cli_kannan_json(capsys):
    assert main(["kannan", "--a", "3,5,7", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["f"] == "19" and out["mu_interval"] == ["19", "19"] and out["pass"] is True


def test_cli_compute_and_lattice(capsys):
    assert main(["compute", "--a", "6,10,15", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert (out["g"], out["f"], out["ratio"]) == ("29", "60", "2.000000000000")
    assert main(["lattice", "--a", "3,5,7", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["basis"] == [["1", "5"], ["0", "7"]] and out["det"] == "7"


def test_cli_bad_input(capsys):
    assert main(["compute", "--a", "4,6"]) == 1
    assert "NotCoprime" in capsys.readouterr().err


def test_cli_table_deterministic(tmp_path):
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["table", "--n", "3", "--amax", "20", "--csv", "--out", str(p1)]) == 0
    assert main(["table", "--n", "3", "--amax", "20", "--csv", "--out", str(p2), "--threads", "2"]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    assert p1.read_text().splitlines()[0].startswith("a,g,f,ratio")


def test_cli_construct(capsys):
    assert main(["construct", "--basis", "1,0;0,1", "--alpha", "1/2,3/4", "--tstar", "1,2",
                 "--tmax", "100", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["d"] == "4" and "3" in out["qualifying_t"]
    first = out["outputs"][0]
    assert first["a"] == ["84", "117", "182"] and first["basis_rows"] == [["13", "0"], ["0", "14"]]
    assert out["pass"] is True


def test_cli_mu(capsys):
    assert main(["mu", "--simplex", "1,1", "--lattice", "1,0;0,1", "--tol", "1e-6", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["mu_interval"] == ["2", "2"]


def test_cli_density_with_lattice(capsys):
    assert main(["density", "--alpha", "2/5,3/5", "--eps", "1/10", "--lattice", "1/3,1/3;1,0",
                 "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["pass"] is True


def test_cli_budget_env(monkeypatch, capsys):
    monkeypatch.setenv("FROB_BUDGET_MS", "1")
    assert main(["mu0", "--starts", "2", "--iters", "20", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["exhausted"] is True
