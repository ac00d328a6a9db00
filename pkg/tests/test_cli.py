import json

from typer.testing import CliRunner

from virtual_knot_lab.main import app
from virtual_knot_lab.modules.algebra.exactalg import function_field, parse_invariant

runner = CliRunner()


def test_invariant_delta1_of_kishino3():
    result = runner.invoke(app, ["invariant", "--knot", "kishino3", "--switch", "budapest",
                                 "--augment", "t", "--which", "delta1"])
    assert result.exit_code == 0
    assert result.stdout.strip().splitlines()[-1] == "2+5*t^2+2*t^4"


def test_invariant_classical_vanishes():
    result = runner.invoke(app, ["invariant", "-k", "classical_trefoil", "-s", "e1"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "0"


def test_invariant_json():
    result = runner.invoke(app, ["invariant", "-k", "kishino1", "-s", "alexander", "-w", "delta1", "--json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["knot"] == "kishino1"
    assert data["which"] == "delta1"
    assert data["unit_orbit"] == ["powers of B", "powers of C", "nonzero constants"]


def test_minors_json_is_one_based():
    result = runner.invoke(app, ["invariant", "-k", "kink", "-s", "alexander", "-w", "minors", "--json"])
    assert result.exit_code == 0
    records = json.loads(result.stdout)["value"]
    assert [(r["row"], r["col"]) for r in records] == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_invariant_bad_input_exits_2():
    assert runner.invoke(app, ["invariant", "-k", "no_such_knot", "-s", "alexander"]).exit_code == 2
    assert runner.invoke(app, ["invariant", "-k", "kink", "-s", "no_such_switch"]).exit_code == 2
    assert runner.invoke(app, ["invariant", "-k", "kink", "-s", "alexander", "-w", "delta7"]).exit_code == 2
    assert runner.invoke(app, ["invariant", "-k", "kink", "-s", "alexander", "-p", "B=0"]).exit_code == 2
    assert runner.invoke(app, ["invariant", "-k", "kink", "-s", "e1", "--augment", "t"]).exit_code == 2


def test_verify_budapest():
    result = runner.invoke(app, ["verify", "--switch", "budapest"])
    assert result.exit_code == 0
    assert "budapest: PASS" in result.stdout


def test_verify_e2_mentions_printed_blocks():
    result = runner.invoke(app, ["verify", "-s", "e2"])
    assert result.exit_code == 0
    assert "agree with the printed matrices" in result.stdout


def test_list():
    knots = runner.invoke(app, ["list", "knots"])
    assert knots.exit_code == 0
    assert "kishino3" in knots.stdout
    switches = runner.invoke(app, ["list", "switches"])
    assert "budapest" in switches.stdout
    assert runner.invoke(app, ["list", "links"]).exit_code == 2


def test_check_single_property():
    result = runner.invoke(app, ["check", "--seed", "1", "--only", "alexander_matrix"])
    assert result.exit_code == 0
    assert "PASS" in result.stdout
    assert runner.invoke(app, ["check", "--only", "nonsense"]).exit_code == 2


def test_discrepancy_writes_reports(tmp_path):
    result = runner.invoke(app, ["discrepancy", "--target", "e2", "--output-dir", str(tmp_path)])
    assert result.exit_code == 0
    assert len(list(tmp_path.glob("discrepancy_e2_*.json"))) == 1
    assert len(list(tmp_path.glob("discrepancy_e2_*.html"))) == 1
    assert runner.invoke(app, ["discrepancy", "-t", "e3", "--output-dir", str(tmp_path)]).exit_code == 2


def test_json_value_reparses():
    result = runner.invoke(app, ["invariant", "-k", "kishino3", "-s", "budapest", "--augment", "t",
                                 "-w", "delta1", "--json"])
    data = json.loads(result.stdout)
    field = function_field(("t",))
    assert parse_invariant(field, data["value"]) == parse_invariant(field, "2+5*t^2+2*t^4")


def test_discrepancy_k3_reports_minor_multiset(tmp_path):
    result = runner.invoke(app, ["discrepancy", "-t", "k3", "--output-dir", str(tmp_path)])
    assert result.exit_code == 0
    [report] = list(tmp_path.glob("discrepancy_k3_*.json"))
    data = json.loads(report.read_text())
    assert data["agrees"] is False
    assert data["delta1_agrees"] is True


def test_discrepancy_tj_reports_unit_locus(tmp_path):
    result = runner.invoke(app, ["discrepancy", "-t", "tj", "--output-dir", str(tmp_path)])
    assert result.exit_code == 0
    [report] = list(tmp_path.glob("discrepancy_tj_*.json"))
    data = json.loads(report.read_text())
    assert data["realizable"] is False
    assert data["residual"] == "1-B^3"
