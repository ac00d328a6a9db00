import json
from unittest.mock import patch

import pytest

from virtual_knot_lab.core.exceptions import ReportGenerationError
from virtual_knot_lab.reporting.generator import ReportGenerator


def test_json_report(tmp_path):
    generator = ReportGenerator(tmp_path / "out")
    path = generator.generate_json_report({"target": "e2", "agrees": True}, prefix="discrepancy_e2")
    assert path.parent == tmp_path / "out"
    assert path.name.startswith("discrepancy_e2_")
    assert json.loads(path.read_text()) == {"target": "e2", "agrees": True}


def test_html_report(tmp_path):
    generator = ReportGenerator(tmp_path)
    path = generator.generate_html_report({"axioms": [{"number": 1}]}, "Switch verification", status=False,
                                          filename="verify.html")
    html = path.read_text()
    assert path.name == "verify.html"
    assert "<h1>Switch verification</h1>" in html
    assert "FAIL" in html
    assert "axioms" in html


def test_html_report_without_status(tmp_path):
    html = ReportGenerator(tmp_path).generate_html_report({"a": 1}, "t", filename="r.html").read_text()
    assert "PASS" not in html and "FAIL" not in html


@patch("builtins.open")
def test_json_write_failure(mock_open, tmp_path):
    mock_open.side_effect = OSError("disk full")
    with pytest.raises(ReportGenerationError):
        ReportGenerator(tmp_path).generate_json_report({"a": 1})


@patch("pathlib.Path.write_text")
def test_html_write_failure(mock_write, tmp_path):
    mock_write.side_effect = OSError("read-only")
    with pytest.raises(ReportGenerationError):
        ReportGenerator(tmp_path).generate_html_report({"a": 1}, "t")
