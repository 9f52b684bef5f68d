import json
import pytest
from dvrgeom.exceptions import OutputFileExistsException
from dvrgeom.report import (
    NEGATIVE,
    POSITIVE,
    UNDECIDABLE,
    Report,
    emit,
    file_inputs,
)


@pytest.fixture
def report():
    result = Report("check-smooth", {"file": "conic.scheme", "points": 10})
    result.add("witnesses", [])
    result.add("certificate", {"verdict": "Smooth", "ext_bound": None, "normalized": True})
    result.add("rows", [{"a": 1, "b": 2}, "plain"])
    return result.conclude(NEGATIVE, "not smooth")


def test_text_rendering(report):
    assert report.to_text() == (
        "command: check-smooth\n"
        "inputs:\n"
        "  file: conic.scheme\n"
        "  points: 10\n"
        "witnesses: -\n"
        "certificate:\n"
        "  verdict: Smooth\n"
        "  ext_bound: -\n"
        "  normalized: true\n"
        "rows:\n"
        "  - a: 1\n"
        "    b: 2\n"
        "  - plain\n"
        "verdict: negative\n"
        "message: not smooth\n"
    )


def test_json_rendering(report):
    data = json.loads(report.render("json"))
    assert list(data) == ["command", "inputs", "witnesses", "certificate", "rows", "verdict",
                          "message"]
    assert data["certificate"]["ext_bound"] is None


def test_exit_codes():
    assert Report("x").exit_code == 2
    assert Report("x").conclude(POSITIVE).exit_code == 0
    assert Report("x").conclude(NEGATIVE).exit_code == 1
    assert Report("x").conclude(UNDECIDABLE).exit_code == 2
    with pytest.raises(ValueError):
        Report("x").conclude("maybe")


def test_identical_runs_render_identically(report):
    again = Report("check-smooth", {"file": "conic.scheme", "points": 10})
    again.add("witnesses", [])
    again.add("certificate", {"verdict": "Smooth", "ext_bound": None, "normalized": True})
    again.add("rows", [{"a": 1, "b": 2}, "plain"])
    again.conclude(NEGATIVE, "not smooth")
    assert again.to_text() == report.to_text()
    assert again.to_json() == report.to_json()


def test_file_inputs():
    inputs = file_inputs("/some/dir/conic.scheme", "abc", method="groebner")
    assert inputs == {
        "file": "conic.scheme",
        "sha256": "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad",
        "method": "groebner",
    }


def test_emit_to_file(report, tmp_path):
    output = tmp_path / "report.txt"
    emit(report, output=str(output))
    assert output.read_text(encoding="utf-8") == report.to_text()
    with pytest.raises(OutputFileExistsException):
        emit(report, output=str(output))
    emit(report, "json", str(output), force=True)
    assert json.loads(output.read_text(encoding="utf-8"))["verdict"] == "negative"
