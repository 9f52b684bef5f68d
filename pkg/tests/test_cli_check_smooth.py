import json
from dvrgeom.cli import main

# Fixtures imported from conftest.py
# `isolated_mock_files`, `mock_dir` and `runner`


def test_check_smooth_matches_golden_report(runner, isolated_mock_files):
    """
    The text report of a smooth conic is byte-for-byte stable.
    """
    model = isolated_mock_files / "conic_f5.scheme"
    golden = (isolated_mock_files / "golden_check_smooth.txt").read_text(encoding="utf-8")

    result = runner.invoke(main, ["check-smooth", "--model", str(model)])

    assert result.exit_code == 0
    assert result.output == golden


def test_check_smooth_json(runner, mock_dir):
    result = runner.invoke(
        main, ["check-smooth", "-m", str(mock_dir / "conic_f5.scheme"), "--format", "json"]
    )

    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["verdict"] == "positive"
    assert data["certificate"]["found_dimension"] == 1


def test_check_smooth_singular(runner, mock_dir):
    result = runner.invoke(main, ["check-smooth", "-m", str(mock_dir / "cross_f3.scheme")])

    assert result.exit_code == 1
    assert "<x0, x1> on chart x2=1" in result.output
    assert "verdict: negative" in result.output


def test_check_smooth_both_oracles(runner, mock_dir):
    result = runner.invoke(
        main,
        ["check-smooth", "-m", str(mock_dir / "cross_f3.scheme"), "--method", "both",
         "--ext-bound", "1"],
    )

    assert result.exit_code == 1
    assert "(0:0:1)" in result.output


def test_check_smooth_over_a_dvr(runner, mock_dir):
    result = runner.invoke(main, ["check-smooth", "-m", str(mock_dir / "e5.scheme")])

    assert result.exit_code == 1
    assert "generic_fibre:" in result.output
    assert "good_reduction: false" in result.output
    assert "components_snc:" in result.output


def test_check_smooth_good_reduction(runner, mock_dir):
    result = runner.invoke(main, ["check-smooth", "-m", str(mock_dir / "quadric_z25.scheme")])

    assert result.exit_code == 0
    assert "good_reduction: true" in result.output


def test_settings_from_environment(runner, mock_dir):
    result = runner.invoke(
        main,
        ["check-smooth", "-m", str(mock_dir / "conic_f5.scheme")],
        env={"DVRGEOM_EXT_BOUND": "2"},
    )

    assert result.exit_code == 0
    assert "  ext: 2\n" in result.output


def test_debug_messages(runner, mock_dir):
    result = runner.invoke(
        main, ["check-smooth", "-m", str(mock_dir / "conic_f5.scheme"), "--debug"]
    )

    assert result.exit_code == 0
    assert "Debug: loading scheme file" in result.output


def test_malformed_file(runner, mock_dir):
    result = runner.invoke(main, ["check-smooth", "-m", str(mock_dir / "malformed.scheme")])

    assert result.exit_code == 3
    assert "line 3, column 4" in result.output


def test_declared_data_mismatch(runner, mock_dir):
    result = runner.invoke(main, ["check-smooth", "-m", str(mock_dir / "wrong_order.scheme")])

    assert result.exit_code == 3
    assert "declared order=2" in result.output


def test_unsupported_format(runner, mock_dir):
    result = runner.invoke(main, ["check-smooth", "-m", str(mock_dir / "conic.toml")])

    assert result.exit_code == 3
    assert "Unsupported file format" in result.output


def test_missing_model(runner, isolated_mock_files):
    result = runner.invoke(
        main, ["check-smooth", "-m", str(isolated_mock_files / "absent.scheme")]
    )

    assert result.exit_code == 3
    assert "Scheme file not found." in result.output


def test_invalid_budget(runner, mock_dir):
    result = runner.invoke(
        main, ["check-smooth", "-m", str(mock_dir / "conic_f5.scheme"), "--budget", "0"]
    )

    assert result.exit_code == 3
    assert "points must be a positive integer" in result.output
