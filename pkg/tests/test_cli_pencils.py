from dvrgeom.cli import main

# Fixtures imported from conftest.py
# `mock_dir` and `runner`


def test_dual_table(runner, mock_dir):
    result = runner.invoke(main, ["dual-table", "-m", str(mock_dir / "conic_f3.scheme")])

    assert result.exit_code == 0
    assert "    tangent: 4\n" in result.output
    assert "    transversal: 9\n" in result.output


def test_dual_table_needs_a_field(runner, mock_dir):
    result = runner.invoke(main, ["dual-table", "-m", str(mock_dir / "e5.scheme")])

    assert result.exit_code == 2


def test_verify_pencil(runner, mock_dir):
    result = runner.invoke(
        main,
        ["verify-pencil", "-m", str(mock_dir / "conic_f5.scheme"), "--f0", "x0 - x2",
         "--finf", "x1 - 2*x2", "--ext-bound", "1"],
    )

    assert result.exit_code == 0
    assert "  lefschetz: true\n" in result.output


def test_verify_pencil_with_axis_on_the_model(runner, mock_dir):
    result = runner.invoke(
        main,
        ["verify-pencil", "-m", str(mock_dir / "conic_f5.scheme"), "--f0", "x2",
         "--finf", "x0 + 2*x1", "--ext-bound", "1"],
    )

    assert result.exit_code == 1
    assert "message: axis is not transversal" in result.output


def test_verify_pencil_rejects_proportional_forms(runner, mock_dir):
    result = runner.invoke(
        main,
        ["verify-pencil", "-m", str(mock_dir / "conic_f5.scheme"), "--f0", "x0",
         "--finf", "2*x0"],
    )

    assert result.exit_code == 3
    assert "proportional" in result.output


def test_find_pencil(runner, mock_dir):
    result = runner.invoke(
        main, ["find-pencil", "-m", str(mock_dir / "conic_f5.scheme"), "--ext-bound", "1"]
    )

    assert result.exit_code == 0
    assert "  pencil: <x0, x1>\n" in result.output
    assert "verdict: positive" in result.output


def test_find_pencil_candidate_budget(runner, mock_dir):
    # x0*x1 is singular, so no pencil passes in smooth mode
    result = runner.invoke(
        main,
        ["find-pencil", "-m", str(mock_dir / "cross_f3.scheme"), "--candidates", "1",
         "--ext-bound", "1"],
    )

    assert result.exit_code == 2
    assert "candidate budget" in result.output
