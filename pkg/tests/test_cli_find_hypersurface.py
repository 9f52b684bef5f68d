from dvrgeom.cli import main

# Fixtures imported from conftest.py
# `mock_dir` and `runner`


def test_find_hypersurface_exhaustive(runner, mock_dir):
    result = runner.invoke(
        main, ["find-hypersurface", "-m", str(mock_dir / "conic_f3.scheme"), "--degree", "1"]
    )

    assert result.exit_code == 0
    assert "  form: x2\n" in result.output
    assert "  mode: exhaustive\n" in result.output


def test_find_hypersurface_for_declared_components(runner, mock_dir):
    result = runner.invoke(
        main, ["find-hypersurface", "-m", str(mock_dir / "e5.scheme"), "--degree", "1"]
    )

    assert result.exit_code == 0
    assert "  form: x2\n" in result.output


def test_find_hypersurface_sampled(runner, mock_dir):
    result = runner.invoke(
        main,
        ["find-hypersurface", "-m", str(mock_dir / "conic_f3.scheme"), "--degree", "1",
         "--budget", "1", "--seed", "3", "--samples", "40"],
    )

    assert result.exit_code == 0
    assert "  mode: sampled\n" in result.output
    assert "  seed: 3\n" in result.output


def test_find_hypersurface_over_budget_without_seed(runner, mock_dir):
    result = runner.invoke(
        main,
        ["find-hypersurface", "-m", str(mock_dir / "conic_f3.scheme"), "--budget", "1"],
    )

    assert result.exit_code == 2
    assert "pass a seed" in result.output
