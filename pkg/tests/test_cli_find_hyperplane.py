from unittest.mock import patch
from dvrgeom.cli import main
from dvrgeom.exceptions import ExhaustedException

# Fixtures imported from conftest.py
# `mock_dir` and `runner`


def test_find_hyperplane(runner, mock_dir):
    result = runner.invoke(
        main, ["find-hyperplane", "-m", str(mock_dir / "e5.scheme"), "--max-ext", "0"]
    )

    assert result.exit_code == 0
    assert "  hyperplane: x2\n" in result.output
    assert "  good_count: 9\n" in result.output
    assert "verdict: positive" in result.output


def test_find_hyperplane_needs_a_dvr(runner, mock_dir):
    result = runner.invoke(main, ["find-hyperplane", "-m", str(mock_dir / "conic_f5.scheme")])

    assert result.exit_code == 2
    assert "truncated DVR" in result.output


@patch("dvrgeom.commands.find_hyperplane.find_good_hyperplane")
def test_find_hyperplane_exhausted(mock_search, runner, mock_dir):
    """
    An exhausted search is undecidable and prints its statistics.
    """
    mock_search.side_effect = ExhaustedException(
        details="No good hyperplane up to extension degree 1",
        statistics={"levels": [{"degree": 1, "candidates": 13, "good": 0}]},
    )

    result = runner.invoke(main, ["find-hyperplane", "-m", str(mock_dir / "e5.scheme")])

    assert result.exit_code == 2
    assert "No good hyperplane" in result.output
    assert "levels: [{'degree': 1, 'candidates': 13, 'good': 0}]" in result.output
    mock_search.assert_called_once()


def test_find_hyperplane_budget(runner, mock_dir):
    result = runner.invoke(
        main, ["find-hyperplane", "-m", str(mock_dir / "e5.scheme"), "--budget", "5"]
    )

    assert result.exit_code == 2
