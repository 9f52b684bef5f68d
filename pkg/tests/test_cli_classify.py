from dvrgeom.cli import main

# Fixtures imported from conftest.py
# `mock_dir` and `runner`


def test_classify_node_of_order_two(runner, mock_dir):
    result = runner.invoke(
        main, ["classify", "-m", str(mock_dir / "oq_order2.scheme"), "-p", "(0:0:1)"]
    )

    assert result.exit_code == 0
    assert "summary: OrdinaryQuadratic case=i order=2" in result.output
    assert "normalized: oq(case=i, n=1" in result.output


def test_classify_node_of_order_one(runner, mock_dir):
    result = runner.invoke(
        main, ["classify", "-m", str(mock_dir / "e5.scheme"), "-p", "(0:0:1)"]
    )

    assert result.exit_code == 0
    assert "summary: OrdinaryQuadratic case=i order=1" in result.output
    # no square root of 3 can be adjoined to Z/27
    assert "normalized: unavailable" in result.output


def test_classify_smooth_point(runner, mock_dir):
    result = runner.invoke(
        main, ["classify", "-m", str(mock_dir / "e5.scheme"), "-p", "(1:0:0)"]
    )

    assert result.exit_code == 1
    assert "summary: Smooth" in result.output


def test_classify_over_a_field(runner, mock_dir):
    result = runner.invoke(
        main, ["classify", "-m", str(mock_dir / "nodal_cubic_f5.scheme"), "--point", "(0:0:1)"]
    )

    assert result.exit_code == 0
    assert "verdict: positive" in result.output


def test_classify_point_off_the_fibre(runner, mock_dir):
    result = runner.invoke(
        main, ["classify", "-m", str(mock_dir / "e5.scheme"), "-p", "(1:1:1)"]
    )

    assert result.exit_code == 3


def test_classify_requires_a_point(runner, mock_dir):
    result = runner.invoke(main, ["classify", "-m", str(mock_dir / "e5.scheme")])

    assert result.exit_code == 2
    assert "Missing option" in result.output
