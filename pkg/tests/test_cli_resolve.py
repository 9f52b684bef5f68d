import json
from dvrgeom.cli import main

# Fixtures imported from conftest.py
# `isolated_mock_files` and `runner`


def test_resolve_order_two(runner):
    result = runner.invoke(
        main, ["resolve", "oq(case=i, n=1, Q=x1*x2, c=pi^2)", "--ring", "Zmod(5^4)"]
    )

    assert result.exit_code == 0
    assert "summary: 1 blow-up; terminal SemiStable" in result.output


def test_resolve_with_inline_ring_and_verification(runner):
    result = runner.invoke(
        main,
        ["resolve", "oq(ring=Zmod(5^8), case=i, n=1, Q=x1*x2, c=pi^6)", "--verify",
         "--format", "json"],
    )

    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["resolution"]["orders"] == [6, 4, 2]
    assert data["inputs"]["verify"] is True


def test_resolve_invalid_literal(runner):
    result = runner.invoke(
        main, ["resolve", "oq(case=i, n=1, Q=x1^2, c=pi)", "--ring", "Zmod(5^4)"]
    )

    assert result.exit_code == 3
    assert "degenerate" in result.output


def test_resolve_invalid_ring(runner):
    result = runner.invoke(main, ["resolve", "oq(case=i, n=1, Q=x1*x2, c=pi^2)", "--ring",
                                  "Zmod(12)"])

    assert result.exit_code == 3


def test_resolve_odd_order_over_mixed_characteristic(runner):
    result = runner.invoke(
        main, ["resolve", "oq(case=i, n=1, Q=x1*x2, c=pi)", "--ring", "Zmod(5^4)"]
    )

    assert result.exit_code == 2


def test_resolve_report_file(runner, isolated_mock_files):
    output = isolated_mock_files / "resolve.txt"
    result = runner.invoke(
        main,
        ["resolve", "oq(case=i, n=1, Q=x1*x2, c=pi^2)", "--ring", "Zmod(5^4)", "-o",
         str(output)],
    )

    assert result.exit_code == 0
    assert f"Report saved to {output}" in result.output
    assert "terminal SemiStable" in output.read_text(encoding="utf-8")
