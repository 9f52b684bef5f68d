from dataclasses import replace
import pytest
from dvrgeom.exceptions import (
    DeclaredDataMismatchException,
    PolynomialParseException,
    SchemeFileNotFoundException,
    SchemeFileParseException,
    UnsupportedFileFormatException,
)
from dvrgeom.loader import declared_problems, load_scheme, open_scheme, parse_scheme_text
from dvrgeom.rings import MixedDVR, PrimeField


def without_source(scheme):
    return replace(scheme, source="")


def test_line_file(mock_dir):
    scheme, text = load_scheme(mock_dir / "e5.scheme")
    assert text.startswith("# Two lines")
    assert scheme.ring == MixedDVR(3, 3)
    assert scheme.projective and scheme.nvars == 3
    assert [name for name, _ in scheme.equations] == ["f1"]
    assert [name for name, _ in scheme.components] == ["Y1", "Y2"]
    assert scheme.declared_coords == [(0, 0, 1)]
    assert scheme.oq_points[0].line == 7
    assert scheme.proper
    assert scheme.residue_field == PrimeField(3)


@pytest.mark.parametrize("name", ["e5.yaml", "e5.json"])
def test_mapping_files_match_the_line_file(mock_dir, name):
    line_scheme, _ = load_scheme(mock_dir / "e5.scheme")
    other, _ = load_scheme(mock_dir / name)
    assert without_source(other) == without_source(line_scheme)


@pytest.mark.parametrize("name", ["e5.scheme", "quadric_z25.scheme", "nodal_cubic_f5.scheme"])
def test_canonical_text_parses_back(mock_dir, name):
    scheme, _ = load_scheme(mock_dir / name, verify=False)
    assert parse_scheme_text(scheme.to_text()) == without_source(scheme)


def test_budget_line(mock_dir):
    scheme, _ = load_scheme(mock_dir / "quadric_z25.scheme")
    assert scheme.budgets == {"points": 100000}
    assert "budget points=100000" in scheme.to_text()


def test_malformed_polynomial_reports_line_and_column(mock_dir):
    with pytest.raises(PolynomialParseException) as error:
        load_scheme(mock_dir / "malformed.scheme")
    assert error.value.line == 3
    assert error.value.column == 4


def test_unknown_line(mock_dir):
    with pytest.raises(SchemeFileParseException) as error:
        load_scheme(mock_dir / "unknown_line.scheme")
    assert error.value.line == 3
    assert "Unrecognized line" in str(error.value)


def test_declared_order_mismatch(mock_dir):
    with pytest.raises(DeclaredDataMismatchException) as error:
        load_scheme(mock_dir / "wrong_order.scheme")
    assert "order=1, declared order=2" in str(error.value)
    scheme, _ = load_scheme(mock_dir / "wrong_order.scheme", verify=False)
    assert scheme.oq_points[0].order == 2


def test_unsupported_suffix(mock_dir):
    with pytest.raises(UnsupportedFileFormatException):
        load_scheme(mock_dir / "conic.toml")


def test_missing_file(tmp_path):
    with pytest.raises(SchemeFileNotFoundException):
        load_scheme(tmp_path / "absent.scheme")


@pytest.mark.parametrize(
    "text, line",
    [
        ("ambient: P2\neq f = x0\n", None),
        ("ring: Zmod(12)\nambient: P2\neq f = x0\n", 1),
        ("ring: GF(5)\nambient: Q2\neq f = x0\n", 2),
        ("ring: GF(5)\nambient: P2\n", None),
        ("ring: GF(5)\nambient: P2\nvars: x y\neq f = x\n", 3),
        ("ring: GF(5)\nambient: P2\neq f = x0\noq at (1,0) \n", 4),
        ("ring: GF(5)\nambient: P2\neq f = x0\noq at (0:0:1) expect kind=node\n", 4),
        ("ring: GF(5)\nambient: P2\neq f = x0\nproper: maybe\n", 4),
        ("ring: GF(5)\nambient: P2\neq f = x0\nbudget points=0\n", None),
        ("ring: GF(5)\nambient: P2\neq f = x0\nbudget depth=3\n", None),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(SchemeFileParseException) as error:
        parse_scheme_text(text)
    assert error.value.line == line


def test_mapping_must_be_a_dictionary(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- ring: GF(5)\n", encoding="utf-8")
    with pytest.raises(SchemeFileParseException):
        load_scheme(path)


def test_custom_variable_names():
    scheme = parse_scheme_text("ring: GF(5)\nambient: P2\nvars: x y z\neq f = x*y - z^2\n")
    assert scheme.names == ("x", "y", "z")
    assert scheme.model.to_text() == "V(x*y - z^2) in P2 over GF(5)"


def test_components_must_cover_the_special_fibre():
    text = (
        "ring: Zmod(3^3)\nambient: P2\neq f1 = x0*x1 - 3*x2^2\n"
        "component Y1 = x0\nproper: true\n"
    )
    problems = declared_problems(parse_scheme_text(text))
    assert problems == [
        "components cover the special fibre wrongly (3 points missing, 0 points outside)"
    ]


def test_open_scheme_applies_budgets_and_overrides(mock_dir, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    path = mock_dir / "quadric_z25.scheme"
    _, _, settings = open_scheme(path)
    assert settings.points == 100000
    _, _, settings = open_scheme(path, points=500000, ext=None)
    assert settings.points == 500000
    assert settings.ext == 3
