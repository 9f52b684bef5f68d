import pytest
from dvrgeom.exceptions import PolynomialParseException, RingMismatchException
from dvrgeom.points import AFFINE, PROJECTIVE, enumerate_zeros, normalize_projective, point_level
from dvrgeom.poly import (
    MultiPoly,
    determinant,
    jacobian,
    monomials_of_degree,
    partial_derivative,
    poly_arith,
    reduce_mod_pi,
    substitute,
)
from dvrgeom.polyparse import format_point, parse_constant, parse_point, parse_polynomial
from dvrgeom.rings import EquiDVR, ExtField, MixedDVR, PrimeField

XYZ = ("x", "y", "z")
X3 = ("x0", "x1", "x2")


def poly(text, ring, names=X3):
    return parse_polynomial(text, ring, names)


def test_partial_derivative_over_f3():
    f3 = PrimeField(3)
    assert partial_derivative(poly("x^2 + y^2 + z^2", f3, XYZ), 0) == poly("2*x", f3, XYZ)


def test_partial_derivative_collapses_in_characteristic_two():
    f2 = PrimeField(2)
    assert partial_derivative(poly("x^2", f2, XYZ), 0).is_zero()


def test_substitute_variable_by_zero():
    ring = MixedDVR(3, 3)
    f = poly("x0*x1 - 3*x2^2", ring)
    assert substitute(f, {2: ring.zero}) == poly("x0*x1", ring)


@pytest.mark.parametrize(
    "text, ring, expected",
    [
        ("x0*x1 - 3*x2^2", MixedDVR(3, 3), "x0*x1"),
        ("x0*x1 - 9*x2^2", MixedDVR(3, 5), "x0*x1"),
        ("3*x0", MixedDVR(3, 2), "0"),
    ],
)
def test_reduce_mod_pi(text, ring, expected):
    reduced = reduce_mod_pi(poly(text, ring))
    assert reduced.ring == PrimeField(3)
    assert reduced.to_text() == expected


def test_poly_arith_checks_rings():
    f = poly("x0 + 1", PrimeField(3))
    g = poly("x0 + 1", PrimeField(5))
    with pytest.raises(RingMismatchException):
        poly_arith(f, g, "add")
    assert poly_arith(f, f, "mul") == poly("x0^2 + 2*x0 + 1", PrimeField(3))


def test_parse_uniformizer_and_generator():
    mixed = MixedDVR(5, 4)
    assert parse_constant("pi^2", mixed) == 25
    equi = EquiDVR(3, 1, 3)
    assert parse_constant("1 + t", equi) == (1, 1, 0)
    assert parse_constant("2*pi - t^2", equi) == (0, 2, 2)
    gf9 = ExtField(3, 2)
    a = gf9.generator()
    assert parse_constant("a^2", gf9) == gf9.mul(a, a)


def test_printing_round_trip():
    ring = MixedDVR(3, 3)
    f = poly("x0*x1 - 3*x2^2 + 13", ring)
    assert f.to_text() == "x0*x1 - 3*x2^2 + 13"
    assert poly(f.to_text(), ring) == f


def test_parse_error_reports_column():
    with pytest.raises(PolynomialParseException) as error:
        parse_polynomial("x0**", PrimeField(5), X3, line=3)
    assert error.value.column == 4
    assert error.value.line == 3
    assert "column 4" in str(error.value)


@pytest.mark.parametrize("text", ["x0 +", "x3", "(x0", "x0^x1", "x0 % 2", "", "pi*x0"])
def test_parse_errors(text):
    with pytest.raises(PolynomialParseException):
        parse_polynomial(text, PrimeField(5), X3)


def test_points_parse_and_format():
    field_ = PrimeField(5)
    coords, projective = parse_point("(0:0:1)", field_)
    assert coords == (0, 0, 1) and projective
    coords, projective = parse_point("(1,-1)", field_)
    assert coords == (1, 4) and not projective
    assert format_point((1, 2, 0), field_) == "(1:2:0)"
    with pytest.raises(PolynomialParseException):
        parse_point("(0:0:0)", field_)
    with pytest.raises(PolynomialParseException):
        parse_point("0:1", field_)


def test_conic_points_over_f3():
    f3 = PrimeField(3)
    points = enumerate_zeros([poly("x0^2 + x1^2 + x2^2", f3)], PROJECTIVE)
    assert list(points) == [(1, 1, 1), (1, 1, 2), (1, 2, 1), (1, 2, 2)]


def test_conic_points_over_f2_form_a_line():
    f2 = PrimeField(2)
    points = enumerate_zeros([poly("x0^2 + x1^2 + x2^2", f2)], PROJECTIVE)
    assert list(points) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]


def test_empty_system_gives_all_affine_points():
    points = enumerate_zeros([], AFFINE, field=PrimeField(3), nvars=2)
    assert len(points) == 9


def test_points_over_extension():
    f3 = PrimeField(3)
    # x0^2 + x1^2 has no F_3-points but two points over F_9
    f = parse_polynomial("x0^2 + x1^2", f3, ("x0", "x1"))
    assert len(enumerate_zeros([f], PROJECTIVE)) == 0
    over_f9 = enumerate_zeros([f], PROJECTIVE, ext_degree=2)
    assert len(over_f9) == 2
    assert all(point_level(over_f9.field, p, 3) == 2 for p in over_f9)


def test_normalize_projective():
    f5 = PrimeField(5)
    assert normalize_projective((0, 2, 4), f5) == (0, 1, 2)


def test_jacobian_and_determinant():
    f5 = PrimeField(5)
    polys = [poly("x0*x1", f5), poly("x0 + x2^2", f5)]
    matrix = jacobian(polys)
    assert matrix[0][0] == poly("x1", f5)
    assert matrix[1][2] == poly("2*x2", f5)
    minor = determinant([[matrix[0][0], matrix[0][1]], [matrix[1][0], matrix[1][1]]])
    assert minor == poly("-x0", f5)


def test_monomials_of_degree():
    assert len(monomials_of_degree(3, 2)) == 6
    assert len(monomials_of_degree(4, 1)) == 4


def test_dehomogenize_and_translate():
    f5 = PrimeField(5)
    f = poly("x0*x1 - x2^2", f5)
    chart = f.dehomogenize(2)
    assert chart.names == ("x0", "x1")
    assert chart == parse_polynomial("x0*x1 - 1", f5, ("x0", "x1"))
    moved = chart.translate((1, 1))
    assert moved == parse_polynomial("x0*x1 + x0 + x1", f5, ("x0", "x1"))
    assert MultiPoly.one(f5, 2).evaluate((3, 4)) == 1
