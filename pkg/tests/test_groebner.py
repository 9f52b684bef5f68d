import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from dvrgeom.exceptions import BudgetExceededException, NonUnitException
from dvrgeom.groebner import (
    EMPTY,
    Ideal,
    dimension,
    elimination_ideal,
    groebner,
    ideal_membership,
    ideal_quotient_by_variable,
    is_unit_ideal,
)
from dvrgeom.linalg import inverse, kernel, mat_vec, rank, row_reduce, solve
from dvrgeom.poly import MultiPoly
from dvrgeom.polyparse import parse_polynomial
from dvrgeom.rings import MixedDVR, PrimeField, Rationals

F3 = PrimeField(3)
F5 = PrimeField(5)
XY = ("x", "y")
XYZ = ("x", "y", "z")


def polys(texts, ring=F5, names=XYZ):
    return [parse_polynomial(text, ring, names) for text in texts]


def test_membership_and_unit():
    ideal = Ideal(polys(["x", "y"], F3))
    assert not ideal.is_unit()
    assert ideal.contains(parse_polynomial("x + y", F3, XYZ))
    assert Ideal(polys(["x", "x + 1"], F3)).is_unit()


def test_module_level_helpers():
    ideal = Ideal(polys(["x^2 + y^2 + z^2", "x", "y"]))
    assert set(groebner(ideal)) == set(polys(["x", "y", "z^2"]))
    assert ideal_membership(parse_polynomial("z^2 + x", F5, XYZ), ideal)
    assert not is_unit_ideal(ideal)
    assert dimension(ideal) == 0


def test_reduced_basis_of_conic_and_two_lines():
    ideal = Ideal(polys(["x^2 + y^2 + z^2", "x", "y"]))
    assert set(ideal.groebner_basis()) == set(polys(["x", "y", "z^2"]))
    assert not ideal.contains(parse_polynomial("z", F5, XYZ))


@pytest.mark.parametrize(
    "texts, names, expected",
    [
        (["x*y"], XY, 1),
        (["x", "x + 1"], XY, EMPTY),
        (["x^2 + y^2 + z^2"], XYZ, 2),
        (["x", "y", "z"], XYZ, 0),
    ],
)
def test_dimension(texts, names, expected):
    assert Ideal(polys(texts, F3 if names == XY else F5, names)).dimension() == expected


def test_zero_ideal_has_full_dimension():
    assert Ideal([], F5, 3).dimension() == 3


def test_basis_over_rationals():
    qq = Rationals()
    ideal = Ideal(polys(["x^2 - 2", "x*y - 1"], qq, XY))
    assert ideal.contains(parse_polynomial("2*y - x", qq, XY))


def test_step_budget():
    with pytest.raises(BudgetExceededException):
        Ideal(polys(["x*y - 1", "x^2 - y"], F5, XY), step_budget=1).groebner_basis()


def test_elimination():
    eliminated = elimination_ideal(polys(["x*y - 1", "x^2 - y"], F5, XY), [0])
    assert eliminated == polys(["y^3 - 1"], F5, XY)


def test_quotient_by_variable():
    quotient = ideal_quotient_by_variable(polys(["x*y"], F3, XY), 0)
    assert Ideal(quotient).contains(parse_polynomial("y", F3, XY))
    assert Ideal(polys(["y"], F3, XY)).contains(quotient[0])


def _random_poly(draw, ring, names):
    terms = {}
    for _ in range(draw(st.integers(min_value=1, max_value=3))):
        exponent = tuple(draw(st.integers(min_value=0, max_value=2)) for _ in names)
        terms[exponent] = draw(st.integers(min_value=1, max_value=ring.p - 1))
    return MultiPoly(ring, len(names), terms, names)


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_basis_generates_the_same_ideal(data):
    gens = [_random_poly(data.draw, F3, XY) for _ in range(2)]
    ideal = Ideal(gens)
    basis = Ideal(list(ideal.groebner_basis()))
    for g in gens:
        assert basis.contains(g)
    for g in ideal.groebner_basis():
        assert ideal.contains(g)
    multiplier = _random_poly(data.draw, F3, XY)
    assert ideal.contains(multiplier * gens[0] + gens[1])


def test_row_reduce_and_rank():
    rows = [[1, 2, 3], [2, 4, 0], [0, 0, 1]]
    reduced, pivots = row_reduce(rows, F5)
    assert pivots == [0, 2]
    assert rank(rows, F5) == 2
    assert reduced[0][0] == 1


def test_inverse_over_dvr():
    ring = MixedDVR(5, 2)
    assert inverse([[1, 5], [0, 1]], ring) == [[1, 20], [0, 1]]
    with pytest.raises(NonUnitException):
        inverse([[5, 0], [0, 1]], ring)


def test_solve_and_mat_vec():
    matrix = [[1, 1], [1, 2]]
    solution = solve(matrix, [3, 4], F5)
    assert mat_vec(matrix, solution, F5) == [3, 4]


def test_kernel():
    basis = kernel([[1, 1, 1]], F3)
    assert len(basis) == 2
    for vector in basis:
        assert mat_vec([[1, 1, 1]], vector, F3) == [0]
    assert len(kernel([], F3, ncols=2)) == 2
