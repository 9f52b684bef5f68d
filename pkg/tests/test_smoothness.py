import random
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from dvrgeom.exceptions import OracleDisagreementException, UnsupportedException
from dvrgeom.groebner import EMPTY
from dvrgeom.poly import form_from_coefficients, monomials_of_degree
from dvrgeom.rings import EquiDVR, MixedDVR, PrimeField, parse_ring
from dvrgeom.schemes import SchemeModel
from dvrgeom.smoothness import (
    BOTH,
    ENUMERATION,
    SINGULAR,
    SMOOTH,
    WRONG_CODIMENSION,
    check_snc,
    generic_fibre_certificate,
    is_smooth,
    is_smooth_away_from,
    is_transversal,
    model_dimension,
    singular_locus,
    singular_points,
)

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)


def plane(ring, *texts):
    return SchemeModel.from_text(ring, texts, nvars=3)


def test_smooth_conic():
    certificate = is_smooth(plane(F5, "x0^2 + x1^2 + x2^2"))
    assert certificate.verdict == SMOOTH
    assert certificate.expected == 1
    assert certificate.found == 1


def test_smooth_quadric_surface_with_both_oracles():
    quadric = SchemeModel.from_text(F5, ["x0*x1 - x2*x3"], nvars=4)
    certificate = is_smooth(quadric, method=BOTH, ext_bound=2)
    assert certificate.is_smooth
    assert certificate.method == BOTH
    assert certificate.ext_bound == 2


def test_two_lines_are_singular_at_the_crossing():
    lines = plane(F3, "x0*x1")
    exact = is_smooth(lines)
    assert exact.verdict == SINGULAR
    assert exact.witnesses == ("<x0, x1> on chart x2=1",)
    enumerated = is_smooth(lines, method=ENUMERATION, ext_bound=1)
    assert enumerated.verdict == SINGULAR
    assert enumerated.witnesses == ("(0:0:1)",)


def test_singular_locus_per_chart():
    assert singular_locus(plane(F5, "x0^2 + x1^2 + x2^2")).is_empty()
    locus = singular_locus(plane(F3, "x0*x1"))
    assert not locus.is_empty()
    assert locus.dimension() == 0
    assert locus.witness() == "<x0, x1> on chart x2=1"


def test_conic_in_characteristic_two_is_singular_everywhere():
    conic = plane(F2, "x0^2 + x1^2 + x2^2")
    certificate = is_smooth(conic, method=BOTH, ext_bound=1)
    assert certificate.verdict == SINGULAR
    assert set(certificate.witnesses) == {"(0:1:1)", "(1:0:1)", "(1:1:0)"}


def test_wrong_codimension():
    certificate = is_smooth(plane(F3, "x0*x1", "x0*x2"))
    assert certificate.verdict == WRONG_CODIMENSION
    assert certificate.expected == 0
    assert certificate.found == 1
    assert certificate.summary() == "WrongCodimension(expected=0, found=1)"


def test_empty_scheme_is_smooth():
    first = SchemeModel.from_text(F3, ["x0"], projective=False, nvars=2)
    second = SchemeModel.from_text(F3, ["x0 - 1"], projective=False, nvars=2)
    assert model_dimension(first.with_equations(second.equations)) == EMPTY
    assert is_transversal(first, second).is_smooth


def test_line_meets_conic_transversally():
    conic = plane(F5, "x0^2 + x1^2 + x2^2")
    assert is_transversal(conic, plane(F5, "x2"), method=BOTH, ext_bound=2).is_smooth


def test_tangent_line_is_not_transversal():
    conic = plane(F5, "x0^2 + x1^2 + x2^2")
    # (1:2:0) lies on the conic and x0 + 2*x1 is its tangent there
    certificate = is_transversal(conic, plane(F5, "x0 + 2*x1"), method=BOTH, ext_bound=1)
    assert certificate.verdict == SINGULAR
    assert "(1:2:0)" in certificate.witnesses


def test_snc_of_two_lines():
    verdict = check_snc([plane(F3, "x0"), plane(F3, "x1")])
    assert verdict.passed
    assert [indices for indices, _ in verdict.strata] == [(0,), (1,), (0, 1)]


def test_snc_fails_on_a_repeated_component():
    verdict = check_snc([plane(F3, "x0"), plane(F3, "x0")])
    assert not verdict.passed
    assert verdict.failing == (0, 1)


def test_snc_of_divisors_on_a_common_surface():
    surface = SchemeModel.from_text(F5, ["y - z^2"], names=("x", "y", "z"), projective=False)
    first = surface.with_equations([surface.variable(0)])
    second = surface.with_equations([surface.variable(2)])
    verdict = check_snc([first, second], base=surface)
    assert verdict.passed
    crossing = verdict.strata[-1][1]
    assert crossing.expected == 0
    # without the base the surface equation is counted twice
    assert not check_snc([first, second]).passed


def test_snc_fails_on_three_concurrent_lines():
    verdict = check_snc([plane(F3, "x0"), plane(F3, "x1"), plane(F3, "x0 + x1")])
    assert not verdict.passed
    assert verdict.failing == (0, 1, 2)
    assert verdict.to_dict()["failing_stratum"] == [0, 1, 2]


def test_singular_points_are_listed_by_level():
    levels = singular_points(plane(F3, "x0*x1"), ext_bound=2)
    assert levels[0][0] == 1
    assert levels[0][2] == [(0, 0, 1)]
    assert levels[1][2] == []


def test_smooth_away_from_the_node():
    cubic = plane(F5, "x1^2*x2 - x0^3 - x0^2*x2")
    assert is_smooth_away_from(cubic, [(0, 0, 1)])
    assert not is_smooth_away_from(cubic, [])
    assert not is_smooth_away_from(cubic, [(1, 0, 4)])


def test_oracles_disagree_below_the_extension_bound():
    # (x^2 + 1)^2 is singular only at points of degree two
    line = SchemeModel.from_text(F3, ["x0^4 + 2*x0^2 + 1"], projective=False, nvars=1)
    with pytest.raises(OracleDisagreementException):
        is_smooth(line, method=BOTH, ext_bound=1)
    assert is_smooth(line, method=BOTH, ext_bound=2).verdict == SINGULAR


def test_smoothness_needs_a_field():
    with pytest.raises(UnsupportedException):
        is_smooth(plane(MixedDVR(3, 3), "x0*x1 - 3*x2^2"))


def test_generic_fibre_of_mixed_models():
    node = plane(MixedDVR(3, 3), "x0*x1 - 3*x2^2")
    certificate = generic_fibre_certificate(node)
    assert certificate.is_smooth
    assert "route: rational lift" in certificate.notes
    assert not generic_fibre_certificate(plane(MixedDVR(3, 2), "x0*x1")).is_smooth


def test_generic_fibre_of_equal_characteristic_models():
    ring = parse_ring("GF(3)[[t]]/t^3")
    assert ring == EquiDVR(3, 1, 3)
    certificate = generic_fibre_certificate(plane(ring, "x0*x1 - t*x2^2"))
    assert certificate.is_smooth
    assert certificate.found == 1
    assert not generic_fibre_certificate(plane(ring, "x0*x1")).is_smooth


CONICS = monomials_of_degree(3, 2)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=2), min_size=6, max_size=6))
def test_oracles_agree_on_plane_conics(coeffs):
    if not any(coeffs):
        return
    form = form_from_coefficients(F3, 3, CONICS, coeffs)
    conic = SchemeModel(F3, 3, (form,))
    certificate = is_smooth(conic, method=BOTH, ext_bound=2)
    assert certificate.method == BOTH


# (nvars, degree, extension bound reaching every singular point of such a form)
SHAPES = [(2, 2, 1), (2, 3, 1), (3, 2, 1), (3, 3, 3), (4, 2, 1)]


@pytest.mark.parametrize("seed", range(24))
def test_oracles_agree_on_seeded_hypersurfaces(seed):
    rng = random.Random(seed)
    q = (2, 3, 5)[seed % 3]
    nvars, degree, ext_bound = SHAPES[seed % len(SHAPES)]
    field_ = PrimeField(q)
    monomials = monomials_of_degree(nvars, degree)
    coeffs = [rng.randrange(q) for _ in monomials]
    if not any(coeffs):
        coeffs[0] = 1
    model = SchemeModel(field_, nvars, (form_from_coefficients(field_, nvars, monomials, coeffs),))
    exact = is_smooth(model)
    enumerated = is_smooth(model, method=ENUMERATION, ext_bound=ext_bound)
    assert exact.is_smooth == enumerated.is_smooth
    assert is_smooth(model, method=BOTH, ext_bound=ext_bound).verdict == exact.verdict
