from dataclasses import replace
import pytest
from dvrgeom.blowup import (
    analyze_charts,
    blow_up,
    exceptional_fibre_equation,
    pull_back,
    resolve,
    shadow,
    verify_presentation,
)
from dvrgeom.exceptions import (
    ChartInconsistencyException,
    NotNormalizedException,
    PrecisionExhaustedException,
)
from dvrgeom.poly import MultiPoly
from dvrgeom.polyparse import parse_polynomial
from dvrgeom.quadsing import CASE_II, LocalModel, parse_local_model
from dvrgeom.rings import EquiDVR, MixedDVR, PrimeField
from dvrgeom.smoothness import BOTH


def node(ring, c):
    return parse_local_model(f"oq(case=i, n=1, Q=x1*x2, c={c})", ring)


@pytest.fixture
def order_two():
    return node(MixedDVR(5, 4), "pi^2")


def chart_named(charts, name):
    return next(chart for chart in charts if chart.name == name)


def test_blow_up_has_one_chart_per_generator(order_two):
    charts = blow_up(order_two)
    assert [chart.name for chart in charts] == ["U1", "U2", "T"]
    assert [chart.is_t_chart for chart in charts] == [False, False, True]


def test_chart_relations(order_two):
    ring = order_two.ring
    charts = blow_up(order_two)
    t_chart = chart_named(charts, "T")
    assert t_chart.relations == (parse_polynomial("u1*u2 - 1", ring, ("u1", "u2")),)
    assert t_chart.pi_relation() is None
    u2 = chart_named(charts, "U2")
    names = ("u1", "x2", "t")
    assert u2.names == names
    assert u2.quadric_relation() == parse_polynomial("u1 - t^2", ring, names)
    assert u2.pi_relation() == parse_polynomial("x2*t - 5", ring, names)


def test_charts_pull_back_to_the_model(order_two):
    equation = order_two.equation()
    for chart in blow_up(order_two):
        pulled = pull_back(chart, chart.quadric_relation(), 2)
        assert pulled == equation


def test_presentation_of_every_chart(order_two):
    verdict = verify_presentation(blow_up(order_two), order_two)
    assert verdict.passed
    assert [check["generator"] for check in verdict.to_dict()["charts"]] == ["x1", "x2", "pi"]


def test_presentation_detects_a_tampered_chart(order_two):
    charts = blow_up(order_two)
    u1 = chart_named(charts, "U1")
    charts[0] = replace(u1, relations=(u1.quadric_relation(),))
    t_chart = charts[2]
    one = MultiPoly.one(t_chart.ring, t_chart.nvars, t_chart.names)
    charts[2] = replace(t_chart, relations=(t_chart.relations[0] + one,))
    verdict = verify_presentation(charts, order_two)
    assert not verdict.passed
    assert [check.chart for check in verdict.failing] == ["U1", "T"]
    with pytest.raises(ChartInconsistencyException):
        analyze_charts(charts, order_two)


def test_exceptional_fibre(order_two):
    expected = parse_polynomial("x1*x2 - T^2", PrimeField(5), ("x1", "x2", "T"))
    assert exceptional_fibre_equation(order_two).to_text() == expected.to_text()


def test_blow_up_needs_a_normalized_model():
    with pytest.raises(NotNormalizedException):
        blow_up(node(MixedDVR(5, 4), "pi"))


def test_single_blow_up_is_semistable(order_two):
    report = analyze_charts(blow_up(order_two), order_two)
    assert report.terminal
    assert report.passed
    assert report.point_verdict == "Smooth"
    assert report.next_model is None


def test_charts_record_the_digits_lost_to_division(order_two):
    charts = blow_up(order_two)
    assert [chart.precision for chart in charts] == [2, 2, 2]
    report = analyze_charts(charts, order_two)
    assert report.notes[0] == "chart relations determined to 2 of 4 digits"
    assert [chart.precision for chart in blow_up(order_two, precision=3)] == [1, 1, 1]


def test_resolution_stops_when_the_digits_run_out():
    ring = EquiDVR(2, 1, 4)
    form = parse_polynomial("x1*x2", ring, ("x1", "x2"))
    model = LocalModel(CASE_II, ring, 2, form, ring.zero, (0, 0, 0, 1))
    # b / t = t^2 is left with two determined digits
    with pytest.raises(PrecisionExhaustedException):
        resolve(model)


def test_resolution_of_order_two(order_two):
    resolution = resolve(order_two, verify=True)
    assert resolution.blowups == 1
    assert resolution.passed
    assert resolution.summary() == "1 blow-up; terminal SemiStable"


def test_resolution_of_order_six():
    resolution = resolve(node(MixedDVR(5, 8), "pi^6"))
    assert resolution.blowups == 3
    assert resolution.orders == [6, 4, 2]
    assert resolution.summary() == "3 blow-ups; terminal SemiStable"
    assert resolution.to_dict()["blowups"] == 3


def test_resolution_after_ramified_extension():
    ring = EquiDVR(3, 1, 6)
    resolution = resolve(node(ring, "t"))
    assert resolution.normalized.ring.k == 12
    assert resolution.orders == [2]
    assert resolution.normalized.provenance


def test_resolution_in_case_two():
    ring = EquiDVR(2, 1, 6)
    form = parse_polynomial("x1*x2", ring, ("x1", "x2"))
    model = LocalModel(CASE_II, ring, 2, form, ring.zero, (0, 0, 1, 0, 0, 0))
    resolution = resolve(model)
    assert resolution.orders == [2, 1]
    assert resolution.passed


def test_shadow_expands_coefficients_in_digits():
    ring = MixedDVR(3, 3)
    f = parse_polynomial("x0 + 4", ring, ("x0",))
    expanded = shadow(f, ("x0", "s"))
    assert expanded == parse_polynomial("x0 + 1 + s", PrimeField(3), ("x0", "s"))


QUADRICS = {1: "x1*x2", 2: "x1*x2 + x3^2"}


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("r", [2, 4, 6])
@pytest.mark.parametrize("n", [1, 2])
def test_resolution_grid_with_both_oracles(n, r, p):
    ring = MixedDVR(p, r + 2)
    model = parse_local_model(f"oq(case=i, n={n}, Q={QUADRICS[n]}, c=pi^{r})", ring)
    resolution = resolve(model, method=BOTH, ext_bound=2 if n == 1 else 1, verify=True)
    assert resolution.blowups == r // 2
    assert resolution.orders == list(range(r, 0, -2))
    assert resolution.passed
    for step in resolution.steps:
        assert verify_presentation(step.charts, step.model).passed
        assert all(shape.passed for _, shape in step.shapes)


@pytest.mark.parametrize("q, orders", [(1, [1]), (2, [2, 1])])
def test_characteristic_two_resolution_with_both_oracles(q, orders):
    ring = EquiDVR(2, 1, 4)
    form = parse_polynomial("x1*x2", ring, ("x1", "x2"))
    b = tuple(1 if i == q else 0 for i in range(4))
    model = LocalModel(CASE_II, ring, 2, form, ring.zero, b)
    resolution = resolve(model, method=BOTH, ext_bound=2, verify=True)
    assert resolution.orders == orders
    assert resolution.passed
    for step in resolution.steps:
        assert verify_presentation(step.charts, step.model).passed
    final = dict(resolution.steps[-1].certificates)["T: special fibre"]
    assert final.is_smooth
    if q == 1:
        assert any(note.startswith("unit partial") for note in final.notes)
