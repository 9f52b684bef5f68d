"""
Blow-up of an ordinary quadratic singularity at <x_1, ..., x_{n+1}, pi>.

For a normalized local model with equation F = Q(x) + l.x + c the blow-up is
covered by n+2 charts: U_j (x_j generates the blown-up ideal, x_i = u_i x_j
and pi = x_j t) and T (pi generates it, x_i = pi u_i). Every chart carries
the relation obtained by dividing the pulled-back equation by the square of
its generator.
"""

from dataclasses import dataclass, field
from dvrgeom.constants import NZD_DEGREE
from dvrgeom.exceptions import (
    ChartInconsistencyException,
    NonTerminationException,
    NotNormalizedException,
    OracleDisagreementException,
    PrecisionExhaustedException,
)
from dvrgeom.groebner import Ideal, ideal_quotient_by_variable
from dvrgeom.poly import MultiPoly
from dvrgeom.quadsing import (
    CASE_I,
    ORDINARY_QUADRATIC,
    classify_point,
    local_names,
    normalize,
    order,
    unit_part,
)
from dvrgeom.rings import EQUI, MIXED
from dvrgeom.schemes import SchemeModel
from dvrgeom.smoothness import (
    GROEBNER,
    SINGULAR,
    SMOOTH,
    SmoothnessCertificate,
    check_snc,
    is_smooth,
    is_smooth_away_from,
    series_shadow,
    singular_points,
)
from dvrgeom.utils import debug_log as default_debug_log

PI = "pi"
TERMINAL = "SemiStable"


@dataclass(frozen=True)
class Chart:
    """
    One affine chart of the blow-up.

    ``fractions`` pairs chart variable indices with what they divide into
    the generator: an ambient index i (u_i = x_i / g) or PI (t = pi / g).
    ``generator`` is the chart index of x_j, or None when pi generates.
    ``precision`` counts the pi-adic digits of the relations that are
    determined by the model.
    """

    name: str
    ring: object
    names: tuple
    relations: tuple
    generator: int = None
    ambient_generator: int = None
    fractions: tuple = ()
    t_index: int = None
    precision: int = None

    @property
    def nvars(self):
        return len(self.names)

    @property
    def is_t_chart(self):
        return self.generator is None

    def variable(self, index):
        return MultiPoly.variable(self.ring, self.nvars, index, self.names)

    def pi_relation(self):
        if self.is_t_chart:
            return None
        pi = MultiPoly.constant(self.ring, self.nvars, self.ring.uniformizer(), self.names)
        return self.variable(self.generator) * self.variable(self.t_index) - pi

    def quadric_relation(self):
        relation = self.pi_relation()
        return next((r for r in self.relations if r != relation), None)

    def ambient_images(self, size):
        """Images of x_1..x_size and pi as chart polynomials."""
        ring = self.ring
        pi = MultiPoly.constant(ring, self.nvars, ring.uniformizer(), self.names)
        generator = pi if self.is_t_chart else self.variable(self.generator)
        images = [None] * size
        pi_image = pi
        for index, target in self.fractions:
            if target == PI:
                pi_image = self.variable(index) * generator
            else:
                images[target] = self.variable(index) * generator
        if not self.is_t_chart:
            images[self.ambient_generator] = generator
        return [(f"x{i + 1}", image) for i, image in enumerate(images)] + [(PI, pi_image)]

    def to_lines(self):
        lines = [f"chart {self.name} [{', '.join(self.names)}]"]
        lines.extend(f"  {relation.to_text()} = 0" for relation in self.relations)
        return lines


def _divide_by_pi(ring, value, power):
    """
    value / pi^power for value in m^power (zero stays zero). Over a
    truncated ring the top ``power`` digits of the result are not determined.
    """
    valuation = ring.valuation(value)
    if valuation == float("inf"):
        return ring.zero
    unit = unit_part(ring, value, valuation)
    return ring.mul(unit, ring.pow(ring.uniformizer(), valuation - power))


def _equation_parts(model):
    """(quadratic form in n+1 variables, linear coefficients, constant) of the equation."""
    equation = model.equation()
    return equation.homogeneous_part(2), equation.linear_coefficients(), equation.constant_term()


def blow_up(model, precision=None):
    """
    The n+2 charts of the blow-up of a normalized local model whose
    coefficients are known to ``precision`` digits (all of them by default).

    :raises NotNormalizedException: r odd (case i) or c != 0 (case ii).
    :raises PrecisionExhaustedException: the order is not below the precision.
    """
    model.validate()
    if not model.normalized:
        raise NotNormalizedException(details=f"{model} must be normalized first")
    order(model)
    ring = model.ring
    size = model.variables
    precision = (ring.k if precision is None else precision) - 2
    quadratic, linear, constant = _equation_parts(model)
    linear = [_divide_by_pi(ring, value, 1) for value in linear]
    constant = _divide_by_pi(ring, constant, 2)
    charts = []
    for j in range(size):
        names = tuple(f"x{i + 1}" if i == j else f"u{i + 1}" for i in range(size)) + ("t",)
        nvars = size + 1
        one = MultiPoly.one(ring, nvars, names)
        t = MultiPoly.variable(ring, nvars, size, names)
        images = [one if i == j else MultiPoly.variable(ring, nvars, i, names) for i in range(size)]
        relation = quadratic.compose(images)
        for i, value in enumerate(linear):
            if value != ring.zero:
                relation = relation + (t * images[i]).scale(value)
        relation = relation + (t * t).scale(constant)
        xj = MultiPoly.variable(ring, nvars, j, names)
        pi = MultiPoly.constant(ring, nvars, ring.uniformizer(), names)
        fractions = tuple((i, i) for i in range(size) if i != j) + ((size, PI),)
        charts.append(
            Chart(f"U{j + 1}", ring, names, (relation, xj * t - pi), j, j, fractions, size,
                  precision)
        )
    names = local_names(size)
    names = tuple(name.replace("x", "u") for name in names)
    relation = quadratic.with_names(names)
    for i, value in enumerate(linear):
        if value != ring.zero:
            relation = relation + MultiPoly.variable(ring, size, i, names).scale(value)
    relation = relation + MultiPoly.constant(ring, size, constant, names)
    charts.append(Chart("T", ring, names, (relation,), None, None,
                        tuple((i, i) for i in range(size)), precision=precision))
    return charts


# Pull-back to the local model


def pull_back(chart, relation, size):
    """
    Substitute u_i = x_i / g and t = pi / g into ``relation`` and clear the
    denominator with the least power of the generator g.
    """
    ring = chart.ring
    pi = ring.uniformizer()
    names = local_names(size)
    fraction_indices = [index for index, _ in chart.fractions]

    def weight(e):
        return sum(e[i] for i in fraction_indices)

    def generator_power(e):
        return e[chart.generator] if not chart.is_t_chart else 0

    shift = max((weight(e) - generator_power(e) for e in relation.terms), default=0)
    shift = max(shift, 0)
    terms = {}
    for e, value in relation.terms.items():
        exponent = [0] * size
        for index, target in chart.fractions:
            if target == PI:
                value = ring.mul(value, ring.pow(pi, e[index]))
            else:
                exponent[target] += e[index]
        extra = generator_power(e) + shift - weight(e)
        if chart.is_t_chart:
            value = ring.mul(value, ring.pow(pi, extra))
        else:
            exponent[chart.ambient_generator] += extra
        key = tuple(exponent)
        terms[key] = ring.add(terms.get(key, ring.zero), value)
    return MultiPoly(ring, size, terms, names)


def _unit_multiple(first, second):
    """True when first = u * second for a unit u."""
    ring = second.ring
    anchor = next((e for e, value in second.terms.items() if ring.is_unit(value)), None)
    if anchor is None or not ring.is_unit(first.coefficient(anchor)):
        return False
    scale = ring.div(first.coefficient(anchor), second.coefficient(anchor))
    return first == second.scale(scale)


def _check_transition(chart, model):
    size = model.variables
    equation = model.equation()
    pulled = [pull_back(chart, relation, size) for relation in chart.relations]
    matches = [p for p in pulled if _unit_multiple(p, equation)]
    others = [p for p in pulled if not _unit_multiple(p, equation)]
    return len(matches) == 1 and all(p.is_zero() for p in others)


# Chart analysis


@dataclass(frozen=True)
class BlowupReport:
    """Certificates of one blow-up step, with the model at the new point if any."""

    model: object
    charts: tuple
    certificates: tuple
    shapes: tuple
    exceptional: str
    point_verdict: str
    terminal: bool
    next_model: object = None
    notes: tuple = field(default=())

    @property
    def order_before(self):
        return order(self.model)

    @property
    def order_after(self):
        return order(self.next_model) if self.next_model is not None else None

    @property
    def passed(self):
        return all(c.is_smooth for _, c in self.certificates) and all(
            s.passed for _, s in self.shapes
        )

    def to_dict(self):
        return {
            "model": self.model.to_text(),
            "order": self.order_before,
            "charts": [
                {"name": c.name, "relations": [r.to_text() for r in c.relations]}
                for c in self.charts
            ],
            "certificates": [
                {"target": label, **certificate.to_dict()}
                for label, certificate in self.certificates
            ],
            "shapes": [{"chart": label, "snc": shape.passed} for label, shape in self.shapes],
            "exceptional_fibre": self.exceptional,
            "new_point": self.point_verdict,
            "terminal": self.terminal,
            "next_model": self.next_model.to_text() if self.next_model is not None else None,
            "notes": list(self.notes),
        }


def exceptional_fibre_equation(model):
    """Equation of the exceptional fibre in P^{n+1} with coordinates x_1..x_{n+1}, T."""
    ring = model.ring
    size = model.variables
    names = local_names(size) + ("T",)
    quadratic, linear, constant = _equation_parts(model)
    total = quadratic.embed(size + 1, list(range(size)), names)
    last = MultiPoly.variable(ring, size + 1, size, names)
    for i, value in enumerate(linear):
        value = _divide_by_pi(ring, value, 1)
        if value != ring.zero:
            total = total + (MultiPoly.variable(ring, size + 1, i, names) * last).scale(value)
    total = total + (last * last).scale(_divide_by_pi(ring, constant, 2))
    return total.reduce_mod_pi()


def _affine(relations, chart, field_):
    return SchemeModel(field_, chart.nvars, tuple(relations), False, chart.names, chart.name)


def _away_from_origin(model, check):
    """Smoothness away from the origin, from Groebner bases and optionally enumeration."""
    origin = tuple(model.ring.zero for _ in range(model.nvars))
    exact = is_smooth_away_from(model, [origin], check.get("step_budget"))
    verdict = SMOOTH if exact else SINGULAR
    method = check.get("method", GROEBNER)
    if method != GROEBNER:
        levels = singular_points(model, check.get("ext_bound"), check.get("budget"))
        found = [p for _, _, points in levels if points for p in points if p != origin]
        if bool(found) == exact:
            raise OracleDisagreementException(
                details=f"{model}: singular points off the origin disagree ({len(found)} found)"
            )
    return SmoothnessCertificate(
        verdict, method, model.expected_dimension, notes=("away from the origin",)
    )


def analyze_charts(charts, model, method=GROEBNER, ext_bound=None, budget=None,
                   step_budget=None):
    """
    Certify one blow-up: strict transform, exceptional fibre and their
    intersection smooth in every U-chart, the semi-stable shape of every
    U-chart, and the new point at the origin of the T-chart.

    :raises ChartInconsistencyException: a chart does not pull back to the
        model, or the new point has the wrong order.
    """
    ring = model.ring
    field_ = ring.residue_field()
    check = {"method": method, "ext_bound": ext_bound, "budget": budget,
             "step_budget": step_budget}
    current = order(model)
    final = current == 2 if model.case == CASE_I else current == 1
    certificates, shapes, notes = [], [], []
    point_verdict, next_model = "", None
    for chart in charts:
        if not _check_transition(chart, model):
            raise ChartInconsistencyException(
                details=f"Chart {chart.name} does not pull back to {model}"
            )
        residue = chart.quadric_relation().reduce_mod_pi()
        base = _affine([residue], chart, field_)
        if not chart.is_t_chart:
            x = base.variable(chart.generator)
            t = base.variable(chart.t_index)
            strict = base.with_equations([t])
            exceptional = base.with_equations([x])
            crossing = strict.with_equations([x])
            certificates.append((f"{chart.name}: strict transform", is_smooth(strict, **check)))
            certificates.append((f"{chart.name}: exceptional fibre", is_smooth(exceptional, **check)))
            certificates.append((f"{chart.name}: intersection", is_smooth(crossing, **check)))
            certificates.append((f"{chart.name}: quadric relation", is_smooth(base, **check)))
            shapes.append((chart.name, check_snc([exceptional, strict], base=base, **check)))
            continue
        origin = tuple(field_.zero for _ in range(chart.nvars))
        if final:
            certificate = is_smooth(base, **check)
            last = residue.partial(chart.nvars - 1)
            if last.is_constant() and not last.is_zero():
                certificate = certificate.with_notes(f"unit partial d/d{chart.names[-1]}")
            certificates.append(("T: special fibre", certificate))
            point_verdict = "Smooth"
            continue
        certificates.append(("T: exceptional fibre", _away_from_origin(base, check)))
        local = SchemeModel(ring, chart.nvars, (chart.quadric_relation(),), False, chart.names)
        verdict = classify_point(local, origin)
        point_verdict = verdict.summary()
        expected = current - 2 if model.case == CASE_I else current - 1
        if verdict.kind != ORDINARY_QUADRATIC or order(verdict.local_model) != expected:
            raise ChartInconsistencyException(
                details=f"New point is {verdict.summary()}, expected order {expected}"
            )
        next_model = verdict.local_model.with_provenance(f"blow-up of order {current}")
        notes.extend(verdict.notes)
    precision = min((c.precision for c in charts if c.precision is not None), default=None)
    if precision is not None and precision < ring.k:
        notes.insert(0, f"chart relations determined to {precision} of {ring.k} digits")
    return BlowupReport(
        model,
        tuple(charts),
        tuple(certificates),
        tuple(shapes),
        exceptional_fibre_equation(model).to_text(),
        point_verdict,
        final,
        next_model,
        tuple(notes),
    )


# Presentation checks


def _mixed_shadow(f, names):
    ring = f.ring
    residue = ring.residue_field()
    terms = {}
    for e, value in f.terms.items():
        integer = ring.balanced(value)
        sign = -1 if integer < 0 else 1
        integer = abs(integer)
        power = 0
        while integer:
            integer, digit = divmod(integer, ring.p)
            if digit:
                key = e + (power,)
                terms[key] = residue.add(terms.get(key, residue.zero),
                                         residue.from_int(sign * digit))
            power += 1
    return MultiPoly(residue, f.nvars + 1, terms, names)


def shadow(f, names):
    """Coefficients expanded in pi-digits with pi replaced by a trailing variable s."""
    if f.ring.kind == MIXED:
        return _mixed_shadow(f, names)
    if f.ring.kind == EQUI:
        return series_shadow(f, names)
    return f.embed(f.nvars + 1, list(range(f.nvars)), names)


@dataclass(frozen=True)
class PresentationCheck:
    chart: str
    generator: str
    principal: bool
    nonzerodivisor: bool
    isomorphism: bool
    notes: tuple = ()

    @property
    def passed(self):
        return self.principal and self.nonzerodivisor and self.isomorphism

    def to_dict(self):
        return {
            "chart": self.chart,
            "generator": self.generator,
            "principal": self.principal,
            "nonzerodivisor": self.nonzerodivisor,
            "isomorphism": self.isomorphism,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class PresentationVerdict:
    checks: tuple

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failing(self):
        return [check for check in self.checks if not check.passed]

    def to_dict(self):
        return {"passed": self.passed, "charts": [c.to_dict() for c in self.checks]}


def _principal(chart, size):
    ring = chart.ring
    for _, image in chart.ambient_images(size):
        for e, value in image.terms.items():
            if chart.is_t_chart and ring.valuation(value) < 1:
                return False
            if not chart.is_t_chart and e[chart.generator] < 1:
                return False
    return True


def _nonzerodivisor(chart, degree_slice, step_budget):
    names = tuple(chart.names) + ("s",)
    relations = [shadow(r, names) for r in chart.relations]
    index = chart.nvars if chart.is_t_chart else chart.generator
    ideal = Ideal(relations, step_budget=step_budget)
    skipped = 0
    for quotient in ideal_quotient_by_variable(relations, index, step_budget):
        if quotient.degree() > degree_slice:
            skipped += 1
            continue
        if not ideal.contains(quotient):
            return False, skipped
    return True, skipped


def verify_presentation(charts, model, degree_slice=None, step_budget=None):
    """
    Per chart: the blown-up ideal becomes principal, its generator is a
    nonzerodivisor on the chart ring, and inverting it recovers the local
    ring of the model.
    """
    degree_slice = degree_slice or NZD_DEGREE
    size = model.variables
    checks = []
    for chart in charts:
        generator = PI if chart.is_t_chart else chart.names[chart.generator]
        principal = _principal(chart, size)
        nzd, skipped = _nonzerodivisor(chart, degree_slice, step_budget)
        notes = [f"degree slice {degree_slice}"]
        if skipped:
            notes.append(f"{skipped} quotient generators above the slice unchecked")
        isomorphism = _check_transition(chart, model)
        if not chart.is_t_chart and chart.pi_relation() not in chart.relations:
            isomorphism = False
        checks.append(
            PresentationCheck(chart.name, generator, principal, nzd, isomorphism, tuple(notes))
        )
    return PresentationVerdict(tuple(checks))


# Iteration


@dataclass(frozen=True)
class Resolution:
    initial: object
    normalized: object
    steps: tuple

    @property
    def blowups(self):
        return len(self.steps)

    @property
    def orders(self):
        return [step.order_before for step in self.steps]

    @property
    def passed(self):
        return all(step.passed for step in self.steps)

    def summary(self):
        noun = "blow-up" if self.blowups == 1 else "blow-ups"
        return f"{self.blowups} {noun}; terminal {TERMINAL}"

    def to_dict(self):
        return {
            "model": self.initial.to_text(),
            "normalized": self.normalized.to_text(),
            "provenance": list(self.normalized.provenance),
            "blowups": self.blowups,
            "orders": self.orders,
            "summary": self.summary(),
            "steps": [step.to_dict() for step in self.steps],
        }


def resolve(model, method=GROEBNER, ext_bound=None, budget=None, step_budget=None,
            verify=False, debug=False, debug_log=default_debug_log):
    """
    Blow up repeatedly at the new point until the model is semi-stable.

    :param verify: also run the presentation checks at every step.
    :raises NonTerminationException: more steps than the order allows.
    :raises PrecisionExhaustedException: a new order is not determined by the
        digits left after dividing by powers of pi.
    """
    normalized = normalize(model)
    current = normalized
    initial_order = order(current)
    guard = initial_order // 2 + 1 if current.case == CASE_I else initial_order + 1
    precision = current.ring.k
    steps = []
    while True:
        if len(steps) >= guard:
            raise NonTerminationException(
                details=f"No semi-stable model after {guard} blow-ups"
            )
        charts = blow_up(current, precision)
        precision = charts[-1].precision
        if verify:
            presentation = verify_presentation(charts, current, step_budget=step_budget)
            if not presentation.passed:
                names = ", ".join(c.chart for c in presentation.failing)
                raise ChartInconsistencyException(details=f"Presentation fails on {names}")
        report = analyze_charts(charts, current, method, ext_bound, budget, step_budget)
        debug_log(f"Debug: blow-up {len(steps) + 1} of order {order(current)}", debug)
        debug_log(f"Debug: chart relations determined to {precision} digits", debug)
        steps.append(report)
        if report.terminal:
            break
        current = report.next_model
        if order(current) >= precision:
            raise PrecisionExhaustedException(
                details=f"Order {order(current)} is not determined by {precision} digits"
            )
    return Resolution(model, normalized, tuple(steps))
