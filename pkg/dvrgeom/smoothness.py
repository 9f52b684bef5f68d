"""
Jacobian-criterion smoothness, transversality and simple-normal-crossing
certificates for complete intersections over a field.

Every verdict is available from two independent sources: Groebner bases of
the chart-wise singular locus, and exhaustive enumeration of F_{q^m}-points
with a rank test of the Jacobian. ``both`` runs the two and insists that
they agree.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from dvrgeom.constants import EXT_BOUND
from dvrgeom.exceptions import (
    ArityMismatchException,
    BudgetExceededException,
    NotCompleteIntersectionException,
    OracleDisagreementException,
    UnsupportedException,
)
from dvrgeom.groebner import EMPTY, Ideal, elimination_ideal
from dvrgeom.linalg import rank
from dvrgeom.points import normalize_projective, point_level
from dvrgeom.poly import MultiPoly, determinant, jacobian
from dvrgeom.polyparse import format_point
from dvrgeom.rings import EQUI, MIXED, RATIONAL, Rationals, extend_unramified
from dvrgeom.schemes import SchemeModel
from dvrgeom.utils import debug_log as default_debug_log

SMOOTH = "Smooth"
SINGULAR = "SingularAt"
WRONG_CODIMENSION = "WrongCodimension"

GROEBNER = "groebner"
ENUMERATION = "enumeration"
BOTH = "both"
METHODS = (GROEBNER, ENUMERATION, BOTH)


@dataclass(frozen=True)
class SmoothnessCertificate:
    verdict: str
    method: str
    expected: int = None
    found: int = None
    witnesses: tuple = ()
    ext_bound: int = None
    notes: tuple = field(default=())

    @property
    def is_smooth(self):
        return self.verdict == SMOOTH

    def with_notes(self, *notes):
        return SmoothnessCertificate(
            self.verdict,
            self.method,
            self.expected,
            self.found,
            self.witnesses,
            self.ext_bound,
            self.notes + tuple(notes),
        )

    def summary(self):
        if self.verdict == WRONG_CODIMENSION:
            return f"{self.verdict}(expected={self.expected}, found={self.found})"
        if self.verdict == SINGULAR:
            return f"{self.verdict}({'; '.join(self.witnesses)})"
        return self.verdict

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "method": self.method,
            "expected_dimension": self.expected,
            "found_dimension": self.found,
            "witnesses": list(self.witnesses),
            "ext_bound": self.ext_bound,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class SingularLocus:
    """Singular-locus ideal of every standard chart of a model."""

    model: SchemeModel
    charts: tuple

    def is_empty(self):
        return all(ideal.is_unit() for _, ideal in self.charts)

    def dimension(self):
        return max((ideal.dimension() for _, ideal in self.charts), default=EMPTY)

    def witness(self):
        """Reduced basis of the first chart with a nonempty locus, as text."""
        for index, ideal in self.charts:
            if not ideal.is_unit():
                basis = ", ".join(g.to_text() for g in ideal.groebner_basis())
                chart = "affine" if index is None else f"{self.model.names[index]}=1"
                return f"<{basis}> on chart {chart}"
        return None


@dataclass(frozen=True)
class SncVerdict:
    passed: bool
    strata: tuple
    failing: tuple = None

    def to_dict(self):
        return {
            "passed": self.passed,
            "failing_stratum": list(self.failing) if self.failing else None,
            "strata": [
                {"indices": list(indices), "certificate": cert.to_dict()}
                for indices, cert in self.strata
            ],
        }


def _require_field(model):
    if not model.ring.is_field:
        raise UnsupportedException(
            details=f"Smoothness over {model.ring} needs the special or generic fibre"
        )


def _minors(equations, nvars):
    """Equations plus all c x c minors of their Jacobian in ``nvars`` variables."""
    c = len(equations)
    if c == 0:
        return []
    if c > nvars:
        return list(equations)
    matrix = jacobian(equations)
    generators = list(equations)
    for columns in combinations(range(nvars), c):
        minor = determinant([[row[j] for j in columns] for row in matrix])
        if not minor.is_zero():
            generators.append(minor)
    return generators


def model_dimension(model, step_budget=None):
    """Dimension of the zero set: the largest chart dimension."""
    if not model.equations:
        return model.ambient_dimension
    dims = [Ideal(eqs, step_budget=step_budget).dimension() for _, eqs in model.charts()]
    return max(dims)


def singular_locus(model, step_budget=None):
    """
    Chart-wise Jacobian ideal of a complete intersection over a field.

    :raises NotCompleteIntersectionException: when a chart has a component of
        dimension above ``ambient - codimension``.
    """
    _require_field(model)
    found = model_dimension(model, step_budget)
    if found != EMPTY and found > model.expected_dimension:
        raise NotCompleteIntersectionException(
            details=(
                f"{model.codimension} equations cut out a set of dimension {found} "
                f"in a space of dimension {model.ambient_dimension}"
            )
        )
    charts = []
    for index, equations in model.charts():
        nvars = model.nvars - (0 if index is None else 1)
        generators = _minors(equations, nvars)
        if not generators:
            names = model.names if index is None else model.names[:index] + model.names[index + 1:]
            generators = [MultiPoly.one(model.ring, nvars, names)]
        charts.append((index, Ideal(generators, step_budget=step_budget)))
    return SingularLocus(model, tuple(charts))


def _groebner_certificate(model, step_budget):
    expected = model.expected_dimension
    found = model_dimension(model, step_budget)
    if found != EMPTY and found > expected:
        return SmoothnessCertificate(WRONG_CODIMENSION, GROEBNER, expected, found)
    locus = singular_locus(model, step_budget)
    if locus.is_empty():
        return SmoothnessCertificate(SMOOTH, GROEBNER, expected, found)
    return SmoothnessCertificate(SINGULAR, GROEBNER, expected, found, (locus.witness(),))


def jacobian_rank_at(model, point, field_=None, embedding=None):
    """Rank of the (homogeneous) Jacobian of ``model`` at a raw point."""
    field_ = field_ or model.ring
    rows = []
    for f in model.equations:
        row = []
        for i in range(model.nvars):
            partial = f.partial(i)
            if embedding is not None:
                partial = partial.map_coefficients(embedding, field_)
            row.append(partial.evaluate(point))
        rows.append(row)
    return rank(rows, field_) if rows else 0


def singular_points(model, ext_bound=None, budget=None, stop_early=False, debug=False,
                    debug_log=default_debug_log):
    """
    Points of ``model`` where the Jacobian rank drops, by exhaustive search.

    :return: list of ``(degree, field, points)`` with each point listed at the
        smallest extension degree containing it.
    """
    _require_field(model)
    if model.ring.kind == RATIONAL:
        raise UnsupportedException(details="Enumeration needs a finite field")
    ext_bound = ext_bound or EXT_BOUND
    q = model.ring.size
    c = model.codimension
    levels = []
    for degree in range(1, ext_bound + 1):
        try:
            points = model.points(degree, budget)
        except BudgetExceededException:
            if degree == 1:
                raise
            debug_log(f"Debug: enumeration budget reached at degree {degree}", debug)
            levels.append((degree, None, None))
            break
        target, embedding = extend_unramified(model.ring, degree)
        found = [
            point
            for point in points
            if jacobian_rank_at(model, point, target, embedding if degree > 1 else None) < c
            and point_level(target, point, q) == degree
        ]
        debug_log(
            f"Debug: degree {degree}: {len(points)} points, {len(found)} singular", debug
        )
        levels.append((degree, target, found))
        if found and stop_early:
            break
    return levels


def _enumeration_certificate(model, ext_bound, budget, debug, debug_log):
    expected = model.expected_dimension
    levels = singular_points(model, ext_bound, budget, True, debug, debug_log)
    notes = []
    searched = ext_bound or EXT_BOUND
    witnesses = []
    for degree, target, points in levels:
        if target is None:
            searched = degree - 1
            notes.append(f"enumeration budget reached at degree {degree}")
            continue
        witnesses.extend(format_point(p, target, model.projective) for p in points)
    if witnesses:
        verdict = WRONG_CODIMENSION if expected < 0 else SINGULAR
        return SmoothnessCertificate(
            verdict, ENUMERATION, expected, None, tuple(witnesses), searched, tuple(notes)
        )
    return SmoothnessCertificate(SMOOTH, ENUMERATION, expected, None, (), searched, tuple(notes))


def is_smooth(model, method=GROEBNER, ext_bound=None, budget=None, step_budget=None,
              debug=False, debug_log=default_debug_log):
    """
    Decide smoothness (of the expected dimension) of a complete intersection.

    :param method: ``groebner``, ``enumeration`` or ``both``.
    :raises OracleDisagreementException: ``both`` with conflicting verdicts.
    """
    _require_field(model)
    if method not in METHODS:
        raise UnsupportedException(details=f"Unknown method: {method}")
    if method == GROEBNER or model.ring.kind == RATIONAL:
        return _groebner_certificate(model, step_budget)
    enumerated = _enumeration_certificate(model, ext_bound, budget, debug, debug_log)
    if method == ENUMERATION:
        return enumerated
    exact = _groebner_certificate(model, step_budget)
    if exact.is_smooth != enumerated.is_smooth:
        raise OracleDisagreementException(
            details=(
                f"{model}: groebner says {exact.summary()}, enumeration up to degree "
                f"{enumerated.ext_bound} says {enumerated.summary()}"
            )
        )
    return SmoothnessCertificate(
        exact.verdict,
        BOTH,
        exact.expected,
        exact.found,
        enumerated.witnesses or exact.witnesses,
        enumerated.ext_bound,
        exact.notes + enumerated.notes,
    )


def intersect(first, second, shared=()):
    """Intersection of two models; equations listed in ``shared`` are not repeated."""
    if first.nvars != second.nvars or first.projective != second.projective:
        raise ArityMismatchException(details="Models live in different ambient spaces")
    if first.ring != second.ring:
        raise UnsupportedException(details=f"{first.ring} vs {second.ring}")
    return first.with_equations([f for f in second.equations if f not in shared])


def is_transversal(first, second, method=GROEBNER, **kwargs):
    """Smoothness of the intersection with additive codimension; empty counts."""
    return is_smooth(intersect(first, second), method=method, **kwargs)


def check_snc(components, method=GROEBNER, base=None, **kwargs):
    """
    Every stratum Y_I must be smooth of codimension |I| or empty.

    Components living on a common ``base`` (a smooth chart given by its own
    equations) carry those equations once per stratum.
    """
    shared = tuple(base.equations) if base is not None else ()
    strata = []
    indices = range(len(components))
    for size in range(1, len(components) + 1):
        for subset in combinations(indices, size):
            stratum = components[subset[0]]
            for other in subset[1:]:
                stratum = intersect(stratum, components[other], shared)
            certificate = is_smooth(stratum, method=method, **kwargs)
            strata.append((subset, certificate))
            if not certificate.is_smooth:
                return SncVerdict(False, tuple(strata), subset)
    return SncVerdict(True, tuple(strata))


def locus_inside_points(generators, points, ring, names=None, step_budget=None):
    """
    True when every zero of ``generators`` over the algebraic closure is one
    of the affine ``points``; tested with Rabinowitsch's trick on the
    products of coordinate functions vanishing at the points.
    """
    generators = [g for g in generators if not g.is_zero()]
    if not generators:
        return False
    nvars = generators[0].nvars
    if not points:
        return Ideal(generators, step_budget=step_budget).is_unit()
    names = tuple(generators[0].names) + ("_r",)
    lifted = [g.embed(nvars + 1, list(range(nvars)), names) for g in generators]
    z = MultiPoly.variable(ring, nvars + 1, nvars, names)
    for choice in product(range(nvars), repeat=len(points)):
        vanishing = MultiPoly.one(ring, nvars + 1, names)
        for point, coordinate in zip(points, choice):
            factor = MultiPoly.variable(ring, nvars + 1, coordinate, names) - MultiPoly.constant(
                ring, nvars + 1, point[coordinate], names
            )
            vanishing = vanishing * factor
        if not Ideal(lifted + [1 - z * vanishing], step_budget=step_budget).is_unit():
            return False
    return True


def is_smooth_away_from(model, points, step_budget=None):
    """
    True when ``model`` has the expected dimension and its singular locus is
    contained in ``points`` (raw coordinates over ``model.ring``).
    """
    _require_field(model)
    found = model_dimension(model, step_budget)
    if found != EMPTY and found > model.expected_dimension:
        return False
    locus = singular_locus(model, step_budget)
    ring = model.ring
    for index, ideal in locus.charts:
        if ideal.is_unit():
            continue
        if index is None:
            chart_points = [tuple(p) for p in points]
        else:
            chart_points = []
            for point in points:
                if point[index] == ring.zero:
                    continue
                scaled = normalize_at(point, index, ring)
                chart_points.append(scaled[:index] + scaled[index + 1:])
        if not locus_inside_points(list(ideal.generators), chart_points, ring,
                                   step_budget=step_budget):
            return False
    return True


def normalize_at(point, index, ring):
    scale = ring.inv(point[index])
    return tuple(ring.mul(c, scale) for c in point)


def rational_lift(model):
    """Generic fibre of a Z/p^k model, coefficients lifted to QQ by balanced residues."""
    ring = model.ring
    rationals = Rationals()
    equations = tuple(
        f.map_coefficients(lambda c: Fraction(ring.balanced(c)), rationals)
        for f in model.equations
    )
    return SchemeModel(rationals, model.nvars, equations, model.projective, model.names,
                       model.label)


def series_shadow(f, names):
    """
    Expand the coefficients of an F_q[t]/t^k polynomial in powers of t and
    replace t by a trailing polynomial variable ``s``.
    """
    ring = f.ring
    residue = ring.residue_field()
    nvars = f.nvars + 1
    terms = {}
    for e, c in f.terms.items():
        digits = ring.digits(c)
        for power, digit in enumerate(digits):
            if digit != residue.zero:
                terms[e + (power,)] = digit
    return MultiPoly(residue, nvars, terms, names)


def generic_fibre_certificate(model, step_budget=None):
    """
    Smoothness of the generic fibre of a model over a truncated DVR.

    Z/p^k models are lifted to QQ; F_q[t]/t^k models are read over F_q[s]
    with s for t, and the generic fibre is smooth when the chart-wise
    singular-locus ideals meet F_q[s] nontrivially.
    """
    ring = model.ring
    if ring.kind == MIXED:
        lifted = rational_lift(model)
        return _groebner_certificate(lifted, step_budget).with_notes("route: rational lift")
    if ring.kind != EQUI:
        raise UnsupportedException(details=f"{ring} is not a truncated DVR")
    expected = model.expected_dimension
    names = tuple(model.names) + ("s",)
    equations = [series_shadow(f, names) for f in model.equations]
    found = EMPTY
    smooth = True
    for index in ([None] if not model.projective else range(model.nvars)):
        if index is None:
            chart = list(equations)
            nvars = model.nvars
        else:
            chart = [f.dehomogenize(index) for f in equations]
            nvars = model.nvars - 1
        if not chart:
            found = max(found, nvars)
            continue
        total = Ideal(chart, step_budget=step_budget)
        if total.is_unit():
            continue
        eliminated = elimination_ideal(chart, list(range(nvars)), step_budget)
        if eliminated:
            continue
        found = max(found, total.dimension() - 1)
        matrix = [[f.partial(i) for i in range(nvars)] for f in chart]
        generators = list(chart)
        c = len(chart)
        if c <= nvars:
            for columns in combinations(range(nvars), c):
                minor = determinant([[row[j] for j in columns] for row in matrix])
                if not minor.is_zero():
                    generators.append(minor)
        if not elimination_ideal(generators, list(range(nvars)), step_budget):
            smooth = False
    note = "route: pi as variable"
    if found != EMPTY and found > expected:
        return SmoothnessCertificate(WRONG_CODIMENSION, GROEBNER, expected, found, notes=(note,))
    verdict = SMOOTH if smooth else SINGULAR
    return SmoothnessCertificate(verdict, GROEBNER, expected, found, notes=(note,))
