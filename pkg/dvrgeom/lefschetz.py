"""
Dual varieties by exhaustive tangency tables, and Lefschetz pencils over
finite fields and truncated DVRs.

A pencil is the line {s0 f0 + s1 f_inf} in the space of degree-d forms;
d > 1 stands for the d-fold embedding, whose hyperplane sections are the
degree-d hypersurface sections in the original coordinates.
"""

from dataclasses import dataclass, field
from itertools import combinations, product
from dvrgeom.bertini import StratifiedModel
from dvrgeom.constants import CANDIDATE_BUDGET, EXT_BOUND, POINT_BUDGET
from dvrgeom.exceptions import (
    BudgetExceededException,
    ExhaustedException,
    InvalidPencilException,
    OracleDisagreementException,
    UnsupportedException,
)
from dvrgeom.groebner import EMPTY
from dvrgeom.points import normalize_projective, point_level
from dvrgeom.poly import MultiPoly, form_from_coefficients, monomials_of_degree
from dvrgeom.polyparse import format_point
from dvrgeom.quadsing import (
    ORDINARY_QUADRATIC,
    SMOOTH,
    UNDECIDABLE,
    classify_field_point,
    classify_point,
    hyperplane_preserves_oq,
)
from dvrgeom.rings import extend_unramified
from dvrgeom.schemes import SchemeModel
from dvrgeom.smoothness import (
    WRONG_CODIMENSION,
    generic_fibre_certificate,
    is_smooth,
    is_smooth_away_from,
    is_transversal,
    singular_points,
)
from dvrgeom.utils import canonical_tuples, debug_log as default_debug_log, projective_count

TRANSVERSAL = "transversal"
TANGENT = "tangent"
MULTI_TANGENT = "multi-tangent"
CONTAINS = "contains"

SMOOTH_MODE = "smooth"
DECLARED_MODE = "declared"


@dataclass(frozen=True)
class Pencil:
    """Pencil s0*f0 + s1*f_inf of degree-``degree`` forms."""

    f0: MultiPoly
    f_inf: MultiPoly

    def __post_init__(self):
        if self.f0.nvars != self.f_inf.nvars or self.f0.ring != self.f_inf.ring:
            raise InvalidPencilException(details="Pencil forms live in different rings")
        for form in (self.f0, self.f_inf):
            if form.is_zero() or not form.is_homogeneous():
                raise InvalidPencilException(details=f"{form} is not a nonzero form")
        if self.f0.degree() != self.f_inf.degree():
            raise InvalidPencilException(details="Pencil forms have different degrees")
        if _proportional(self.f0, self.f_inf):
            raise InvalidPencilException(details=f"{self.f0} and {self.f_inf} are proportional")

    @property
    def ring(self):
        return self.f0.ring

    @property
    def degree(self):
        return self.f0.degree()

    def member(self, parameter):
        s0, s1 = parameter
        return self.f0.scale(s0) + self.f_inf.scale(s1)

    def base_change(self, embedding):
        target = embedding.target
        return Pencil(
            self.f0.map_coefficients(embedding, target),
            self.f_inf.map_coefficients(embedding, target),
        )

    def residue(self):
        return Pencil(self.f0.reduce_mod_pi(), self.f_inf.reduce_mod_pi())

    def lift(self, ring):
        return Pencil(
            self.f0.map_coefficients(ring.lift, ring),
            self.f_inf.map_coefficients(ring.lift, ring),
        )

    def to_text(self):
        return f"<{self.f0.to_text()}, {self.f_inf.to_text()}>"

    def __str__(self):
        return self.to_text()


def _proportional(first, second):
    ring = first.ring
    if set(first.terms) != set(second.terms):
        return False
    exponent = next(iter(first.terms))
    if not ring.is_unit(second.terms[exponent]):
        return False
    scale = ring.div(first.terms[exponent], second.terms[exponent])
    return first == second.scale(scale)


def axis_of(pencil, names=None):
    """The base locus {f0 = f_inf = 0}."""
    names = names or pencil.f0.names
    return SchemeModel(pencil.ring, pencil.f0.nvars, (pencil.f0, pencil.f_inf), True, names,
                       "axis")


def parameter_text(parameter, field_):
    s0, s1 = parameter
    if s0 == field_.zero:
        return "inf"
    return field_.format(field_.div(s1, s0))


# Sections


@dataclass(frozen=True)
class SectionAnalysis:
    status: str
    points: tuple = ()
    verdicts: tuple = ()
    notes: tuple = ()

    def to_dict(self):
        return {
            "status": self.status,
            "points": list(self.points),
            "verdicts": [v.summary() for v in self.verdicts],
            "notes": list(self.notes),
        }


def _singular_section_points(section, ext_bound, budget):
    """(field, point) pairs of singular points, each at its smallest level."""
    found = []
    notes = []
    for degree, target, points in singular_points(section, ext_bound, budget):
        if target is None:
            notes.append(f"enumeration stopped at degree {degree}")
            continue
        found.extend((degree, target, point) for point in points)
    return found, notes


def analyze_section(model, form, ext_bound=None, budget=None, declared=(), step_budget=None):
    """
    Tangency status of the hypersurface section {form = 0} of ``model``:
    transversal, tangent (exactly one new singular point, ordinary
    quadratic), multi-tangent, or contains (wrong dimension).

    ``declared`` singular points of the model do not count as new.
    """
    section = model.with_equations([form], "section")
    certificate = is_smooth(section, step_budget=step_budget)
    if certificate.is_smooth:
        return SectionAnalysis(TRANSVERSAL)
    if certificate.verdict == WRONG_CODIMENSION and certificate.found != EMPTY:
        return SectionAnalysis(CONTAINS, notes=(certificate.summary(),))
    field_ = model.ring
    found, notes = _singular_section_points(section, ext_bound, budget)
    declared = {normalize_projective(p, field_) for p in declared}
    texts, verdicts, new = [], [], []
    for degree, target, point in found:
        _, embedding = extend_unramified(field_, degree)
        lifted = section.base_change(embedding) if degree > 1 else section
        verdict = classify_field_point(lifted, point)
        texts.append(format_point(point, target, True))
        verdicts.append(verdict)
        if degree > 1 or tuple(point) not in declared:
            new.append(verdict)
    if not new and found:
        return SectionAnalysis(TRANSVERSAL, tuple(texts), tuple(verdicts),
                               tuple(notes) + ("singular only at declared points",))
    if not new:
        notes.append("singular points lie beyond the enumeration bound")
        return SectionAnalysis(MULTI_TANGENT, notes=tuple(notes))
    status = TANGENT if len(new) == 1 and new[0].is_ordinary else MULTI_TANGENT
    return SectionAnalysis(status, tuple(texts), tuple(verdicts), tuple(notes))


# Dual variety


@dataclass(frozen=True)
class TableRow:
    coefficients: tuple
    form: MultiPoly
    analysis: SectionAnalysis

    def to_line(self):
        points = " ".join(self.analysis.points) or "-"
        verdicts = " ".join(v.kind for v in self.analysis.verdicts) or "-"
        return f"{self.form.to_text()} ; {self.analysis.status} ; {points} ; {verdicts}"


@dataclass(frozen=True)
class TangencyTable:
    model: SchemeModel
    degree: int
    ext_bound: int
    rows: tuple

    def with_status(self, *statuses):
        return [row for row in self.rows if row.analysis.status in statuses]

    def tangent_forms(self):
        """Forms in the open stratum: exactly one ordinary quadratic tangency."""
        return [row.form for row in self.with_status(TANGENT)]

    def counts(self):
        counts = {TRANSVERSAL: 0, TANGENT: 0, MULTI_TANGENT: 0, CONTAINS: 0}
        for row in self.rows:
            counts[row.analysis.status] += 1
        return counts

    def lines(self):
        return sorted(row.to_line() for row in self.rows)

    def to_dict(self):
        return {
            "model": self.model.to_text(),
            "degree": self.degree,
            "ext_bound": self.ext_bound,
            "counts": self.counts(),
            "rows": self.lines(),
        }


def forms_of_degree(field_, nvars, degree, names=None):
    """Canonical (first nonzero coefficient 1) degree-d forms in scan order."""
    monomials = monomials_of_degree(nvars, degree)
    for coeffs in canonical_tuples(len(monomials), field_.elements(), field_.one):
        yield coeffs, form_from_coefficients(field_, nvars, monomials, list(coeffs), names)


def dual_table(model, degree=1, ext_bound=None, budget=None, step_budget=None, debug=False,
               debug_log=default_debug_log):
    """
    Tangency status of every degree-``degree`` hypersurface section.

    :raises BudgetExceededException: more forms than ``budget``.
    """
    field_ = model.ring
    if not field_.is_field:
        raise UnsupportedException(details="Dual tables are computed over a field")
    ext_bound = ext_bound or EXT_BOUND
    total = projective_count(field_.size, len(monomials_of_degree(model.nvars, degree)))
    budget = budget or POINT_BUDGET
    if total > budget:
        raise BudgetExceededException(details=f"{total} forms exceed the budget {budget}")
    rows = []
    for coeffs, form in forms_of_degree(field_, model.nvars, degree, model.names):
        analysis = analyze_section(model, form, ext_bound, budget, step_budget=step_budget)
        rows.append(TableRow(coeffs, form, analysis))
    debug_log(f"Debug: {len(rows)} forms tabulated", debug)
    return TangencyTable(model, degree, ext_bound, tuple(rows))


# Pencils over a field


@dataclass(frozen=True)
class Member:
    parameter: str
    level: int
    form: MultiPoly
    analysis: SectionAnalysis
    through_declared: tuple = ()

    def to_dict(self):
        return {
            "t": self.parameter,
            "level": self.level,
            "form": self.form.to_text(),
            **self.analysis.to_dict(),
        }


def pencil_parameters(field_, level):
    """Points (s0:s1) of P^1 whose smallest field of definition has degree ``level``."""
    target, _ = extend_unramified(field_, level)
    q = field_.size
    for parameter in canonical_tuples(2, target.elements(), target.one):
        if level == 1 or point_level(target, parameter, q) == level:
            yield target, parameter


def singular_members(model, pencil, ext_bound=None, budget=None, declared=(),
                     step_budget=None):
    """Members whose section is not transversal, each listed at its smallest level."""
    ext_bound = ext_bound or EXT_BOUND
    field_ = model.ring
    members = []
    for level in range(1, ext_bound + 1):
        _, embedding = extend_unramified(field_, level)
        local_model = model.base_change(embedding) if level > 1 else model
        local_pencil = pencil.base_change(embedding) if level > 1 else pencil
        local_declared = [tuple(embedding(c) for c in p) for p in declared] if level > 1 \
            else list(declared)
        try:
            for target, parameter in pencil_parameters(field_, level):
                form = local_pencil.member(parameter)
                analysis = analyze_section(
                    local_model, form, max(1, ext_bound // level), budget, local_declared,
                    step_budget,
                )
                if analysis.status == TRANSVERSAL and not analysis.points:
                    continue
                through = tuple(p for p in local_declared if form.evaluate(p) == target.zero)
                members.append(Member(parameter_text(parameter, target), level, form, analysis,
                                      through))
        except BudgetExceededException:
            if level == 1:
                raise
            break
    return members


@dataclass(frozen=True)
class LefschetzVerdict:
    passed: bool
    pencil: Pencil
    mode: str
    failing: str = ""
    axis: object = None
    members: tuple = ()
    ext_bound: int = None
    notes: tuple = field(default=())

    @property
    def critical_values(self):
        return [m for m in self.members if m.analysis.status != TRANSVERSAL]

    def to_dict(self):
        return {
            "pencil": self.pencil.to_text(),
            "lefschetz": self.passed,
            "mode": self.mode,
            "failing": self.failing,
            "axis": self.axis.to_dict() if self.axis is not None else None,
            "ext_bound": self.ext_bound,
            "members": [m.to_dict() for m in self.members],
            "notes": list(self.notes),
        }


def _check_declared(model, declared, step_budget):
    for point in declared:
        verdict = classify_field_point(model, point)
        if verdict.kind != ORDINARY_QUADRATIC:
            return f"declared point {format_point(point, model.ring)} is {verdict.summary()}"
    if not is_smooth_away_from(model, declared, step_budget):
        return "model is singular away from the declared points"
    return ""


def _declared_stay_ordinary(model, member, step_budget):
    """Through every declared point: still ordinary quadratic on the section."""
    section = model.with_equations([member.form], "section")
    for point in member.through_declared:
        verdict = classify_field_point(section, point)
        cone = classify_field_point(model, point).tangent_cone
        preserved = member.form.degree() == 1 and hyperplane_preserves_oq(cone, member.form)
        if preserved and verdict.kind != ORDINARY_QUADRATIC:
            raise OracleDisagreementException(
                details=f"Member t={member.parameter} preserves the cone at {point} "
                f"but the section is {verdict.summary()}"
            )
        if verdict.kind != ORDINARY_QUADRATIC:
            return f"member t={member.parameter}: declared point becomes {verdict.summary()}"
    return ""


def is_lefschetz(model, pencil, ext_bound=None, declared=None, budget=None, step_budget=None):
    """
    Check the pencil conditions on ``model`` over a field: axis transversal
    (and off the declared singular points), every member outside the
    critical set transversal, every critical member with exactly one new
    singular point which is ordinary quadratic, and the declared points
    staying ordinary quadratic on the members through them.
    """
    ext_bound = ext_bound or EXT_BOUND
    mode = DECLARED_MODE if declared else SMOOTH_MODE
    declared = [normalize_projective(p, model.ring) for p in (declared or [])]

    def fail(reason, axis=None, members=()):
        return LefschetzVerdict(False, pencil, mode, reason, axis, tuple(members), ext_bound)

    if mode == SMOOTH_MODE:
        certificate = is_smooth(model, step_budget=step_budget)
        if not certificate.is_smooth:
            return fail(f"model is not smooth: {certificate.summary()}")
    else:
        problem = _check_declared(model, declared, step_budget)
        if problem:
            return fail(problem)
    axis = axis_of(pencil, model.names)
    for point in declared:
        if axis.contains_point(point):
            return fail(f"axis meets declared point {format_point(point, model.ring)}")
    axis_certificate = is_transversal(model, axis, step_budget=step_budget)
    if not axis_certificate.is_smooth:
        return fail(f"axis is not transversal: {axis_certificate.summary()}", axis_certificate)
    members = singular_members(model, pencil, ext_bound, budget, declared, step_budget)
    for member in members:
        status = member.analysis.status
        if status not in (TRANSVERSAL, TANGENT):
            return fail(f"member t={member.parameter} is {status}", axis_certificate, members)
        if member.through_declared:
            problem = _declared_stay_ordinary(model, member, step_budget)
            if problem:
                return fail(problem, axis_certificate, members)
    notes = (f"critical members searched up to degree {ext_bound}",)
    return LefschetzVerdict(True, pencil, mode, "", axis_certificate, tuple(members), ext_bound,
                            notes)


def canonical_pencils(field_, size):
    """
    Pairs of coefficient vectors spanning each 2-dimensional subspace once:
    the rows of reduced echelon 2 x size matrices.
    """
    values = field_.elements()
    zero, one = field_.zero, field_.one
    for first, second in combinations(range(size), 2):
        free_first = [i for i in range(first + 1, size) if i != second]
        free_second = list(range(second + 1, size))
        for tail_first in product(values, repeat=len(free_first)):
            row0 = [zero] * size
            row0[first] = one
            for i, value in zip(free_first, tail_first):
                row0[i] = value
            for tail_second in product(values, repeat=len(free_second)):
                row1 = [zero] * size
                row1[second] = one
                for i, value in zip(free_second, tail_second):
                    row1[i] = value
                yield tuple(row0), tuple(row1)


@dataclass(frozen=True)
class PencilSearch:
    pencil: Pencil
    degree: int
    verdict: object
    statistics: tuple

    def to_dict(self):
        return {
            "extension_degree": self.degree,
            "pencil": self.pencil.to_text(),
            "verdict": self.verdict.to_dict(),
            "statistics": [dict(level) for level in self.statistics],
        }


def _scan_pencils(model, degree, candidate_budget):
    monomials = monomials_of_degree(model.nvars, degree)
    for count, (row0, row1) in enumerate(canonical_pencils(model.ring, len(monomials))):
        if count >= candidate_budget:
            return
        yield Pencil(
            form_from_coefficients(model.ring, model.nvars, monomials, list(row0), model.names),
            form_from_coefficients(model.ring, model.nvars, monomials, list(row1), model.names),
        )


def find_pencil(model, degree=1, ell=2, max_ext=0, declared=None, ext_bound=None,
                budget=None, candidate_budget=None, step_budget=None, debug=False,
                debug_log=default_debug_log):
    """
    First Lefschetz pencil of degree-``degree`` forms in canonical scan
    order, over F_{q^(ell^j)} for j = 0..max_ext.

    :raises ExhaustedException: no candidate passed within the budgets.
    """
    candidate_budget = candidate_budget or CANDIDATE_BUDGET
    statistics = []
    for level in range(max_ext + 1):
        extension = ell**level
        target, embedding = extend_unramified(model.ring, extension)
        current = model.base_change(embedding) if extension > 1 else model
        points = [tuple(embedding(c) for c in p) for p in (declared or [])]
        tried = 0
        for pencil in _scan_pencils(current, degree, candidate_budget):
            tried += 1
            verdict = is_lefschetz(current, pencil, ext_bound, points, budget, step_budget)
            if verdict.passed:
                statistics.append({"degree": extension, "candidates": tried, "found": True})
                debug_log(f"Debug: pencil found after {tried} candidates over {target}", debug)
                return PencilSearch(pencil, extension, verdict, tuple(statistics))
        statistics.append({"degree": extension, "candidates": tried, "found": False})
    raise ExhaustedException(
        details="No Lefschetz pencil within the candidate budget",
        statistics={"levels": statistics},
    )


# Pencils over a DVR


@dataclass(frozen=True)
class DvrMember:
    parameter: str
    generic: object
    verdicts: tuple
    notes: tuple = ()

    @property
    def undecidable(self):
        return any(v.kind == UNDECIDABLE for v in self.verdicts)

    def to_dict(self):
        return {
            "t": self.parameter,
            "generic_fibre": self.generic.summary() if self.generic is not None else None,
            "verdicts": [v.summary() for v in self.verdicts],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class DvrPencilResult:
    pencil: Pencil
    degree: int
    special: LefschetzVerdict
    axis: object = None
    members: tuple = ()
    statistics: tuple = ()
    failing: str = ""

    @property
    def passed(self):
        return not self.failing

    @property
    def undecidable(self):
        return any(m.undecidable for m in self.members)

    def to_dict(self):
        return {
            "extension_degree": self.degree,
            "pencil": self.pencil.to_text(),
            "passed": self.passed,
            "failing": self.failing,
            "special_fibre": self.special.to_dict(),
            "axis_generic_fibre": self.axis.summary() if self.axis is not None else None,
            "members": [m.to_dict() for m in self.members],
            "undecidable": self.undecidable,
            "statistics": [dict(level) for level in self.statistics],
        }


def _member_over_dvr(model, pencil, parameter, residue_points, step_budget):
    ring = model.ring
    text = parameter_text(parameter, ring.residue_field())
    form = pencil.member(tuple(ring.lift(c) for c in parameter))
    generic = generic_fibre_certificate(model.with_equations([form]), step_budget)
    if form.degree() != 1:
        return DvrMember(text, generic, (), ("classification needs a hyperplane member",))
    section, index = model.section(form)
    verdicts = tuple(
        classify_point(section, point[:index] + point[index + 1:]) for point in residue_points
    )
    return DvrMember(text, generic, verdicts)


def _check_over_dvr(model, pencil, special, step_budget):
    """
    Generic-fibre checks of a pencil over A whose residue pencil passed
    ``special``: returns ``(axis, members, failing)``.
    """
    ring = model.ring
    axis = generic_fibre_certificate(model.with_equations([pencil.f0, pencil.f_inf]), step_budget)
    if not axis.is_smooth:
        return axis, (), f"axis generic fibre is {axis.summary()}"
    field_ = ring.residue_field()
    listed = {m.parameter: m for m in special.members if m.level == 1}
    fibre = model.special_fibre()
    members = []
    for parameter in canonical_tuples(2, field_.elements(), field_.one):
        member = listed.get(parameter_text(parameter, field_))
        points = []
        if member is not None:
            found, _ = _singular_section_points(fibre.with_equations([member.form]), 1, None)
            points = [point for _, _, point in found]
        result = _member_over_dvr(model, pencil, parameter, points, step_budget)
        members.append(result)
        if member is None and not result.generic.is_smooth:
            return axis, tuple(members), f"member t={result.parameter} is singular generically"
        for verdict in result.verdicts:
            if verdict.kind not in (SMOOTH, ORDINARY_QUADRATIC, UNDECIDABLE):
                return axis, tuple(members), f"member t={result.parameter}: {verdict.summary()}"
    return axis, tuple(members), ""


def verify_pencil_dvr(model, pencil, declared=None, ext_bound=None, budget=None,
                      step_budget=None):
    """Check a given pencil over A on the special fibre and then over A."""
    if isinstance(model, StratifiedModel):
        model = model.model
    special = is_lefschetz(model.special_fibre(), pencil.residue(), ext_bound, declared, budget,
                           step_budget)
    if not special.passed:
        return DvrPencilResult(pencil, 1, special, failing=f"special fibre: {special.failing}")
    axis, members, failing = _check_over_dvr(model, pencil, special, step_budget)
    return DvrPencilResult(pencil, 1, special, axis, members, failing=failing)


def find_pencil_dvr(model, degree=1, ell=2, max_ext=0, declared=None, ext_bound=None,
                    budget=None, candidate_budget=None, step_budget=None, debug=False,
                    debug_log=default_debug_log):
    """
    A pencil over A whose special fibre is Lefschetz (declared ordinary
    quadratic points allowed), whose axis has smooth generic fibre, whose
    F-rational members outside the critical set have smooth generic fibre,
    and whose critical members have ordinary quadratic reduction.

    :raises ExhaustedException: no candidate passed.
    """
    if isinstance(model, StratifiedModel):
        model = model.model
    candidate_budget = candidate_budget or CANDIDATE_BUDGET
    statistics = []
    for level in range(max_ext + 1):
        extension = ell**level
        try:
            target, embedding = extend_unramified(model.ring, extension)
        except UnsupportedException:
            statistics.append({"degree": extension, "candidates": 0,
                               "note": "extension not available"})
            break
        current = model.base_change(embedding) if extension > 1 else model
        _, field_embedding = extend_unramified(model.ring.residue_field(), extension)
        points = [tuple(field_embedding(c) for c in p) for p in (declared or [])]
        special = current.special_fibre()
        tried = 0
        for residue_pencil in _scan_pencils(special, degree, candidate_budget):
            tried += 1
            verdict = is_lefschetz(special, residue_pencil, ext_bound, points, budget,
                                   step_budget)
            if not verdict.passed:
                continue
            pencil = residue_pencil.lift(current.ring)
            axis, members, failing = _check_over_dvr(current, pencil, verdict, step_budget)
            if failing:
                debug_log(f"Debug: candidate {tried} over {target}: {failing}", debug)
                continue
            statistics.append({"degree": extension, "candidates": tried, "found": True})
            return DvrPencilResult(pencil, extension, verdict, axis, members,
                                   tuple(statistics))
        statistics.append({"degree": extension, "candidates": tried, "found": False})
    raise ExhaustedException(
        details="No pencil with ordinary quadratic reduction within the budgets",
        statistics={"levels": statistics},
    )
