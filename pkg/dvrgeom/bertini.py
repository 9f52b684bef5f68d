"""
Good hyperplanes and hypersurfaces for models over a truncated DVR.

A hyperplane H over A is good for a stratified model when its special fibre
meets every stratum of the declared special-fibre components transversally
and its generic fibre meets X_eta transversally. The search scans residue
hyperplanes in canonical order and falls back to unramified extensions of
l-power degree.
"""

import random
from dataclasses import dataclass, field
from itertools import combinations
from dvrgeom.constants import EXT_BOUND, POINT_BUDGET, SAMPLE_SIZE
from dvrgeom.exceptions import (
    BudgetExceededException,
    ExhaustedException,
    InvalidHyperplaneException,
    UnsupportedException,
)
from dvrgeom.groebner import EMPTY
from dvrgeom.poly import MultiPoly, form_from_coefficients, monomials_of_degree
from dvrgeom.rings import extend_unramified
from dvrgeom.schemes import SchemeModel
from dvrgeom.smoothness import (
    GROEBNER,
    check_snc,
    generic_fibre_certificate,
    intersect,
    is_smooth,
    is_transversal,
    model_dimension,
)
from dvrgeom.utils import canonical_tuples, debug_log as default_debug_log, projective_count

ROUTE_PROPER = "proper: implied by the special fibre"


@dataclass(frozen=True)
class HyperplaneA:
    """Hyperplane sum a_i x_i over ``ring`` in canonical form (first unit coefficient is 1)."""

    ring: object
    coeffs: tuple

    def __post_init__(self):
        ring = self.ring
        coeffs = tuple(self.coeffs)
        lead = next((i for i, c in enumerate(coeffs) if ring.is_unit(c)), None)
        if lead is None:
            raise InvalidHyperplaneException(
                details="All coefficients lie in the maximal ideal"
            )
        scale = ring.inv(coeffs[lead])
        object.__setattr__(self, "coeffs", tuple(ring.mul(c, scale) for c in coeffs))

    @property
    def size(self):
        return len(self.coeffs)

    def linear_form(self, names=None):
        return MultiPoly.linear(self.ring, list(self.coeffs), names)

    def specialize(self):
        return specialize(self)

    def to_text(self, names=None):
        return self.linear_form(names).to_text()

    def __str__(self):
        return self.to_text()


def specialize(hyperplane):
    """Coefficient-wise residue of a hyperplane over A."""
    ring = hyperplane.ring
    return tuple(ring.residue(c) for c in hyperplane.coeffs)


def lift(coeffs, ring):
    """Lift residue coefficients to ``ring`` by canonical representatives."""
    return HyperplaneA(ring, tuple(ring.lift(c) for c in coeffs))


def canonical_hyperplanes(field_, size):
    """Residue hyperplanes of P^{size-1} in lexicographic canonical order."""
    return canonical_tuples(size, field_.elements(), field_.one)


@dataclass(frozen=True)
class Stratum:
    indices: tuple
    model: SchemeModel
    empty: bool

    @property
    def label(self):
        if not self.indices:
            return "X_s"
        return "Y" + ",".join(str(i + 1) for i in self.indices)


@dataclass(frozen=True)
class StratifiedModel:
    """
    Model X over a truncated DVR with declared components Y_1..Y_M of its
    reduced special fibre.
    """

    model: SchemeModel
    components: tuple = ()
    proper: bool = False

    @property
    def ring(self):
        return self.model.ring

    @property
    def residue_field(self):
        return self.ring.residue_field() if self.ring.is_dvr else self.ring

    def verify(self, budget=None, step_budget=None):
        """
        Problems with the declared components: each must be smooth, and their
        F-points must be exactly the F-points of the special fibre.

        :return: list of problem descriptions, empty when consistent.
        """
        problems = []
        for index, component in enumerate(self.components):
            certificate = is_smooth(component, step_budget=step_budget)
            if not certificate.is_smooth:
                problems.append(f"Y{index + 1} is not smooth: {certificate.summary()}")
        if not self.components:
            return problems
        fibre = set(self.model.points(1, budget))
        covered = set()
        for component in self.components:
            covered |= set(component.points(1, budget))
        if fibre != covered:
            missing = len(fibre - covered)
            extra = len(covered - fibre)
            problems.append(
                f"components cover the special fibre wrongly ({missing} points missing, "
                f"{extra} points outside)"
            )
        return problems

    def base_change(self, degree):
        """The same data over the unramified extension of degree ``degree``."""
        if degree == 1:
            return self
        target, embedding = extend_unramified(self.ring, degree)
        _, field_embedding = extend_unramified(self.residue_field, degree)
        components = tuple(c.base_change(field_embedding) for c in self.components)
        return StratifiedModel(self.model.base_change(embedding), components, self.proper)


def strata(model, step_budget=None):
    """
    All intersections Y_I of the declared components, empty ones flagged.
    Without declared components the special fibre is the only stratum.
    """
    if not model.components:
        fibre = model.model.special_fibre()
        return [Stratum((), fibre, model_dimension(fibre, step_budget) == EMPTY)]
    result = []
    indices = range(len(model.components))
    for size in range(1, len(model.components) + 1):
        for subset in combinations(indices, size):
            stratum = model.components[subset[0]]
            for other in subset[1:]:
                stratum = intersect(stratum, model.components[other])
            empty = model_dimension(stratum, step_budget) == EMPTY
            result.append(Stratum(subset, stratum, empty))
    return result


@dataclass(frozen=True)
class HyperplaneVerdict:
    hyperplane: HyperplaneA
    good: bool
    route: str = ""
    failing: str = ""
    certificates: tuple = field(default=())

    def to_dict(self):
        return {
            "hyperplane": self.hyperplane.to_text(),
            "good": self.good,
            "route": self.route,
            "failing": self.failing,
            "certificates": [
                {"target": label, **certificate.to_dict()}
                for label, certificate in self.certificates
            ],
        }


def residue_hyperplane(model, hyperplane):
    """The special fibre H_s as a projective model over the residue field."""
    field_ = model.residue_field
    form = MultiPoly.linear(field_, list(specialize(hyperplane)), model.model.names)
    return SchemeModel(field_, model.model.nvars, (form,), True, model.model.names, "H_s")


def section(model, hyperplane):
    """X . H over A."""
    form = hyperplane.linear_form(model.model.names)
    return model.model.with_equations([form], "X.H")


def section_special_fibre(model, hyperplane):
    return section(model, hyperplane).special_fibre()


def is_good_hyperplane(model, hyperplane, method=GROEBNER, step_budget=None, **kwargs):
    """
    Check the stratum conditions on the special fibre and, unless the model
    is proper, smoothness of the generic fibre of X . H.

    :param method: smoothness oracle for the special-fibre checks.
    :return: HyperplaneVerdict with the certificates that decided it.
    """
    h_s = residue_hyperplane(model, hyperplane)
    certificates = []
    for stratum in strata(model, step_budget):
        if stratum.empty:
            continue
        certificate = is_transversal(
            stratum.model, h_s, method=method, step_budget=step_budget, **kwargs
        )
        certificates.append((f"{stratum.label} . H_s", certificate))
        if not certificate.is_smooth:
            return HyperplaneVerdict(
                hyperplane, False, "", f"{stratum.label}: {certificate.summary()}",
                tuple(certificates),
            )
    if model.proper:
        fibre = is_smooth(section_special_fibre(model, hyperplane), step_budget=step_budget)
        certificates.append(("(X.H)_s", fibre))
        return HyperplaneVerdict(hyperplane, True, ROUTE_PROPER, "", tuple(certificates))
    generic = generic_fibre_certificate(section(model, hyperplane), step_budget)
    certificates.append(("(X.H)_eta", generic))
    route = next((note for note in generic.notes if note.startswith("route")), "")
    if not generic.is_smooth:
        return HyperplaneVerdict(
            hyperplane, False, route, f"generic fibre: {generic.summary()}", tuple(certificates)
        )
    return HyperplaneVerdict(hyperplane, True, route, "", tuple(certificates))


@dataclass(frozen=True)
class SearchResult:
    degree: int
    hyperplane: HyperplaneA
    ring: object
    good: tuple
    statistics: tuple

    def to_dict(self):
        return {
            "extension_degree": self.degree,
            "ring": str(self.ring),
            "hyperplane": self.hyperplane.to_text(),
            "good_count": len(self.good),
            "statistics": [dict(level) for level in self.statistics],
        }


def find_good_hyperplane(model, ell=2, max_ext=None, method=GROEBNER, budget=None,
                         step_budget=None, debug=False, debug_log=default_debug_log):
    """
    Scan residue hyperplanes over F_{q^(ell^j)} for j = 0..max_ext and
    return the first level with a good hyperplane, with the whole good set
    found at that level.

    :raises ExhaustedException: no level produced a good hyperplane.
    """
    max_ext = EXT_BOUND if max_ext is None else max_ext
    budget = budget or POINT_BUDGET
    statistics = []
    for level in range(max_ext + 1):
        degree = ell**level
        try:
            current = model.base_change(degree)
        except UnsupportedException as e:
            debug_log(f"Debug: no extension of degree {degree}: {e.details}", debug)
            statistics.append({"degree": degree, "candidates": 0, "good": 0,
                               "note": "extension not available"})
            break
        field_ = current.residue_field
        total = projective_count(field_.size, current.model.nvars)
        if total > budget:
            raise BudgetExceededException(
                details=f"{total} hyperplanes over {field_} exceed the budget {budget}"
            )
        good = []
        for coeffs in canonical_hyperplanes(field_, current.model.nvars):
            candidate = lift(coeffs, current.ring)
            if is_good_hyperplane(current, candidate, method, step_budget).good:
                good.append(candidate)
        debug_log(
            f"Debug: degree {degree}: {len(good)} good among {total} hyperplanes", debug
        )
        statistics.append({"degree": degree, "candidates": total, "good": len(good)})
        if good:
            return SearchResult(degree, good[0], current.ring, tuple(good), tuple(statistics))
    raise ExhaustedException(
        details=f"No good hyperplane up to extension degree {ell**max_ext}",
        statistics={"levels": statistics},
    )


def certify_snc_divisor(model, hyperplane, method=GROEBNER, **kwargs):
    """(X.H) u X_s,red is simple normal crossing, checked on the special fibre."""
    components = list(model.components) + [residue_hyperplane(model, hyperplane)]
    return check_snc(components, method=method, **kwargs)


@dataclass(frozen=True)
class HypersurfaceResult:
    form: MultiPoly
    degree: int
    exhaustive: bool
    tried: int

    def to_dict(self):
        return {
            "form": self.form.to_text(),
            "degree": self.degree,
            "mode": "exhaustive" if self.exhaustive else "sampled",
            "tried": self.tried,
        }


def _targets(model, step_budget):
    if isinstance(model, StratifiedModel):
        return [s.model for s in strata(model, step_budget) if not s.empty]
    return [model]


def find_good_hypersurface(model, degree, budget=None, sample_size=None, seed=None,
                           method=GROEBNER, step_budget=None, debug=False,
                           debug_log=default_debug_log):
    """
    A degree-``degree`` form whose hypersurface meets the model (or every
    stratum of a stratified model) transversally.

    Forms are scanned exhaustively in canonical order when there are at most
    ``budget`` of them, else ``sample_size`` random forms are drawn from a
    generator seeded with ``seed``.

    :raises BudgetExceededException: sampling is needed but no seed was given.
    :raises ExhaustedException: no form passed.
    """
    targets = _targets(model, step_budget)
    base = targets[0] if targets else model.model.special_fibre()
    field_ = base.ring
    if not field_.is_field:
        raise UnsupportedException(details="Hypersurface sections are searched over a field")
    nvars = base.nvars
    monomials = monomials_of_degree(nvars, degree)
    total = projective_count(field_.size, len(monomials))
    budget = budget or POINT_BUDGET
    values = field_.elements()

    def passes(coeffs):
        form = form_from_coefficients(field_, nvars, monomials, list(coeffs), base.names)
        hypersurface = SchemeModel(field_, nvars, (form,), True, base.names)
        for target in targets:
            if not is_transversal(target, hypersurface, method=method,
                                  step_budget=step_budget).is_smooth:
                return None
        return form

    if total <= budget:
        tried = 0
        for coeffs in canonical_tuples(len(monomials), values, field_.one):
            tried += 1
            form = passes(coeffs)
            if form is not None:
                debug_log(f"Debug: form found after {tried} candidates", debug)
                return HypersurfaceResult(form, degree, True, tried)
        raise ExhaustedException(
            details=f"No transversal form of degree {degree}",
            statistics={"candidates": total, "mode": "exhaustive"},
        )
    if seed is None:
        raise BudgetExceededException(
            details=f"{total} forms exceed the budget {budget}; pass a seed to sample"
        )
    generator = random.Random(seed)
    sample_size = sample_size or SAMPLE_SIZE
    for tried in range(1, sample_size + 1):
        coeffs = [generator.choice(values) for _ in monomials]
        if all(c == field_.zero for c in coeffs):
            continue
        form = passes(coeffs)
        if form is not None:
            return HypersurfaceResult(form, degree, False, tried)
    raise ExhaustedException(
        details=f"No transversal form of degree {degree} among {sample_size} samples",
        statistics={"candidates": sample_size, "mode": "sampled", "seed": seed},
    )
