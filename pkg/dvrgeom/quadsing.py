"""
Ordinary quadratic singularities over truncated DVRs and over fields.

A local model is one of the two normal forms

* case ``i``:  Q(x_1, ..., x_{n+1}) - c with Q nondegenerate and c in m \\ 0
* case ``ii``: P(x_1, ..., x_n) + x_{n+1}^2 + b x_{n+1} + c in residue
  characteristic 2 with n even, P nondegenerate and b^2 - 4c in m \\ 0

with order v(c), respectively v(b).
"""

import re
from dataclasses import dataclass, field
from itertools import product
from dvrgeom.constants import JET_BOUND
from dvrgeom.exceptions import (
    ExhaustedException,
    InvalidLocalModelException,
    NonUnitException,
    NotHypersurfaceException,
    PointNotOnFibreException,
    PrecisionExhaustedException,
    UnsupportedException,
    BudgetExceededException,
)
from dvrgeom.linalg import inverse, kernel, mat_vec, rank, row_reduce
from dvrgeom.poly import MultiPoly, default_names
from dvrgeom.polyparse import parse_constant, parse_polynomial
from dvrgeom.rings import EQUI, MIXED, TOP, extend_ramified_sqrt, parse_ring
from dvrgeom.schemes import SchemeModel
from dvrgeom.smoothness import is_smooth, is_transversal
from dvrgeom.utils import canonical_tuples, projective_count

CASE_I = "i"
CASE_II = "ii"

SMOOTH = "Smooth"
ORDINARY_QUADRATIC = "OrdinaryQuadratic"
NOT_ORDINARY = "NotOrdinary"
UNDECIDABLE = "Undecidable"

SEMISTABLE = "SemiStable"
SHAPE_FAILS = "NotSemiStable"


def local_names(count):
    return default_names(count, start=1)


def _quadric(form, ring):
    """Projective quadric {form = 0} over ``ring``."""
    return SchemeModel(ring, form.nvars, (form,), True, form.names)


def _is_nondegenerate(form):
    if form.is_zero() or not form.is_homogeneous() or form.degree() != 2:
        return False
    return is_smooth(_quadric(form, form.ring)).is_smooth


@dataclass(frozen=True)
class LocalModel:
    """
    Normal form of an ordinary quadratic singularity.

    ``form`` is Q in n+1 variables (case i) or P in n variables (case ii);
    ``b`` and ``c`` are raw values of ``ring``.
    """

    case: str
    ring: object
    n: int
    form: MultiPoly
    c: object
    b: object = None
    provenance: tuple = field(default=(), compare=False)

    def validate(self):
        ring = self.ring
        if not ring.is_dvr:
            raise InvalidLocalModelException(details=f"{ring} is not a truncated DVR")
        if self.case not in (CASE_I, CASE_II):
            raise InvalidLocalModelException(details=f"Unknown case: {self.case}")
        if self.case == CASE_I:
            if self.form.nvars != self.n + 1:
                raise InvalidLocalModelException(details="Q must have n+1 variables")
            if not _is_nondegenerate(self.form.reduce_mod_pi()):
                raise InvalidLocalModelException(details=f"Q = {self.form} is degenerate")
            value = ring.valuation(self.c)
            if not 0 < value < ring.k:
                raise InvalidLocalModelException(
                    details=f"c = {ring.format(self.c)} must satisfy 0 < v(c) < {ring.k}"
                )
            return self
        if ring.p != 2 or self.n % 2 or self.n < 2:
            raise InvalidLocalModelException(
                details="Case ii needs residue characteristic 2 and even n >= 2"
            )
        if self.form.nvars != self.n:
            raise InvalidLocalModelException(details="P must have n variables")
        if not _is_nondegenerate(self.form.reduce_mod_pi()):
            raise InvalidLocalModelException(details=f"P = {self.form} is degenerate")
        b = self.b if self.b is not None else ring.zero
        disc = self.discriminant
        if ring.valuation(disc) == 0:
            raise InvalidLocalModelException(details="b^2 - 4c must lie in the maximal ideal")
        if ring.valuation(b) == 0:
            raise InvalidLocalModelException(details="b must lie in the maximal ideal")
        if disc == ring.zero and b == ring.zero:
            raise InvalidLocalModelException(details="b^2 - 4c vanishes at this precision")
        return self

    @property
    def variables(self):
        return self.n + 1

    @property
    def discriminant(self):
        ring = self.ring
        b = self.b if self.b is not None else ring.zero
        return ring.sub(ring.mul(b, b), ring.mul(ring.from_int(4), self.c))

    @property
    def normalized(self):
        if self.case == CASE_I:
            return order(self) % 2 == 0
        return self.c == self.ring.zero

    @property
    def unit(self):
        """eta with c = eta * pi^r (case i) or epsilon with b = epsilon * pi^q (case ii)."""
        value = self.c if self.case == CASE_I else self.b
        return unit_part(self.ring, value, order(self))

    def residue_form(self):
        """The quadric of the exceptional divisor: Q, or P + x_{n+1}^2."""
        if self.case == CASE_I:
            return self.form.reduce_mod_pi()
        names = local_names(self.n + 1)
        extended = self.form.embed(self.n + 1, list(range(self.n)), names)
        last = MultiPoly.variable(self.ring, self.n + 1, self.n, names)
        return (extended + last * last).reduce_mod_pi()

    def equation(self):
        """The local equation as an affine polynomial in n+1 variables."""
        ring = self.ring
        names = local_names(self.n + 1)
        constant = MultiPoly.constant(ring, self.n + 1, self.c, names)
        if self.case == CASE_I:
            return self.form.with_names(names) - constant
        extended = self.form.embed(self.n + 1, list(range(self.n)), names)
        last = MultiPoly.variable(ring, self.n + 1, self.n, names)
        b = self.b if self.b is not None else ring.zero
        return extended + last * last + last.scale(b) + constant

    def to_scheme(self):
        f = self.equation()
        return SchemeModel(self.ring, f.nvars, (f,), False, f.names, "local model")

    def with_provenance(self, *steps):
        return LocalModel(self.case, self.ring, self.n, self.form, self.c, self.b,
                          self.provenance + steps)

    def to_text(self):
        ring = self.ring
        if self.case == CASE_I:
            return f"oq(case=i, n={self.n}, Q={self.form.to_text()}, c={ring.format(self.c)})"
        b = self.b if self.b is not None else ring.zero
        return (
            f"oq(case=ii, n={self.n}, P={self.form.to_text()}, b={ring.format(b)}, "
            f"c={ring.format(self.c)})"
        )

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class TangentCone:
    """
    Tangent-cone quadric of a point of a complete intersection over a field.

    ``form`` lives in the ``free`` chart coordinates; ``substitution`` maps the
    eliminated chart coordinates to linear forms in all chart coordinates.
    """

    form: MultiPoly
    free: tuple
    chart: int
    point: tuple
    substitution: dict = field(compare=False, hash=False)

    def restrict(self, g):
        """Linear part of ``g`` at the point, restricted to the tangent space."""
        ring = self.form.ring
        if self.chart is not None and g.nvars == len(self.point) + 1:
            g = g.dehomogenize(self.chart)
        g = g.translate(self.point)
        linear = MultiPoly.linear(ring, g.linear_coefficients(), g.names)
        linear = linear.substitute(self.substitution)
        coeffs = linear.linear_coefficients()
        return MultiPoly.linear(ring, [coeffs[i] for i in self.free], self.form.names)


@dataclass(frozen=True)
class SingularityVerdict:
    kind: str
    local_model: LocalModel = None
    tangent_cone: TangentCone = None
    reason: str = ""
    notes: tuple = ()

    @property
    def is_ordinary(self):
        return self.kind == ORDINARY_QUADRATIC

    def summary(self):
        if self.kind == ORDINARY_QUADRATIC and self.local_model is not None:
            return f"{self.kind} case={self.local_model.case} order={order(self.local_model)}"
        if self.kind == ORDINARY_QUADRATIC:
            return f"{self.kind} cone={self.tangent_cone.form.to_text()}"
        if self.reason:
            return f"{self.kind} ({self.reason})"
        return self.kind

    def to_dict(self):
        data = {"kind": self.kind, "summary": self.summary(), "reason": self.reason}
        if self.local_model is not None:
            data["local_model"] = self.local_model.to_text()
            data["order"] = order(self.local_model)
            data["normalized"] = self.local_model.normalized
            data["provenance"] = list(self.local_model.provenance)
        if self.tangent_cone is not None:
            data["tangent_cone"] = self.tangent_cone.form.to_text()
        data["notes"] = list(self.notes)
        return data


def unit_part(ring, value, power):
    """The unit u with value = u * pi^power; exact in Z/p^k via balanced residues."""
    if ring.kind == MIXED:
        return ring.from_int(ring.balanced(value) // ring.p**power)
    return ring.shift_down(value, power)


def order(model):
    """v(c) in case i, v(b) in case ii."""
    ring = model.ring
    value = model.c if model.case == CASE_I else model.b
    value = ring.zero if value is None else value
    result = ring.valuation(value)
    if result == TOP:
        raise PrecisionExhaustedException(
            details=f"{ring.format(value)} vanishes at precision {ring.k}"
        )
    return result


# Local equations


def _local_equation(model, point):
    """Chart polynomial of a hypersurface translated so that ``point`` is the origin."""
    if model.codimension != 1:
        raise NotHypersurfaceException(
            details=f"{model.codimension} equations define {model}"
        )
    ring = model.ring
    residue = ring.residue_field() if ring.is_dvr else ring
    point = tuple(point)
    if len(point) != model.nvars:
        raise PointNotOnFibreException(details=f"Point {point} has the wrong arity")
    f = model.equations[0]
    reduced = f.reduce_mod_pi() if ring.is_dvr else f
    if reduced.evaluate(point) != residue.zero:
        raise PointNotOnFibreException(details=f"{point} is not a zero of {reduced}")
    chart = None
    if model.projective:
        chart = next(i for i, value in enumerate(point) if value != residue.zero)
        scale = residue.inv(point[chart])
        point = tuple(residue.mul(value, scale) for value in point)
        f = f.dehomogenize(chart)
        point = point[:chart] + point[chart + 1:]
    lifted = [ring.lift(value) for value in point] if ring.is_dvr else list(point)
    return f.translate(lifted), chart


def polar_matrix(g, size=None):
    """Matrix of the polar bilinear form of the degree-2 part of ``g``."""
    ring = g.ring
    size = size or g.nvars
    matrix = [[ring.zero] * size for _ in range(size)]
    for e, c in g.terms.items():
        if sum(e) != 2:
            continue
        indices = [i for i, power in enumerate(e) for _ in range(power)]
        i, j = indices
        if i == j:
            matrix[i][i] = ring.add(c, c)
        else:
            matrix[i][j] = c
            matrix[j][i] = c
    return matrix


def _residue_matrix(matrix, ring):
    return [[ring.residue(value) for value in row] for row in matrix]


def _submatrix(matrix, indices):
    return [[matrix[i][j] for j in indices] for i in indices]


def _kill_linear_terms(g, matrix, indices, limit):
    """
    Translate the ``indices`` coordinates by elements of m until the linear
    coefficients in those coordinates vanish.
    """
    ring = g.ring
    inverse_ = inverse(_submatrix(matrix, indices), ring)
    for _ in range(limit):
        coeffs = g.linear_coefficients()
        ell = [coeffs[i] for i in indices]
        if all(value == ring.zero for value in ell):
            return g, True
        step = mat_vec(inverse_, [ring.neg(value) for value in ell], ring)
        shift = [ring.zero] * g.nvars
        for i, value in zip(indices, step):
            shift[i] = value
        g = g.translate(shift)
    return g, False


def _split_by_first_variable(h):
    """Write a form with no constant term as sum x_i * u_i."""
    ring, nvars = h.ring, h.nvars
    parts = [dict() for _ in range(nvars)]
    for e, c in h.terms.items():
        first = next(i for i, power in enumerate(e) if power)
        reduced = e[:first] + (e[first] - 1,) + e[first + 1:]
        parts[first][reduced] = c
    return [MultiPoly(ring, nvars, terms, h.names) for terms in parts]


def _absorb_tail(g, matrix, jet_bound):
    """
    Remove the terms of degree 3..jet_bound by x -> x + w(x) with w of order
    at least 2; returns the transformed polynomial truncated at the jet bound.
    """
    ring = g.ring
    inverse_ = inverse(matrix, ring)
    g = g.truncate(jet_bound)
    for degree in range(3, jet_bound + 1):
        h = g.homogeneous_part(degree)
        if h.is_zero():
            continue
        parts = _split_by_first_variable(h)
        images = []
        for i in range(g.nvars):
            w = MultiPoly.zero(ring, g.nvars, g.names)
            for k, part in enumerate(parts):
                if inverse_[i][k] != ring.zero and not part.is_zero():
                    w = w - part.scale(inverse_[i][k])
            images.append(MultiPoly.variable(ring, g.nvars, i, g.names) + w)
        g = g.compose(images).truncate(jet_bound)
    return g


def _tail(g, jet_bound):
    total = MultiPoly.zero(g.ring, g.nvars, g.names)
    for degree in range(3, jet_bound + 1):
        total = total + g.homogeneous_part(degree)
    return total


def classify_point(model, point, jet_bound=None):
    """
    Classify an F-rational point of the special fibre of a hypersurface model
    over a truncated DVR.

    :raises NotHypersurfaceException: more than one defining equation.
    :raises PointNotOnFibreException: the point is not on the special fibre.
    """
    ring = model.ring
    if not ring.is_dvr:
        raise UnsupportedException(details="Use classify_field_point over a field")
    jet_bound = jet_bound or JET_BOUND
    g, _ = _local_equation(model, point)
    size = g.nvars
    if any(ring.is_unit(c) for c in g.linear_coefficients()):
        return SingularityVerdict(SMOOTH, reason="a residue partial derivative is nonzero")
    matrix = polar_matrix(g)
    residue = ring.residue_field()
    residue_rank = rank(_residue_matrix(matrix, ring), residue)
    if residue_rank == size:
        return _classify_nondegenerate(g, matrix, jet_bound)
    if ring.p == 2 and size % 2 == 1 and residue_rank == size - 1:
        return _classify_char_two(g, matrix, jet_bound)
    return SingularityVerdict(
        NOT_ORDINARY, reason=f"quadratic part has residue rank {residue_rank} < {size}"
    )


def _classify_nondegenerate(g, matrix, jet_bound):
    ring = g.ring
    size = g.nvars
    g, done = _kill_linear_terms(g, matrix, list(range(size)), ring.k + 2)
    if not done:
        return SingularityVerdict(UNDECIDABLE, reason="linear terms persist at precision")
    matrix = polar_matrix(g)
    jet = _absorb_tail(g, matrix, jet_bound)
    notes = []
    if not _tail(jet, jet_bound).is_zero():
        return SingularityVerdict(UNDECIDABLE, reason=f"jet up to degree {jet_bound} not absorbed")
    if g.degree() > 2:
        notes.append(f"terms of degree 3..{jet_bound} absorbed, higher terms removable")
    c = ring.neg(g.constant_term())
    if ring.valuation(c) == TOP:
        return SingularityVerdict(
            UNDECIDABLE, reason=f"constant term vanishes at precision {ring.k}"
        )
    names = local_names(size)
    form = g.homogeneous_part(2).with_names(names)
    local = LocalModel(CASE_I, ring, size - 1, form, c, None, ("translated to origin",))
    return SingularityVerdict(ORDINARY_QUADRATIC, local.validate(), notes=tuple(notes))


def _classify_char_two(g, matrix, jet_bound):
    ring = g.ring
    residue = ring.residue_field()
    size = g.nvars
    null = kernel(_residue_matrix(matrix, ring), residue)
    kappa = null[0]
    residue_form = g.homogeneous_part(2).reduce_mod_pi()
    if residue_form.evaluate(kappa) == residue.zero:
        return SingularityVerdict(
            NOT_ORDINARY, reason="radical of the polar form is isotropic"
        )
    j = max(i for i, value in enumerate(kappa) if value != residue.zero)
    lifted = [ring.lift(value) for value in kappa]
    images = []
    for i in range(size):
        var = MultiPoly.variable(ring, size, i, g.names)
        if i == j:
            images.append(var.scale(lifted[j]))
        else:
            images.append(var + MultiPoly.variable(ring, size, j, g.names).scale(lifted[i]))
    g = g.compose(images)
    others = [i for i in range(size) if i != j]
    matrix = polar_matrix(g)
    try:
        g, done = _kill_linear_terms(g, matrix, others, ring.k + 2)
    except NonUnitException:
        return SingularityVerdict(NOT_ORDINARY, reason="quadratic part degenerate off the radical")
    if not done:
        return SingularityVerdict(UNDECIDABLE, reason="linear terms persist at precision")
    inverse_ = inverse(_submatrix(polar_matrix(g), others), ring)
    g = g.truncate(jet_bound)
    for _ in range(jet_bound + 1):
        coupling = _coupling(g, others, j)
        if all(part.is_zero() for part in coupling):
            break
        images = [MultiPoly.variable(ring, size, i, g.names) for i in range(size)]
        for row, i in enumerate(others):
            for col, part in enumerate(coupling):
                if inverse_[row][col] != ring.zero and not part.is_zero():
                    images[i] = images[i] - part.scale(inverse_[row][col])
        g = g.compose(images).truncate(jet_bound)
    else:
        return SingularityVerdict(UNDECIDABLE, reason="mixed terms persist up to the jet bound")
    pure = [g.coefficient(tuple(d if i == j else 0 for i in range(size)))
            for d in range(jet_bound + 1)]
    for degree in range(3, jet_bound + 1):
        if pure[degree] != ring.zero:
            return SingularityVerdict(
                UNDECIDABLE, reason=f"x_{size}-jet has a term of degree {degree}"
            )
    alpha = pure[2]
    scale = ring.inv(alpha)
    b = ring.mul(pure[1], scale)
    c = ring.mul(pure[0], scale)
    n = size - 1
    names = local_names(n)
    p_terms = {}
    for e, value in g.terms.items():
        if sum(e) == 2 and e[j] == 0:
            p_terms[tuple(e[i] for i in others)] = ring.mul(value, scale)
    form = MultiPoly(ring, n, p_terms, names)
    disc = ring.sub(ring.mul(b, b), ring.mul(ring.from_int(4), c))
    if disc == ring.zero and b == ring.zero:
        return SingularityVerdict(
            UNDECIDABLE, reason=f"b^2 - 4c vanishes at precision {ring.k}"
        )
    local = LocalModel(
        CASE_II, ring, n, form, c, b, ("translated to origin", "radical direction isolated")
    )
    notes = (f"mixed terms absorbed up to degree {jet_bound}",)
    return SingularityVerdict(ORDINARY_QUADRATIC, local.validate(), notes=notes)


def _coupling(g, others, j):
    """Coefficients of z_i (i in ``others``) that are pure powers of z_j, degree >= 1."""
    ring, size = g.ring, g.nvars
    parts = [dict() for _ in others]
    position = {i: row for row, i in enumerate(others)}
    for e, value in g.terms.items():
        linear_in = [i for i in others if e[i]]
        if len(linear_in) != 1 or e[linear_in[0]] != 1 or e[j] == 0:
            continue
        i = linear_in[0]
        parts[position[i]][tuple(e[j] if k == j else 0 for k in range(size))] = value
    return [MultiPoly(ring, size, terms, g.names) for terms in parts]


# Normalization


def _find_root(ring, b, c):
    for candidate in ring.elements():
        value = ring.add(ring.add(ring.mul(candidate, candidate), ring.mul(b, candidate)), c)
        if value == ring.zero:
            return candidate
    return None


def normalize(model):
    """
    Make r even (case i) by adjoining a square root of t, or c = 0 (case ii)
    by translating x_{n+1} by a root of x^2 + bx + c.

    :raises UnsupportedException: a ramified extension of Z/p^k is needed, or
        the quadratic does not split.
    """
    model.validate()
    if model.normalized:
        return model
    ring = model.ring
    if model.case == CASE_I:
        target, embedding = extend_ramified_sqrt(ring)
        form = model.form.map_coefficients(embedding, target)
        result = LocalModel(
            CASE_I, target, model.n, form, embedding(model.c), None,
            model.provenance + (f"ramified extension {ring} -> {target}, t -> s^2",),
        )
        return result.validate()
    b = model.b if model.b is not None else ring.zero
    root = _find_root(ring, b, model.c)
    steps = ()
    if root is None and ring.kind == EQUI:
        target, embedding = extend_ramified_sqrt(ring)
        steps = (f"ramified extension {ring} -> {target}, t -> s^2",)
        model = LocalModel(
            CASE_II, target, model.n, model.form.map_coefficients(embedding, target),
            embedding(model.c), embedding(b), model.provenance + steps,
        )
        ring, b = target, model.b
        root = _find_root(ring, b, model.c)
    if root is None:
        raise UnsupportedException(
            details=f"x^2 + ({ring.format(b)})x + ({ring.format(model.c)}) does not split over {ring}"
        )
    new_b = ring.add(b, ring.add(root, root))
    result = LocalModel(
        CASE_II, ring, model.n, model.form, ring.zero, new_b,
        model.provenance + (f"x{model.n + 1} -> x{model.n + 1} + ({ring.format(root)})",),
    )
    return result.validate()


# Field points


def classify_field_point(model, point, jet_bound=None):
    """
    Ordinary-quadratic test for a point of a complete intersection over a
    field: corank one Jacobian and a smooth tangent-cone quadric.
    """
    ring = model.ring
    if not ring.is_field:
        raise UnsupportedException(details="Use classify_point over a DVR")
    point = tuple(point)
    if not model.contains_point(point):
        raise PointNotOnFibreException(details=f"{point} is not on {model}")
    chart = None
    if model.projective:
        chart = next(i for i, value in enumerate(point) if value != ring.zero)
        scale = ring.inv(point[chart])
        point = tuple(ring.mul(value, scale) for value in point)
        point = point[:chart] + point[chart + 1:]
        equations = [f.dehomogenize(chart) for f in model.equations]
    else:
        equations = list(model.equations)
    local = [f.translate(point) for f in equations]
    size = len(point)
    c = len(local)
    linear = [f.linear_coefficients() for f in local]
    reduced, pivots = row_reduce(
        [row + [ring.one if i == r else ring.zero for i in range(c)]
         for r, row in enumerate(linear)],
        ring,
    )
    pivots = [p for p in pivots if p < size]
    if len(pivots) == c:
        return SingularityVerdict(SMOOTH, reason="Jacobian has full rank")
    if len(pivots) < c - 1:
        return SingularityVerdict(
            NOT_ORDINARY, reason=f"Jacobian corank {c - len(pivots)} exceeds one"
        )
    names = local[0].names

    def combine(row):
        total = MultiPoly.zero(ring, size, names)
        for r, weight in enumerate(row[size:]):
            if weight != ring.zero:
                total = total + local[r].scale(weight)
        return total

    combined = [combine(row) for row in reduced]
    residual = combined[len(pivots)]
    substitution = {}
    for row, pivot in zip(reduced, pivots):
        image = MultiPoly.zero(ring, size, names)
        for i in range(size):
            if i != pivot and row[i] != ring.zero:
                image = image - MultiPoly.variable(ring, size, i, names).scale(row[i])
        substitution[pivot] = image
    free = tuple(i for i in range(size) if i not in pivots)
    quadratic = residual.homogeneous_part(2).substitute(substitution).homogeneous_part(2)
    cone_names = tuple(names[i] for i in free)
    form = MultiPoly(
        ring,
        len(free),
        {tuple(e[i] for i in free): value for e, value in quadratic.terms.items()},
        cone_names,
    )
    if form.is_zero():
        return SingularityVerdict(NOT_ORDINARY, reason="tangent cone has degree above 2")
    if not is_smooth(_quadric(form, ring)).is_smooth:
        return SingularityVerdict(NOT_ORDINARY, reason=f"tangent cone {form} is singular")
    cone = TangentCone(form, free, chart, point, substitution)
    return SingularityVerdict(ORDINARY_QUADRATIC, tangent_cone=cone)


# Hyperplanes through the singular point


def hyperplane_preserves_oq(singularity, g):
    """
    Sufficient criterion for a hyperplane section through the singular point
    to stay ordinary quadratic: the image of ``g`` in m/m^2 is nonzero and its
    hyperplane is transversal to the exceptional quadric.

    :param singularity: a LocalModel (``g`` in its n+1 coordinates) or a
        TangentCone (``g`` in chart or homogeneous coordinates).
    """
    if isinstance(singularity, TangentCone):
        restricted = singularity.restrict(g)
        form = singularity.form
    else:
        form = singularity.residue_form()
        ring = form.ring
        coeffs = g.linear_coefficients()
        if g.ring.is_dvr:
            coeffs = [g.ring.residue(value) for value in coeffs]
        restricted = MultiPoly.linear(ring, coeffs, form.names)
    if restricted.is_zero():
        return False
    quadric = _quadric(form, form.ring)
    hyperplane = _quadric(restricted, form.ring)
    return is_transversal(quadric, hyperplane).is_smooth


def good_hyperplane_locus_at_singularity(singularity, budget=None):
    """
    All residue hyperplanes through the singular point preserving the
    ordinary quadratic singularity, as coefficient tuples.

    :raises ExhaustedException: no hyperplane passes.
    """
    form = singularity.residue_form() if isinstance(singularity, LocalModel) else singularity.form
    field_ = form.ring
    size = form.nvars if isinstance(singularity, LocalModel) else None
    if size is None:
        raise UnsupportedException(details="Pass a LocalModel")
    total = projective_count(field_.size, size)
    if budget is not None and total > budget:
        raise BudgetExceededException(details=f"{total} hyperplanes exceed the budget {budget}")
    passing = []
    for coeffs in canonical_tuples(size, field_.elements(), field_.one):
        g = MultiPoly.linear(field_, list(coeffs), form.names)
        if hyperplane_preserves_oq(singularity, g):
            passing.append(coeffs)
    if not passing:
        raise ExhaustedException(
            details="No hyperplane through the point preserves the singularity",
            statistics={"candidates": total, "passing": 0},
        )
    return passing


# Semi-stable shape


@dataclass(frozen=True)
class ShapeVerdict:
    kind: str
    multiplicity: int = 0
    factors: tuple = ()
    reason: str = ""

    @property
    def passed(self):
        return self.kind in (SMOOTH, SEMISTABLE)


def linear_factors(form):
    """Distinct linear forms (canonical, first nonzero = 1) dividing ``form`` over its field."""
    ring = form.ring
    size = form.nvars
    factors = []
    for coeffs in canonical_tuples(size, ring.elements(), ring.one):
        lead = next(i for i, value in enumerate(coeffs) if value != ring.zero)
        image = MultiPoly.zero(ring, size, form.names)
        for i, value in enumerate(coeffs):
            if i != lead and value != ring.zero:
                image = image - MultiPoly.variable(ring, size, i, form.names).scale(value)
        if form.substitute({lead: image}).is_zero():
            factors.append(coeffs)
    return factors


def _is_product_of_independent_factors(form):
    ring = form.ring
    degree = form.degree()
    factors = linear_factors(form)
    if len(factors) != degree or rank([list(f) for f in factors], ring) != degree:
        return None
    product_ = MultiPoly.one(ring, form.nvars, form.names)
    for coeffs in factors:
        product_ = product_ * MultiPoly.linear(ring, list(coeffs), form.names)
    exponent, value = product_.leading()
    scale = ring.div(form.coefficient(exponent), value)
    if product_.scale(scale) != form:
        return None
    return tuple(factors)


def _crossing_coordinates(reduced, factors):
    """``reduced`` in coordinates whose first variables are the given linear factors."""
    ring = reduced.ring
    size = reduced.nvars
    rows = [list(f) for f in factors]
    for i in range(size):
        unit = [ring.one if j == i else ring.zero for j in range(size)]
        if rank(rows + [unit], ring) > len(rows):
            rows.append(unit)
    inverse_ = inverse(rows, ring)
    variables = [MultiPoly.variable(ring, size, j, reduced.names) for j in range(size)]
    images = []
    for k in range(size):
        image = MultiPoly.zero(ring, size, reduced.names)
        for j, value in enumerate(inverse_[k]):
            if value != ring.zero:
                image = image + variables[j].scale(value)
        images.append(image)
    return reduced.compose(images)


def _crossing_obstruction(g, r, scale, jet_bound):
    """
    Grow branches y_i + h_i (h_i of order two) degree by degree until their
    product is ``g``. Returns the first degree whose terms cannot be absorbed,
    ``jet_bound + 1`` when the product is still short of ``g`` there, or None.

    ``g`` has lowest part ``scale * y_1 * ... * y_r``.
    """
    ring = g.ring
    size = g.nvars
    branches = [MultiPoly.variable(ring, size, i, g.names) for i in range(r)]
    branches[0] = branches[0].scale(scale)

    def product_of(polys):
        total = MultiPoly.one(ring, size, g.names)
        for poly in polys:
            total = total * poly
        return total

    for degree in range(r + 1, jet_bound + 1):
        error = (g - product_of(branches)).truncate(jet_bound).homogeneous_part(degree)
        for exponent, value in error.terms.items():
            i = next(
                (i for i in range(r) if all(exponent[j] for j in range(r) if j != i)), None
            )
            if i is None:
                return degree
            quotient = tuple(
                power - 1 if j < r and j != i else power for j, power in enumerate(exponent)
            )
            if i != 0:
                value = ring.div(value, scale)
            branches[i] = branches[i] + MultiPoly(ring, size, {quotient: value}, g.names)
    if g == product_of(branches):
        return None
    # a plane curve with two distinct tangents at the point is a node
    if r == 2 and all(not any(e[2:]) for e in g.terms):
        return None
    return jet_bound + 1


def semistable_point_shape(model, point, jet_bound=None):
    """
    Local shape test at an F-point of the special fibre: smooth, or
    c0 + (degree-r part) + ... with v(c0) = 1, a residue degree-r part that
    is a product of r independent linear forms, and a special fibre that
    splits into r branches with those tangents (checked up to the jet bound).
    """
    ring = model.ring
    jet_bound = jet_bound or JET_BOUND
    g, _ = _local_equation(model, point)
    if any(ring.is_unit(c) for c in g.linear_coefficients()):
        return ShapeVerdict(SMOOTH)
    reduced = g.reduce_mod_pi()
    if reduced.is_zero():
        return ShapeVerdict(SHAPE_FAILS, reason="special fibre is not reduced here")
    degree = min(sum(e) for e in reduced.terms)
    lowest = reduced.homogeneous_part(degree)
    if ring.valuation(g.constant_term()) != 1:
        return ShapeVerdict(SHAPE_FAILS, degree, reason="constant term is not a uniformizer")
    factors = _is_product_of_independent_factors(lowest)
    if factors is None:
        return ShapeVerdict(
            SHAPE_FAILS, degree, reason=f"{lowest} is not a product of independent linear forms"
        )
    g = _crossing_coordinates(reduced, factors)
    scale = g.coefficient(tuple(1 if i < degree else 0 for i in range(g.nvars)))
    obstruction = _crossing_obstruction(g, degree, scale, max(jet_bound, degree + 1))
    if obstruction is not None:
        return ShapeVerdict(
            SHAPE_FAILS, degree, factors,
            reason=f"special fibre is not a normal crossing (degree {obstruction} terms)",
        )
    return ShapeVerdict(SEMISTABLE, degree, factors)


# Text form


def _split_top_level(text):
    parts, depth, current = [], 0, ""
    for char in text:
        if char in "([":
            depth += 1
        elif char in ")]":
            depth -= 1
        if char == "," and depth == 0:
            parts.append(current)
            current = ""
        else:
            current += char
    if current.strip():
        parts.append(current)
    return [part.strip() for part in parts]


def _matrix_form(text, ring, names, line):
    rows = re.findall(r"\[([^\[\]]*)\]", text[1:-1])
    size = len(names)
    if len(rows) != size:
        raise InvalidLocalModelException(details=f"Matrix needs {size} rows: {text}")
    form = MultiPoly.zero(ring, size, names)
    for i, row in enumerate(rows):
        entries = [entry for entry in row.split(",") if entry.strip()]
        if len(entries) != size:
            raise InvalidLocalModelException(details=f"Matrix row {i + 1} needs {size} entries")
        for j, entry in enumerate(entries):
            value = parse_constant(entry, ring, line)
            if value != ring.zero:
                monomial = MultiPoly.variable(ring, size, i, names) * MultiPoly.variable(
                    ring, size, j, names
                )
                form = form + monomial.scale(value)
    return form


def parse_local_model(text, ring=None, line=None):
    """
    Parse ``oq(case=i, n=1, Q=x1*x2, c=pi^2)`` or
    ``oq(case=ii, n=2, P=x1*x2, b=pi, c=0)``; ``ring=`` inside the literal
    overrides ``ring``.
    """
    match = re.fullmatch(r"\s*oq\((.*)\)\s*", text, re.S)
    if not match:
        raise InvalidLocalModelException(details=f"Not an oq(...) literal: {text}")
    fields = {}
    for part in _split_top_level(match.group(1)):
        key, sep, value = part.partition("=")
        if not sep:
            raise InvalidLocalModelException(details=f"Expected key=value, got {part!r}")
        fields[key.strip()] = value.strip()
    if "ring" in fields:
        ring = parse_ring(fields.pop("ring"))
    if ring is None:
        raise InvalidLocalModelException(details="No coefficient ring given")
    case = fields.get("case")
    if case not in (CASE_I, CASE_II):
        raise InvalidLocalModelException(details=f"case must be i or ii, got {case!r}")
    try:
        n = int(fields["n"])
    except (KeyError, ValueError) as e:
        raise InvalidLocalModelException(details="n must be an integer") from e
    key = "Q" if case == CASE_I else "P"
    if key not in fields:
        raise InvalidLocalModelException(details=f"Missing {key}=")
    names = local_names(n + 1 if case == CASE_I else n)
    body = fields[key]
    if body.startswith("["):
        form = _matrix_form(body, ring, names, line)
    else:
        form = parse_polynomial(body, ring, names, line=line)
    c = parse_constant(fields.get("c", "0"), ring, line)
    b = parse_constant(fields["b"], ring, line) if "b" in fields else None
    if case == CASE_II and b is None:
        raise InvalidLocalModelException(details="Case ii needs b=")
    return LocalModel(case, ring, n, form, c, b).validate()


def lift_point(ring, coords):
    """Canonical lift of residue coordinates."""
    return tuple(ring.lift(value) for value in coords)


def residue_points(ring, size):
    """All affine F-points with ``size`` coordinates."""
    return product(ring.residue_field().elements(), repeat=size)
