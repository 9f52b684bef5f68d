"""Projective and affine scheme models given by explicit defining equations."""

from dataclasses import dataclass
from dvrgeom.exceptions import ArityMismatchException, InvalidHyperplaneException
from dvrgeom.points import AFFINE, PROJECTIVE, enumerate_zeros
from dvrgeom.poly import MultiPoly, default_names
from dvrgeom.polyparse import parse_polynomial


@dataclass(frozen=True)
class SchemeModel:
    """
    Closed subscheme of P^{nvars-1} (``projective``) or A^{nvars} cut out by
    ``equations``, over a field or a truncated DVR.
    """

    ring: object
    nvars: int
    equations: tuple = ()
    projective: bool = True
    names: tuple = None
    label: str = ""

    def __post_init__(self):
        names = tuple(self.names) if self.names else default_names(self.nvars)
        object.__setattr__(self, "names", names)
        equations = tuple(f for f in self.equations if not f.is_zero())
        for f in equations:
            if f.nvars != self.nvars:
                raise ArityMismatchException(
                    details=f"Equation {f} has {f.nvars} variables, expected {self.nvars}"
                )
        object.__setattr__(self, "equations", equations)

    @classmethod
    def from_text(cls, ring, texts, names=None, projective=True, nvars=None, label=""):
        if names is None:
            names = default_names(nvars)
        equations = tuple(parse_polynomial(text, ring, names) for text in texts)
        return cls(ring, len(names), equations, projective, tuple(names), label)

    @property
    def ambient_dimension(self):
        return self.nvars - 1 if self.projective else self.nvars

    @property
    def codimension(self):
        return len(self.equations)

    @property
    def expected_dimension(self):
        return self.ambient_dimension - self.codimension

    @property
    def mode(self):
        return PROJECTIVE if self.projective else AFFINE

    def variable(self, index):
        return MultiPoly.variable(self.ring, self.nvars, index, self.names)

    def with_equations(self, extra, label=""):
        """Intersection with the zero set of ``extra``."""
        return SchemeModel(
            self.ring,
            self.nvars,
            self.equations + tuple(extra),
            self.projective,
            self.names,
            label or self.label,
        )

    def special_fibre(self):
        if not self.ring.is_dvr:
            return self
        return SchemeModel(
            self.ring.residue_field(),
            self.nvars,
            tuple(f.reduce_mod_pi() for f in self.equations),
            self.projective,
            self.names,
            self.label,
        )

    def base_change(self, embedding):
        return SchemeModel(
            embedding.target,
            self.nvars,
            tuple(f.map_coefficients(embedding, embedding.target) for f in self.equations),
            self.projective,
            self.names,
            self.label,
        )

    def charts(self):
        """
        Standard affine charts as ``(index, equations)``; ``index`` is the
        coordinate set to 1, or None for an affine model.
        """
        if not self.projective:
            return [(None, list(self.equations))]
        return [
            (index, [f.dehomogenize(index) for f in self.equations])
            for index in range(self.nvars)
        ]

    def points(self, ext_degree=1, budget=None):
        field_ = self.ring.residue_field() if self.ring.is_dvr else self.ring
        equations = self.special_fibre().equations
        return enumerate_zeros(
            equations, self.mode, ext_degree, field=field_, nvars=self.nvars, budget=budget
        )

    def contains_point(self, point):
        return all(f.evaluate(point) == self.ring.zero for f in self.equations)

    def section(self, linear):
        """
        Eliminate a variable with unit coefficient in the linear form
        ``linear`` and return ``(section, index)``: the model of the
        intersection in the remaining coordinates, and the eliminated index.
        """
        coeffs = linear.linear_coefficients()
        index = next((i for i, c in enumerate(coeffs) if self.ring.is_unit(c)), None)
        if index is None:
            raise InvalidHyperplaneException(details=f"{linear} has no unit coefficient")
        scale = self.ring.neg(self.ring.inv(coeffs[index]))
        image = MultiPoly.zero(self.ring, self.nvars, self.names)
        for i, c in enumerate(coeffs):
            if i != index and c != self.ring.zero:
                image = image + self.variable(i).scale(self.ring.mul(c, scale))
        names = self.names[:index] + self.names[index + 1:]
        equations = []
        for f in self.equations:
            substituted = f.substitute({index: image})
            equations.append(_drop_variable(substituted, index, names))
        section = SchemeModel(
            self.ring, self.nvars - 1, tuple(equations), self.projective, names, self.label
        )
        return section, index

    def to_text(self):
        kind = "P" if self.projective else "A"
        body = ", ".join(f.to_text() for f in self.equations) or "0"
        return f"V({body}) in {kind}{self.ambient_dimension} over {self.ring}"

    def __str__(self):
        return self.to_text()


def _drop_variable(f, index, names):
    terms = {}
    for e, c in f.terms.items():
        terms[e[:index] + e[index + 1:]] = c
    return MultiPoly(f.ring, f.nvars - 1, terms, names)


def restore_coordinate(point, index, linear, ring):
    """Inverse of ``SchemeModel.section`` on points: recompute the eliminated coordinate."""
    coeffs = linear.linear_coefficients()
    scale = ring.neg(ring.inv(coeffs[index]))
    full = list(point[:index]) + [ring.zero] + list(point[index:])
    value = ring.zero
    for i, c in enumerate(coeffs):
        if i != index:
            value = ring.add(value, ring.mul(ring.mul(c, scale), full[i]))
    full[index] = value
    return tuple(full)
