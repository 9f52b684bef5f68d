"""Sparse multivariate polynomials over a CoeffRing."""

from itertools import combinations_with_replacement
from operator import add as _add
from sympy.polys.orderings import grevlex
from dvrgeom.exceptions import ArityMismatchException, NotDVRException, RingMismatchException


def default_names(nvars, prefix="x", start=0):
    return tuple(f"{prefix}{i}" for i in range(start, start + nvars))


class MultiPoly:
    """
    Immutable sparse polynomial: a map from exponent tuples to nonzero raw
    coefficients of ``ring``.
    """

    __slots__ = ("ring", "nvars", "terms", "names")

    def __init__(self, ring, nvars, terms=None, names=None, clean=True):
        self.ring = ring
        self.nvars = nvars
        if terms is None:
            terms = {}
        if clean:
            zero = ring.zero
            terms = {e: c for e, c in terms.items() if c != zero}
        self.terms = terms
        self.names = tuple(names) if names else default_names(nvars)
        if len(self.names) != nvars:
            raise ArityMismatchException(
                details=f"{len(self.names)} names for {nvars} variables"
            )

    # Construction
    @classmethod
    def zero(cls, ring, nvars, names=None):
        return cls(ring, nvars, {}, names, clean=False)

    @classmethod
    def constant(cls, ring, nvars, value, names=None):
        return cls(ring, nvars, {(0,) * nvars: value}, names)

    @classmethod
    def one(cls, ring, nvars, names=None):
        return cls.constant(ring, nvars, ring.one, names)

    @classmethod
    def variable(cls, ring, nvars, index, names=None):
        exponent = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(ring, nvars, {exponent: ring.one}, names, clean=False)

    @classmethod
    def linear(cls, ring, coeffs, names=None):
        """Linear form sum coeffs[i] * x_i from raw coefficients."""
        nvars = len(coeffs)
        terms = {}
        for index, coeff in enumerate(coeffs):
            terms[tuple(1 if i == index else 0 for i in range(nvars))] = coeff
        return cls(ring, nvars, terms, names)

    def _like(self, terms, clean=True):
        return MultiPoly(self.ring, self.nvars, terms, self.names, clean)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise RingMismatchException(details=f"{self.ring} vs {other.ring}")
            if other.nvars != self.nvars:
                raise ArityMismatchException(
                    details=f"{self.nvars} vs {other.nvars} variables"
                )
            return other
        if isinstance(other, int):
            return MultiPoly.constant(self.ring, self.nvars, self.ring.from_int(other), self.names)
        return NotImplemented

    # Predicates
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.nvars, frozenset(self.terms.items())))

    # Arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        add = self.ring.add
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = add(terms[e], c) if e in terms else c
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.neg
        return self._like({e: neg(c) for e, c in self.terms.items()}, clean=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        add, mul, zero = self.ring.add, self.ring.mul, self.ring.zero
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(_add, e1, e2))
                product = mul(c1, c2)
                if product == zero:
                    continue
                terms[e] = add(terms[e], product) if e in terms else product
        return self._like(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        result = MultiPoly.one(self.ring, self.nvars, self.names)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, value):
        mul = self.ring.mul
        return self._like({e: mul(c, value) for e, c in self.terms.items()})

    def mul_monomial(self, exponent, value=None):
        mul = self.ring.mul
        terms = {}
        for e, c in self.terms.items():
            terms[tuple(map(_add, e, exponent))] = c if value is None else mul(c, value)
        return self._like(terms)

    # Structure
    def degree(self):
        """Total degree, -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, index):
        return max((e[index] for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, degree):
        return self._like({e: c for e, c in self.terms.items() if sum(e) == degree}, clean=False)

    def truncate(self, degree):
        """Drop all terms of total degree above ``degree``."""
        return self._like({e: c for e, c in self.terms.items() if sum(e) <= degree}, clean=False)

    def coefficient(self, exponent):
        return self.terms.get(tuple(exponent), self.ring.zero)

    def constant_term(self):
        return self.coefficient((0,) * self.nvars)

    def linear_coefficients(self):
        return [
            self.coefficient(tuple(1 if i == j else 0 for i in range(self.nvars)))
            for j in range(self.nvars)
        ]

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, power in enumerate(e) if power)
        return used

    def sorted_terms(self, order=grevlex):
        """Terms in descending monomial order."""
        return sorted(self.terms.items(), key=lambda item: order(item[0]), reverse=True)

    def leading(self, order=grevlex):
        exponent = max(self.terms, key=order)
        return exponent, self.terms[exponent]

    # Maps
    def map_coefficients(self, function, ring):
        """Apply a raw coefficient map into ``ring``; zero images are dropped."""
        return MultiPoly(
            ring, self.nvars, {e: function(c) for e, c in self.terms.items()}, self.names
        )

    def reduce_mod_pi(self):
        if not self.ring.is_dvr:
            raise NotDVRException(details=f"{self.ring} is a field")
        return self.map_coefficients(self.ring.residue, self.ring.residue_field())

    def with_names(self, names):
        return MultiPoly(self.ring, self.nvars, self.terms, names, clean=False)

    def embed(self, nvars, positions, names=None):
        """Move variable i to position ``positions[i]`` of an ``nvars``-variable ring."""
        terms = {}
        for e, c in self.terms.items():
            new = [0] * nvars
            for i, power in enumerate(e):
                new[positions[i]] += power
            terms[tuple(new)] = c
        return MultiPoly(self.ring, nvars, terms, names, clean=False)

    def compose(self, images):
        """Substitute ``images[i]`` for x_i; all images share ring and arity."""
        if len(images) != self.nvars:
            raise ArityMismatchException(
                details=f"{len(images)} images for {self.nvars} variables"
            )
        if not images:
            return self
        target = images[0]
        result = MultiPoly.zero(self.ring, target.nvars, target.names)
        powers = [{0: MultiPoly.one(self.ring, target.nvars, target.names), 1: image}
                  for image in images]

        def power_of(index, exponent):
            cache = powers[index]
            if exponent not in cache:
                cache[exponent] = images[index] ** exponent
            return cache[exponent]

        for e, c in self.terms.items():
            term = MultiPoly.constant(self.ring, target.nvars, c, target.names)
            for index, exponent in enumerate(e):
                if exponent:
                    term = term * power_of(index, exponent)
            result = result + term
        return result

    def substitute(self, assignment):
        """Replace the variables in ``assignment`` (index -> MultiPoly or raw)."""
        images = []
        for index in range(self.nvars):
            image = assignment.get(index)
            if image is None:
                image = MultiPoly.variable(self.ring, self.nvars, index, self.names)
            elif not isinstance(image, MultiPoly):
                image = MultiPoly.constant(self.ring, self.nvars, image, self.names)
            images.append(image)
        return self.compose(images)

    def dehomogenize(self, index):
        """Set x_index = 1 and drop it from the variable list."""
        terms = {}
        add = self.ring.add
        for e, c in self.terms.items():
            reduced = e[:index] + e[index + 1:]
            terms[reduced] = add(terms[reduced], c) if reduced in terms else c
        names = self.names[:index] + self.names[index + 1:]
        return MultiPoly(self.ring, self.nvars - 1, terms, names)

    def translate(self, point):
        """Return f(x + point) for raw coordinates ``point``."""
        images = []
        for index, value in enumerate(point):
            var = MultiPoly.variable(self.ring, self.nvars, index, self.names)
            if value != self.ring.zero:
                var = var + MultiPoly.constant(self.ring, self.nvars, value, self.names)
            images.append(var)
        return self.compose(images)

    def partial(self, index):
        """Formal partial derivative with respect to x_index."""
        terms = {}
        mul, from_int, add = self.ring.mul, self.ring.from_int, self.ring.add
        for e, c in self.terms.items():
            power = e[index]
            if not power:
                continue
            reduced = e[:index] + (power - 1,) + e[index + 1:]
            value = mul(c, from_int(power))
            terms[reduced] = add(terms[reduced], value) if reduced in terms else value
        return self._like(terms)

    def evaluate(self, point):
        """Evaluate at raw coordinates; returns a raw value."""
        ring = self.ring
        add, mul = ring.add, ring.mul
        powers = [[ring.one, value] for value in point]
        total = ring.zero
        for e, c in self.terms.items():
            value = c
            for index, exponent in enumerate(e):
                if exponent:
                    table = powers[index]
                    while len(table) <= exponent:
                        table.append(mul(table[-1], table[1]))
                    value = mul(value, table[exponent])
            total = add(total, value)
        return total

    # Text
    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            monomial = "*".join(
                name if power == 1 else f"{name}^{power}"
                for name, power in zip(self.names, e)
                if power
            )
            coeff = self.ring.format(c)
            if not monomial:
                parts.append(coeff if _is_atomic(coeff) else f"({coeff})")
            elif coeff == "1":
                parts.append(monomial)
            elif coeff == "-1":
                parts.append(f"-{monomial}")
            elif _is_atomic(coeff):
                parts.append(f"{coeff}*{monomial}")
            else:
                parts.append(f"({coeff})*{monomial}")
        text = parts[0]
        for part in parts[1:]:
            text += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return text

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r} over {self.ring})"


def _is_atomic(text):
    body = text[1:] if text.startswith("-") else text
    return all(ch not in body for ch in " +-")


def poly_arith(f, g, op):
    """
    Combine two polynomials with ``op`` in {add, sub, mul}.

    :raises RingMismatchException: different coefficient rings.
    :raises ArityMismatchException: different variable counts.
    """
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"Unknown operation: {op}")


def substitute(f, assignment):
    return f.substitute(assignment)


def partial_derivative(f, index):
    return f.partial(index)


def reduce_mod_pi(f):
    return f.reduce_mod_pi()


def monomials_of_degree(nvars, degree):
    """Exponent tuples of the given total degree, in descending grevlex order."""
    exponents = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for index in combo:
            e[index] += 1
        exponents.append(tuple(e))
    return sorted(exponents, key=grevlex, reverse=True)


def form_from_coefficients(ring, nvars, monomials, coeffs, names=None):
    return MultiPoly(ring, nvars, dict(zip(monomials, coeffs)), names)


def jacobian(polys, variables=None):
    """Matrix of partial derivatives, one row per polynomial."""
    if not polys:
        return []
    nvars = polys[0].nvars
    variables = range(nvars) if variables is None else variables
    return [[f.partial(i) for i in variables] for f in polys]


def determinant(matrix):
    """Determinant of a square matrix of MultiPolys by cofactor expansion."""
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    if size == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = None
    for column in range(size):
        entry = matrix[0][column]
        if entry.is_zero():
            continue
        minor = [row[:column] + row[column + 1:] for row in matrix[1:]]
        term = entry * determinant(minor)
        if column % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return MultiPoly.zero(matrix[0][0].ring, matrix[0][0].nvars, matrix[0][0].names)
    return total
