"""Exhaustive zero enumeration over finite fields: the oracle behind every certificate."""

from dataclasses import dataclass
from math import lcm
from dvrgeom.constants import POINT_BUDGET
from dvrgeom.exceptions import (
    ArityMismatchException,
    BudgetExceededException,
    UnsupportedException,
)
from dvrgeom.rings import extend_unramified

AFFINE = "affine"
PROJECTIVE = "projective"


@dataclass(frozen=True)
class PointSet:
    """Sorted, duplicate-free set of raw coordinate tuples over ``field``."""

    field: object
    points: tuple
    projective: bool

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, point):
        return tuple(point) in set(self.points)


def normalize_projective(point, field):
    """Scale so that the first nonzero coordinate is 1."""
    for value in point:
        if value != field.zero:
            scale = field.inv(value)
            return tuple(field.mul(c, scale) for c in point)
    raise ArityMismatchException(details="Projective point with all coordinates zero")


def candidate_count(q, nvars, projective):
    if projective:
        return (q**nvars - 1) // (q - 1)
    return q**nvars


def enumerate_zeros(polys, mode=PROJECTIVE, ext_degree=1, field=None, nvars=None, budget=None):
    """
    Common zeros of ``polys`` over F_{q^ext_degree}, by exhaustive search.

    :param polys: MultiPolys over a finite field (may be empty).
    :param mode: ``affine`` or ``projective``.
    :param field: base field, needed when ``polys`` is empty.
    :param nvars: variable count, needed when ``polys`` is empty.
    :raises BudgetExceededException: when the candidate space exceeds the budget.
    """
    polys = list(polys)
    field = field or polys[0].ring
    nvars = polys[0].nvars if polys else nvars
    if not field.is_field or field.kind == "rational":
        raise UnsupportedException(details=f"Cannot enumerate points over {field}")
    if any(f.nvars != nvars for f in polys):
        raise ArityMismatchException(details="Polynomials with different arities")
    target, embedding = extend_unramified(field, ext_degree)
    if ext_degree > 1:
        polys = [f.map_coefficients(embedding, target) for f in polys]
    polys = [f for f in polys if not f.is_zero()]
    projective = mode == PROJECTIVE
    budget = budget or POINT_BUDGET
    count = candidate_count(target.size, nvars, projective)
    if count > budget:
        raise BudgetExceededException(
            details=f"{count} candidate points over {target} exceed the budget {budget}"
        )
    values = target.elements()
    found = []
    if projective:
        for lead in range(nvars):
            fixed = {i: target.zero for i in range(lead)}
            fixed[lead] = target.one
            found.extend(_search(polys, nvars, fixed, values, target))
    else:
        found.extend(_search(polys, nvars, {}, values, target))
    return PointSet(target, tuple(sorted(found)), projective)


def _search(polys, nvars, fixed, values, field):
    free = [i for i in range(nvars) if i not in fixed]
    usage = {i: sum(1 for f in polys if i in f.variables()) for i in free}
    order = sorted(free, key=lambda i: (-usage[i], i))
    position = {var: depth for depth, var in enumerate(order)}
    checks = [[] for _ in range(len(order) + 1)]
    for f in polys:
        depth = max((position[i] + 1 for i in f.variables() if i in position), default=0)
        checks[depth].append(f)
    current = [field.zero] * nvars
    for index, value in fixed.items():
        current[index] = value
    zero = field.zero
    if any(f.evaluate(current) != zero for f in checks[0]):
        return []
    found = []

    def extend(depth):
        if depth == len(order):
            found.append(tuple(current))
            return
        var = order[depth]
        pending = checks[depth + 1]
        for value in values:
            current[var] = value
            if all(f.evaluate(current) == zero for f in pending):
                extend(depth + 1)
        current[var] = zero

    extend(0)
    return found


def element_level(field, value, q):
    """Smallest m with value in F_{q^m} inside ``field`` (a field of order q^M)."""
    total_degree = 1
    while q**total_degree < field.size:
        total_degree += 1
    for degree in range(1, total_degree + 1):
        if total_degree % degree == 0 and field.pow(value, q**degree) == value:
            return degree
    return total_degree


def point_level(field, point, q):
    """Smallest extension level containing every coordinate of ``point``."""
    level = 1
    for value in point:
        level = lcm(level, element_level(field, value, q))
    return level
