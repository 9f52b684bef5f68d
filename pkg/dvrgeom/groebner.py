"""
Groebner bases over exact fields (finite fields and QQ).

Buchberger's algorithm with the normal selection strategy and the
Gebauer-Moeller pair criteria, following the structure of
``sympy.polys.groebnertools._buchberger`` but working on the raw-coefficient
term dictionaries of :class:`dvrgeom.poly.MultiPoly` so that extension
fields and truncated coefficient rings share one kernel.
"""

from itertools import combinations
from sympy.polys.monomials import monomial_div, monomial_divides, monomial_lcm, monomial_mul
from sympy.polys.orderings import grevlex
from dvrgeom.constants import GROEBNER_STEPS
from dvrgeom.exceptions import BudgetExceededException, UnsupportedException
from dvrgeom.poly import MultiPoly

EMPTY = -1  # dimension of the empty zero set


def block_order(eliminated):
    """
    Product order in which any monomial involving a variable of
    ``eliminated`` is larger than all monomials free of them.
    """
    eliminated = tuple(sorted(eliminated))

    def key(monomial):
        first = tuple(monomial[i] for i in eliminated)
        rest = tuple(power for i, power in enumerate(monomial) if i not in eliminated)
        return (grevlex(first), grevlex(rest))

    return key


class _Kernel:
    """Term-dictionary arithmetic shared by reduction and S-polynomials."""

    def __init__(self, ring, order):
        if not ring.is_field:
            raise UnsupportedException(details=f"Groebner bases need field coefficients, got {ring}")
        self.ring = ring
        self.order = order

    def lead(self, terms):
        return max(terms, key=self.order)

    def monic(self, terms):
        lm = self.lead(terms)
        scale = self.ring.inv(terms[lm])
        mul = self.ring.mul
        return {e: mul(c, scale) for e, c in terms.items()}

    def sub_multiple(self, target, coeff, shift, terms):
        """target -= coeff * x^shift * terms, in place."""
        ring = self.ring
        mul, sub, zero = ring.mul, ring.sub, ring.zero
        for e, c in terms.items():
            moved = monomial_mul(e, shift)
            value = sub(target.get(moved, zero), mul(coeff, c))
            if value == zero:
                target.pop(moved, None)
            else:
                target[moved] = value

    def reduce(self, terms, basis):
        """Full normal form of ``terms`` modulo monic ``basis`` entries (lm, terms)."""
        work = dict(terms)
        remainder = {}
        while work:
            lm = self.lead(work)
            coeff = work[lm]
            for g_lm, g_terms in basis:
                shift = monomial_div(lm, g_lm)
                if shift is not None:
                    self.sub_multiple(work, coeff, shift, g_terms)
                    break
            else:
                remainder[lm] = coeff
                del work[lm]
        return remainder

    def spoly(self, first, second):
        lm1, t1 = first
        lm2, t2 = second
        lcm = monomial_lcm(lm1, lm2)
        result = {}
        for e, c in t1.items():
            result[monomial_mul(e, monomial_div(lcm, lm1))] = c
        self.sub_multiple(result, self.ring.one, monomial_div(lcm, lm2), t2)
        return result


def buchberger(polys, order=grevlex, step_budget=None):
    """
    Reduced Groebner basis of the ideal generated by ``polys``.

    :param polys: nonzero MultiPolys over a common field.
    :param order: monomial key function.
    :param step_budget: maximum critical pairs processed.
    :raises BudgetExceededException: when the step budget runs out.
    :return: list of monic MultiPolys sorted by descending leading monomial.
    """
    polys = [f for f in polys if not f.is_zero()]
    if not polys:
        return []
    ring, nvars, names = polys[0].ring, polys[0].nvars, polys[0].names
    kernel = _Kernel(ring, order)
    step_budget = step_budget or GROEBNER_STEPS

    # interreduce the input
    f = [kernel.monic(p.terms) for p in polys]
    while True:
        previous = f
        f = []
        for index, terms in enumerate(previous):
            basis = [(kernel.lead(t), t) for t in previous[:index] if t]
            r = kernel.reduce(terms, basis)
            if r:
                f.append(kernel.monic(r))
        if len(f) == len(previous) and all(a == b for a, b in zip(f, previous)):
            break
    entries = [(kernel.lead(t), t) for t in f]

    def update(group, pairs, ih):
        mh = entries[ih][0]
        candidates = set(group)
        chosen = set()
        while candidates:
            ig = candidates.pop()
            mg = entries[ig][0]
            lcm_hg = monomial_lcm(mh, mg)

            def lcm_divides(ip):
                return monomial_divides(monomial_lcm(mh, entries[ip][0]), lcm_hg)

            if monomial_mul(mh, mg) == lcm_hg or (
                not any(lcm_divides(ipx) for ipx in candidates)
                and not any(lcm_divides(pr[1]) for pr in chosen)
            ):
                chosen.add((ih, ig))
        kept = {
            (ih_, ig)
            for ih_, ig in chosen
            if monomial_mul(mh, entries[ig][0]) != monomial_lcm(mh, entries[ig][0])
        }
        survivors = set()
        for ig1, ig2 in pairs:
            m1, m2 = entries[ig1][0], entries[ig2][0]
            lcm12 = monomial_lcm(m1, m2)
            if (
                not monomial_divides(mh, lcm12)
                or monomial_lcm(m1, mh) == lcm12
                or monomial_lcm(m2, mh) == lcm12
            ):
                survivors.add((ig1, ig2))
        survivors |= kept
        new_group = {ig for ig in group if not monomial_divides(mh, entries[ig][0])}
        new_group.add(ih)
        return new_group, survivors

    group, pairs = set(), set()
    for ih in sorted(range(len(entries)), key=lambda i: order(entries[i][0])):
        group, pairs = update(group, pairs, ih)

    steps = 0
    while pairs:
        steps += 1
        if steps > step_budget:
            raise BudgetExceededException(
                details=f"Groebner computation exceeded {step_budget} critical pairs"
            )
        ig1, ig2 = min(
            pairs,
            key=lambda pr: (order(monomial_lcm(entries[pr[0]][0], entries[pr[1]][0])), pr),
        )
        pairs.remove((ig1, ig2))
        s = kernel.spoly(entries[ig1], entries[ig2])
        basis = sorted((entries[i] for i in group), key=lambda entry: order(entry[0]))
        h = kernel.reduce(s, basis)
        if h:
            h = kernel.monic(h)
            entries.append((kernel.lead(h), h))
            group, pairs = update(group, pairs, len(entries) - 1)

    reduced = []
    for ig in group:
        others = [entries[j] for j in group if j != ig]
        h = kernel.reduce(entries[ig][1], others)
        if h:
            reduced.append(kernel.monic(h))
    reduced.sort(key=lambda t: order(kernel.lead(t)), reverse=True)
    return [MultiPoly(ring, nvars, terms, names, clean=False) for terms in reduced]


class Ideal:
    """
    Ideal of a polynomial ring over a field with a lazily computed, cached
    reduced Groebner basis.
    """

    def __init__(self, generators, ring=None, nvars=None, order=grevlex, names=None,
                 step_budget=None):
        generators = tuple(g for g in generators if not g.is_zero())
        if generators:
            ring = generators[0].ring
            nvars = generators[0].nvars
            names = generators[0].names
        self.generators = generators
        self.ring = ring
        self.nvars = nvars
        self.names = names
        self.order = order
        self.step_budget = step_budget
        self._basis = None

    def groebner_basis(self):
        if self._basis is None:
            self._basis = tuple(buchberger(self.generators, self.order, self.step_budget))
        return self._basis

    def _entries(self):
        kernel = _Kernel(self.ring, self.order)
        return kernel, [(kernel.lead(g.terms), g.terms) for g in self.groebner_basis()]

    def reduce(self, f):
        """Normal form of ``f`` with respect to the reduced basis."""
        if f.is_zero() or not self.generators:
            return f
        kernel, entries = self._entries()
        return MultiPoly(f.ring, f.nvars, kernel.reduce(f.terms, entries), f.names, clean=False)

    def contains(self, f):
        return self.reduce(f).is_zero()

    def is_unit(self):
        return any(g.is_constant() for g in self.groebner_basis())

    def leading_monomials(self):
        return [max(g.terms, key=self.order) for g in self.groebner_basis()]

    def dimension(self):
        """Krull dimension of the zero set; EMPTY for the unit ideal."""
        if not self.generators:
            return self.nvars
        if self.is_unit():
            return EMPTY
        supports = [{i for i, power in enumerate(m) if power} for m in self.leading_monomials()]
        for size in range(self.nvars, -1, -1):
            for chosen in combinations(range(self.nvars), size):
                chosen = set(chosen)
                if not any(support <= chosen for support in supports):
                    return size
        return EMPTY

    def __repr__(self):
        gens = ", ".join(g.to_text() for g in self.generators)
        return f"Ideal<{gens}>"


def groebner(ideal):
    return ideal.groebner_basis()


def ideal_membership(f, ideal):
    return ideal.contains(f)


def is_unit_ideal(ideal):
    return ideal.is_unit()


def dimension(ideal):
    return ideal.dimension()


def elimination_ideal(generators, eliminated, step_budget=None):
    """Basis elements of the ideal that involve none of the ``eliminated`` variables."""
    basis = buchberger(generators, block_order(eliminated), step_budget)
    return [g for g in basis if not (g.variables() & set(eliminated))]


def ideal_quotient_by_variable(generators, index, step_budget=None):
    """
    Generators of (I : x_index) for I = <generators>, computed from
    I intersected with <x_index> via an auxiliary elimination variable.
    """
    if not generators:
        return []
    ring, nvars = generators[0].ring, generators[0].nvars
    names = generators[0].names + ("_z",)
    positions = list(range(nvars))
    lifted = [g.embed(nvars + 1, positions, names) for g in generators]
    z = MultiPoly.variable(ring, nvars + 1, nvars, names)
    var = MultiPoly.variable(ring, nvars + 1, index, names)
    system = [z * g for g in lifted] + [(1 - z) * var]
    intersection = elimination_ideal(system, [nvars], step_budget)
    quotients = []
    for g in intersection:
        terms = {}
        for e, c in g.terms.items():
            shifted = list(e[:nvars])
            shifted[index] -= 1
            terms[tuple(shifted)] = c
        quotients.append(MultiPoly(ring, nvars, terms, generators[0].names, clean=False))
    return quotients
