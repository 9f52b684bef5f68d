"""
Coefficient rings: prime and extension finite fields, truncated discrete
valuation rings Z/p^k and F_q[t]/(t^k), and the rationals used for generic
fibre checks.

Elements are stored as plain "raw" Python values so that polynomial and
enumeration kernels can call the arithmetic without wrapper objects:

* prime field: int in [0, p)
* extension field: int whose base-p digits are the coefficients of the
  generator powers
* Z/p^k: int in [0, p^k)
* F_q[t]/(t^k): tuple of k raw residue-field values
* rationals: ``fractions.Fraction``

``RingElem`` wraps a raw value together with its parent for the public API.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import inf
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_gcdex, gf_mul, gf_neg, gf_rem, gf_strip
from dvrgeom.constants import FIELD_TABLE_LIMIT
from dvrgeom.exceptions import (
    InvalidRingException,
    NonUnitException,
    NotDVRException,
    RingMismatchException,
    UnsupportedException,
)

PRIME = "prime"
EXT = "ext"
MIXED = "mixed"
EQUI = "equi"
RATIONAL = "rational"

TOP = inf  # valuation of zero at the working precision

GENERATOR_SYMBOL = "a"
UNIFORMIZER_SYMBOL = "t"


def _to_dense(value, p, m):
    digits = []
    for _ in range(m):
        value, digit = divmod(value, p)
        digits.append(digit)
    return gf_strip(list(reversed(digits)))


def _from_dense(poly, p):
    value = 0
    for coeff in poly:
        value = value * p + int(coeff) % p
    return value


def _is_irreducible(modulus, p):
    """Trial division by every monic polynomial of degree at most m/2."""
    degree = len(modulus) - 1
    for d in range(1, degree // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = [1, *tail]
            if not gf_rem(list(modulus), divisor, p, ZZ):
                return False
    return True


@lru_cache(maxsize=None)
def conway_free_modulus(p, m):
    """
    Lexicographically first monic irreducible polynomial of degree ``m`` over
    F_p, as a descending coefficient tuple.
    """
    for tail in product(range(p), repeat=m):
        candidate = (1, *tail)
        if tail[-1] == 0:
            continue
        if _is_irreducible(candidate, p):
            return candidate
    raise InvalidRingException(details=f"No irreducible polynomial of degree {m} over F_{p}")


class _PrimeOps:
    def __init__(self, p):
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise NonUnitException(details=f"{a} is not invertible modulo {self.p}")
        return pow(a, -1, self.p)


class _GaloisTableOps:
    """Log/antilog and Zech tables for F_{p^m}."""

    def __init__(self, p, m, modulus):
        self.p = p
        self.q = p**m
        self.zero = 0
        self.one = 1
        modulus = list(modulus)
        self.neg_table = [
            _from_dense(gf_neg(_to_dense(v, p, m), p, ZZ), p) for v in range(self.q)
        ]
        order = self.q - 1
        for candidate in range(2, self.q):
            g = _to_dense(candidate, p, m)
            exp = [1]
            current = [1]
            for _ in range(order - 1):
                current = gf_rem(gf_mul(current, g, p, ZZ), modulus, p, ZZ)
                value = _from_dense(current, p)
                if value == 1:
                    break
                exp.append(value)
            if len(exp) == order:
                break
        else:
            raise InvalidRingException(details="No primitive element found")
        self.exp = exp
        self.log = [None] * self.q
        for power, value in enumerate(exp):
            self.log[value] = power
        self.zech = [None] * order
        for power in range(order):
            total = _from_dense(
                gf_add(_to_dense(exp[power], p, m), [1], p, ZZ), p
            )
            self.zech[power] = self.log[total] if total else None

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        log_a = self.log[a]
        offset = self.zech[(self.log[b] - log_a) % (self.q - 1)]
        if offset is None:
            return 0
        return self.exp[(log_a + offset) % (self.q - 1)]

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg_table[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise NonUnitException(details="0 is not invertible")
        return self.exp[-self.log[a] % (self.q - 1)]


class _GaloisPolyOps:
    """Polynomial arithmetic for F_{p^m} fields too large for tables."""

    def __init__(self, p, m, modulus):
        self.p = p
        self.m = m
        self.modulus = list(modulus)
        self.zero = 0
        self.one = 1

    def _dense(self, a):
        return _to_dense(a, self.p, self.m)

    def add(self, a, b):
        return _from_dense(gf_add(self._dense(a), self._dense(b), self.p, ZZ), self.p)

    def neg(self, a):
        return _from_dense(gf_neg(self._dense(a), self.p, ZZ), self.p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        product_ = gf_mul(self._dense(a), self._dense(b), self.p, ZZ)
        return _from_dense(gf_rem(product_, self.modulus, self.p, ZZ), self.p)

    def inv(self, a):
        if a == 0:
            raise NonUnitException(details="0 is not invertible")
        s, _, g = gf_gcdex(self._dense(a), self.modulus, self.p, ZZ)
        scale = pow(int(g[0]), -1, self.p)
        return _from_dense([c * scale % self.p for c in s], self.p)


class _MixedOps:
    def __init__(self, p, k):
        self.p = p
        self.modulus = p**k
        self.zero = 0
        self.one = 1 % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def inv(self, a):
        if a % self.p == 0:
            raise NonUnitException(details=f"{a} is divisible by {self.p}")
        return pow(a, -1, self.modulus)


class _EquiOps:
    """Truncated power series over a residue field backend."""

    def __init__(self, residue_ops, k):
        self.f = residue_ops
        self.k = k
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)

    def add(self, a, b):
        add = self.f.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sub = self.f.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        neg = self.f.neg
        return tuple(neg(x) for x in a)

    def mul(self, a, b):
        f_add, f_mul = self.f.add, self.f.mul
        result = [0] * self.k
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j in range(self.k - i):
                y = b[j]
                if y:
                    result[i + j] = f_add(result[i + j], f_mul(x, y))
        return tuple(result)

    def inv(self, a):
        if a[0] == 0:
            raise NonUnitException(details="constant term vanishes")
        f = self.f
        lead_inverse = f.inv(a[0])
        result = [lead_inverse]
        for n in range(1, self.k):
            total = 0
            for i in range(1, n + 1):
                if a[i]:
                    total = f.add(total, f.mul(a[i], result[n - i]))
            result.append(f.neg(f.mul(lead_inverse, total)))
        return tuple(result)


class _RationalOps:
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        if a == 0:
            raise NonUnitException(details="0 is not invertible")
        return 1 / a


@dataclass(frozen=True)
class CoeffRing:
    """
    A coefficient domain.

    :param kind: one of ``prime``, ``ext``, ``mixed``, ``equi``, ``rational``.
    :param p: residue characteristic (0 for the rationals).
    :param m: degree of the residue field over F_p.
    :param k: truncation precision for DVR kinds.
    :param modulus: descending coefficients of the minimal polynomial of the
        residue field generator when ``m > 1``.
    """

    kind: str
    p: int = 0
    m: int = 1
    k: int = 1
    modulus: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in {PRIME, EXT, MIXED, EQUI, RATIONAL}:
            raise InvalidRingException(details=f"Unknown ring kind: {self.kind}")
        if self.kind == RATIONAL:
            return
        if not isprime(self.p):
            raise InvalidRingException(details=f"{self.p} is not prime")
        if self.m < 1 or self.k < 1:
            raise InvalidRingException(details="Extension degree and precision must be >= 1")
        if self.kind in {PRIME, MIXED} and self.m != 1:
            raise InvalidRingException(details="Prime kinds have residue degree 1")
        if self.m > 1:
            if not self.modulus:
                object.__setattr__(self, "modulus", conway_free_modulus(self.p, self.m))
            elif len(self.modulus) != self.m + 1 or self.modulus[0] != 1:
                raise InvalidRingException(details="Modulus must be monic of degree m")
            elif not _is_irreducible(self.modulus, self.p):
                raise InvalidRingException(
                    details=f"Modulus {self.modulus} is reducible over F_{self.p}"
                )

    # Structure
    @property
    def is_field(self):
        return self.kind in {PRIME, EXT, RATIONAL}

    @property
    def is_dvr(self):
        return self.kind in {MIXED, EQUI}

    @property
    def residue_order(self):
        """Order q of the residue field (or of the field itself)."""
        return self.p**self.m

    @property
    def size(self):
        if self.kind == RATIONAL:
            return inf
        return self.residue_order**self.k if self.is_dvr else self.residue_order

    @cached_property
    def ops(self):
        return _build_ops(self)

    @property
    def zero(self):
        return self.ops.zero

    @property
    def one(self):
        return self.ops.one

    def residue_field(self):
        """The residue field F (the field itself for field kinds)."""
        if self.kind in {PRIME, EXT, RATIONAL}:
            return self
        if self.m == 1:
            return CoeffRing(PRIME, self.p)
        return CoeffRing(EXT, self.p, self.m, 1, self.modulus)

    # Arithmetic on raw values
    def add(self, a, b):
        return self.ops.add(a, b)

    def sub(self, a, b):
        return self.ops.sub(a, b)

    def neg(self, a):
        return self.ops.neg(a)

    def mul(self, a, b):
        return self.ops.mul(a, b)

    def inv(self, a):
        return self.ops.inv(a)

    def div(self, a, b):
        return self.ops.mul(a, self.ops.inv(b))

    def pow(self, a, exponent):
        result, base = self.one, a
        while exponent:
            if exponent & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            exponent >>= 1
        return result

    def is_zero(self, a):
        return a == self.zero

    def is_unit(self, a):
        if self.kind == MIXED:
            return a % self.p != 0
        if self.kind == EQUI:
            return a[0] != 0
        return a != self.zero

    def from_int(self, n):
        if self.kind == RATIONAL:
            return Fraction(n)
        if self.kind == PRIME:
            return n % self.p
        if self.kind == EXT:
            return n % self.p
        if self.kind == MIXED:
            return n % self.p**self.k
        return (n % self.p,) + (0,) * (self.k - 1)

    def generator(self):
        """Raw value of the residue field generator (``a`` in text)."""
        if self.m == 1:
            raise InvalidRingException(details="Prime fields have no generator symbol")
        if self.kind == EXT:
            return self.p
        return (self.p,) + (0,) * (self.k - 1)

    def uniformizer(self):
        """Raw value of pi."""
        if self.kind == MIXED:
            return self.p % self.p**self.k
        if self.kind == EQUI:
            return tuple(1 if i == 1 else 0 for i in range(self.k))
        raise NotDVRException(details=f"{self} has no uniformizer")

    def elements(self):
        """All raw values in canonical ascending order (finite kinds only)."""
        if self.kind == RATIONAL:
            raise UnsupportedException(details="QQ is infinite")
        if self.kind == EQUI:
            return [tuple(v) for v in product(range(self.residue_order), repeat=self.k)]
        return list(range(self.size))

    # Valuation and residues
    def valuation(self, a):
        """Largest j < k with a in (pi^j); TOP for zero."""
        if not self.is_dvr:
            raise NotDVRException(details=f"{self} is a field")
        if self.kind == MIXED:
            if a == 0:
                return TOP
            j = 0
            while a % self.p == 0:
                a //= self.p
                j += 1
            return j
        for j, coeff in enumerate(a):
            if coeff:
                return j
        return TOP

    def residue(self, a):
        if self.kind == MIXED:
            return a % self.p
        if self.kind == EQUI:
            return a[0]
        return a

    def lift(self, a):
        """Canonical lift of a residue raw value (higher digits zero)."""
        if self.kind == MIXED:
            return a
        if self.kind == EQUI:
            return (a,) + (0,) * (self.k - 1)
        return a

    def digits(self, a):
        """pi-adic digits of ``a`` as residue raw values, length k."""
        if self.kind == MIXED:
            out = []
            for _ in range(self.k):
                a, digit = divmod(a, self.p)
                out.append(digit)
            return out
        if self.kind == EQUI:
            return list(a)
        raise NotDVRException(details=f"{self} is a field")

    def shift_down(self, a, j):
        """Return the element u with a = u * pi^j, digits above k - j set to zero."""
        if self.kind == MIXED:
            return a // self.p**j
        if self.kind == EQUI:
            return tuple(a[j:]) + (0,) * j
        raise NotDVRException(details=f"{self} is a field")

    def balanced(self, a):
        """Integer representative in (-n/2, n/2] for Z/n kinds."""
        modulus = self.p if self.kind == PRIME else self.p**self.k
        return a - modulus if a > modulus // 2 else a

    # Text
    def format(self, a):
        """Render a raw value in the polynomial grammar."""
        if self.kind == RATIONAL:
            return str(a)
        if self.kind in {PRIME, MIXED}:
            return str(self.balanced(a))
        if self.kind == EXT:
            return _format_digits(
                [d for d in _to_dense(a, self.p, self.m)][::-1], GENERATOR_SYMBOL, self.p
            )
        residue = self.residue_field()
        parts = []
        for power, coeff in enumerate(a):
            if not coeff:
                continue
            text = residue.format(coeff)
            if power == 0:
                parts.append(text)
                continue
            monomial = UNIFORMIZER_SYMBOL if power == 1 else f"{UNIFORMIZER_SYMBOL}^{power}"
            if text == "1":
                parts.append(monomial)
            elif text == "-1":
                parts.append(f"-{monomial}")
            elif text.lstrip("-").isdigit():
                parts.append(f"{text}*{monomial}")
            else:
                parts.append(f"({text})*{monomial}")
        return _join_signed(parts) if parts else "0"

    def element(self, value):
        """Wrap a raw value (or an int) as a RingElem."""
        if isinstance(value, int):
            value = self.from_int(value)
        return RingElem(self, value)

    def __str__(self):
        if self.kind == RATIONAL:
            return "QQ"
        if self.kind == MIXED:
            return f"Zmod({self.p}^{self.k})"
        field_text = (
            f"GF({self.p})"
            if self.m == 1
            else f"GF({self.p**self.m})=GF({self.p},{self.m})"
        )
        if self.kind == EQUI:
            base = f"GF({self.p**self.m})" if self.m > 1 else f"GF({self.p})"
            return f"{base}[[t]]/t^{self.k}"
        return field_text


@lru_cache(maxsize=None)
def _build_ops(ring):
    if ring.kind == PRIME:
        return _PrimeOps(ring.p)
    if ring.kind == EXT:
        if ring.residue_order <= FIELD_TABLE_LIMIT:
            return _GaloisTableOps(ring.p, ring.m, ring.modulus)
        return _GaloisPolyOps(ring.p, ring.m, ring.modulus)
    if ring.kind == MIXED:
        return _MixedOps(ring.p, ring.k)
    if ring.kind == EQUI:
        return _EquiOps(_build_ops(ring.residue_field()), ring.k)
    return _RationalOps()


def _format_digits(digits, symbol, p):
    parts = []
    for power in range(len(digits) - 1, -1, -1):
        digit = digits[power]
        if not digit:
            continue
        digit = digit - p if digit > p // 2 else digit
        if power == 0:
            parts.append(str(digit))
            continue
        monomial = symbol if power == 1 else f"{symbol}^{power}"
        if digit == 1:
            parts.append(monomial)
        elif digit == -1:
            parts.append(f"-{monomial}")
        else:
            parts.append(f"{digit}*{monomial}")
    return _join_signed(parts) if parts else "0"


def _join_signed(parts):
    text = parts[0]
    for part in parts[1:]:
        text += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
    return text


def PrimeField(p):
    return CoeffRing(PRIME, p)


def ExtField(p, m):
    if m == 1:
        return CoeffRing(PRIME, p)
    return CoeffRing(EXT, p, m)


def MixedDVR(p, k):
    return CoeffRing(MIXED, p, 1, k)


def EquiDVR(p, m, k):
    return CoeffRing(EQUI, p, m, k)


def Rationals():
    return CoeffRing(RATIONAL)


@dataclass(frozen=True)
class RingElem:
    """A raw value bound to its parent ring."""

    parent: CoeffRing
    value: object

    def _check(self, other):
        if not isinstance(other, RingElem):
            return RingElem(self.parent, self.parent.from_int(other))
        if other.parent != self.parent:
            raise RingMismatchException(details=f"{self.parent} vs {other.parent}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return RingElem(self.parent, self.parent.add(self.value, other.value))

    def __sub__(self, other):
        other = self._check(other)
        return RingElem(self.parent, self.parent.sub(self.value, other.value))

    def __mul__(self, other):
        other = self._check(other)
        return RingElem(self.parent, self.parent.mul(self.value, other.value))

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.parent, self.parent.neg(self.value))

    def inverse(self):
        return RingElem(self.parent, self.parent.inv(self.value))

    def valuation(self):
        return self.parent.valuation(self.value)

    def residue(self):
        return RingElem(self.parent.residue_field(), self.parent.residue(self.value))

    def is_zero(self):
        return self.parent.is_zero(self.value)

    def __str__(self):
        return self.parent.format(self.value)


def ring_arith(a, b, op):
    """
    Apply ``op`` (add, sub, mul, inv) to RingElems. ``inv`` ignores ``b``.

    :raises RingMismatchException: operands have different parents.
    :raises NonUnitException: inverse of a non-unit.
    """
    if op == "inv":
        return a.inverse()
    if b.parent != a.parent:
        raise RingMismatchException(details=f"{a.parent} vs {b.parent}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"Unknown operation: {op}")


def valuation(a):
    return a.valuation()


def residue(a):
    return a.residue()


@dataclass(frozen=True)
class RingEmbedding:
    """
    Ring map between coefficient rings.

    ``generator_image`` is the raw image of the source residue generator in
    the target residue field; ``ramified`` sends t to s^2.
    """

    source: CoeffRing
    target: CoeffRing
    generator_image: object = None
    ramified: bool = False

    def residue_map(self, value):
        """Map a raw value of the source residue field to the target residue field."""
        source_field = self.source.residue_field()
        target_field = self.target.residue_field()
        if source_field.m == 1 or self.generator_image is None:
            return value
        total = target_field.zero
        power = target_field.one
        digits = _to_dense(value, source_field.p, source_field.m)[::-1]
        for digit in digits:
            if digit:
                total = target_field.add(
                    total, target_field.mul(target_field.from_int(digit), power)
                )
            power = target_field.mul(power, self.generator_image)
        return total

    def __call__(self, value):
        source, target = self.source, self.target
        if source.kind == RATIONAL:
            return value
        if target.kind in {PRIME, EXT}:
            return self.residue_map(source.residue(value) if source.is_dvr else value)
        if target.kind == MIXED:
            return value
        if source.kind in {PRIME, EXT}:
            return target.lift(self.residue_map(value))
        coeffs = source.digits(value) if source.kind == MIXED else list(value)
        mapped = [self.residue_map(c) for c in coeffs]
        result = [0] * target.k
        step = 2 if self.ramified else 1
        for index, coeff in enumerate(mapped):
            if index * step < target.k:
                result[index * step] = coeff
        return tuple(result)


def _find_root(modulus, field_ring):
    """Smallest raw root in ``field_ring`` of a descending F_p coefficient tuple."""
    for candidate in field_ring.elements():
        total = field_ring.zero
        for coeff in modulus:
            total = field_ring.add(field_ring.mul(total, candidate), field_ring.from_int(coeff))
        if total == field_ring.zero:
            return candidate
    raise InvalidRingException(details="Minimal polynomial has no root in the extension")


def extend_unramified(ring, m):
    """
    Enlarge the residue field by degree ``m`` keeping pi.

    :return: ``(new_ring, embedding)``.
    :raises UnsupportedException: Z/p^k with k > 1 and m > 1, or QQ.
    """
    if m < 1:
        raise InvalidRingException(details="Extension degree must be >= 1")
    if m == 1:
        return ring, RingEmbedding(ring, ring)
    if ring.kind == RATIONAL:
        raise UnsupportedException(details="QQ has no finite residue field")
    if ring.kind == MIXED and ring.k > 1:
        raise UnsupportedException(
            details=f"Unramified extensions of {ring} are not modelled for k > 1"
        )
    degree = ring.m * m
    if ring.kind in {PRIME, EXT}:
        target = ExtField(ring.p, degree)
    else:
        target = EquiDVR(ring.p, degree, ring.k)
    image = None
    if ring.m > 1:
        image = _find_root(ring.modulus, target.residue_field())
    return target, RingEmbedding(ring, target, image)


def extend_ramified_sqrt(ring):
    """
    Adjoin a square root s of t to F_q[t]/(t^k), giving F_q[s]/(s^2k).

    :return: ``(new_ring, embedding)`` with t mapped to s^2.
    :raises UnsupportedException: for Z/p^k.
    :raises NotDVRException: for fields.
    """
    if ring.kind == MIXED:
        raise UnsupportedException(
            details="Ramified extensions are only modelled in equal characteristic"
        )
    if ring.kind != EQUI:
        raise NotDVRException(details=f"{ring} is a field")
    target = CoeffRing(EQUI, ring.p, ring.m, 2 * ring.k, ring.modulus)
    return target, RingEmbedding(ring, target, None, ramified=True)


_FIELD_PATTERN = re.compile(r"GF\((\d+)(?:,(\d+))?\)(?:=GF\((\d+),(\d+)\))?")


def _parse_field(text):
    match = _FIELD_PATTERN.fullmatch(text)
    if not match:
        raise InvalidRingException(details=f"Unrecognized field descriptor: {text}")
    order, degree, alt_p, alt_m = match.groups()
    order = int(order)
    if degree is not None:
        p, m = order, int(degree)
    else:
        factors = factorint(order)
        if len(factors) != 1:
            raise InvalidRingException(details=f"{order} is not a prime power")
        (p, m), = factors.items()
    if alt_p is not None and (int(alt_p), int(alt_m)) != (p, m):
        raise InvalidRingException(details=f"Inconsistent descriptor: {text}")
    return p, m


def parse_ring(text):
    """
    Parse a ring descriptor: ``QQ``, ``GF(5)``, ``GF(9)=GF(3,2)``,
    ``GF(3,2)``, ``Zmod(3^3)``, ``Zmod(27)``, ``GF(3)[[t]]/t^3``.
    """
    text = text.replace(" ", "")
    if text == "QQ":
        return Rationals()
    match = re.fullmatch(r"Zmod\((\d+)(?:\^(\d+))?\)", text)
    if match:
        base, exponent = int(match.group(1)), match.group(2)
        factors = factorint(base)
        if len(factors) != 1:
            raise InvalidRingException(details=f"{base} is not a prime power")
        (p, e), = factors.items()
        k = e * (int(exponent) if exponent else 1)
        return MixedDVR(p, k)
    match = re.fullmatch(r"(.+)\[\[t\]\]/t(?:\^(\d+))?", text)
    if match:
        p, m = _parse_field(match.group(1))
        k = int(match.group(2)) if match.group(2) else 1
        return EquiDVR(p, m, k)
    p, m = _parse_field(text)
    return ExtField(p, m)
