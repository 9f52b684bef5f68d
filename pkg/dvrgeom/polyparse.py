"""
Recursive-descent parser for the polynomial grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | NAME | "(" expr ")"

Names are the declared variables; ``pi`` is the uniformizer of a DVR, ``t``
the uniformizer of F_q[[t]]/t^k and ``a`` the residue field generator
whenever those symbols are not declared as variables.
"""

import re
from dvrgeom.exceptions import PolynomialParseException
from dvrgeom.poly import MultiPoly, default_names
from dvrgeom.rings import EQUI, GENERATOR_SYMBOL, PRIME, UNIFORMIZER_SYMBOL

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text, line):
    text = text.rstrip()
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        number, name, other = match.groups()
        column = match.start(match.lastindex) + 1 if match.lastindex else position + 1
        if number is not None:
            tokens.append(("int", int(number), column))
        elif name is not None:
            tokens.append(("name", name, column))
        elif other is not None:
            if other not in "+-*^()":
                raise PolynomialParseException(
                    details=f"Unexpected character {other!r}", line=line, column=column
                )
            tokens.append(("op", other, column))
        position = match.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text, ring, names, line):
        self.ring = ring
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.line = line
        self.tokens = _tokenize(text, line)
        self.index = 0

    def error(self, message, token=None):
        token = token or self.tokens[self.index]
        raise PolynomialParseException(details=message, line=self.line, column=token[2])

    def peek(self):
        return self.tokens[self.index]

    def take(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def constant(self, value):
        return MultiPoly.constant(self.ring, self.nvars, value, self.names)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("Empty polynomial")
        result = self.expr()
        if self.peek()[0] != "end":
            self.error(f"Unexpected {self.peek()[1]!r}")
        return result

    def expr(self):
        result = self.term()
        while self.peek()[:2] in {("op", "+"), ("op", "-")}:
            sign = self.take()[1]
            right = self.term()
            result = result + right if sign == "+" else result - right
        return result

    def term(self):
        result = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            result = result * self.unary()
        return result

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            token = self.take()
            if token[0] != "int":
                self.error("Exponent must be a non-negative integer", token)
            return base ** token[1]
        return base

    def atom(self):
        token = self.take()
        kind, value, _ = token
        if kind == "int":
            return self.constant(self.ring.from_int(value))
        if kind == "name":
            return self.symbol(value, token)
        if (kind, value) == ("op", "("):
            inner = self.expr()
            closing = self.take()
            if closing[:2] != ("op", ")"):
                self.error("Expected ')'", closing)
            return inner
        if kind == "end":
            self.error("Unexpected end of input", token)
        self.error(f"Unexpected {value!r}", token)
        return None

    def symbol(self, name, token):
        if name in self.names:
            return MultiPoly.variable(self.ring, self.nvars, self.names.index(name), self.names)
        ring = self.ring
        if name == "pi" or (name == UNIFORMIZER_SYMBOL and ring.kind == EQUI):
            if not ring.is_dvr:
                self.error(f"'{name}' needs a DVR coefficient ring", token)
            return self.constant(ring.uniformizer())
        if name == GENERATOR_SYMBOL and ring.m > 1:
            return self.constant(ring.generator())
        self.error(f"Unknown symbol {name!r}", token)
        return None


def parse_polynomial(text, ring, names=None, nvars=None, line=None):
    """
    Parse ``text`` into a MultiPoly over ``ring``.

    :param names: variable names; defaults to x0..x{nvars-1}.
    :raises PolynomialParseException: with line and column of the failure.
    """
    if names is None:
        names = default_names(nvars or 0)
    return _Parser(text, ring, names, line).parse()


def parse_constant(text, ring, line=None):
    """Parse a variable-free expression into a raw value of ``ring``."""
    return parse_polynomial(text, ring, (), line=line).constant_term()


def parse_point(text, field, line=None):
    """
    Parse ``(c0:c1:...)`` (projective) or ``(c0,c1,...)`` (affine).

    :return: ``(coordinates, projective)`` with raw coordinates.
    """
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise PolynomialParseException(
            details=f"Point must be parenthesized: {text!r}", line=line
        )
    body = body[1:-1]
    projective = ":" in body
    separator = ":" if projective else ","
    parts = [part for part in body.split(separator)]
    if any(not part.strip() for part in parts):
        raise PolynomialParseException(details=f"Empty coordinate in {text!r}", line=line)
    coords = tuple(parse_constant(part, field, line) for part in parts)
    if projective and all(c == field.zero for c in coords):
        raise PolynomialParseException(
            details="Projective point has all coordinates zero", line=line
        )
    return coords, projective


def format_point(coords, field, projective=True):
    separator = ":" if projective else ","
    render = str if field.kind == PRIME else field.format
    return "(" + separator.join(render(c) for c in coords) + ")"
