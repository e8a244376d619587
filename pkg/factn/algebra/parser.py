"""
Polynomial expression parser
Recursive descent over the grammar

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := coeff | var ('^' uint)? | '(' expr ')' ('^' uint)? | '-' factor
    coeff  := int ('/' uint)?
    var    := [A-Za-z][A-Za-z0-9_]*

Whitespace is ignored. Error offsets are byte offsets into the UTF-8 text.
"""
from fractions import Fraction

from factn.algebra.polynomial import Polynomial, Ring
from factn.exceptions import (
    DivisionByZeroError,
    PolynomialSyntaxError,
    UnknownVariableError,
)


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.pos = 0

    # ============================================
    # Cursor helpers
    # ============================================

    def offset(self, pos=None) -> int:
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def fail(self, message: str, pos=None):
        raise PolynomialSyntaxError(message, self.offset(pos))

    def skip_space(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_space()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def read_uint(self) -> int:
        self.skip_space()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            if self.pos >= len(self.text):
                self.fail("unexpected end of input, expected an integer")
            self.fail(f"expected an integer, found '{self.text[self.pos]}'")
        return int(self.text[start:self.pos])

    # ============================================
    # Grammar
    # ============================================

    def parse(self) -> Polynomial:
        result = self.expr()
        if self.peek():
            self.fail(f"unexpected '{self.text[self.pos]}'")
        return result

    def expr(self) -> Polynomial:
        result = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek() == "*":
            self.pos += 1
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        ch = self.peek()
        if not ch:
            self.fail("unexpected end of input")
        if ch == "-":
            self.pos += 1
            return -self.factor()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                if self.pos >= len(self.text):
                    self.fail("unexpected end of input, expected ')'")
                self.fail("expected ')'")
            self.pos += 1
            return self.power(inner)
        if ch in "0123456789":
            return self.coeff()
        if ch.isascii() and ch.isalpha():
            return self.power(self.variable())
        self.fail(f"unexpected '{ch}'")

    def power(self, base: Polynomial) -> Polynomial:
        if self.peek() == "^":
            self.pos += 1
            return base ** self.read_uint()
        return base

    def coeff(self) -> Polynomial:
        numerator = self.read_uint()
        if self.peek() == "/":
            self.pos += 1
            self.skip_space()
            denominator_pos = self.pos
            denominator = self.read_uint()
            field = self.ring.field
            if denominator == 0 or (field.is_prime_field and denominator % field.p == 0):
                raise DivisionByZeroError(
                    f"denominator {denominator} is zero in {field}",
                    self.offset(denominator_pos),
                )
            return self.ring.const(Fraction(numerator, denominator))
        return self.ring.const(numerator)

    def variable(self) -> Polynomial:
        start = self.pos
        self.pos += 1
        while self.pos < len(self.text) and (
            self.text[self.pos].isascii()
            and (self.text[self.pos].isalnum() or self.text[self.pos] == "_")
        ):
            self.pos += 1
        name = self.text[start:self.pos]
        if name not in self.ring.variables:
            raise UnknownVariableError(name, self.offset(start))
        return self.ring.var(name)


def parse_poly(text: str, ring: Ring) -> Polynomial:
    """
    Parse polynomial text over ring

    Raises:
        PolynomialSyntaxError: malformed text (carries the byte offset)
        UnknownVariableError: name not declared by ring
        DivisionByZeroError: denominator 0, or divisible by p over Fp
    """
    return _Parser(text, ring).parse()
