"""Parser for operator expressions.

Grammar (UTF-8 text, whitespace insignificant):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := NUMBER | VAR | '(' expr ')'
    NUMBER := INT ('/' INT)?          rational literal, e.g. 3/2
    VAR    := 'x' INT | 'd' INT       1-based variable index

'*' is mandatory between factors and '^' takes a nonnegative integer.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .weyl import WeylElement


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def error(self, message):
        raise ParseError(message, self.pos)

    def take_int(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected '{ch}'")
        self.pos += 1


class _Parser:
    def __init__(self, text: str, n: int):
        self.tk = _Tokenizer(text)
        self.n = n

    def parse(self) -> WeylElement:
        value = self._expr()
        if self.tk.peek() is not None:
            self.tk.error(f"unexpected character {self.tk.peek()!r}")
        return value

    def _expr(self) -> WeylElement:
        negate = False
        if self.tk.peek() == "-":
            self.tk.take("-")
            negate = True
        value = self._term()
        if negate:
            value = -value
        while True:
            ch = self.tk.peek()
            if ch == "+":
                self.tk.take("+")
                value = value + self._term()
            elif ch == "-":
                self.tk.take("-")
                value = value - self._term()
            else:
                return value

    def _term(self) -> WeylElement:
        value = self._factor()
        while self.tk.peek() == "*":
            self.tk.take("*")
            value = value * self._factor()
        return value

    def _factor(self) -> WeylElement:
        value = self._atom()
        if self.tk.peek() == "^":
            self.tk.take("^")
            exponent = self.tk.take_int()
            value = value**exponent
        return value

    def _atom(self) -> WeylElement:
        ch = self.tk.peek()
        if ch is None:
            self.tk.error("unexpected end of input")
        if ch == "(":
            self.tk.take("(")
            value = self._expr()
            self.tk.take(")")
            return value
        if ch in ("x", "d"):
            pos = self.tk.pos
            self.tk.pos += 1
            index = self.tk.take_int()
            if not 1 <= index <= self.n:
                raise ParseError(
                    f"variable index {index} out of range 1..{self.n}", pos
                )
            if ch == "x":
                return WeylElement.x(self.n, index)
            return WeylElement.d(self.n, index)
        if ch.isdigit():
            p = self.tk.take_int()
            if self.tk.peek() == "/":
                self.tk.take("/")
                q = self.tk.take_int()
                if q == 0:
                    self.tk.error("zero denominator")
                return WeylElement.constant(self.n, Fraction(p, q))
            return WeylElement.constant(self.n, p)
        self.tk.error(f"unexpected character {ch!r}")


def parse(text: str, n: int) -> WeylElement:
    """Parse an operator expression over D_n into canonical form."""
    return _Parser(text, n).parse()
