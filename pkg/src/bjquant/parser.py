"""Parser for the observable expression language.

Grammar (EBNF)::

    expr     = term , { ( "+" | "-" ) , term } ;
    term     = factor , { ( "*" | "/" ) , factor | power } ;   (* juxtaposition multiplies *)
    factor   = ( "+" | "-" ) , factor | power ;
    power    = atom , [ "^" , exponent ] ;
    exponent = INTEGER | "(" , expr , ")" | "-" , ... ;   (* must be a non-negative integer *)
    atom     = NUMBER | "i" | "h" | VARIABLE | "(" , expr , ")" ;
    NUMBER   = digit , { digit } , [ "." , digit , { digit } ] ;
    VARIABLE = ( "q" | "p" ) , [ INTEGER ] ;

``h`` is the formal reduced Planck constant and ``i`` the imaginary unit.
Juxtaposition binds like ``*``, so the pretty form ``2i h q p^2`` parses too.  The
unindexed names ``q`` and ``p`` are accepted only when n = 1.  The divisor of
``/`` must be a nonzero constant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .phase_space import PhasePolynomial
from .scalar import HBAR, I, Scalar

__all__ = ["ParseError", "parse_observable", "parse_scalar"]


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")

    def caret(self) -> str:
        """Two-line diagnostic pointing at the offending column."""
        return f"{self.text}\n{' ' * self.position}^"


@dataclass(frozen=True)
class _Token:
    kind: str  # num, name, op, end
    value: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_]\w*)|(.))")


def _tokenize(text: str) -> list[_Token]:
    out = []
    pos = 0
    while text[pos:].strip():
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            out.append(_Token("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(_Token("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            out.append(_Token("op", ch, m.start(3)))
        pos = m.end()
    out.append(_Token("end", "", len(text)))
    return out


_VAR_RE = re.compile(r"([qp])(\d*)")


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Token | None = None) -> ParseError:
        return ParseError(msg, (tok or self.tok).pos, self.text)

    def accept(self, value: str) -> bool:
        if self.tok.kind == "op" and self.tok.value == value:
            self.i += 1
            return True
        return False

    def parse(self) -> PhasePolynomial:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        out = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.value!r}")
        return out

    def expr(self) -> PhasePolynomial:
        left = self.term()
        while True:
            if self.accept("+"):
                left = left + self.term()
            elif self.accept("-"):
                left = left - self.term()
            else:
                return left

    def term(self) -> PhasePolynomial:
        left = self.factor()
        while True:
            if self.accept("*"):
                left = left * self.factor()
            elif self.tok.kind == "op" and self.tok.value == "/":
                tok = self.tok
                self.i += 1
                right = self.factor()
                if not right.is_constant() or right.is_zero():
                    raise self.error("divisor must be a nonzero constant", tok)
                left = left / right
            elif self.tok.kind in ("num", "name") or (self.tok.kind == "op" and self.tok.value == "("):
                left = left * self.power()
            else:
                return left

    def factor(self) -> PhasePolynomial:
        if self.accept("-"):
            return -self.factor()
        if self.accept("+"):
            return self.factor()
        return self.power()

    def power(self) -> PhasePolynomial:
        base = self.atom()
        if self.accept("^"):
            return base ** self.exponent()
        return base

    def exponent(self) -> int:
        tok = self.tok
        if tok.kind == "op" and tok.value == "-":
            raise self.error("negative exponent", tok)
        if tok.kind == "num":
            self.i += 1
            value = Fraction(tok.value)
        elif self.accept("("):
            inner = self.expr()
            if not self.accept(")"):
                raise self.error("expected ')'")
            if not inner.is_constant():
                raise self.error("exponent must be a constant", tok)
            c = inner.terms.get(((0, 0),) * self.n, Scalar())
            if not c.is_constant() or not c.is_real():
                raise self.error("exponent is not a non-negative integer", tok)
            value = c.constant_term()[0]
        else:
            raise self.error("expected exponent")
        if value < 0:
            raise self.error("negative exponent", tok)
        if value.denominator != 1:
            raise self.error("exponent is not a non-negative integer", tok)
        return int(value)

    def atom(self) -> PhasePolynomial:
        tok = self.tok
        n = self.n
        if tok.kind == "num":
            self.i += 1
            return PhasePolynomial.constant(Fraction(tok.value), n)
        if tok.kind == "name":
            self.i += 1
            if tok.value == "i":
                return PhasePolynomial.constant(I, n)
            if tok.value == "h":
                return PhasePolynomial.constant(HBAR, n)
            m = _VAR_RE.fullmatch(tok.value)
            if m:
                if m.group(2) == "":
                    if n != 1:
                        raise self.error(f"ambiguous variable {tok.value!r} for n={n}; use an index", tok)
                    j = 1
                else:
                    j = int(m.group(2))
                if 1 <= j <= n:
                    return PhasePolynomial.var(m.group(1), j, n)
            raise self.error(f"unknown identifier {tok.value!r}", tok)
        if self.accept("("):
            inner = self.expr()
            if not self.accept(")"):
                raise self.error("expected ')'")
            return inner
        if tok.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok.value!r}")


def parse_observable(text: str, n: int = 1) -> PhasePolynomial:
    return _Parser(text, n).parse()


def parse_scalar(text: str) -> Scalar:
    """Parse a constant expression (rationals, ``i``, ``h``) to an exact scalar."""
    poly = parse_observable(text, 1)
    if not poly.is_constant():
        raise ParseError("expected a constant", 0, text)
    return poly.terms.get(((0, 0),), Scalar())
