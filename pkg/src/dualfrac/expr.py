"""Expression language for fraction operations.

Grammar (whitespace is free between tokens, never inside a literal)::

    expr    := term  (("+" | "@+" | "@#") term)*
    term    := unary (("*" | "@*") unary)*
    unary   := NUMBER "~" unary | primary
    primary := NUMBER | "(" expr ")"
    NUMBER  := INT ["/" INT]          INT := ["-"] digits

A NUMBER is a literal representation (``1/-2`` and ``-1/2`` are different
literals) except before ``~``, where it is the rational factor of a value
scaling.  Operators associate to the left.  ``-`` is only ever a sign.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .core import FracRep, OpKind, Value, ZeroDenominator, apply, format_rational, scale_value, value_of

__all__ = [
    "ParseError",
    "Literal",
    "BinOp",
    "ValueScale",
    "Paren",
    "Expr",
    "parse_expr",
    "eval_expr",
    "pretty",
]

Span = tuple[int, int]


class ParseError(ValueError):
    """Malformed expression; ``offset`` is a byte offset into the UTF-8 text."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Literal:
    rep: FracRep
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: OpKind
    left: "Expr"
    right: "Expr"
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class ValueScale:
    factor: Fraction
    operand: "Expr"
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Paren:
    inner: "Expr"
    span: Span = field(default=(0, 0), compare=False, repr=False)


Expr = Union[Literal, BinOp, ValueScale, Paren]

_ADDITIVE = {"+": OpKind.ADD, "@+": OpKind.DUAL_ADD1, "@#": OpKind.DUAL_ADD2,
             "⊕": OpKind.DUAL_ADD1, "⊞": OpKind.DUAL_ADD2}
_MULTIPLICATIVE = {"*": OpKind.MUL, "@*": OpKind.DUAL_MUL,
                   "·": OpKind.MUL, "×": OpKind.MUL, "⊙": OpKind.DUAL_MUL}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>-?\d+(?:/-?\d+)?)
  | (?P<op>@[*+\#]|[+*~()]|[·×⊙⊕⊞])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str   # "num", "op" or "end"
    text: str
    start: int  # byte offsets
    end: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    byte = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", byte)
        width = len(m.group().encode())
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, m.group(), byte, byte + width))
        pos = m.end()
        byte += width
    toks.append(_Tok("end", "", byte, byte))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        if self.tok.text != text:
            raise ParseError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}", self.tok.start)
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.start)
        return e

    def _chain(self, table, operand):
        left = operand()
        while self.tok.kind == "op" and self.tok.text in table:
            op = table[self.advance().text]
            right = operand()
            left = BinOp(op, left, right, (left.span[0], right.span[1]))
        return left

    def expr(self) -> Expr:
        return self._chain(_ADDITIVE, self.term)

    def term(self) -> Expr:
        return self._chain(_MULTIPLICATIVE, self.unary)

    def unary(self) -> Expr:
        tok = self.tok
        if tok.kind == "num" and self.toks[self.i + 1].text == "~":
            self.i += 2
            factor = _number(tok)
            operand = self.unary()
            return ValueScale(factor, operand, (tok.start, operand.span[1]))
        return self.primary()

    def primary(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            num, _, den = tok.text.partition("/")
            den = int(den) if den else 1
            if den == 0:
                raise ZeroDenominator(f"literal {tok.text} has denominator 0", (tok.start, tok.end))
            return Literal(FracRep(int(num), den), (tok.start, tok.end))
        if tok.text == "(":
            self.advance()
            inner = self.expr()
            close = self.expect(")")
            return Paren(inner, (tok.start, close.end))
        raise ParseError(f"expected a fraction or '(', found {tok.text or 'end of input'!r}", tok.start)


def _number(tok: _Tok) -> Fraction:
    num, _, den = tok.text.partition("/")
    den = int(den) if den else 1
    if den == 0:
        raise ZeroDenominator(f"scale factor {tok.text} has denominator 0", (tok.start, tok.end))
    return Fraction(int(num), den)


def parse_expr(text: str) -> Expr:
    """Parse *text* into an expression tree; nothing is evaluated."""
    return _Parser(text).parse()


def eval_expr(e: Expr) -> tuple[FracRep, Value]:
    """Evaluate bottom-up, keeping intermediate results unreduced.

    Returns the final representation and its value.  A zero denominator
    raises :class:`ZeroDenominator` carrying the span of the subexpression
    that produced it.
    """
    result = _eval(e)
    return result, value_of(result)


def _eval(e: Expr) -> FracRep:
    if isinstance(e, Literal):
        return e.rep
    if isinstance(e, Paren):
        return _eval(e.inner)
    if isinstance(e, ValueScale):
        return scale_value(e.factor, _eval(e.operand))
    if isinstance(e, BinOp):
        left, right = _eval(e.left), _eval(e.right)
        try:
            return apply(e.op, left, right)
        except ZeroDenominator as exc:
            raise ZeroDenominator(str(exc), e.span) from None
    raise TypeError(f"not an expression node: {e!r}")


_PREC = {OpKind.ADD: 1, OpKind.DUAL_ADD1: 1, OpKind.DUAL_ADD2: 1, OpKind.MUL: 2, OpKind.DUAL_MUL: 2}


def _atom(e: Expr, min_prec: int) -> str:
    if isinstance(e, BinOp) and _PREC[e.op] < min_prec:
        return f"({pretty(e)})"
    return pretty(e)


def pretty(e: Expr) -> str:
    """Render *e* in the input syntax.

    Parenthesis nodes print as written; for trees not produced by the parser,
    brackets are added wherever the grammar would otherwise regroup.
    """
    if isinstance(e, Literal):
        if not (isinstance(e.rep.num, int) and isinstance(e.rep.den, int)):
            raise ValueError(f"literal {e.rep} has non-integer components")
        return f"{e.rep.num}/{e.rep.den}"
    if isinstance(e, Paren):
        return f"({pretty(e.inner)})"
    if isinstance(e, ValueScale):
        factor = format_rational(e.factor, integer_bare=True)
        return f"{factor} ~ {_atom(e.operand, 3)}"
    prec = _PREC[e.op]
    return f"{_atom(e.left, prec)} {e.op.token} {_atom(e.right, prec + 1)}"
