"""Fraction representations and the five binary fraction operations.

A :class:`FracRep` is an *unreduced* pair ``num/den``.  Three of the
operations (dual multiplication and the two dual additions) read the
numerator and denominator exactly as written, so representations are never
normalised behind the caller's back; :func:`value_of` is the explicit step
that collapses a representation to its canonical rational value.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "FractionError",
    "ZeroDenominator",
    "ZeroScale",
    "DomainError",
    "FracRep",
    "OpKind",
    "Value",
    "make_rep",
    "rep",
    "frac_eq",
    "value_of",
    "apply",
    "try_apply",
    "scale_value",
    "rescale",
    "to_rational",
    "format_rational",
    "format_rep",
]

Number = Union[int, Fraction]

# Canonical reduced rational: numerator/denominator coprime, denominator > 0.
Value = Fraction


class FractionError(ArithmeticError):
    """Base class for errors raised by this package's arithmetic."""


class ZeroDenominator(FractionError, ZeroDivisionError):
    """A representation (given or computed) has denominator zero.

    ``span`` is set by the expression evaluator to the byte range of the
    offending subexpression.
    """

    def __init__(self, message: str = "zero denominator", span: tuple[int, int] | None = None):
        super().__init__(message)
        self.span = span


class ZeroScale(FractionError, ValueError):
    """Rescaling a representation by zero."""


class DomainError(FractionError, ValueError):
    """An argument lies outside the domain of a partial function."""


def to_rational(value) -> Number:
    """Coerce *value* to an exact ``int`` or ``Fraction``.

    Integral fractions come back as ``int``; floats are rejected since every
    computation here must be exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not fraction components")
    if isinstance(value, int):
        return value
    if isinstance(value, Rational):
        f = Fraction(value.numerator, value.denominator)
        return f.numerator if f.denominator == 1 else f
    if isinstance(value, str):
        f = Fraction(value)
        return f.numerator if f.denominator == 1 else f
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class FracRep:
    """A fraction exactly as written: ``num/den`` with ``den != 0``.

    Equality (``==``) is *representation* identity, so ``FracRep(1, 2)`` and
    ``FracRep(2, 4)`` differ; use :func:`frac_eq` for equality of values.
    """

    num: Number
    den: Number

    def __post_init__(self):
        object.__setattr__(self, "num", to_rational(self.num))
        object.__setattr__(self, "den", to_rational(self.den))
        if self.den == 0:
            raise ZeroDenominator(f"zero denominator in {format_rep(self)}")

    def __str__(self):
        return format_rep(self)

    @property
    def value(self) -> Value:
        return value_of(self)


def make_rep(num, den) -> FracRep:
    """Build the representation ``num/den`` without reducing it."""
    return FracRep(num, den)


def rep(text: str) -> FracRep:
    """Parse ``"a/b"`` (or a bare integer ``"a"``) into a representation.

    >>> rep("1/-2")
    FracRep(num=1, den=-2)
    """
    num, sep, den = text.strip().partition("/")
    return FracRep(to_rational(num), to_rational(den) if sep else 1)


def frac_eq(x: FracRep, y: FracRep) -> bool:
    """Equality of fractions: ``a*beta - b*alpha == 0``."""
    return x.num * y.den - x.den * y.num == 0


def value_of(x: FracRep) -> Value:
    return Fraction(x.num) / x.den


class OpKind(enum.Enum):
    """The five binary operations, with their short and operator names."""

    ADD = ("add", "+")
    MUL = ("mul", "*")
    DUAL_MUL = ("dmul", "@*")
    DUAL_ADD1 = ("dadd1", "@+")
    DUAL_ADD2 = ("dadd2", "@#")

    def __init__(self, short: str, token: str):
        self.short = short
        self.token = token

    @property
    def is_dual(self) -> bool:
        return self in (OpKind.DUAL_MUL, OpKind.DUAL_ADD1, OpKind.DUAL_ADD2)

    @property
    def index(self) -> int:
        return _OP_ORDER.index(self)

    @classmethod
    def parse(cls, text: str) -> "OpKind":
        """Look an operation up by short name, enum name, or operator token."""
        key = text.strip()
        op = _OP_ALIASES.get(key) or _OP_ALIASES.get(key.lower())
        if op is None:
            raise ValueError(f"unknown operation {text!r}")
        return op

    def __call__(self, x: FracRep, y: FracRep) -> FracRep:
        return apply(self, x, y)


_OP_ORDER = list(OpKind)

_OP_ALIASES: dict[str, OpKind] = {}
for _op in OpKind:
    _OP_ALIASES[_op.short] = _op
    _OP_ALIASES[_op.token] = _op
    _OP_ALIASES[_op.name.lower()] = _op
_OP_ALIASES.update({
    "·": OpKind.MUL,
    "×": OpKind.MUL,
    "⊙": OpKind.DUAL_MUL,
    "⊕": OpKind.DUAL_ADD1,
    "⊞": OpKind.DUAL_ADD2,
    "dualmul": OpKind.DUAL_MUL,
    "dualadd1": OpKind.DUAL_ADD1,
    "dualadd2": OpKind.DUAL_ADD2,
})


def _components(op: OpKind, a, b, alpha, beta) -> tuple:
    if op is OpKind.ADD:
        return a * beta + alpha * b, b * beta
    if op is OpKind.MUL:
        return a * alpha, b * beta
    if op is OpKind.DUAL_MUL:
        return a + alpha, b + beta
    if op is OpKind.DUAL_ADD1:
        return a + beta * alpha + b, b + beta
    if op is OpKind.DUAL_ADD2:
        return (a + beta) * (alpha + b), b + beta
    raise TypeError(f"not an OpKind: {op!r}")


def apply(op: OpKind, x: FracRep, y: FracRep) -> FracRep:
    """Apply *op* to the representations *x* and *y*; nothing is reduced.

    Raises :class:`ZeroDenominator` when the result denominator vanishes,
    which only the dual operations can produce (``b + beta == 0``).
    """
    num, den = _components(op, x.num, x.den, y.num, y.den)
    if den == 0:
        raise ZeroDenominator(f"{format_rep(x)} {op.token} {format_rep(y)} has denominator 0")
    return FracRep(num, den)


def try_apply(op: OpKind, x: FracRep, y: FracRep) -> Value | None:
    """Value of ``op(x, y)``, or ``None`` where the operation is undefined."""
    num, den = _components(op, x.num, x.den, y.num, y.den)
    if den == 0:
        return None
    return Fraction(num) / den


def scale_value(t, x: FracRep) -> FracRep:
    """Multiply the value by *t*; only the numerator changes."""
    return FracRep(to_rational(t) * x.num, x.den)


def rescale(t, x: FracRep) -> FracRep:
    """Change representation: ``(t*num)/(t*den)``, same value."""
    t = to_rational(t)
    if t == 0:
        raise ZeroScale("cannot rescale a fraction by 0")
    return FracRep(t * x.num, t * x.den)


def format_rational(q, *, integer_bare: bool = False) -> str:
    """Render a rational as ``p/q`` (reduced, sign on ``p``).

    With ``integer_bare`` an integral value renders as ``p``.
    """
    f = Fraction(q)
    if integer_bare and f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _format_component(c) -> str:
    c = to_rational(c)
    return str(c) if isinstance(c, int) else f"({c.numerator}/{c.denominator})"


def format_rep(x: FracRep) -> str:
    """``num/den`` as stored; non-integral components are parenthesised."""
    return f"{_format_component(x.num)}/{_format_component(x.den)}"
