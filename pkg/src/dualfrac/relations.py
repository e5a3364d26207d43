"""When do two fraction operations agree, scale, vanish or commute?

Every relation is decided by its *defining equation*: evaluate the
operations exactly and compare values.  The closed-form polynomial
conditions that accompany these questions are kept separately in
:func:`printed_condition` so the oracle can test them against the
defining equations rather than trust them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .core import DomainError, FracRep, OpKind, Value, to_rational, try_apply, value_of

__all__ = [
    "UNDEFINED",
    "UNAVAILABLE",
    "RelationId",
    "Agreement",
    "Proportional",
    "Kernel",
    "Commutes",
    "all_relations",
    "parse_relation",
    "agrees",
    "proportional",
    "kernel",
    "commutes",
    "holds",
    "sides",
    "printed_condition",
    "printed_status",
    "printed_note",
    "kernel_line_form",
    "solve_partner",
    "harmonic_mean",
]


class _Outcome:
    """A named third outcome next to ``True``/``False``; deliberately not a bool."""

    def __init__(self, name: str):
        self.name = name

    def __repr__(self):
        return self.name

    def __bool__(self):
        raise TypeError(f"{self.name} has no truth value")

    def __reduce__(self):
        return self.name


# One or both sides hit a zero denominator.
UNDEFINED = _Outcome("UNDEFINED")
# The printed condition cannot be evaluated as printed.
UNAVAILABLE = _Outcome("UNAVAILABLE")

AGREEMENT = "agreement"
PROPORTIONAL = "proportional"
KERNEL = "kernel"
COMMUTES = "commutes"


@dataclass(frozen=True)
class RelationId:
    """Identifies one relation between operations.

    ``ops`` holds two operations for agreement/proportionality and one for
    kernels/commutativity.  Agreement pairs are stored in canonical operation
    order; proportional pairs keep their orientation ``opA = lambda * opB``.
    """

    kind: str
    ops: tuple

    def __post_init__(self):
        if self.kind not in (AGREEMENT, PROPORTIONAL, KERNEL, COMMUTES):
            raise ValueError(f"unknown relation kind {self.kind!r}")
        arity = 2 if self.kind in (AGREEMENT, PROPORTIONAL) else 1
        if len(self.ops) != arity:
            raise ValueError(f"{self.kind} relation takes {arity} operation(s)")
        if self.kind == AGREEMENT:
            object.__setattr__(self, "ops", tuple(sorted(self.ops, key=lambda op: op.index)))

    @property
    def sort_key(self):
        return (self.kind, tuple(op.index for op in self.ops))

    @property
    def name(self) -> str:
        if self.kind == AGREEMENT:
            return f"{self.ops[0].short}={self.ops[1].short}"
        if self.kind == PROPORTIONAL:
            return f"{self.ops[0].short}~{self.ops[1].short}"
        if self.kind == KERNEL:
            return f"{self.ops[0].short}=0"
        return f"comm({self.ops[0].short})"

    @property
    def printed_form_available(self) -> bool:
        return printed_status(self) == "printed"

    def __str__(self):
        return self.name


def Agreement(op_a: OpKind, op_b: OpKind) -> RelationId:
    return RelationId(AGREEMENT, (op_a, op_b))


def Proportional(op_a: OpKind, op_b: OpKind) -> RelationId:
    return RelationId(PROPORTIONAL, (op_a, op_b))


def Kernel(op: OpKind) -> RelationId:
    return RelationId(KERNEL, (op,))


def Commutes(op: OpKind) -> RelationId:
    return RelationId(COMMUTES, (op,))


def all_relations() -> list[RelationId]:
    """Every relation the oracle reports on, in report order.

    Proportional pairs are oriented from the earlier operation to the later
    one, which is the orientation of every stated proportionality condition.
    """
    ops = list(OpKind)
    pairs = [(p, q) for i, p in enumerate(ops) for q in ops[i + 1:]]
    rels = [Agreement(p, q) for p, q in pairs]
    rels += [Proportional(p, q) for p, q in pairs]
    rels += [Kernel(op) for op in ops]
    rels += [Commutes(op) for op in ops]
    return rels


def parse_relation(text: str) -> RelationId:
    """Parse a relation name such as ``add=mul``, ``add~mul``, ``dadd1=0``
    or ``comm(dadd2)``.  Operator tokens (``@+``) work in place of names.
    """
    s = text.strip()
    if s.startswith("comm(") and s.endswith(")"):
        return Commutes(OpKind.parse(s[5:-1]))
    if "~" in s:
        lhs, _, rhs = s.partition("~")
        return Proportional(OpKind.parse(lhs), OpKind.parse(rhs))
    if "=" in s:
        lhs, _, rhs = s.partition("=")
        if rhs.strip() == "0":
            return Kernel(OpKind.parse(lhs))
        return Agreement(OpKind.parse(lhs), OpKind.parse(rhs))
    raise ValueError(f"cannot parse relation {text!r}")


def _check_lambda(lam) -> Fraction:
    if lam is None:
        raise DomainError("proportionality needs a factor lambda")
    lam = Fraction(to_rational(lam))
    if lam == 0:
        raise DomainError("lambda = 0 is the kernel case, not proportionality")
    return lam


def sides(rel: RelationId, x: FracRep, y: FracRep) -> tuple[Optional[Value], Optional[Value]]:
    """The two values a relation compares (``None`` where undefined).

    Agreement/proportional: ``(opA(x,y), opB(x,y))``; kernel:
    ``(op(x,y), 0)``; commutativity: ``(op(x,y), op(y,x))``.
    """
    if rel.kind in (AGREEMENT, PROPORTIONAL):
        return try_apply(rel.ops[0], x, y), try_apply(rel.ops[1], x, y)
    if rel.kind == KERNEL:
        return try_apply(rel.ops[0], x, y), Fraction(0)
    return try_apply(rel.ops[0], x, y), try_apply(rel.ops[0], y, x)


def holds(rel: RelationId, x: FracRep, y: FracRep, lam=None, *, strict: bool = False):
    """Decide *rel* at ``(x, y)`` from the defining equation.

    Returns ``True``/``False``, or :data:`UNDEFINED` when both sides are
    undefined (for a kernel: when the operation is).  When exactly one side
    is undefined the answer is ``False``, unless *strict* is set, in which
    case any undefined side gives :data:`UNDEFINED`.
    """
    lhs, rhs = sides(rel, x, y)
    if lhs is None or rhs is None:
        if strict or rel.kind == KERNEL or (lhs is None and rhs is None):
            return UNDEFINED
        return False
    if rel.kind == PROPORTIONAL:
        return lhs == _check_lambda(lam) * rhs
    return lhs == rhs


def agrees(op_a: OpKind, op_b: OpKind, x: FracRep, y: FracRep):
    return holds(Agreement(op_a, op_b), x, y)


def proportional(op_a: OpKind, op_b: OpKind, lam, x: FracRep, y: FracRep):
    """Is ``opA(x, y) == lam * opB(x, y)`` as values?"""
    return holds(Proportional(op_a, op_b), x, y, _check_lambda(lam))


def kernel(op: OpKind, x: FracRep, y: FracRep):
    return holds(Kernel(op), x, y)


def commutes(op: OpKind, x: FracRep, y: FracRep):
    return holds(Commutes(op), x, y)


# Printed closed forms, evaluated verbatim on (a, b, alpha, beta[, lam]).

def _add_dmul(a, b, al, be, lam):
    return al * b**2 + a * be**2 == 0


def _add_mul(a, b, al, be, lam):
    # a/b = alpha/(alpha - beta), cross-multiplied; meaningless for alpha == beta
    return al != be and a * (al - be) == b * al


def _mul_dmul(a, b, al, be, lam):
    return a * b * (al - be) == al * be * (b - a)


def _mul_dadd2(a, b, al, be, lam):
    return b**2 * (a + be) + be**2 * (b + al) + al * be * b + a * b * be == 0


def _comm_dadd1(a, b, al, be, lam):
    return al + be * (al - 1) == a + b * (a - 1)


def _comm_dadd2(a, b, al, be, lam):
    return a * (b - 1) - b == al * (be - 1) - be


def _always(a, b, al, be, lam):
    return True


def _ker_add(a, b, al, be, lam):
    return Fraction(al) / be == -Fraction(a) / b


def _ker_mul(a, b, al, be, lam):
    return a == 0 or al == 0


def _ker_dadd1(a, b, al, be, lam):
    return a + be * al + b == 0


def _ker_dadd2(a, b, al, be, lam):
    return (a + be) * (al + b) == 0


def _prop_add_dmul(a, b, al, be, lam):
    return (a * b * be + al * be * b) * (1 - lam) + a * be**2 + al * b**2 == 0


def _prop_add_mul(a, b, al, be, lam):
    x = Fraction(a) / b
    if x == 1 / lam:
        return False
    return Fraction(al) / be == x / (lam * x - 1)


def _prop_mul_dmul(a, b, al, be, lam):
    return a * b * (al - lam * be) + al * be * (a - lam * b) == 0


def _prop_mul_dadd1(a, b, al, be, lam):
    return a * b * (al - lam * be) + al * be * (a - lam * b * be) == lam * b**2 * be


A, M, DM, D1, D2 = (OpKind.ADD, OpKind.MUL, OpKind.DUAL_MUL, OpKind.DUAL_ADD1, OpKind.DUAL_ADD2)

_PRINTED: dict[RelationId, Callable] = {
    Agreement(A, DM): _add_dmul,
    Agreement(A, M): _add_mul,
    Agreement(M, DM): _mul_dmul,
    Agreement(M, D2): _mul_dadd2,
    Commutes(A): _always,
    Commutes(M): _always,
    Commutes(DM): _always,
    Commutes(D1): _comm_dadd1,
    Commutes(D2): _comm_dadd2,
    Kernel(A): _ker_add,
    Kernel(M): _ker_mul,
    Kernel(D1): _ker_dadd1,
    Kernel(D2): _ker_dadd2,
    Proportional(A, DM): _prop_add_dmul,
    Proportional(A, M): _prop_add_mul,
    Proportional(M, DM): _prop_mul_dmul,
    Proportional(M, D1): _prop_mul_dadd1,
}

# Stated, but not evaluable as printed.
_ILLEGIBLE: dict[RelationId, str] = {
    Agreement(A, D2): "printed condition has half-coefficient terms that do not follow from its derivation",
    Agreement(M, D1): "printed condition is syntactically broken ('+ =')",
    Proportional(A, D2): "printed condition is an expression with no equation",
    Proportional(M, D2): "printed condition divides by a numerator",
}


def printed_status(rel: RelationId) -> str:
    """``"printed"``, ``"illegible"`` or ``"absent"``."""
    if rel in _PRINTED:
        return "printed"
    if rel in _ILLEGIBLE:
        return "illegible"
    return "absent"


def printed_note(rel: RelationId) -> str:
    if rel in _ILLEGIBLE:
        return _ILLEGIBLE[rel]
    if rel not in _PRINTED:
        return "no closed-form condition stated"
    return ""


def printed_condition(rel: RelationId, x: FracRep, y: FracRep, lam=None):
    """Evaluate the stated closed-form condition for *rel* at ``(x, y)``.

    Returns :data:`UNAVAILABLE` when no usable closed form exists.
    """
    fn = _PRINTED.get(rel)
    if fn is None:
        return UNAVAILABLE
    if rel.kind == PROPORTIONAL:
        lam = _check_lambda(lam)
    return bool(fn(x.num, x.den, y.num, y.den, lam))


def kernel_line_form(x: FracRep, y: FracRep) -> bool:
    """``y = -(b/beta**2) x - b/beta**2`` as values."""
    c = Fraction(x.den) / y.den**2
    return value_of(y) == -c * value_of(x) - c


def solve_partner(x: FracRep, lam) -> Optional[Value]:
    """The value y with ``x + y == lam * x * y``, or ``None`` if x = 1/lam."""
    lam = _check_lambda(lam)
    v = value_of(x)
    if lam * v == 1:
        return None
    return v / (lam * v - 1)


def harmonic_mean(b, beta) -> Value:
    """``2*b*beta / (b + beta)`` for positive *b*, *beta*."""
    b, beta = Fraction(to_rational(b)), Fraction(to_rational(beta))
    if b <= 0 or beta <= 0:
        raise DomainError("harmonic mean needs positive arguments")
    return 2 * b * beta / (b + beta)
