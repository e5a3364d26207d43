"""Homogeneity and representation-invariance of the fraction operations.

Both properties are measured, not assumed: a verdict is whatever survives an
exhaustive check over a finite sample, and every negative verdict carries a
concrete witness.  Witnesses are the smallest failing tuples under the
orderings in :mod:`dualfrac.grid`, so results do not depend on how the work
was split between processes.
"""

from __future__ import annotations

import functools
import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional

from .core import (
    _components,
    DomainError,
    FracRep,
    OpKind,
    Value,
    format_rational,
    frac_eq,
    rescale,
    scale_value,
    to_rational,
    try_apply,
    value_of,
)
from .grid import GridSpec, rational_key, rep_key, run_chunks, split
from .relations import UNDEFINED

__all__ = [
    "HomogeneityWitness",
    "HomogeneityVerdict",
    "InvarianceWitness",
    "WellDefVerdict",
    "homogeneity_check",
    "default_homogeneity_sample",
    "classify_homogeneity",
    "rep_invariance_check",
    "default_scalars",
    "welldef_points",
    "classify_welldef",
]

CANDIDATE_DEGREES = (0, 1, 2, 3)
WITNESS_CAP = 20


class HomogeneityWitness(NamedTuple):
    t: Value
    x: FracRep
    y: FracRep
    lhs: Value   # op(t x, t y)
    rhs: Value   # t**degree * op(x, y)
    degree: int


@dataclass(frozen=True)
class HomogeneityVerdict:
    op: OpKind
    degree: Optional[int]
    witness: Optional[HomogeneityWitness] = None
    positive_only: bool = False
    checked: int = 0
    skipped: int = 0

    def describe(self) -> str:
        if self.degree is not None:
            text = f"homogeneous of degree {self.degree}"
            if self.positive_only:
                text += " (positive scalars only)"
            return text
        w = self.witness
        return (f"not homogeneous; witness t={format_rational(w.t, integer_bare=True)}, "
                f"x={w.x}, y={w.y}: {format_rational(w.lhs, integer_bare=True)} vs "
                f"{format_rational(w.rhs, integer_bare=True)}")

    def as_dict(self) -> dict:
        d = {"op": self.op.short, "degree": self.degree, "positive_only": self.positive_only,
             "checked": self.checked, "skipped": self.skipped, "witness": None}
        if self.witness is not None:
            w = self.witness
            d["witness"] = {"t": format_rational(w.t), "x": str(w.x), "y": str(w.y),
                            "lhs": format_rational(w.lhs), "rhs": format_rational(w.rhs),
                            "degree": w.degree}
        return d


def homogeneity_check(op: OpKind, k: int, t, x: FracRep, y: FracRep):
    """Is ``op(t x, t y) == t**k * op(x, y)`` as values?  (value scaling)"""
    t = Fraction(to_rational(t))
    if t == 0:
        raise DomainError("homogeneity is tested for t != 0")
    lhs = try_apply(op, scale_value(t, x), scale_value(t, y))
    base = try_apply(op, x, y)
    if lhs is None or base is None:
        return UNDEFINED
    return lhs == t**k * base


def default_homogeneity_sample() -> list[tuple[Fraction, FracRep, FracRep]]:
    ts = [Fraction(-2), Fraction(-1), Fraction(1, 2), Fraction(2), Fraction(3)]
    reps = [FracRep(n, d) for n in range(-3, 4) for d in range(1, 4)]
    return [(t, x, y) for t in ts for x in reps for y in reps]


def _homogeneity_key(sample):
    t, x, y = sample
    return (rational_key(t), rep_key(x), rep_key(y))


def classify_homogeneity(op: OpKind, sample: Optional[Iterable] = None) -> HomogeneityVerdict:
    """Find the degree ``k`` in 0..3 for which every sample is homogeneous.

    If no degree survives all scalars but one survives all positive scalars,
    that degree is returned with ``positive_only`` set.  Otherwise the
    verdict has ``degree=None`` and the first sample refuting every candidate
    degree at once (falling back to the first refuting degree 1).
    """
    samples = sorted(default_homogeneity_sample() if sample is None else sample, key=_homogeneity_key)
    if not samples:
        raise DomainError("empty homogeneity sample")
    passes = dict.fromkeys(CANDIDATE_DEGREES, True)
    passes_pos = dict.fromkeys(CANDIDATE_DEGREES, True)
    first_fail: dict[int, tuple] = {}
    refutes_all = None
    checked = skipped = 0
    for t, x, y in samples:
        t = Fraction(to_rational(t))
        lhs = try_apply(op, scale_value(t, x), scale_value(t, y))
        base = try_apply(op, x, y)
        if lhs is None or base is None:
            skipped += 1
            continue
        checked += 1
        failed = [k for k in CANDIDATE_DEGREES if lhs != t**k * base]
        for k in failed:
            passes[k] = False
            if t > 0:
                passes_pos[k] = False
            first_fail.setdefault(k, (t, x, y, lhs, base))
        if refutes_all is None and len(failed) == len(CANDIDATE_DEGREES):
            refutes_all = (t, x, y, lhs, base)

    def witness(entry, k):
        t, x, y, lhs, base = entry
        return HomogeneityWitness(t, x, y, lhs, t**k * base, k)

    for table, positive_only in ((passes, False), (passes_pos, True)):
        degrees = [k for k, ok in table.items() if ok]
        if len(degrees) > 1:
            raise DomainError(f"sample does not determine a degree (candidates {degrees})")
        if degrees:
            k = degrees[0]
            w = witness(first_fail[k], k) if positive_only else None
            return HomogeneityVerdict(op, k, w, positive_only, checked, skipped)
    entry = refutes_all or first_fail[1]
    return HomogeneityVerdict(op, None, witness(entry, 1), False, checked, skipped)


# Representation invariance ("well-definedness")

def rep_invariance_check(op: OpKind, x: FracRep, y: FracRep, s, t):
    """Is ``op(s x / s, t y / t)`` the same value as ``op(x, y)``?"""
    before = try_apply(op, x, y)
    after = try_apply(op, rescale(s, x), rescale(t, y))
    if before is None or after is None:
        return UNDEFINED
    return before == after


def default_scalars() -> list[tuple[Fraction, Fraction]]:
    base = [Fraction(1), Fraction(-1), Fraction(2), Fraction(3), Fraction(1, 2)]
    return list(itertools.product(base, repeat=2))


class InvarianceWitness(NamedTuple):
    x: FracRep
    y: FracRep
    s: Value
    t: Value
    before: Value
    after: Value

    def as_dict(self) -> dict:
        return {"x": str(self.x), "y": str(self.y), "s": format_rational(self.s),
                "t": format_rational(self.t), "before": format_rational(self.before),
                "after": format_rational(self.after)}


def _witness_key(w: InvarianceWitness):
    return (rep_key(w.x), rep_key(w.y), rational_key(w.s), rational_key(w.t))


def welldef_points(op: OpKind, xs: Iterable[FracRep], ys: list[FracRep], scalars):
    """Yield ``(x, y, s, t, before, after)`` for every defined check."""
    for x in xs:
        for y in ys:
            before = try_apply(op, x, y)
            if before is None:
                continue
            for s, t in scalars:
                after = try_apply(op, rescale(s, x), rescale(t, y))
                if after is not None:
                    yield x, y, s, t, before, after


def _welldef_chunk(op, ys, scalars, xs):
    # Hot loop: raw components compared by cross-multiplication.  Iterating in
    # witness order means the first WITNESS_CAP violations are the smallest.
    checked = skipped = violations = 0
    bad_pairs, bad_scalars, defined_pairs = set(), set(), set()
    witnesses = []
    order = sorted(scalars, key=lambda st: (rational_key(st[0]), rational_key(st[1])))
    exact = [(to_rational(s), to_rational(t), s, t) for s, t in order]
    ys = sorted(ys, key=rep_key)
    for x in sorted(xs, key=rep_key):
        a, b = x.num, x.den
        for y in ys:
            al, be = y.num, y.den
            n0, d0 = _components(op, a, b, al, be)
            if d0 == 0:
                skipped += len(exact)
                continue
            defined_pairs.add((x, y))
            for s, t, s_frac, t_frac in exact:
                n1, d1 = _components(op, s * a, s * b, t * al, t * be)
                if d1 == 0:
                    skipped += 1
                    continue
                checked += 1
                if n1 * d0 != n0 * d1:
                    violations += 1
                    bad_pairs.add((x, y))
                    bad_scalars.add((s_frac, t_frac))
                    if len(witnesses) < WITNESS_CAP:
                        witnesses.append(InvarianceWitness(
                            x, y, s_frac, t_frac, Fraction(n0) / d0, Fraction(n1) / d1))
    return checked, skipped, violations, bad_pairs, bad_scalars, defined_pairs, witnesses


@dataclass(frozen=True)
class WellDefVerdict:
    op: OpKind
    cls: str
    description: str
    checked: int
    skipped: int
    violations: int
    witnesses: list = field(default_factory=list)
    invariant_pairs: list = field(default_factory=list)
    invariant_scalars: list = field(default_factory=list)
    note: str = ""

    def describe(self) -> str:
        text = {"AlwaysInvariant": "always invariant",
                "DiagonalInvariant": "invariant under equal rescaling only",
                "ConditionalInvariant": "conditionally invariant",
                "NeverInvariant": "never invariant"}[self.cls]
        if self.description:
            text += f": {self.description}"
        text += f"; {self.violations} violations in {self.checked} checks"
        if self.witnesses:
            w = self.witnesses[0]
            text += (f"; witness x={w.x}, y={w.y}, s={format_rational(w.s, integer_bare=True)}, "
                     f"t={format_rational(w.t, integer_bare=True)}: "
                     f"{format_rational(w.after, integer_bare=True)} vs "
                     f"{format_rational(w.before, integer_bare=True)}")
        return text

    def as_dict(self) -> dict:
        return {
            "op": self.op.short,
            "class": self.cls,
            "description": self.description,
            "checked": self.checked,
            "skipped": self.skipped,
            "violations": self.violations,
            "invariant_pairs": len(self.invariant_pairs),
            "invariant_scalars": [[format_rational(s), format_rational(t)] for s, t in self.invariant_scalars],
            "witnesses": [w.as_dict() for w in self.witnesses],
            "note": self.note,
        }


def _describe_pairs(pairs: set, defined: set) -> str:
    if not pairs:
        return ""
    if pairs == {(x, y) for x, y in defined if frac_eq(x, y)}:
        return "frac_eq(x,y)"
    if pairs == {(x, y) for x, y in defined if value_of(x) == -1 and value_of(y) == 0}:
        return "x = -1 and y = 0 as values"
    return f"{len(pairs)} operand pairs"


def classify_welldef(op: OpKind, bound: int = 4, scalars=None, *, den_bound: Optional[int] = None,
                     workers: int = 1) -> WellDefVerdict:
    """Exhaustively check representation invariance of *op*.

    The operand grid has numerators ``-bound..bound`` and nonzero
    denominators ``-den_bound..den_bound`` (``den_bound`` defaults to
    ``bound``); *scalars* is a list of ``(s, t)`` rescaling pairs.
    """
    scalars = default_scalars() if scalars is None else [
        (Fraction(to_rational(s)), Fraction(to_rational(t))) for s, t in scalars]
    if any(s == 0 or t == 0 for s, t in scalars):
        raise DomainError("rescaling factors must be nonzero")
    reps = GridSpec(bound, bound if den_bound is None else den_bound).reps()
    worker = functools.partial(_welldef_chunk, op, reps, scalars)
    parts = run_chunks(worker, split(reps, max(1, workers)), workers)

    checked = sum(p[0] for p in parts)
    skipped = sum(p[1] for p in parts)
    violations = sum(p[2] for p in parts)
    bad_pairs = set().union(*(p[3] for p in parts))
    bad_scalars = set().union(*(p[4] for p in parts))
    defined = set().union(*(p[5] for p in parts))
    witnesses = heapq.nsmallest(WITNESS_CAP, itertools.chain.from_iterable(p[6] for p in parts),
                                key=_witness_key)

    good_pairs = defined - bad_pairs
    good_scalars = [st for st in scalars if st not in bad_scalars]
    diagonal = [st for st in scalars if st[0] == st[1]]
    trivial = [st for st in scalars if st == (1, 1)]
    inv_pairs = sorted(good_pairs, key=lambda p: (rep_key(p[0]), rep_key(p[1])))

    if violations == 0:
        cls, desc = "AlwaysInvariant", ""
    else:
        parts_desc = []
        if good_scalars == diagonal and len(diagonal) > len(trivial):
            parts_desc.append("s=t")
        elif len(good_scalars) > len(trivial):
            parts_desc.append("(s,t) in {" + ", ".join(
                f"({format_rational(s, integer_bare=True)},{format_rational(t, integer_bare=True)})"
                for s, t in good_scalars) + "}")
        pair_desc = _describe_pairs(good_pairs, defined)
        if pair_desc:
            parts_desc.append(pair_desc)
        desc = ", or ".join(parts_desc)
        if not good_pairs and not parts_desc:
            cls = "NeverInvariant"
        elif not good_pairs and parts_desc == ["s=t"]:
            cls = "DiagonalInvariant"
        else:
            cls = "ConditionalInvariant"

    note = ""
    if op is OpKind.DUAL_ADD1 and good_pairs:
        note = ("invariant operand pairs exist, contradicting the claimed conclusion "
                "that no pair of fractions makes this operation well-defined")
    if op is OpKind.DUAL_ADD2 and any(s == t and s != 1 for s, t in bad_scalars):
        note = "equal rescaling by s multiplies every nonzero result by s"
    return WellDefVerdict(op, cls, desc, checked, skipped, violations, witnesses,
                          inv_pairs, good_scalars, note)
