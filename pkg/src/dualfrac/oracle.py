"""Brute-force differential check of closed-form conditions against their defining equations.

For each relation the oracle walks a finite grid of integer representations
and compares two truths at every point: the defining equation
(:func:`dualfrac.relations.holds`) and the closed-form condition
(:func:`dualfrac.relations.printed_condition`).  Points where an operation
involved in the relation is undefined are tallied and excluded.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import FracRep, OpKind, format_rational, to_rational, try_apply
from .grid import GridSpec, rep_key, run_chunks, split
from .relations import (
    KERNEL,
    PROPORTIONAL,
    UNDEFINED,
    RelationId,
    harmonic_mean,
    all_relations,
    holds,
    kernel_line_form,
    printed_condition,
    printed_note,
    printed_status,
    sides,
)
from .structure import classify_homogeneity, classify_welldef

__all__ = [
    "GridSpec",
    "Discrepancy",
    "RelationReport",
    "DiscrepancyReport",
    "DEFAULT_LAMBDAS",
    "verify_iff",
    "full_report",
    "harmonic_check",
    "idempotency_check",
]

DEFAULT_LAMBDAS = (Fraction(-1), Fraction(2), Fraction(1, 2))
WITNESS_CAP = 20

CONFIRMED = "Confirmed"
VACUOUS = "Vacuous"
REFUTED = "Refuted"
UNAVAILABLE_VERDICT = "Unavailable"
SKIPPED = "Skipped"


def _fmt(q) -> Optional[str]:
    return None if q is None else format_rational(q)


@dataclass(frozen=True)
class Discrepancy:
    relation: RelationId
    x: FracRep
    y: FracRep
    lam: Optional[Fraction]
    defining: bool
    printed: bool
    note: str = ""

    def as_dict(self) -> dict:
        return {"x": str(self.x), "y": str(self.y), "lambda": _fmt(self.lam),
                "defining": self.defining, "printed": self.printed, "note": self.note}


@dataclass
class RelationReport:
    relation: RelationId
    lam: Optional[Fraction]
    printed: str
    verdict: str
    points: int = 0
    checked: int = 0
    skipped_undefined: int = 0
    defining_true: int = 0
    printed_true: int = 0
    mismatch_count: int = 0
    mismatches: list = field(default_factory=list)
    note: str = ""
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = {
            "record": "relation",
            "relation": self.relation.name,
            "kind": self.relation.kind,
            "ops": [op.short for op in self.relation.ops],
            "lambda": _fmt(self.lam),
            "printed": self.printed,
            "verdict": self.verdict,
            "points": self.points,
            "checked": self.checked,
            "skipped_undefined": self.skipped_undefined,
            "defining_true": self.defining_true,
            "printed_true": self.printed_true,
            "mismatches": self.mismatch_count,
            "witnesses": [m.as_dict() for m in self.mismatches],
            "note": self.note,
        }
        d.update(self.extra)
        return d


def _note(rel, x, y) -> str:
    lhs, rhs = sides(rel, x, y)
    return f"{_fmt(lhs)} vs {_fmt(rhs)}"


def _witness_key(m: Discrepancy):
    return (rep_key(m.x), rep_key(m.y))


def _scan_chunk(rel: RelationId, lam, ys, cap, xs):
    """Tally one block of grid rows; the first *cap* mismatches in witness order."""
    has_printed = printed_status(rel) == "printed"
    checked = skipped = def_true = pr_true = n_mismatch = 0
    kernel_pts = line_fail = 0
    mismatches = []
    ys = sorted(ys, key=rep_key)
    for x in sorted(xs, key=rep_key):
        for y in ys:
            truth = holds(rel, x, y, lam, strict=True)
            if truth is UNDEFINED:
                skipped += 1
                continue
            checked += 1
            def_true += truth
            if rel == _KERNEL_DADD1 and truth:
                kernel_pts += 1
                line_fail += not kernel_line_form(x, y)
            if not has_printed:
                continue
            printed = printed_condition(rel, x, y, lam)
            pr_true += printed
            if printed != truth:
                n_mismatch += 1
                if cap is None or len(mismatches) < cap:
                    mismatches.append(Discrepancy(rel, x, y, lam, truth, printed, _note(rel, x, y)))
    return checked, skipped, def_true, pr_true, n_mismatch, mismatches, kernel_pts, line_fail


_KERNEL_DADD1 = RelationId(KERNEL, (OpKind.DUAL_ADD1,))


def _verify_one(rel, grid, lam, cap, workers) -> RelationReport:
    reps = grid.reps()
    worker = functools.partial(_scan_chunk, rel, lam, reps, cap)
    parts = run_chunks(worker, split(reps, max(1, workers)), workers)
    status = printed_status(rel)
    report = RelationReport(rel, lam, status, UNAVAILABLE_VERDICT, points=grid.size,
                            note=printed_note(rel))
    for checked, skipped, def_true, pr_true, n_mis, mis, kpts, lfail in parts:
        report.checked += checked
        report.skipped_undefined += skipped
        report.defining_true += def_true
        report.printed_true += pr_true
        report.mismatch_count += n_mis
        report.mismatches.extend(mis)
        report.extra["kernel_points"] = report.extra.get("kernel_points", 0) + kpts
        report.extra["line_form_failures"] = report.extra.get("line_form_failures", 0) + lfail
    if rel != _KERNEL_DADD1:
        report.extra.clear()
    report.mismatches.sort(key=_witness_key)
    if cap is not None:
        del report.mismatches[cap:]
    if status == "printed":
        if report.mismatch_count:
            report.verdict = REFUTED
        elif report.defining_true:
            report.verdict = CONFIRMED
        else:
            report.verdict = VACUOUS
    return report


def verify_iff(rel: RelationId, grid: GridSpec = GridSpec(), lambdas: Iterable = (), *,
               full_witnesses: bool = False, workers: int = 1) -> list[RelationReport]:
    """Compare the defining and printed forms of *rel* over *grid*.

    Returns one entry per factor in *lambdas* for proportional relations
    (a single ``Skipped`` entry if there are none), and one entry otherwise.
    """
    cap = None if full_witnesses else WITNESS_CAP
    if rel.kind != PROPORTIONAL:
        return [_verify_one(rel, grid, None, cap, workers)]
    lams = [Fraction(to_rational(lam)) for lam in lambdas]
    if not lams:
        return [RelationReport(rel, None, printed_status(rel), SKIPPED, points=grid.size,
                               note="no lambda values given")]
    return [_verify_one(rel, grid, lam, cap, workers) for lam in lams]


def harmonic_check(bound: int = 6) -> dict:
    """``0/b @# 0/beta`` against ``b beta/(b+beta)`` and against the harmonic
    mean ``2 b beta/(b+beta)`` for ``1 <= b, beta <= bound``."""
    total = half = full = 0
    for b in range(1, bound + 1):
        for beta in range(1, bound + 1):
            v = try_apply(OpKind.DUAL_ADD2, FracRep(0, b), FracRep(0, beta))
            h = harmonic_mean(b, beta)
            total += 1
            half += v == h / 2
            full += v == h
    verdict = REFUTED if full < total else CONFIRMED
    return {
        "record": "harmonic",
        "range": [1, bound],
        "points": total,
        "equals_half_harmonic_mean": half,
        "equals_harmonic_mean": full,
        "verdict": verdict,
        "note": ("0/b @# 0/beta = b*beta/(b+beta) = H(b,beta)/2; the claim '= H(b,beta)' "
                 "is off by a factor 2 under H(b,beta) = 2*b*beta/(b+beta)"),
    }


def idempotency_check(grid: GridSpec) -> list[dict]:
    """How often ``x op x`` equals ``x`` as values, per operation."""
    out = []
    reps = grid.reps()
    for op in OpKind:
        defined = same = 0
        for x in reps:
            v = try_apply(op, x, x)
            if v is None:
                continue
            defined += 1
            same += v == Fraction(x.num) / x.den
        out.append({"record": "idempotency", "op": op.short, "defined": defined,
                    "idempotent": same, "always": same == defined})
    return out


@dataclass
class DiscrepancyReport:
    grid: GridSpec
    lambdas: tuple
    entries: list
    appendix: list = field(default_factory=list)

    def entry(self, rel: RelationId, lam=None) -> RelationReport:
        lam = None if lam is None else Fraction(to_rational(lam))
        for e in self.entries:
            if e.relation == rel and e.lam == lam:
                return e
        raise KeyError((rel.name, lam))

    def records(self) -> list[dict]:
        head = {"record": "grid", **self.grid.as_dict(),
                "lambdas": [format_rational(lam) for lam in self.lambdas]}
        return [head] + [e.as_dict() for e in self.entries] + list(self.appendix)

    def serialize(self) -> str:
        """One JSON object per line, fields in a fixed order."""
        return "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in self.records())


def full_report(grid: GridSpec = GridSpec(), lambdas: Sequence = DEFAULT_LAMBDAS, *,
                full_witnesses: bool = False, workers: int = 1,
                structure: bool = True) -> DiscrepancyReport:
    """Run :func:`verify_iff` over every relation, plus structural appendices."""
    lams = tuple(Fraction(to_rational(lam)) for lam in lambdas)
    entries = []
    for rel in all_relations():
        entries.extend(verify_iff(rel, grid, lams, full_witnesses=full_witnesses, workers=workers))
    appendix = []
    if structure:
        for op in OpKind:
            appendix.append({"record": "homogeneity", **classify_homogeneity(op).as_dict()})
        for op in OpKind:
            verdict = classify_welldef(op, grid.num_bound, den_bound=grid.den_bound, workers=workers)
            appendix.append({"record": "welldef", **verdict.as_dict()})
        appendix.append(harmonic_check())
        appendix.extend(idempotency_check(grid))
    return DiscrepancyReport(grid, lams, entries, appendix)
