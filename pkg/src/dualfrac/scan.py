"""Enumerate the grid points where a relation holds, and write them out."""

from __future__ import annotations

import csv
import functools
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable, Iterator, Optional

from .core import FracRep, OpKind, Value, format_rational, to_rational
from .grid import GridSpec, point_key, run_chunks, split
from .relations import RelationId, agrees, holds, parse_relation, sides

__all__ = [
    "IOFailure",
    "ScanRecord",
    "FIELDS",
    "enumerate_solutions",
    "gen_family",
    "write_records",
    "format_records",
    "read_records",
]

FIELDS = ("a", "b", "alpha", "beta", "lambda", "relation", "lhs", "rhs")
FORMATS = ("tabular", "lines")


class IOFailure(OSError):
    """Writing scan output failed."""


@dataclass(frozen=True)
class ScanRecord:
    x: FracRep
    y: FracRep
    lam: Optional[Fraction]
    relation: RelationId
    lhs: Value
    rhs: Value

    def row(self) -> dict:
        """Field name -> rendered text, in :data:`FIELDS` order."""
        comp = lambda c: format_rational(c, integer_bare=True)
        return {
            "a": comp(self.x.num),
            "b": comp(self.x.den),
            "alpha": comp(self.y.num),
            "beta": comp(self.y.den),
            "lambda": "" if self.lam is None else format_rational(self.lam, integer_bare=True),
            "relation": self.relation.name,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
        }


def _solutions_chunk(rel, lam, ys, xs) -> list[ScanRecord]:
    out = []
    for x in xs:
        for y in ys:
            if holds(rel, x, y, lam, strict=True) is True:
                lhs, rhs = sides(rel, x, y)
                out.append(ScanRecord(x, y, lam, rel, lhs, rhs))
    return out


def enumerate_solutions(rel: RelationId, grid: GridSpec = GridSpec(), lam=None, *,
                        workers: int = 1) -> Iterator[ScanRecord]:
    """Yield every grid point where *rel* holds, in lexicographic
    ``(a, b, alpha, beta)`` order.  Undefined points are skipped."""
    lam = None if lam is None else Fraction(to_rational(lam))
    reps = grid.reps()
    parts = run_chunks(functools.partial(_solutions_chunk, rel, lam, reps),
                       split(reps, max(1, workers)), workers)
    records = [r for part in parts for r in part]
    records.sort(key=lambda r: point_key(r.x, r.y))
    yield from records


def gen_family(b, beta, c) -> Optional[tuple[FracRep, FracRep]]:
    """A pair ``(x, y)`` with denominators *b*, *beta* whose product equals
    its dual product, parametrised by the common ratio
    ``c = a b/(b - a) = alpha beta/(alpha - beta)``.

    That gives ``a = c b/(b + c)`` and ``alpha = c beta/(c - beta)``; note the
    two numerators are *not* given by the same formula.  Returns ``None``
    when a numerator is undefined or the dual product is (``b + beta == 0``).
    """
    b, beta, c = Fraction(to_rational(b)), Fraction(to_rational(beta)), Fraction(to_rational(c))
    if b == 0 or beta == 0:
        raise ValueError("denominators must be nonzero")
    if b + c == 0 or c == beta or b + beta == 0:
        return None
    x = FracRep(c * b / (b + c), b)
    y = FracRep(c * beta / (c - beta), beta)
    if agrees(OpKind.MUL, OpKind.DUAL_MUL, x, y) is not True:
        raise ArithmeticError(f"generated pair {x}, {y} does not satisfy product = dual product")
    return x, y


def format_records(records: Iterable[ScanRecord], fmt: str = "tabular") -> str:
    buf = io.StringIO()
    write_records(records, fmt, buf)
    return buf.getvalue()


def write_records(records: Iterable[ScanRecord], fmt: str = "tabular", stream: IO[str] = None) -> None:
    """Write *records* as CSV with a header row (``tabular``) or as one JSON
    object per line (``lines``)."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    try:
        if fmt == "tabular":
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(FIELDS)
            for r in records:
                writer.writerow(r.row().values())
        else:
            for r in records:
                stream.write(json.dumps(r.row()) + "\n")
    except OSError as e:
        raise IOFailure(str(e)) from e


def read_records(text: str, fmt: str = "tabular") -> list[tuple[RelationId, FracRep, FracRep, Optional[Fraction]]]:
    """Parse scan output back into ``(relation, x, y, lambda)`` tuples."""
    if fmt == "tabular":
        rows = list(csv.DictReader(io.StringIO(text)))
    else:
        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
    out = []
    for row in rows:
        x = FracRep(to_rational(row["a"]), to_rational(row["b"]))
        y = FracRep(to_rational(row["alpha"]), to_rational(row["beta"]))
        lam = Fraction(row["lambda"]) if row["lambda"] else None
        out.append((parse_relation(row["relation"]), x, y, lam))
    return out
