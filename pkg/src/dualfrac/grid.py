"""Finite grids of integer representations, orderings and parallel fan-out."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence, TypeVar

from .core import FracRep

T = TypeVar("T")


@dataclass(frozen=True)
class GridSpec:
    """Numerators ``-N..N`` and denominators ``-D..D`` without 0.

    Points are ordered pairs ``(x, y)`` enumerated lexicographically in
    ``(a, b, alpha, beta)``.
    """

    num_bound: int = 4
    den_bound: int = 4

    def __post_init__(self):
        if self.num_bound < 0 or self.den_bound < 1:
            raise ValueError("need num_bound >= 0 and den_bound >= 1")

    def reps(self) -> list[FracRep]:
        dens = [d for d in range(-self.den_bound, self.den_bound + 1) if d]
        return [FracRep(n, d) for n in range(-self.num_bound, self.num_bound + 1) for d in dens]

    def points(self) -> Iterator[tuple[FracRep, FracRep]]:
        reps = self.reps()
        for x in reps:
            for y in reps:
                yield x, y

    @property
    def size(self) -> int:
        return (2 * self.num_bound + 1) ** 2 * (2 * self.den_bound) ** 2

    def as_dict(self) -> dict:
        return {"num_bound": self.num_bound, "den_bound": self.den_bound, "points": self.size}


def point_key(x: FracRep, y: FracRep) -> tuple:
    """Lexicographic grid order."""
    return (x.num, x.den, y.num, y.den)


def rational_key(q) -> tuple:
    """Witness order for scalars: positive before negative, then by
    denominator, then by magnitude (so 1, 2, 3, 1/2, -1, -2, ...)."""
    q = Fraction(q)
    return (q < 0, q.denominator, abs(q.numerator))


def rep_key(x: FracRep) -> tuple:
    """Witness order for representations: positive values first, then zero,
    then negative; within a sign class by ``|den|``, ``|num|``, and finally
    with positive denominators before negative ones."""
    sign = (x.num > 0) == (x.den > 0)
    cls = 1 if x.num == 0 else (0 if sign else 2)
    return (cls, abs(x.den), abs(x.num), x.den < 0, x.num < 0)


def split(items: Sequence[T], parts: int) -> list[list[T]]:
    """Contiguous, order-preserving partition into at most *parts* chunks."""
    parts = max(1, min(parts, len(items)))
    size, extra = divmod(len(items), parts)
    out, start = [], 0
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0)
        out.append(list(items[start:stop]))
        start = stop
    return out


def run_chunks(fn: Callable, chunks: Sequence, workers: int = 1) -> list:
    """``[fn(c) for c in chunks]``, optionally across worker processes.

    Results come back in chunk order either way; *fn* and the chunks must be
    picklable when ``workers > 1``.
    """
    if workers <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, chunks))
