"""Command-line front end: ``dualfrac eval|check|scan|verify|classify|repl``.

Exit codes: 0 success, 1 a checked relation does not hold, 2 usage error,
3 evaluation error.
"""

from __future__ import annotations

import sys
from fractions import Fraction

import click

from .core import FractionError, OpKind, ZeroDenominator, format_rational, format_rep, rep
from .expr import ParseError, eval_expr, parse_expr
from .grid import GridSpec
from .oracle import DEFAULT_LAMBDAS, full_report
from .relations import PROPORTIONAL, UNDEFINED, holds, parse_relation, sides
from .scan import IOFailure, enumerate_solutions, write_records
from .structure import classify_homogeneity, classify_welldef

EXIT_OK, EXIT_FAILS, EXIT_USAGE, EXIT_EVAL = 0, 1, 2, 3

_PASS_NEGATIVES = {"ignore_unknown_options": True}


def _show(q) -> str:
    return format_rational(q, integer_bare=True)


def _fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"{text!r} is not a rational number", param_hint=what)


def _relation(text: str):
    try:
        return parse_relation(text)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="RELATION")


def _operand(text: str, what: str):
    try:
        return rep(text)
    except (ValueError, TypeError, ZeroDenominator) as e:
        raise click.BadParameter(f"{text!r}: {e}", param_hint=what)


def _evaluate(text: str) -> int:
    try:
        result, value = eval_expr(parse_expr(text))
    except ParseError as e:
        click.echo(f"syntax error: {e}", err=True)
        return EXIT_EVAL
    except ZeroDenominator as e:
        where = f" in {text.encode()[e.span[0]:e.span[1]].decode()!r}" if e.span else ""
        click.echo(f"error: zero denominator{where}", err=True)
        return EXIT_EVAL
    click.echo(f"rep = {format_rep(result)}, value = {format_rational(value)}")
    return EXIT_OK


@click.group()
def cli():
    """Exact arithmetic with standard and dual fraction operations."""


@cli.command("eval", context_settings=_PASS_NEGATIVES)
@click.argument("expr", nargs=-1, required=True)
def eval_cmd(expr):
    """Evaluate EXPR, e.g. "1/2 @+ -1/2"."""
    return _evaluate(" ".join(expr))


@cli.command(context_settings=_PASS_NEGATIVES)
@click.argument("relation")
@click.argument("x")
@click.argument("y")
@click.option("--lambda", "lam", help="Factor for proportionality relations (A~B).")
def check(relation, x, y, lam):
    """Decide RELATION (add=mul, add~dmul, dadd1=0, comm(dadd2), ...) at X, Y."""
    rel = _relation(relation)
    x, y = _operand(x, "X"), _operand(y, "Y")
    factor = None
    if rel.kind == PROPORTIONAL:
        if lam is None:
            raise click.UsageError("proportionality relations need --lambda")
        factor = _fraction(lam, "--lambda")
        if factor == 0:
            raise click.BadParameter("lambda must be nonzero", param_hint="--lambda")
    truth = holds(rel, x, y, factor)
    lhs, rhs = sides(rel, x, y)
    if truth is UNDEFINED:
        click.echo("undefined (zero denominator)")
        return EXIT_FAILS
    rhs_text = "undefined" if rhs is None else _show(rhs)
    lhs_text = "undefined" if lhs is None else _show(lhs)
    if factor is not None:
        rhs_text = f"{_show(factor)} * {rhs_text}"
    if truth:
        click.echo(f"holds ({lhs_text} = {rhs_text})")
        return EXIT_OK
    click.echo(f"fails ({lhs_text} != {rhs_text})")
    return EXIT_FAILS


@cli.command(context_settings=_PASS_NEGATIVES)
@click.argument("relation")
@click.option("--num-bound", type=click.IntRange(min=0), default=4, show_default=True)
@click.option("--den-bound", type=click.IntRange(min=1), default=4, show_default=True)
@click.option("--lambda", "lam")
@click.option("--format", "fmt", type=click.Choice(["tabular", "lines"]), default="tabular", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), help="Write here instead of stdout.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
def scan(relation, num_bound, den_bound, lam, fmt, out, workers):
    """List the grid points where RELATION holds."""
    rel = _relation(relation)
    factor = None
    if rel.kind == PROPORTIONAL:
        if lam is None:
            raise click.UsageError("proportionality relations need --lambda")
        factor = _fraction(lam, "--lambda")
    records = enumerate_solutions(rel, GridSpec(num_bound, den_bound), factor, workers=workers)
    try:
        if out:
            with open(out, "w", newline="") as fh:
                write_records(records, fmt, fh)
        else:
            write_records(records, fmt, sys.stdout)
    except (IOFailure, OSError) as e:
        click.echo(f"error: {e}", err=True)
        return EXIT_EVAL
    return EXIT_OK


@cli.command(context_settings=_PASS_NEGATIVES)
@click.option("--num-bound", type=click.IntRange(min=0), default=4, show_default=True)
@click.option("--den-bound", type=click.IntRange(min=1), default=4, show_default=True)
@click.option("--lambda", "lams", multiple=True, help="Repeatable; default -1, 2, 1/2.")
@click.option("--full-witnesses", is_flag=True, help="Store every mismatch, not just the first 20.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
def verify(num_bound, den_bound, lams, full_witnesses, workers, out):
    """Check every closed-form condition against its defining equation."""
    factors = [_fraction(x, "--lambda") for x in lams] if lams else list(DEFAULT_LAMBDAS)
    if any(f == 0 for f in factors):
        raise click.BadParameter("lambda must be nonzero", param_hint="--lambda")
    report = full_report(GridSpec(num_bound, den_bound), factors,
                         full_witnesses=full_witnesses, workers=workers)
    text = report.serialize()
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    return EXIT_OK


@cli.command()
@click.argument("op")
@click.option("--homogeneity", is_flag=True)
@click.option("--welldef", is_flag=True)
@click.option("--bound", type=click.IntRange(min=0), default=4, show_default=True,
              help="Grid bound for --welldef.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
def classify(op, homogeneity, welldef, bound, workers):
    """Classify OP (+, *, @*, @+, @# or add, mul, ...) structurally."""
    try:
        kind = OpKind.parse(op)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="OP")
    if homogeneity == welldef:
        raise click.UsageError("pass exactly one of --homogeneity or --welldef")
    if homogeneity:
        click.echo(classify_homogeneity(kind).describe())
    else:
        verdict = classify_welldef(kind, bound, workers=workers)
        click.echo(verdict.describe())
        if verdict.note:
            click.echo(f"note: {verdict.note}")
    return EXIT_OK


@cli.command()
def repl():
    """Read expressions from stdin, one per line, and evaluate them."""
    interactive = sys.stdin.isatty()
    while True:
        if interactive:
            click.echo("> ", nl=False)
        line = sys.stdin.readline()
        if not line:
            break
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("quit", "exit"):
            break
        _evaluate(line)
    return EXIT_OK


def run(argv=None) -> int:
    """Entry point returning the exit code instead of calling ``sys.exit``."""
    args = sys.argv[1:] if argv is None else list(argv)
    try:
        rv = cli.main(args=args, prog_name="dualfrac", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except FractionError as e:
        click.echo(f"error: {e}", err=True)
        return EXIT_EVAL
    return rv if isinstance(rv, int) else EXIT_OK


def main():
    sys.exit(run())
