"""Acceptance gate: one test per criterion, all exact.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints a
PASS/FAIL line for each criterion.
"""

import time
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dualfrac.cli import run
from dualfrac.core import FracRep, OpKind, ZeroDenominator, apply, frac_eq, rep, rescale, value_of
from dualfrac.expr import eval_expr, parse_expr, pretty
from dualfrac.grid import GridSpec
from dualfrac.oracle import CONFIRMED, REFUTED, full_report, verify_iff
from dualfrac.relations import (
    Agreement,
    Commutes,
    Kernel,
    Proportional,
    all_relations,
    harmonic_mean,
    holds,
    printed_condition,
)
from dualfrac.scan import enumerate_solutions, format_records, read_records
from dualfrac.structure import classify_homogeneity, default_scalars, rep_invariance_check, welldef_points

from conftest import nonzero_rationals, reps
from oracles import definition
from test_expr import trees

ADD, MUL, DMUL, DADD1, DADD2 = OpKind
LAMBDAS = (Fraction(-1), Fraction(2), Fraction(1, 2))
BUDGET_SECONDS = 60
PROPERTY_CASES = settings(max_examples=1000, deadline=None)


@pytest.fixture(scope="module")
def timed_report():
    start = time.perf_counter()
    report = full_report(GridSpec(4, 4), LAMBDAS)
    return report, time.perf_counter() - start


def _appendix(report, kind, op=None):
    for r in report.appendix:
        if r["record"] == kind and (op is None or r.get("op") == op):
            return r
    raise KeyError(kind)


def test_criterion_1_worked_examples():
    r, v = eval_expr(parse_expr("1/2 @+ -1/2"))
    assert (r.num, r.den) == (1, 4)
    assert v == Fraction(1, 4)
    with pytest.raises(ZeroDenominator):
        eval_expr(parse_expr("1/2 @+ 1/-2"))


def test_criterion_2_confirmed_conditions(timed_report):
    report, _ = timed_report
    for rel in (Agreement(ADD, DMUL), Agreement(ADD, MUL), Agreement(MUL, DMUL),
                Kernel(DADD1), Kernel(DADD2)):
        e = report.entry(rel)
        assert e.verdict == CONFIRMED, rel.name
        assert e.mismatch_count == 0
    kernel = report.entry(Kernel(DADD1))
    assert kernel.extra["kernel_points"] == kernel.defining_true > 0
    assert kernel.extra["line_form_failures"] == 0
    for lam in LAMBDAS:
        e = report.entry(Proportional(ADD, MUL), lam)
        assert e.verdict == CONFIRMED
        assert e.mismatch_count == 0


def test_criterion_3_refuted_commutativity_forms(timed_report):
    report, _ = timed_report

    [d1] = verify_iff(Commutes(DADD1), GridSpec(4, 4), full_witnesses=True)
    assert d1.verdict == REFUTED
    assert report.entry(Commutes(DADD1)).mismatches
    x, y = rep("2/1"), rep("1/2")
    assert (x, y) in {(m.x, m.y) for m in d1.mismatches}
    assert value_of(apply(DADD1, x, y)) == value_of(apply(DADD1, y, x)) == Fraction(5, 3)
    a, b, al, be = 2, 1, 1, 2
    assert (al + be * (al - 1), a + b * (a - 1)) == (1, 3)
    assert printed_condition(Commutes(DADD1), x, y) is False

    [d2] = verify_iff(Commutes(DADD2), GridSpec(4, 4), full_witnesses=True)
    assert d2.verdict == REFUTED
    assert report.entry(Commutes(DADD2)).mismatches
    x, y = rep("2/2"), rep("1/1")
    assert (x, y) in {(m.x, m.y) for m in d2.mismatches}
    assert value_of(apply(DADD2, x, y)) == value_of(apply(DADD2, y, x)) == 3
    a, b, al, be = 2, 2, 1, 1
    assert (a * (b - 1) - b, al * (be - 1) - be) == (0, -1)
    assert printed_condition(Commutes(DADD2), x, y) is False

    e = report.entry(Commutes(DADD2))
    assert e.checked > 0
    assert e.defining_true == e.checked


def test_criterion_4_homogeneity():
    for op, degree in ((ADD, 1), (DMUL, 1), (MUL, 2)):
        assert classify_homogeneity(op).degree == degree
    for op, lhs, rhs in ((DADD1, Fraction(5, 2), Fraction(3)), (DADD2, Fraction(9, 2), Fraction(4))):
        v = classify_homogeneity(op)
        assert v.degree is None
        w = v.witness
        assert (w.t, w.x, w.y, w.lhs, w.rhs) == (2, rep("1/1"), rep("1/1"), lhs, rhs)


def test_criterion_5_well_definedness(timed_report):
    report, _ = timed_report
    grid = GridSpec(4, 4).reps()
    scalars = default_scalars()

    for op in ("add", "mul"):
        r = _appendix(report, "welldef", op)
        assert r["class"] == "AlwaysInvariant"
        assert r["violations"] == 0 and r["checked"] > 0

    violations = 0
    for x, y, s, t, before, after in welldef_points(DMUL, grid, grid, scalars):
        broken = before != after
        assert broken == (s != t and not frac_eq(x, y))
        violations += broken
    assert violations == _appendix(report, "welldef", "dmul")["violations"] > 0
    assert rep_invariance_check(DMUL, rep("1/2"), rep("1/3"), 1, 2) is False
    assert value_of(apply(DMUL, rep("1/2"), rescale(2, rep("1/3")))) == Fraction(3, 8)
    assert value_of(apply(DMUL, rep("1/2"), rep("1/3"))) == Fraction(2, 5)

    nonzero = 0
    for x in grid:
        for y in grid:
            v = definition(DADD2, x.num, x.den, y.num, y.den)
            if v is None or v == 0:
                continue
            nonzero += 1
            assert rep_invariance_check(DADD2, x, y, 2, 2) is False
    assert nonzero > 0
    one = rep("1/1")
    assert value_of(apply(DADD2, rescale(2, one), rescale(2, one))) == 4
    assert value_of(apply(DADD2, one, one)) == 2

    family = [(x, y) for x in grid for y in grid
              if value_of(x) == -1 and value_of(y) == 0 and x.den + y.den != 0]
    assert family
    for x, y in family:
        for s, t in scalars:
            before = definition(DADD1, x.num, x.den, y.num, y.den)
            after = definition(DADD1, s * x.num, s * x.den, t * y.num, t * y.den)
            if after is not None:
                assert after == before
    r = _appendix(report, "welldef", "dadd1")
    assert r["invariant_pairs"] == len(family)
    assert "contradict" in r["note"]


def test_criterion_6_harmonic_mean(timed_report):
    report, _ = timed_report
    for b in range(1, 7):
        for beta in range(1, 7):
            v = value_of(apply(DADD2, FracRep(0, b), FracRep(0, beta)))
            assert v == Fraction(b * beta, b + beta) == harmonic_mean(b, beta) / 2
    r = _appendix(report, "harmonic")
    assert r["verdict"] == REFUTED
    assert r["equals_half_harmonic_mean"] == r["points"] == 36
    assert r["equals_harmonic_mean"] == 0
    assert "factor 2" in r["note"]


def test_criterion_7_property_suites():
    @PROPERTY_CASES
    @given(x=reps, y=reps, z=reps, s=nonzero_rationals)
    def equivalence(x, y, z, s):
        assert frac_eq(x, x)
        assert frac_eq(x, y) == frac_eq(y, x)
        w = rescale(s, x)
        assert frac_eq(x, w) and frac_eq(w, x)
        if frac_eq(x, y) and frac_eq(y, z):
            assert frac_eq(x, z)
        assert frac_eq(w, y) == frac_eq(x, y)

    @PROPERTY_CASES
    @given(x=reps, s=nonzero_rationals)
    def class_constancy(x, s):
        assert value_of(rescale(s, x)) == value_of(x)

    @PROPERTY_CASES
    @given(x=reps, y=reps, z=reps)
    def standard_laws(x, y, z):
        for op in (ADD, MUL):
            assert value_of(apply(op, x, y)) == value_of(apply(op, y, x))
            assert value_of(apply(op, apply(op, x, y), z)) == value_of(apply(op, x, apply(op, y, z)))

    @PROPERTY_CASES
    @given(x=reps)
    def mediant_idempotent(x):
        assert frac_eq(apply(DMUL, x, x), x)

    @PROPERTY_CASES
    @given(rel=st.sampled_from(all_relations()), lam=nonzero_rationals,
           n=st.integers(0, 2), d=st.integers(1, 2))
    def scan_revalidates(rel, lam, n, d):
        lam = lam if rel.kind == "proportional" else None
        for parsed, x, y, plam in read_records(format_records(enumerate_solutions(rel, GridSpec(n, d), lam))):
            assert holds(parsed, x, y, plam) is True

    @PROPERTY_CASES
    @given(tree=trees)
    def parser_round_trip(tree):
        text = pretty(tree)
        assert pretty(parse_expr(text)) == text

    for prop in (equivalence, class_constancy, standard_laws, mediant_idempotent,
                 scan_revalidates, parser_round_trip):
        prop()


def test_criterion_8_determinism_and_budget(timed_report, tmp_path, capsys):
    _, elapsed = timed_report
    assert elapsed < BUDGET_SECONDS, f"default verify took {elapsed:.1f}s"

    outputs = []
    for i in range(2):
        path = tmp_path / f"report{i}.jsonl"
        assert run(["verify", "--out", str(path)]) == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]
    assert outputs[0]

    for rel, lam in ((Agreement(ADD, MUL), None), (Kernel(DADD2), None),
                     (Proportional(ADD, MUL), Fraction(2))):
        texts = {format_records(enumerate_solutions(rel, GridSpec(4, 4), lam, workers=w))
                 for w in (1, 2, 4)}
        assert len(texts) == 1
    capsys.readouterr()


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
