from fractions import Fraction

from hypothesis import settings, strategies as st

from dualfrac.core import FracRep

settings.register_profile("default", max_examples=1000, deadline=None)
settings.load_profile("default")

small_ints = st.integers(min_value=-50, max_value=50)
nonzero_ints = small_ints.filter(lambda n: n != 0)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_rationals = rationals.filter(lambda q: q != 0)


@st.composite
def int_reps(draw):
    return FracRep(draw(small_ints), draw(nonzero_ints))


@st.composite
def rational_reps(draw):
    return FracRep(draw(rationals), draw(nonzero_rationals))


reps = st.one_of(int_reps(), rational_reps())


def F(text) -> Fraction:
    return Fraction(text)


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE[report.nodeid.split("::")[-1]] = report.outcome
    elif report.when == "setup" and report.failed and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE[report.nodeid.split("::")[-1]] = "error"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE.items():
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
