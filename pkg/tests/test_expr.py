from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dualfrac.core import FracRep, OpKind, ZeroDenominator
from dualfrac.expr import BinOp, Literal, ParseError, Paren, ValueScale, eval_expr, parse_expr, pretty

ADD, MUL, DMUL, DADD1, DADD2 = OpKind


def lit(a, b):
    return Literal(FracRep(a, b))


class TestParse:
    def test_sign_on_numerator(self):
        assert parse_expr("1/2 @+ -1/2") == BinOp(DADD1, lit(1, 2), lit(-1, 2))

    def test_sign_on_denominator_is_a_different_tree(self):
        t = parse_expr("1/2 @+ 1/-2")
        assert t == BinOp(DADD1, lit(1, 2), lit(1, -2))
        assert t != parse_expr("1/2 @+ -1/2")

    def test_precedence(self):
        assert parse_expr("1/2 + 1/3 @* 1/4") == BinOp(ADD, lit(1, 2), BinOp(DMUL, lit(1, 3), lit(1, 4)))

    def test_scale_binds_tightest(self):
        t = parse_expr("2 ~ 1/1 @+ 2 ~ 1/1")
        scaled = ValueScale(Fraction(2), lit(1, 1))
        assert t == BinOp(DADD1, scaled, scaled)
        assert eval_expr(t)[1] == Fraction(5, 2)

    def test_left_association(self):
        t = parse_expr("1/1 @+ 1/2 @# 1/3")
        assert t == BinOp(DADD2, BinOp(DADD1, lit(1, 1), lit(1, 2)), lit(1, 3))

    def test_parens(self):
        t = parse_expr("(1/2 + 1/3) * 2/1")
        assert t == BinOp(MUL, Paren(BinOp(ADD, lit(1, 2), lit(1, 3))), lit(2, 1))

    def test_unicode_aliases(self):
        assert parse_expr("1/2 ⊕ -1/2") == parse_expr("1/2 @+ -1/2")
        assert parse_expr("1/2 ⊙ 1/3 ⊞ 1/4") == parse_expr("1/2 @* 1/3 @# 1/4")

    def test_whitespace_free(self):
        assert parse_expr("1/2@+-1/2") == parse_expr("  1/2   @+  -1/2 ")

    def test_parsing_never_evaluates(self):
        parse_expr("1/-2 @+ 1/2")

    def test_zero_literal(self):
        with pytest.raises(ZeroDenominator) as err:
            parse_expr("1/2 + 3/0")
        assert err.value.span == (6, 9)

    @pytest.mark.parametrize("text, offset", [
        ("1/2 +", 5),
        ("1/2 $ 1/3", 4),
        ("(1/2", 4),
        ("1 / 2", 2),
        ("⊕ 1/2", 0),
        ("1/2 ⊕ ⊕", 8),
        ("", 0),
    ])
    def test_syntax_error_offsets(self, text, offset):
        with pytest.raises(ParseError) as err:
            parse_expr(text)
        assert err.value.offset == offset


class TestEval:
    def test_dual_add1_example(self):
        r, v = eval_expr(parse_expr("1/2 @+ -1/2"))
        assert (r.num, r.den) == (1, 4) and v == Fraction(1, 4)

    def test_zero_denominator_span(self):
        text = "1/2 @+ 1/-2"
        with pytest.raises(ZeroDenominator) as err:
            eval_expr(parse_expr(text))
        assert err.value.span == (0, len(text))

    def test_inner_span(self):
        text = "1/1 + (1/2 @* 1/-2)"
        with pytest.raises(ZeroDenominator) as err:
            eval_expr(parse_expr(text))
        assert text[slice(*err.value.span)] == "1/2 @* 1/-2"

    def test_agreement_point(self):
        assert eval_expr(parse_expr("3/1 + 3/2"))[1] == Fraction(9, 2)
        assert eval_expr(parse_expr("3/1 * 3/2"))[1] == Fraction(9, 2)

    def test_unreduced_intermediates(self):
        # Unbracketed, @* binds first: 1/2 + 2/3.  Bracketed, the sum stays
        # 4/4, so the mediant is 5/5 rather than 2/2.
        r, v = eval_expr(parse_expr("1/2 + 1/2 @* 1/1"))
        assert (r.num, r.den) == (7, 6)
        r, v = eval_expr(parse_expr("(1/2 + 1/2) @* 1/1"))
        assert (r.num, r.den) == (5, 5)

    def test_nested(self):
        assert eval_expr(parse_expr("(1/2 ⊕ 1/3) ⊞ 2"))[1] == Fraction(49, 6)


# Round trip

_int = st.integers(-99, 99)
_nz = _int.filter(bool)
_literal = st.builds(lambda a, b: Literal(FracRep(a, b)), _int, _nz)
_factor = st.fractions(min_value=-9, max_value=9, max_denominator=9)


def _extend(children):
    return st.one_of(
        st.builds(BinOp, st.sampled_from(list(OpKind)), children, children),
        st.builds(ValueScale, _factor, children),
        st.builds(Paren, children),
    )


trees = st.recursive(_literal, _extend, max_leaves=8)


@given(tree=trees)
def test_pretty_round_trip(tree):
    text = pretty(tree)
    parsed = parse_expr(text)
    assert pretty(parsed) == text
    assert _strip(parsed) == _strip(tree)


def _strip(e):
    """Drop Paren nodes, leaving only the semantic tree."""
    if isinstance(e, Paren):
        return _strip(e.inner)
    if isinstance(e, BinOp):
        return BinOp(e.op, _strip(e.left), _strip(e.right))
    if isinstance(e, ValueScale):
        return ValueScale(e.factor, _strip(e.operand))
    return e


@given(text=st.text(alphabet="0123456789/-+*@#~() ⊕", max_size=20))
def test_parser_total(text):
    try:
        tree = parse_expr(text)
    except (ParseError, ZeroDenominator):
        return
    assert parse_expr(pretty(tree)) == tree
