from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from periodlab.arb import PrecisionPolicy
from periodlab.errors import DomainError
from periodlab.expr import (
    ComplexLiteral,
    ExprSemanticError,
    ExprSyntaxError,
    LiCall,
    PhiIndex,
    Product,
    RationalLiteral,
    Sum,
    WordLiteral,
    ZetaIndex,
    evaluate,
    parse,
    to_symbolic,
    to_text,
)
from periodlab.ncseries import Poly
from periodlab.words import MZVIndex

P = PrecisionPolicy(30)


def test_examples():
    assert parse("zeta(3,5)") == ZetaIndex((3, 5))
    assert parse("phi(1,3) * zeta(2)") == Product((PhiIndex((1, 3)), ZetaIndex((2,))))
    e = parse("L[1,0](1/2)")
    assert e == WordLiteral("10", RationalLiteral(Fraction(1, 2)))
    assert evaluate(e, P).to_decimal(30) == "-0.582240526465012505902656320160"


def test_signed_zeta_entries():
    e = parse("zeta(1,-3)")
    assert e.index == MZVIndex((1, 3), (1, -1), 2)
    assert to_text(e) == "zeta(1,-3)"


def test_phi_symbol_sign():
    assert to_symbolic(parse("phi(1)")) == -Poly.gen(MZVIndex.phi((1,)))
    v = evaluate(parse("phi(1)"), P)
    with mpmath.workdps(50):
        assert abs(v.mid - mpmath.ln2) < mpmath.mpf(10) ** -28


def test_evaluate_arithmetic():
    v = evaluate(parse("zeta(1,2) - zeta(3)"), P)
    assert abs(v.mid) < mpmath.mpf(10) ** -28
    v = evaluate(parse("2/5*zeta(2)*zeta(2) - zeta(4)"), P)
    assert abs(v.mid) < mpmath.mpf(10) ** -28
    v = evaluate(parse("Li[2](1/2+1/3i)"), P)
    with mpmath.workdps(50):
        assert abs(v.mid - mpmath.polylog(2, mpmath.mpc(0.5, mpmath.mpf(1) / 3))) < mpmath.mpf(10) ** -28


def test_symbolic_rejects_numeric_calls():
    with pytest.raises(DomainError):
        to_symbolic(parse("Li[2](1/2)"))


@pytest.mark.parametrize(
    "text,pos",
    [("zeta(2", 6), ("foo", 0), ("zeta(2) +", 9), ("L[2](1/2)", 2), ("zeta(2))", 7), ("1/0", 0)],
)
def test_syntax_error_positions(text, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text)
    assert info.value.pos == pos


@pytest.mark.parametrize("text", ["zeta()", "zeta(0)", "phi(0)", "Li[2,3](1/2)"])
def test_semantic_errors(text):
    with pytest.raises(ExprSemanticError):
        parse(text)


# --- round trip on generated canonical expressions ------------------------------------

ints = st.lists(st.integers(1, 6), min_size=1, max_size=3).map(tuple)
signed_ints = st.lists(st.integers(1, 6).flatmap(lambda n: st.sampled_from((n, -n))), min_size=1, max_size=3).map(tuple)
fractions = st.builds(Fraction, st.integers(0, 50), st.integers(1, 12))
numbers = st.one_of(
    fractions.map(RationalLiteral),
    st.builds(ComplexLiteral, fractions, fractions.filter(bool)),
)
leaves = st.one_of(
    signed_ints.map(ZetaIndex),
    ints.map(PhiIndex),
    ints.flatmap(lambda ks: st.lists(numbers, min_size=len(ks), max_size=len(ks)).map(lambda a: LiCall(ks, tuple(a)))),
    st.builds(WordLiteral, st.text("01m", min_size=1, max_size=4).map(str), numbers),
    fractions.map(RationalLiteral),
)


def _extend(children):
    products = st.lists(children, min_size=2, max_size=3).map(lambda fs: Product(tuple(fs)))
    signed = st.tuples(st.sampled_from((1, -1)), children)
    sums = st.one_of(
        st.lists(signed, min_size=2, max_size=3).map(lambda ts: Sum(tuple(ts))),
        children.map(lambda c: Sum(((-1, c),))),
    )
    return st.one_of(products, sums)


exprs = st.recursive(leaves, _extend, max_leaves=8)


@settings(max_examples=1000)
@given(exprs)
def test_round_trip(e):
    text = to_text(e)
    assert parse(text) == e
    assert to_text(parse(text)) == text
