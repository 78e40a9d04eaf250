import pytest
from hypothesis import given, settings, strategies as st

from zetalab.errors import MixedVariables, PolySyntaxError
from zetalab.parser import format_poly, format_system, parse_system, parse_univariate
from zetalab.varieties import make_poly


def test_examples():
    sys = parse_system("x^2 + y^2 - 1")
    assert sys.num_vars == 2 and len(sys.polys[0]) == 3
    sys = parse_system("x^2*y + 2*x")
    assert sys.polys[0] == ((1, (2, 1)), (2, (1, 0)))
    with pytest.raises(PolySyntaxError) as err:
        parse_system("2x")
    assert err.value.line == 1 and err.value.column == 2


def test_syntax_errors_carry_position():
    for text, col in [("x +", 4), ("x ^ y", 5), ("x $ 1", 3), ("x*(y)z", 6)]:
        with pytest.raises(PolySyntaxError) as err:
            parse_system(text)
        assert err.value.column == col, text
    with pytest.raises(PolySyntaxError):
        parse_system("(x + 1")
    with pytest.raises(PolySyntaxError) as err:
        parse_system(["x + 1", "# comment", "y +* 1"])
    assert err.value.line == 3


def test_mixed_variables():
    with pytest.raises(MixedVariables):
        parse_system("x + x1")


def test_indexed_variables():
    sys = parse_system("x2 + x0*x1")
    assert sys.names == ("x0", "x1", "x2")
    assert sys.polys[0] == ((1, (1, 1, 0)), (1, (0, 0, 1)))
    # a two-digit index reads as x1 followed by the literal 0
    with pytest.raises(PolySyntaxError):
        parse_system("x10")


def test_letter_order_and_declared_names():
    assert parse_system("z + y*x").names == ("x", "y", "z")
    sys = parse_system("y - 1", names=["x", "y"])
    assert sys.polys[0] == ((1, (0, 1)), (-1, (0, 0)))
    with pytest.raises(PolySyntaxError):
        parse_system("z", names=["x", "y"])


def test_expansion_and_cancellation():
    sys = parse_system("(x + 1)^2 - x^2 - 2*x")
    assert sys.polys[0] == ((1, (0,)),)
    with pytest.raises(PolySyntaxError):
        parse_system("x - x")


def test_leading_sign_and_comments():
    sys = parse_system(["# circle", "-x^2 - y^2 + 1   # negated", "", "x - y"])
    assert len(sys.polys) == 2
    assert sys.polys[0] == ((-1, (2, 0)), (-1, (0, 2)), (1, (0, 0)))


def test_parse_univariate():
    assert parse_univariate("x^3 - x") == [0, -1, 0, 1]
    assert parse_univariate("(x - 1)*(x + 1)") == [-1, 0, 1]
    with pytest.raises(PolySyntaxError):
        parse_univariate("x*y")


def test_projective_ambient():
    sys = parse_system("x0^2 + x1^2 + x2^2", ambient="projective")
    assert sys.ambient == "projective"


@st.composite
def polys(draw):
    m = draw(st.integers(1, 3))
    terms = draw(st.lists(
        st.tuples(st.integers(-20, 20), st.tuples(*[st.integers(0, 4)] * m)), min_size=1, max_size=6))
    poly = make_poly(terms, m)
    style = draw(st.sampled_from(["letters", "indexed"]))
    names = ["x", "y", "z"][:m] if style == "letters" else [f"x{i}" for i in range(m)]
    return poly, names


@settings(max_examples=300, deadline=None)
@given(polys())
def test_round_trip(pn):
    poly, names = pn
    if not poly:
        return
    text = format_poly(poly, names)
    sys = parse_system(text, names=names)
    assert sys.polys[0] == poly
    # print . parse is idempotent on canonical text
    assert format_system(sys) == [text]
