from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extracta import Ideal, Polynomial, Ring, RingMismatchError, substitute
from extracta.poly import QQ, change_ring

R = Ring(("x", "y", "z"))
x, y, z = R.gens()

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps, coeffs, max_size=5).map(lambda t: Polynomial(R, t))


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == R.zero()
    assert f * R.one() == f


@given(polys)
@settings(max_examples=60, deadline=None)
def test_print_parse_round_trip(f):
    assert R.parse(f.to_str()) == f


@given(polys, polys, st.tuples(coeffs, coeffs, coeffs))
@settings(max_examples=40, deadline=None)
def test_evaluation_is_a_homomorphism(f, g, pt):
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)
    assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)


@given(polys, polys, polys, polys)
@settings(max_examples=30, deadline=None)
def test_substitution_is_a_homomorphism(f, g, a, b):
    s = {"x": a, "y": b}
    assert substitute(f * g, s) == substitute(f, s) * substitute(g, s)
    assert substitute(f + g, s) == substitute(f, s) + substitute(g, s)


def test_zero_terms_are_dropped():
    f = Polynomial(R, {(1, 0, 0): 1, (0, 1, 0): 0})
    assert f.terms == {(1, 0, 0): 1}
    assert (x - x).is_zero()
    assert not R.zero()


def test_coefficients_are_exact_rationals():
    f = R.parse("1/3*x + 2")
    assert f.coeff((1, 0, 0)) == Fraction(1, 3)
    assert isinstance(f.coeff((1, 0, 0)), type(QQ(1)))
    assert f.constant_coeff() == 2
    assert (f * 3).coeff((1, 0, 0)) == 1


def test_power_and_degree():
    f = (x + y) ** 3
    assert f.degree() == 3
    assert f.coeff((2, 1, 0)) == 3
    assert (x ** 0) == 1
    with pytest.raises(ValueError):
        x ** -1


def test_printing_uses_requested_order():
    from extracta.orders import named_order

    f = x + y ** 2 + 1
    assert f.to_str(named_order(R, "lex")) == "x + y^2 + 1"
    assert f.to_str(named_order(R, "degrevlex")) == "y^2 + x + 1"
    assert f.to_str(named_order(R, "neglex")) == "1 + y^2 + x"
    assert R.parse("-1/2*x*y^2 + 3").to_str() == "-1/2*x*y^2 + 3"


def test_ring_validation():
    with pytest.raises(ValueError):
        Ring(("x", "x"))
    with pytest.raises(ValueError):
        Ring(("2x",))
    with pytest.raises(ValueError):
        Ring(())
    assert Ring.of("a, b").var_names == ("a", "b")


def test_fresh_names_avoid_clashes():
    S = Ring(("t1", "x"))
    assert S.fresh_names("t", 2) == ["t1_", "t2"]
    assert R.fresh_names("t", 2, avoid=["t2"]) == ["t1", "t2_"]


def test_ring_mismatch_is_an_error():
    S = Ring(("x", "y"))
    with pytest.raises(RingMismatchError):
        x + S.var("x")
    with pytest.raises(RingMismatchError):
        Ideal(S, (x,))


def test_change_ring_and_substitute():
    S = R.extend(["t"])
    f = change_ring(x * y + z, S)
    assert f.ring == S
    assert substitute(f, {"t": S.var("x")}) == change_ring(x * y + z, S)
    g = substitute(x * y, {"x": y + z})
    assert g == y ** 2 + y * z
    with pytest.raises(KeyError):
        change_ring(x, Ring(("y",)))


def test_ideal_helpers():
    I = Ideal.parse(R, "x^2", "0", "x*y")
    assert I.is_monomial()
    assert len(I.nonzero_gens()) == 2
    assert str(I) == "<x^2, 0, x*y>"
    assert not Ideal.parse(R, "x + 1").is_monomial()
