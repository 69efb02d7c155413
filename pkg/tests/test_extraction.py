import pytest

from extracta import DecompositionError, Ideal, OrderError, RingMismatchError, Ring, validate_matrix
from extracta.extraction import (
    extract,
    extraction_dim,
    extraction_is_trivial,
    extraction_membership,
    extraction_radical_membership,
    lift,
    loc_ideal_equal,
)
from extracta.oracle import decompose, user_decomposition
from extracta.standard_basis import ideals_equal

R = Ring(("x", "y"))
x, y = R.gens()


def I2(*gens):
    return Ideal.parse(R, *gens)


EMB_I = I2("x^2", "x*y")
EMB_J = I2("x", "y - 1")


def test_lift_shape():
    q = lift(EMB_I, EMB_J)
    assert q.t_names == ("t1", "t2")
    assert q.lifted_ring.var_names == ("x", "y", "t1", "t2")
    assert q.order.is_control
    assert q.order.characteristic == (1, 1, -1, -1)
    assert str(q.lifted_ideal) == "<x^2, x*y, -x + t1, -y + t2 + 1>"


def test_lift_avoids_name_clashes():
    S = Ring(("t1", "x"))
    q = lift(Ideal.parse(S, "t1*x"), Ideal.parse(S, "x"))
    assert q.t_names == ("t1_",)


def test_embedded_component_membership():
    q = lift(EMB_I, EMB_J)
    assert extraction_membership(x, q)
    assert not extraction_membership(y, q)
    assert extraction_membership(x * (y + 3), q)
    assert not extraction_membership(R.one(), q)
    assert extraction_dim(q) == 1


def test_embedded_component_generators_from_both_decompositions():
    D1 = user_decomposition(EMB_I, [I2("x"), I2("x^2", "x*y", "y^2")])
    D2 = user_decomposition(EMB_I, [I2("x"), I2("x^2", "y")])
    for D in (D1, D2, decompose(EMB_I)):
        r = extract(EMB_I, EMB_J, D)
        assert r.status == "proper"
        assert ideals_equal(Ideal(R, r.generators), I2("x"))
        assert r.contains(x) and not r.contains(y)


def test_trivial_and_full_extractions():
    assert extraction_is_trivial(lift(EMB_I, I2("x - 1")))
    assert extraction_dim(lift(EMB_I, I2("x - 1"))) == -1
    q = lift(EMB_I, I2("x", "y"))
    assert extraction_membership(x * y, q) and not extraction_membership(x, q)
    q = lift(EMB_I, Ideal(R, ()))
    assert extraction_membership(x ** 2, q) and not extraction_membership(x, q)


def test_radical_membership():
    q = lift(EMB_I, EMB_J)
    assert extraction_radical_membership(x, q)
    assert not extraction_radical_membership(y, q)
    q = lift(EMB_I, I2("x", "y"))
    assert extraction_radical_membership(x, q)
    assert not extraction_radical_membership(y, q)


def test_rabinowitsch_variable_must_dominate():
    # Extraction of <0> by <x> is <0>, so x is not in its radical.  With the
    # fresh variable placed among the ordinary global variables the unit
    # 1 - x*z would wrongly be inverted.
    q = lift(Ideal(R, (R.zero(),)), I2("x"))
    assert not extraction_radical_membership(x, q)
    assert not extraction_membership(x, q)


def test_custom_lift_orders_are_validated():
    q = lift(EMB_I, EMB_J)
    B = q.lifted_ring
    mixed = validate_matrix(B, [[0, 0, -1, -1], [1, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0]])
    q2 = lift(EMB_I, EMB_J, order=mixed)
    assert extraction_membership(x, q2) and not extraction_membership(y, q2)
    with pytest.raises(OrderError):
        lift(EMB_I, EMB_J, order=validate_matrix(B, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    with pytest.raises(OrderError):
        lift(EMB_I, EMB_J, order=validate_matrix(R, [[1, 0], [0, 1]]))


def test_ring_mismatch():
    S = Ring(("x", "y", "z"))
    with pytest.raises(RingMismatchError):
        lift(EMB_I, Ideal.parse(S, "x"))
    with pytest.raises(RingMismatchError):
        extraction_membership(S.var("x"), lift(EMB_I, EMB_J))


def test_loc_ideal_equal():
    D = decompose(EMB_I)
    a = extract(EMB_I, EMB_J, D)
    b = extract(I2("x"), I2("y - 1"), decompose(I2("x")))
    assert loc_ideal_equal(a, b)
    c = extract(EMB_I, I2("x", "y"), D)
    assert not loc_ideal_equal(a, c)
    with pytest.raises(DecompositionError):
        loc_ideal_equal(extract(EMB_I, EMB_J), b)
