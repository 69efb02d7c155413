import random

import pytest

from extracta import DecompositionError, Ideal, RefusedError, Ring, validate_matrix
from extracta.oracle import (
    RationalPointSet,
    beta_oracle,
    contract_oracle,
    decompose,
    dim_oracle,
    intersect_all,
    is_minimal,
    monomial_primary_decomposition,
    point_ideal,
    principal_decomposition,
    radical_of_decomposition,
    user_decomposition,
    zero_dim_contract_oracle,
)
from extracta.standard_basis import MonomialIdeal, dim_ideal, ideals_equal

R2 = Ring(("x", "y"))
R3 = Ring(("x", "y", "z"))


def I2(*gens):
    return Ideal.parse(R2, *gens)


def test_monomial_decomposition_with_embedded_component():
    D = decompose(I2("x^2", "x*y"))
    assert D.minimal and D.provenance == "monomial-split"
    want = [I2("x"), I2("x^2", "y")]
    assert all(map(ideals_equal, D.components, want))
    assert all(map(ideals_equal, D.radicals, [I2("x"), I2("x", "y")]))


def test_random_monomial_decompositions_reintersect():
    rng = random.Random(1)
    for _ in range(40):
        exps = tuple(tuple(rng.randint(0, 3) for _ in range(3)) for _ in range(rng.randint(1, 4)))
        M = MonomialIdeal(R3, exps)
        D = monomial_primary_decomposition(M)
        assert ideals_equal(intersect_all(R3, D.components), M.to_ideal())
        assert is_minimal(D.components, D.radicals)
        assert dim_oracle(D) == dim_ideal(M.to_ideal())


def test_degenerate_monomial_ideals():
    assert decompose(Ideal(R2, (R2.one(),))).components == ()
    D = decompose(Ideal(R2, ()))
    assert dim_oracle(D) == 2
    assert dim_oracle(decompose(Ideal(R2, (R2.one(),)))) == -1


def test_point_ideal():
    P = RationalPointSet(R2, ((0, 0), (1, 1)))
    ideal, D = point_ideal(P)
    assert ideals_equal(ideal, I2("x - y", "y^2 - y"))
    assert dim_oracle(D) == 0
    with pytest.raises(ValueError):
        RationalPointSet(R2, ((0, 0), (0, 0)))


def test_principal_decomposition():
    D = principal_decomposition([(R2.parse("x"), 2), (R2.parse("y - 1"), 1)])
    assert ideals_equal(D.ideal, I2("x^2*y - x^2"))
    assert beta_oracle(D, I2("x", "y")) == D.components[0]
    with pytest.raises(DecompositionError, match="associate"):
        principal_decomposition([(R2.parse("x"), 1), (R2.parse("2*x"), 1)])
    with pytest.raises(DecompositionError, match="constant"):
        principal_decomposition([(R2.parse("3"), 1)])


def test_user_decomposition_is_checked():
    I = I2("x^2", "x*y")
    D = user_decomposition(I, [I2("x"), I2("x^2", "x*y", "y^2")], [I2("x"), I2("x", "y")])
    assert D.minimal
    with pytest.raises(DecompositionError, match="intersect"):
        user_decomposition(I, [I2("x")])
    with pytest.raises(DecompositionError, match="provenance"):
        user_decomposition(I, [I2("x")], provenance="hunch")
    redundant = user_decomposition(I, [I2("x"), I2("x^2", "y"), I2("x^2", "x*y", "y^2")])
    assert not redundant.minimal


def test_beta_keeps_components_meeting_the_control_variety():
    D = decompose(I2("x^2", "x*y"))
    assert ideals_equal(beta_oracle(D, I2("x", "y - 1")), I2("x"))
    assert ideals_equal(beta_oracle(D, I2("x", "y")), D.ideal)
    assert ideals_equal(beta_oracle(D, I2("x - 1")), I2("1"))
    assert ideals_equal(beta_oracle(D, Ideal(R2, (R2.zero(),))), D.ideal)


def test_contraction_oracles():
    D = decompose(I2("x^2", "x*y"))
    o = validate_matrix(R2, [[0, -1], [1, 0]])
    assert ideals_equal(contract_oracle(D, o), D.ideal)
    with pytest.raises(RefusedError):
        contract_oracle(D, validate_matrix(R2, [[1, 0], [0, -1]]))
    P = RationalPointSet(R2, ((0, 0), (1, 1), (2, 0)))
    assert ideals_equal(zero_dim_contract_oracle(P, o), I2("y", "x*(x - 2)"))
    non_control = validate_matrix(R2, [[1, 0], [0, -1]])
    assert ideals_equal(zero_dim_contract_oracle(P, non_control), I2("y", "x*(x - 2)"))
    assert ideals_equal(zero_dim_contract_oracle(RationalPointSet(R2, ((1, 1),)), o), I2("1"))


def test_radical_of_decomposition():
    D = decompose(I2("x^2", "x*y"))
    rad = radical_of_decomposition(D)
    assert ideals_equal(rad.ideal, I2("x"))
    bare = user_decomposition(D.ideal, D.components)
    with pytest.raises(DecompositionError, match="radicals"):
        radical_of_decomposition(bare)
