from functools import reduce

import pytest

from operadic.exceptions import CharacteristicError, RepresentationError
from operadic.exactalg import Field
from operadic.symcore import (
    Permutation,
    SigmaRep,
    all_permutations,
    coinvariants,
    induce,
    koszul_sign,
    set_partitions,
    shuffles,
)


def test_permutation_group_laws():
    elements = all_permutations(3)
    assert len(elements) == 6
    for p in elements:
        assert (p * p.inverse()).is_identity()
        for r in elements:
            assert (p * r).sign() == p.sign() * r.sign()
    assert Permutation.transposition(3, 1).sign() == -1
    with pytest.raises(ValueError):
        Permutation([1, 1, 2])


@pytest.mark.parametrize("p", all_permutations(4))
def test_reduced_word(p):
    word = p.reduced_word()
    factors = [Permutation.transposition(4, i) for i in word]
    assert reduce(lambda a, b: a * b, factors, Permutation.identity(4)) == p
    assert (-1) ** len(word) == p.sign()


def test_sorting():
    p = Permutation.sorting([30, 10, 20])
    assert p.images == (3, 1, 2)


def test_shuffle_counts():
    assert len(shuffles(1, 2)) == 3
    assert len(shuffles(2, 2)) == 6
    assert len(shuffles(0, 3)) == 1
    assert len(shuffles(1, 1, 1)) == 6
    for sigma in shuffles(2, 2):
        assert sigma(1) < sigma(2)
        assert sigma(3) < sigma(4)


def test_set_partitions():
    assert len(list(set_partitions(range(4), 2))) == 7
    assert len(list(set_partitions(range(3), 3))) == 1
    assert list(set_partitions(range(2), 3)) == []


def test_koszul_sign():
    assert koszul_sign([1, 1], [1, 0]) == -1
    assert koszul_sign([1, 2], [1, 0]) == 1
    assert koszul_sign([1, 1, 1], [2, 0, 1]) == 1


def test_regular_representation(q):
    regular = SigmaRep.regular(3, q)
    assert regular.dim == 6
    assert coinvariants(regular).space.total_dim == 1
    assert coinvariants(SigmaRep.sign(3, q)).space.total_dim == 0
    assert coinvariants(SigmaRep.trivial(3, q)).space.total_dim == 1


def test_coinvariants_need_invertible_order():
    with pytest.raises(CharacteristicError):
        coinvariants(SigmaRep.regular(3, Field(3)))


def test_action_is_a_right_action(q):
    regular = SigmaRep.regular(3, q)
    for sigma in all_permutations(3):
        for tau in all_permutations(3):
            assert regular.act(sigma * tau) == regular.act(tau) @ regular.act(sigma)


def test_coxeter_relations_are_checked(q):
    with pytest.raises(RepresentationError):
        SigmaRep.from_dense(2, [0], [[[2]]], q)
    with pytest.raises(RepresentationError):
        SigmaRep.from_dense(2, [0, 1], [[[0, 1], [1, 0]]], q)


def test_induction_from_two_units(q):
    unit = SigmaRep.trivial(1, q)
    induced = induce([unit, unit], 2)
    assert induced.dim == 2
    assert coinvariants(induced).space.total_dim == 1
    three = induce([SigmaRep.trivial(2, q), unit], 3)
    assert three.dim == 3
