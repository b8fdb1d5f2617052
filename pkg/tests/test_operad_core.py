import pytest

from operadic.data import load_presentation, to_tag
from operadic.exceptions import PresentationError
from operadic.operad_core import (
    OperadPresentation,
    SigmaObject,
    classical_presentation,
    cofree_cooperad,
    composite_product,
    free_operad,
    koszul_dual_cooperad,
    quotient_operad,
    sigma_tensor,
)
from operadic.symcore import SigmaRep

OPERAD_DIMS = {
    "com": {1: 1, 2: 1, 3: 1, 4: 1},
    "asc": {1: 1, 2: 2, 3: 6, 4: 24},
    "lie": {1: 1, 2: 1, 3: 2, 4: 6},
}

DUAL_DIMS = {
    "com": {1: 1, 2: 1, 3: 2, 4: 6},
    "asc": {1: 1, 2: 2, 3: 6, 4: 24},
    "lie": {1: 1, 2: 1, 3: 1, 4: 1},
}


def binary(q, rep=None):
    rep = rep or SigmaRep.trivial(2, q)
    return SigmaObject.single(rep, [f"m{k}" for k in range(rep.dim)])


def test_to_tag():
    assert to_tag("Lie") == "lie"
    assert to_tag("Ass") == "asc"
    assert to_tag("Comm") == "com"


def test_static_presentations():
    lie = load_presentation("lie")
    assert lie["generators"][0]["name"] == "b"
    assert len(lie["relations"]) == 1
    with pytest.raises(KeyError):
        load_presentation("pre-lie")


@pytest.mark.parametrize("tag", sorted(OPERAD_DIMS))
def test_classical_operad_dims(q, tag):
    assert classical_presentation(tag, q).operad(4).dims() == OPERAD_DIMS[tag]


@pytest.mark.parametrize("tag", sorted(DUAL_DIMS))
def test_koszul_dual_dims(q, tag):
    assert koszul_dual_cooperad(classical_presentation(tag, q), 4).dims() == DUAL_DIMS[tag]


def test_operad_axioms(classical):
    assert classical.operad(3).check_axioms() == []


def test_free_operad_dims(q):
    free = free_operad(binary(q), 4)
    assert free.dim(2) == 1
    assert free.dim(3) == 3
    regular = free_operad(binary(q, SigmaRep.regular(2, q)), 3)
    assert regular.dim(2) == 2
    assert regular.dim(3) == 12


def test_free_operad_weights(q):
    free = free_operad(binary(q), 3)
    assert {free.weight(3, x) for x in range(free.dim(3))} == {2}
    assert free.check_axioms(3) == []


def test_quotient_without_relations_is_free(q):
    generators = binary(q)
    assert quotient_operad(generators, [], 4).dims() == free_operad(generators, 4).dims()


def test_cofree_cooperad(q):
    cooperad = cofree_cooperad(binary(q), 3)
    assert cooperad.dims() == {1: 1, 2: 1, 3: 3}
    assert cooperad.check_axioms() == []


def test_composite_product(q):
    unit = SigmaObject.identity(q)
    e = binary(q)
    regular = binary(q, SigmaRep.regular(2, q))
    assert composite_product(unit, regular, 2).dim == 2
    assert composite_product(regular, unit, 2).dim == 2
    assert composite_product(e, e, 3).dim == 0
    composite = composite_product(e, unit.direct_sum(e), 3)
    assert composite.dim == 3
    assert composite.field == q
    composite.check()


def test_tensor_product(q):
    unit = SigmaObject.identity(q)
    e = binary(q)
    assert sigma_tensor(unit, unit, 2).dim == 2
    tensor = sigma_tensor(e, unit, 3)
    assert tensor.dim == sigma_tensor(unit, e, 3).dim == 3
    assert tensor.field == q
    tensor.check()


def test_presentation_errors(q):
    with pytest.raises(PresentationError):
        OperadPresentation.from_data(
            {"generators": [{"name": "b", "arity": 2}], "relations": [{"b(1,2)": 1}]}, q
        )
    with pytest.raises(PresentationError):
        OperadPresentation.from_data({"generators": [{"name": "u", "arity": 1}], "relations": []}, q)


def test_custom_presentation_matches_com(q):
    data = load_presentation("com")
    custom = OperadPresentation.from_data(data, q)
    assert custom.tag is None
    assert custom.operad(4).dims() == OPERAD_DIMS["com"]
