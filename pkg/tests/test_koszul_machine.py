import numpy as np
import pytest

from operadic.exceptions import ShapeError, TwistingMorphismError
from operadic.koszul_machine import (
    ConvolutionElement,
    Side,
    TwistedCompositeProduct,
    TwistingMorphism,
    bar,
    bar_morphism,
    bracket,
    cobar,
    cobar_to_operad,
    compare_cobar_morphism,
    counit,
    derivative,
    koszul_morphism,
    koszulness_certificate,
    prelie_star,
    random_element,
    twisted_composite,
)
from operadic.operad_core import classical_presentation, koszul_dual_cooperad


def koszul_pair(tag, q, max_arity):
    presentation = classical_presentation(tag, q)
    operad = presentation.operad(max_arity)
    cooperad = koszul_dual_cooperad(presentation, max_arity)
    return cooperad, operad


@pytest.mark.parametrize("tag", ["com", "asc", "lie"])
def test_kappa_satisfies_maurer_cartan(q, tag):
    cooperad, operad = koszul_pair(tag, q, 4)
    kappa = koszul_morphism(cooperad, operad)
    assert kappa.maurer_cartan_failures() == []
    assert prelie_star(kappa.element, kappa.element).is_zero()


def test_twisting_morphism_needs_degree_minus_one(q):
    cooperad, operad = koszul_pair("lie", q, 3)
    kappa = koszul_morphism(cooperad, operad)
    maps = {n: kappa.element.map(n) for n in (2, 3)}
    with pytest.raises(TwistingMorphismError):
        TwistingMorphism(ConvolutionElement(cooperad, operad, maps, 0))


def test_convolution_shapes(q):
    cooperad, operad = koszul_pair("lie", q, 3)
    with pytest.raises(ShapeError):
        ConvolutionElement(cooperad, operad, {}, 0, max_arity=5)


def test_prelie_with_zero(q):
    cooperad, operad = koszul_pair("com", q, 4)
    f = random_element(cooperad, operad, 0, seed=7)
    zero = ConvolutionElement.zero(cooperad, operad, 0)
    assert prelie_star(f, zero).is_zero()
    assert prelie_star(zero, f).is_zero()


def test_derivative_vanishes_without_differentials(q):
    cooperad, operad = koszul_pair("lie", q, 4)
    f = random_element(cooperad, operad, -1, seed=3)
    assert derivative(f).is_zero()


@pytest.fixture
def bar_of_lie(q):
    operad = classical_presentation("lie", q).operad(4)
    return bar(operad), operad


@pytest.mark.parametrize("seed", [0, 1])
def test_derivative_on_the_bar_construction(bar_of_lie, seed, q):
    construction, operad = bar_of_lie
    rng = np.random.default_rng(seed)
    f = random_element(construction, operad, -1, seed=rng)
    g = random_element(construction, operad, -2, seed=rng)
    assert derivative(derivative(f)).is_zero()
    left = derivative(prelie_star(f, g))
    right = prelie_star(derivative(f), g) + prelie_star(f, derivative(g)).scale(q.sign(f.degree))
    assert (left - right).is_zero()


@pytest.mark.parametrize("seed", [0, 1])
def test_bracket_satisfies_jacobi(bar_of_lie, seed):
    construction, operad = bar_of_lie
    rng = np.random.default_rng(seed)
    f, g, h = (random_element(construction, operad, -1, seed=rng) for _ in range(3))
    sign = operad.field.sign
    total = (
        bracket(f, bracket(g, h)).scale(sign(f.degree * h.degree))
        + bracket(g, bracket(h, f)).scale(sign(g.degree * f.degree))
        + bracket(h, bracket(f, g)).scale(sign(h.degree * g.degree))
    )
    assert total.is_zero()


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_bracket_is_graded_antisymmetric(q, seed):
    cooperad, operad = koszul_pair("asc", q, 3)
    rng = np.random.default_rng(seed)
    f = random_element(cooperad, operad, 0, seed=rng)
    g = random_element(cooperad, operad, -1, seed=rng)
    assert f.is_equivariant()
    total = bracket(f, g) + bracket(g, f).scale(q.sign(f.degree * g.degree))
    assert total.is_zero()


@pytest.mark.parametrize("tag,arity", [("com", 3), ("lie", 3), ("lie", 4), ("asc", 3), ("asc", 4)])
def test_koszul_complexes_are_acyclic(q, tag, arity):
    cooperad, operad = koszul_pair(tag, q, arity)
    kappa = koszul_morphism(cooperad, operad)
    for side in (Side.LEFT, Side.RIGHT):
        assert TwistedCompositeProduct(kappa, side, arity).complex().betti().total_dim == 0
    assert twisted_composite(cooperad, operad, kappa, "left", arity).betti().total_dim == 0


def test_side_from_string():
    assert Side.from_string(" Right ") is Side.RIGHT
    with pytest.raises(ShapeError):
        Side.from_string("up")


def test_bar_of_lie(q):
    construction = bar(classical_presentation("lie", q).operad(3))
    arity_two = construction.complex(2)
    assert arity_two.betti().as_dict() == {1: 1}
    arity_three = construction.complex(3).betti()
    assert arity_three.total_dim == 1
    assert arity_three.degrees() == [2]
    assert construction.differential_failures(3) == []


def test_bar_of_asc_squares_to_zero(q):
    construction = bar(classical_presentation("asc", q).operad(4))
    assert construction.differential_failures(4) == []


def test_projection_from_bar_is_twisting(q):
    construction = bar(classical_presentation("lie", q).operad(3))
    assert bar_morphism(construction).maurer_cartan_failures() == []


def test_cobar(q):
    cooperad, operad = koszul_pair("lie", q, 3)
    construction = cobar(cooperad)
    assert construction.differential(2).is_zero()
    comparison = compare_cobar_morphism(cobar_to_operad(cooperad, operad), 3)
    assert comparison.chain_map
    assert comparison.isomorphism


@pytest.mark.parametrize("tag", ["com", "lie"])
def test_counit_of_bar_cobar(q, tag):
    construction = bar(classical_presentation(tag, q).operad(3))
    comparison = compare_cobar_morphism(counit(construction), 3)
    assert comparison.isomorphism


@pytest.mark.parametrize("tag,arity", [("com", 4), ("lie", 4), ("asc", 4)])
def test_certificate(q, tag, arity):
    seen = []
    certificate = koszulness_certificate(classical_presentation(tag, q), arity, progress=seen.append)
    assert certificate.verified
    assert certificate.label == f"verified up to arity {arity}"
    assert seen == list(range(2, arity + 1))
    report = certificate.as_dict()
    assert report["verified"]
    assert [a["arity"] for a in report["arities"]] == list(range(2, arity + 1))
