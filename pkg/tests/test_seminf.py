from collections import defaultdict
from itertools import product

import pytest
import sympy

from operadic.exceptions import SemiInfiniteError, TruncationError
from operadic.palgebra import trivial_module
from operadic.seminf import (
    SemiInfiniteStructure,
    resolution_property_checks,
    semiinfinite_complex,
    semiinfinite_homology,
    validate_semiinfinite,
)


def compositions(total, parts):
    """Tuples of `parts` positive integers summing to `total`."""
    if parts == 0:
        return [()] if total == 0 else []
    return [
        (first,) + rest
        for first in range(1, total - parts + 2)
        for rest in compositions(total - first, parts - 1)
    ]


def polynomial_tor(max_degree):
    """dim Tor_n^{k[x]}(k, k) in x-degree D, from the normalized bar complex
    [x^a1 | ... | x^an] with d = sum_i (-1)^i (merge of slots i and i + 1)."""
    tor = {}
    for total in range(max_degree + 1):
        bases = {n: compositions(total, n) for n in range(total + 2)}
        ranks = {}
        for n in range(1, total + 1):
            rows = {c: k for k, c in enumerate(bases[n - 1])}
            matrix = sympy.zeros(len(bases[n - 1]), len(bases[n]))
            for column, c in enumerate(bases[n]):
                for i in range(1, n):
                    merged = c[: i - 1] + (c[i - 1] + c[i],) + c[i + 1:]
                    matrix[rows[merged], column] += (-1) ** i
            ranks[n] = matrix.rank() if matrix.shape[0] and matrix.shape[1] else 0
        for n in range(total + 1):
            dim = len(bases[n]) - ranks.get(n, 0) - ranks.get(n + 1, 0)
            if dim:
                tor[(n, total)] = dim
    return tor


def abelian_oracle(weights, minus_step, plus_step, max_degree=6):
    """Semi-infinite homology of an abelian algebra on one generator of each sign
    with trivial coefficients: Ext over k[plus] of the adjoint module against k,
    tensored (Kunneth) with Tor over k[minus] of k against the adjoint module."""
    tor = polynomial_tor(max_degree)
    hom_side = defaultdict(int)
    chain_side = defaultdict(int)
    for (n, total), dim in tor.items():
        for w in weights:
            hom_side[(n, -(w + total * plus_step))] += dim
            chain_side[(n, w + total * minus_step)] += dim
    dims = defaultdict(lambda: defaultdict(int))
    for ((p, w1), a), ((q, w2), b) in product(hom_side.items(), chain_side.items()):
        dims[w1 + w2][q - p] += a * b
    return dims


@pytest.fixture
def abelian_structure(abelian2):
    return SemiInfiniteStructure.from_subalgebras(abelian2, ["xm"], ["xp"], "abelian2")


@pytest.fixture
def sl2_structure(sl2):
    return SemiInfiniteStructure.from_subalgebras(sl2, ["f", "h"], ["e"], "sl2")


def test_oracle_tor_of_polynomial_ring():
    assert polynomial_tor(4) == {(0, 0): 1, (1, 1): 1}


def test_sl2_certificate(sl2_structure):
    certificate = validate_semiinfinite(sl2_structure, bound=4, max_weight=4)
    assert certificate.passed, certificate.violations
    assert certificate.continuity[(-2, 2)] == (0, 2)
    assert certificate.dims["U(N)"] == {0: 1, 2: 1, 4: 1}
    assert certificate.as_dict()["conditions"]["5"]["holds"]


def test_swapped_structure_fails(sl2_structure):
    certificate = validate_semiinfinite(sl2_structure.swapped(), bound=4, max_weight=4)
    assert not certificate.passed
    assert 3 in certificate.failed
    assert certificate.first_failure == certificate.failed[0]


def test_abelian_straightening_is_trivial(abelian_structure):
    certificate = validate_semiinfinite(abelian_structure, max_weight=4)
    assert certificate.passed
    assert certificate.continuity
    assert all(bounds == (0, 0) for bounds in certificate.continuity.values())


def test_resolution_checks(abelian_structure, abelian2):
    report = resolution_property_checks(abelian_structure, trivial_module(abelian2), max_level=3, max_weight=3)
    assert report.passed
    assert report.checks["a"].generators[0]


def test_corrupted_face_breaks_exactness(abelian_structure, abelian2):
    def corrupt(bar):
        bar.simplicial.faces[(1, 0)] = bar.simplicial.faces[(1, 1)]

    report = resolution_property_checks(
        abelian_structure, trivial_module(abelian2), max_level=3, max_weight=3, fault=corrupt,
    )
    assert not report.passed
    assert not report.checks["b"].holds
    assert report.checks["a"].holds


def test_abelian_homology_matches_oracle(abelian_structure, abelian2):
    result = semiinfinite_homology(
        abelian_structure, trivial_module(abelian2), range(-2, 3), window=(-2, 2), max_level=5, max_weight=4,
    )
    expected = abelian_oracle(abelian2.weights, minus_step=-1, plus_step=1)
    compared = 0
    for weight in range(-2, 3):
        for degree, dim in result.verified(weight).items():
            assert dim == expected[weight][degree], (weight, degree)
            compared += 1
    assert compared >= 10
    assert result.verified(0)[0] == 3
    assert result.verified(-1)[1] == 2


def test_complex_bookkeeping(abelian_structure, abelian2):
    component = semiinfinite_complex(
        abelian_structure, trivial_module(abelian2), 0, window=(-1, 1), max_level=3, max_weight=3,
    )
    assert component.interior == [0]
    assert component.unverified == [-1, 1]
    assert sum(component.complex.dim(n) for n in (-1, 0, 1)) == sum(component.component_dims.values())


def test_invalid_structure_is_refused(sl2_structure, sl2):
    with pytest.raises(SemiInfiniteError):
        semiinfinite_homology(sl2_structure.swapped(), trivial_module(sl2), 0, pbw_bound=3)


def test_sl2_needs_a_pbw_bound(sl2_structure, sl2):
    with pytest.raises(TruncationError):
        semiinfinite_homology(sl2_structure, trivial_module(sl2), 0, max_level=2, max_weight=2)
