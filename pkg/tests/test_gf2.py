from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from arcbases.gf2 import (
    DimensionError,
    EvenSubset,
    StratumFilter,
    bang,
    elements_of,
    enumerate_vectors,
    even_masks,
    gamma,
    in_prime_part,
    mask_of,
    orbits,
    pairing,
    sign_of,
    span,
)

import oracle

NS = st.sampled_from([3, 5, 7, 9])


@st.composite
def vectors(draw, n=None, count=1):
    n = draw(NS) if n is None else n
    masks = even_masks(n)
    return n, [EvenSubset(n, draw(st.sampled_from(masks))) for _ in range(count)]


def test_cardinality_and_order():
    for n in (3, 5, 7, 9):
        assert len(even_masks(n)) == 2 ** (n - 1)
        assert list(even_masks(n)) == sorted(even_masks(n))


def test_rejects_odd_sets_and_even_n():
    with pytest.raises(ValueError):
        EvenSubset.of(5, [1])
    with pytest.raises(ValueError):
        EvenSubset.of(3, [1, 4])
    with pytest.raises(ValueError):
        even_masks(4)


def test_mask_roundtrip():
    assert elements_of(mask_of([1, 3, 5])) == (1, 3, 5)
    assert EvenSubset.of(5, [2, 4]).elements == (2, 4)
    assert str(EvenSubset.of(5, [])) == "{}"


@given(vectors(count=3))
def test_addition_is_an_f2_group(data):
    n, (x, y, z) = data
    zero = EvenSubset(n, 0)
    assert x + zero == x
    assert x + x == zero
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)


@given(vectors(count=3))
def test_pairing_bilinear_symmetric_alternating(data):
    _, (x, y, z) = data
    assert pairing(x + y, z) == (pairing(x, z) + pairing(y, z)) % 2
    assert pairing(x, y) == pairing(y, x)
    assert pairing(x, x) == 0


@pytest.mark.parametrize("n", [3, 5, 7])
def test_pairing_nondegenerate_with_radical_on_plus_part(n):
    vs = enumerate_vectors(n)
    radical = [x for x in vs if all(pairing(x, y) == 0 for y in vs)]
    assert radical == [EvenSubset(n, 0)]
    plus = enumerate_vectors(n, StratumFilter(sign="+"))
    rad_plus = [x for x in plus if all(pairing(x, y) == 0 for y in plus)]
    assert rad_plus == [EvenSubset(n, 0), EvenSubset.of(n, range(1, n))]


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_gamma_matches_definition(n):
    for x in enumerate_vectors(n):
        assert gamma(x) == oracle.gamma(frozenset(x.elements))
        assert gamma(x) % 2 == 0


@pytest.mark.parametrize("n", [5, 7, 9])
def test_bang_strata(n):
    for x in enumerate_vectors(n):
        y = bang(x)
        assert bang(y) == x and y != x
        assert sign_of(y.bits, n) == sign_of(x.bits, n)
        if sign_of(x.bits, n) == "+":
            assert gamma(y) == -gamma(x)
        else:
            assert gamma(y) == -gamma(x) - 2
        assert in_prime_part(x.bits, n) != in_prime_part(y.bits, n)


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_orbits_partition_each_sign(n):
    for sign in "+-":
        orbs = orbits(n, sign)
        assert len(orbs) == 2 ** (n - 3)
        members = [m for o in orbs for m in o.members]
        assert len(set(members)) == 2 ** (n - 2)
        assert all(in_prime_part(o.rep.bits, n) for o in orbs)


def test_stratum_filter_example():
    got = enumerate_vectors(5, StratumFilter(gamma=2))
    assert got == [EvenSubset.of(5, [2, 4])]
    with pytest.raises(ValueError):
        StratumFilter(gamma=1)
    with pytest.raises(ValueError):
        StratumFilter(refinement="prime")


@given(vectors(count=4))
def test_span_matches_brute_force(data):
    n, vs = data
    s = span(n, vs)
    brute = oracle.span([frozenset(v.elements) for v in vs])
    assert {frozenset(elements_of(m)) for m in s.elements()} == brute
    assert s.dim == len(brute).bit_length() - 1
    for v in vs:
        assert v in s


def test_span_requires_same_ambient():
    with pytest.raises(DimensionError):
        span(5, [EvenSubset.of(3, [1, 2])])
    with pytest.raises(DimensionError):
        EvenSubset.of(3, [1, 2]) + EvenSubset.of(5, [1, 2])
