from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from arcbases.gf2 import elements_of, mask_of
from arcbases.matchings import (
    Arc,
    Matching,
    UniquenessError,
    admissible_sequences,
    covered,
    decompose,
    enumerate_matchings,
    star_sequence,
)
from conftest import as_set

import oracle

INVOLUTIONS = {3: 4, 5: 26, 7: 232, 9: 2620}


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_enumeration_counts_and_oracle(n):
    ms = enumerate_matchings(n)
    assert len(ms) == INVOLUTIONS[n]
    assert len(set(ms)) == len(ms)
    assert {as_set(b) for b in ms} == set(oracle.all_matchings(n))
    for b in ms:
        assert bin(b.supp).count("1") == 2 * len(b)
        assert len(b.b0) + len(b.b1) == len(b)


def test_written_form():
    assert Arc.parse("31") == Arc(1, 3)
    assert Arc(1, 3).written == (3, 1)
    assert Arc(4, 5).written == (4, 5)
    assert str(Arc(2, 4)) == "42"
    for a in (Arc(1, 2), Arc(1, 3), Arc(2, 7)):
        assert Arc.parse(str(a)) == a


def test_invalid_matchings_rejected():
    with pytest.raises(ValueError):
        Matching.of(5, ["12", "23"])
    with pytest.raises(ValueError):
        Matching.of(3, ["14"])
    with pytest.raises(ValueError):
        Arc.make(2, 2)


def test_decompose_examples():
    supp, b0, b1 = decompose(Matching.of(5, ["31", "45"]))
    assert elements_of(supp) == (1, 3, 4, 5)
    assert b0 == (Arc(1, 3),) and b1 == (Arc(4, 5),)
    assert decompose(Matching(5, ())) == (0, (), ())
    assert decompose(Matching.of(3, ["12"]))[1:] == ((), (Arc(1, 2),))


def test_covered_examples():
    assert covered({1, 2}, [Arc(1, 2)], "zero") is True
    assert covered({4}, [], "one") == (True, 4)
    assert covered({2, 3}, [Arc(1, 4)], "zero") is False
    assert covered(set(), [Arc(1, 2)], "zero") is True
    assert covered(set(), [Arc(1, 2)], "one") == (False, None)
    with pytest.raises(ValueError):
        covered({1, 3}, [Arc(1, 3)])
    with pytest.raises(UniquenessError):
        covered({1, 2, 3}, [Arc(1, 2), Arc(2, 3)], "one")


@st.composite
def subset_and_odd_arcs(draw):
    n = draw(st.sampled_from([5, 7, 9]))
    b = draw(st.sampled_from(enumerate_matchings(n)))
    x = draw(st.sets(st.integers(1, n)))
    return x, b.b1


@given(subset_and_odd_arcs())
def test_covering_agrees_with_subset_search(data):
    x, b1 = data
    arcset = [frozenset((a.lo, a.hi)) for a in b1]
    assert covered(x, b1, "zero") == oracle.zero_covered(x, arcset)
    points = oracle.one_covered_points(x, arcset)
    if len(points) > 1:
        with pytest.raises(UniquenessError):
            covered(x, b1, "one")
    else:
        assert covered(x, b1, "one") == ((True, points[0]) if points else (False, None))


def test_covering_exhaustive_small():
    for b in enumerate_matchings(7):
        arcset = [frozenset((a.lo, a.hi)) for a in b.b1]
        for m in range(1 << 7):
            x = set(elements_of(m))
            assert covered(m, b.b1, "zero") == oracle.zero_covered(x, arcset)


def test_star_examples():
    assert star_sequence(Matching.of(3, ["31"])).seq == (1, 3)
    assert star_sequence(Matching.of(5, ["42", "51"])).seq == (1, 2, 4, 5)
    assert star_sequence(Matching.of(5, ["14"])) is None
    assert star_sequence(Matching(5, ())).seq == ()


def test_crossing_even_arcs_are_not_starred():
    assert star_sequence(Matching.of(5, ["31", "42"])) is None


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_star_matches_oracle_and_is_unique(n):
    for b in enumerate_matchings(n):
        got = star_sequence(b, audit=True)
        want = oracle.star(as_set(b))
        assert (got.seq if got else None) == want
        if got is None:
            continue
        seq, s = got.seq, got.s
        assert list(seq) == sorted(set(seq))
        for half in (seq[:s], seq[s:]):
            assert all((x - y) % 2 for x, y in zip(half, half[1:]))
        if s:
            assert (seq[0] - seq[-1]) % 2 == 0
        assert len(admissible_sequences(b)) == 1
