from __future__ import annotations

import pytest

from arcbases.correspondences import (
    FamilyError,
    arc_closure,
    eps,
    eps_prime,
    eps_prime_table,
    eps_table,
    in_span,
    phi,
    phi_inv,
    span_members,
    verify_correspondences,
)
from arcbases.families import enumerate_family, label
from arcbases.gf2 import EvenSubset, even_masks, gamma, sign_of
from arcbases.matchings import Arc, Matching
from conftest import as_frozen, as_set

import oracle


def ms(n, *written):
    return Matching.of(n, written)


def es(n, *elements):
    return EvenSubset.of(n, elements)


def test_closure_examples():
    assert arc_closure(Arc(1, 2), 5) == es(5, 1, 2)
    assert arc_closure(Arc(1, 3), 5) == es(5, 1, 3, 4, 5)
    assert arc_closure(Arc(2, 5), 5) == es(5, 2, 3, 4, 5)


def test_eps_examples():
    assert eps(Matching(5, ())) == es(5)
    assert eps(ms(3, "31")) == es(3, 1, 3)
    assert eps(ms(5, "42", "51")) == es(5, 2, 4)
    table = {b: eps(b) for b in enumerate_family(3, "XN1")}
    assert table == {
        Matching(3, ()): es(3), ms(3, "12"): es(3, 1, 2), ms(3, "23"): es(3, 2, 3), ms(3, "31"): es(3, 1, 3),
    }


def test_eps_prime_and_phi_examples():
    assert eps_prime(Matching(5, ())) == es(5)
    assert eps_prime(ms(5, "42")) == es(5, 2, 4)
    assert eps_prime(ms(5, "31")) == es(5, 1, 3)
    assert phi(Matching(5, ())) == Matching(5, ())
    assert phi(ms(5, "42")) == ms(5, "42", "15")
    assert phi(ms(5, "31")) == ms(5, "31", "45")
    assert phi_inv(ms(5, "42", "15")) == ms(5, "42")
    assert phi_inv(ms(3, "23")) == ms(3, "23")
    assert phi_inv(Matching(3, ())) == Matching(3, ())


def test_domain_errors():
    with pytest.raises(FamilyError):
        eps(ms(5, "42"))  # not in X_{N-1}
    with pytest.raises(FamilyError):
        eps_prime(ms(5, "14"))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_maps_match_oracle(n):
    for b in enumerate_family(n, "XN1"):
        assert as_frozen(eps(b)) == oracle.eps(as_set(b), n)
    for b in enumerate_family(n, "XN2"):
        assert as_frozen(eps_prime(b)) == oracle.eps_prime(as_set(b), n)
        assert as_set(phi(b)) == oracle.phi(as_set(b), n)


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_span_membership_matches_oracle(n):
    for b in enumerate_family(n, "XN2")[:200]:
        brute = oracle.span(as_set(b))
        assert {frozenset(EvenSubset(n, m).elements) for m in span_members(b)} == brute
        for m in even_masks(n):
            assert in_span(m, b) == (frozenset(EvenSubset(n, m).elements) in brute)


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_bijections(n):
    e1, e2 = eps_table(n), eps_prime_table(n)
    assert len(e1.forward) == len(e1.backward) == 2 ** (n - 1)
    assert len(e2.forward) == len(e2.backward) == 2 ** (n - 1)
    assert set(e1.backward) == set(e2.backward) == {EvenSubset(n, m) for m in even_masks(n)}
    for b, x in e2.forward.items():
        assert e1.forward[phi(b)] == x
        assert phi_inv(phi(b)) == b
        lab = label(b)
        assert gamma(x) == lab.xn2_t and sign_of(x.bits, n) == lab.xn2_sign
    for b, x in e1.forward.items():
        assert gamma(x) == label(b).xn1
        assert phi(phi_inv(b)) == b


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_verifier_passes(n):
    reports = verify_correspondences(n)
    assert [r.statement for r in reports if not r.ok] == []
    if n == 3:
        assert reports[2].counts["family"] == 4
