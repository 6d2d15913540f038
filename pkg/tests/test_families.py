from __future__ import annotations

from collections import Counter

import pytest

from arcbases.families import (
    classify,
    embed,
    enumerate_family,
    label,
    labels,
    pr_set,
    primed_family,
    sharp_family,
    verify_sharp,
)
from arcbases.matchings import Matching, enumerate_matchings
from conftest import as_set

import oracle


def ms(n, *written):
    return Matching.of(n, written)


def test_classify_examples():
    lab = classify(Matching(3, ()))
    assert lab.xn1 == 0 and lab.plus.t == 0 and lab.plus.refinement == "prime"
    lab = classify(ms(5, "42"))
    assert lab.plus.u == 1 and lab.plus.t == 2 and not lab.in_xn1
    lab = classify(ms(5, "31"))
    assert lab.plus.u == 4 and lab.plus.t == -2


def test_small_families_by_hand():
    assert set(enumerate_family(3, "XN1")) == {Matching(3, ()), ms(3, "12"), ms(3, "23"), ms(3, "31")}
    assert set(enumerate_family(3, "XN2minus")) == {ms(3, "23"), ms(3, "31")}
    assert set(enumerate_family(5, "XN2plus")) == {
        Matching(5, ()), ms(5, "12"), ms(5, "23"), ms(5, "34"),
        ms(5, "12", "34"), ms(5, "14", "23"), ms(5, "31"), ms(5, "42"),
    }


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_families_match_oracle(n):
    assert {as_set(b) for b in enumerate_family(n, "XN1")} == oracle.xn1(n)
    plus = oracle.xn2_plus(n)
    minus = oracle.xn2_minus(n)
    assert {as_set(b) for b in enumerate_family(n, "XN2plus")} == plus
    assert {as_set(b) for b in enumerate_family(n, "XN2minus")} == minus
    assert not plus & minus
    for b, lab in labels(n).items():
        s = as_set(b)
        if lab.in_xn1:
            assert lab.xn1 == oracle.stratum_xn1(s)
        if lab.plus is not None:
            assert lab.plus.t == oracle.stratum_plus(s, n)
            if b.b0:
                assert lab.plus.u == oracle.u_b(s, n)
        if lab.minus is not None:
            assert lab.minus == oracle.stratum_minus(s)


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_sizes_and_strata_partition(n):
    for tag in ("XN1", "XN2plus", "XN2minus"):
        fam = enumerate_family(n, tag)
        by_t = Counter()
        for b in fam:
            lab = label(b)
            by_t[{"XN1": lab.xn1, "XN2plus": lab.plus and lab.plus.t, "XN2minus": lab.minus}[tag]] += 1
        assert all(t % 2 == 0 for t in by_t)
        assert sum(len(enumerate_family(n, tag, t)) for t in by_t) == len(fam)
    assert len(enumerate_family(n, "XN1")) == 2 ** (n - 1)
    assert len(enumerate_family(n, "XN2")) == 2 ** (n - 1)
    assert len(enumerate_family(n, "XN2plus")) == 2 ** (n - 2)


@pytest.mark.parametrize("n", [5, 7, 9])
def test_u_parity_notes(n):
    for b in enumerate_family(n, "XN2plus"):
        lab = label(b)
        if not b.b0:
            continue
        first, last = lab.star.first, lab.star.last
        # case (i) puts u before i_1, case (ii) after i_2s
        if lab.plus.u < first:
            assert first % 2 == 0 and lab.plus.u % 2 == 1
        else:
            assert last % 2 == 1 and lab.plus.u % 2 == 0


def test_embedding_examples():
    assert embed(1, Matching(3, ())) == ms(5, "12")
    assert embed(2, ms(3, "12")) == ms(5, "14", "23")
    assert embed(3, ms(3, "23")) == ms(5, "25", "34")
    with pytest.raises(ValueError):
        embed(5, Matching(3, ()))


def test_pr_sets():
    assert pr_set(5, "+") == [Matching(5, ()), ms(5, "31")]
    assert pr_set(5, "-") == [ms(5, "45")]
    assert pr_set(7, "-") == [ms(7, "67"), ms(7, "67", "51", "42")]


def test_sharp_examples():
    assert set(sharp_family(5, "+")) == {Matching(5, ()), ms(5, "31"), ms(5, "12"), ms(5, "23")}
    assert set(sharp_family(5, "-")) == {ms(5, "45"), ms(5, "45", "12"), ms(5, "45", "23"), ms(5, "25", "34")}
    assert sharp_family(3, "+") == [Matching(3, ())]
    assert sharp_family(3, "-") == [ms(3, "23")]


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_sharp_matches_oracle_and_primed_family(n):
    for sign in "+-":
        got = {as_set(b) for b in sharp_family(n, sign)}
        assert got == oracle.sharp(n, sign)
        assert got == {as_set(b) for b in primed_family(n, sign)}


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_verify_sharp_reports_pass(n):
    reports = verify_sharp(n)
    assert all(r.status == "pass" for r in reports), [r.line() for r in reports if not r.ok]
    by_id = {r.statement: r for r in reports}
    if n == 5:
        assert by_id["Thm4.3"].counts["family"] == 4


def test_matchings_outside_star_have_empty_labels():
    for b in enumerate_matchings(7):
        if oracle.star(as_set(b)) is None:
            lab = classify(b)
            assert not lab.in_xn1 and not lab.in_xn2
