from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from arcbases.correspondences import eps_prime_table, eps_table
from arcbases.gf2 import gamma_mask
from arcbases.matchings import Matching
from arcbases.orders import OrderRelation, build_order, transitive_closure, verify_monotonicity
from conftest import as_frozen, as_set

import oracle


@st.composite
def digraphs(draw):
    size = draw(st.integers(1, 9))
    edges = draw(st.lists(st.tuples(st.integers(0, size - 1), st.integers(0, size - 1)), max_size=20))
    return size, edges


@given(digraphs())
def test_closure_is_idempotent_and_matches_fixpoint(data):
    size, edges = data
    adj = np.zeros((size, size), dtype=bool)
    for i, j in edges:
        adj[i, j] = True
    r = transitive_closure(adj)
    assert np.array_equal(transitive_closure(r), r)
    brute = oracle.closure_relation(range(size), lambda a, b: bool(adj[a, b]))
    assert {(int(i), int(j)) for i, j in zip(*np.nonzero(r))} == brute


@given(digraphs())
def test_cycle_certificate_or_linear_extension(data):
    size, edges = data
    rel = OrderRelation.from_generators(range(size), edges)
    if rel.antisymmetric:
        ext = rel.linear_extension()
        pos = {v: k for k, v in enumerate(ext)}
        assert all(pos[i] <= pos[j] for i, j in zip(*np.nonzero(rel.reach)))
    else:
        cyc = rel.cycle
        gens = set(rel.generators)
        assert cyc[0] == cyc[-1]
        assert all((a, b) in gens for a, b in zip(cyc, cyc[1:]))


def test_n3_examples():
    leq = build_order(3, "leq_XN1")
    empty = Matching(3, ())
    for b in leq.carrier:
        assert leq.leq(empty, b) and leq.leq(b, b)
    a, b = Matching.of(3, ["12"]), Matching.of(3, ["23"])
    assert not leq.leq(a, b) and not leq.leq(b, a)


@pytest.mark.parametrize("n", [3, 5, 7])
@pytest.mark.parametrize("flavor", ["leq_XN1", "preceq_XN2"])
def test_orders_match_naive_closure(n, flavor):
    rel = build_order(n, flavor)
    table = eps_table(n) if flavor == "leq_XN1" else eps_prime_table(n)
    image = {as_set(b): as_frozen(table.forward[b]) for b in rel.carrier}
    items = list(image)
    spans = {b: oracle.span(b) for b in items}
    brute = oracle.closure_relation(items, lambda lo, hi: image[lo] in spans[hi])
    got = {(as_set(rel.carrier[i]), as_set(rel.carrier[j])) for i, j in zip(*np.nonzero(rel.reach))}
    assert got == brute
    assert rel.antisymmetric


@pytest.mark.parametrize("n", [3, 5, 7])
@pytest.mark.parametrize("sign", ["+", "-"])
def test_bar_orders_match_naive_closure(n, sign):
    rel = build_order(n, "bar_plus" if sign == "+" else "bar_minus")
    pre = build_order(n, "preceq_XN2")
    back = eps_prime_table(n).backward

    def height(y):
        g = gamma_mask(y.rep.bits)
        return abs(g) if sign == "+" else abs(g + 1)

    def step(lo, hi):
        return pre.leq(back[lo.rep], back[hi.rep]) or height(lo) < height(hi)

    brute = oracle.closure_relation(rel.carrier, step)
    got = {(rel.carrier[i], rel.carrier[j]) for i, j in zip(*np.nonzero(rel.reach))}
    assert got == brute
    assert rel.antisymmetric


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_monotonicity_reports(n):
    reports = verify_monotonicity(n)
    assert [r.line() for r in reports if not r.ok] == []
    assert {r.statement for r in reports} >= {"2.5a", "2.5b", "2.10b", "2.10c", "2.14a", "3.2a", "3.3a", "3.4a", "3.6b", "3.7b"}
