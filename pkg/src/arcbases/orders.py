"""Partial orders generated by span containment, and their antisymmetry certificates."""

from __future__ import annotations

import graphlib
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Literal, Sequence

import numpy as np

from .correspondences import eps_prime_table, eps_table, phi, span_members
from .families import labels
from .gf2 import EvenSubset, Sign, check_n, gamma_mask, orbits
from .report import Report, Tally

Flavor = Literal["leq_XN1", "preceq_XN2", "bar_plus", "bar_minus"]


def transitive_closure(adj: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a boolean adjacency matrix by repeated squaring."""
    r = np.asarray(adj, dtype=bool) | np.eye(len(adj), dtype=bool)
    while True:
        f = r.astype(np.float32)
        nxt = (f @ f) > 0
        if np.array_equal(nxt, r):
            return r
        r = nxt


def find_cycle(edges: Sequence[tuple[int, int]], a: int, b: int) -> list[int]:
    """A directed cycle through a and b (given b is reachable from a and back)."""

    succ: dict[int, list[int]] = {}
    for i, j in edges:
        succ.setdefault(i, []).append(j)

    def path(src: int, dst: int) -> list[int]:
        prev = {src: src}
        q = deque([src])
        while q:
            v = q.popleft()
            if v == dst:
                break
            for w in succ.get(v, ()):
                if w not in prev:
                    prev[w] = v
                    q.append(w)
        out = [dst]
        while out[-1] != src:
            out.append(prev[out[-1]])
        return out[::-1]

    there = path(a, b)
    back = path(b, a)
    return there + back[1:]


@dataclass(frozen=True, eq=False)
class OrderRelation:
    """A finite preorder given by generator edges (i, j), read i <= j, and their closure.

    ``cycle`` is None when the closure is antisymmetric; otherwise it lists
    carrier indices of a directed cycle of generators.
    """

    carrier: tuple[Hashable, ...]
    generators: tuple[tuple[int, int], ...]
    reach: np.ndarray
    cycle: tuple[int, ...] | None = None

    @classmethod
    def from_generators(
        cls, carrier: Sequence[Hashable], generators: Sequence[tuple[int, int]]
    ) -> OrderRelation:
        size = len(carrier)
        adj = np.zeros((size, size), dtype=bool)
        gens = tuple(sorted(set((i, j) for i, j in generators if i != j)))
        for i, j in gens:
            adj[i, j] = True
        reach = transitive_closure(adj)
        both = reach & reach.T
        np.fill_diagonal(both, False)
        cycle = None
        if both.any():
            a, b = (int(v) for v in np.argwhere(both)[0])
            cycle = tuple(find_cycle(gens, a, b))
        return cls(tuple(carrier), gens, reach, cycle)

    @property
    def antisymmetric(self) -> bool:
        return self.cycle is None

    def index(self, element: Hashable) -> int:
        return self._positions()[element]

    def _positions(self) -> dict[Hashable, int]:
        pos = self.__dict__.get("_pos")
        if pos is None:
            pos = {e: i for i, e in enumerate(self.carrier)}
            object.__setattr__(self, "_pos", pos)
        return pos

    def leq(self, a: Hashable, b: Hashable) -> bool:
        p = self._positions()
        return bool(self.reach[p[a], p[b]])

    def relabel(self, carrier: Sequence[Hashable]) -> OrderRelation:
        if len(carrier) != len(self.carrier):
            raise ValueError("relabelling must keep the carrier size")
        return OrderRelation(tuple(carrier), self.generators, self.reach, self.cycle)

    def restrict(self, indices: Sequence[int]) -> OrderRelation:
        """Induced order on a subset of the carrier (closure inherited, not recomputed)."""
        idx = list(indices)
        where = {old: new for new, old in enumerate(idx)}
        gens = tuple((where[i], where[j]) for i, j in self.generators if i in where and j in where)
        return OrderRelation(
            tuple(self.carrier[i] for i in idx), gens, self.reach[np.ix_(idx, idx)], self.cycle
        )

    def linear_extension(self) -> list[int]:
        """Carrier indices in an order compatible with ``reach``."""
        if self.cycle is not None:
            raise ValueError("no linear extension of a relation with a cycle")
        ts = graphlib.TopologicalSorter({j: () for j in range(len(self.carrier))})
        for i, j in zip(*np.nonzero(self.reach)):
            if i != j:
                ts.add(int(j), int(i))
        return list(ts.static_order())


@lru_cache(maxsize=None)
def build_order(n: int, flavor: Flavor) -> OrderRelation:
    check_n(n)
    if flavor in ("leq_XN1", "preceq_XN2"):
        table = eps_table(n) if flavor == "leq_XN1" else eps_prime_table(n)
        carrier = table.carrier()
        pos = {x.bits: i for i, x in enumerate(sorted(table.backward))}
        gens = []
        # X' <= X is generated by X' in <B> where B is the preimage of X
        for j, b in enumerate(carrier):
            for m in span_members(b):
                i = pos[m]
                if i != j:
                    gens.append((i, j))
        return OrderRelation.from_generators(carrier, gens)
    if flavor in ("bar_plus", "bar_minus"):
        sign: Sign = "+" if flavor == "bar_plus" else "-"
        return _bar_order(n, sign)
    raise ValueError(f"unknown order flavor {flavor!r}")


def vector_order(n: int, flavor: Literal["leq_XN1", "preceq_XN2"]) -> OrderRelation:
    """The same order transported to E_N through eps or 'eps."""
    rel = build_order(n, flavor)
    table = eps_table(n) if flavor == "leq_XN1" else eps_prime_table(n)
    return rel.relabel([table.forward[b] for b in rel.carrier])


def _height(x: EvenSubset, sign: Sign) -> int:
    g = gamma_mask(x.bits)
    return abs(g) if sign == "+" else abs(g + 1)


def _bar_order(n: int, sign: Sign) -> OrderRelation:
    preceq = vector_order(n, "preceq_XN2")
    orbs = orbits(n, sign)
    reps = [o.rep for o in orbs]
    idx = [preceq.index(r) for r in reps]
    sub = preceq.reach[np.ix_(idx, idx)]
    h = [_height(r, sign) for r in reps]
    gens = [
        (i, j)
        for i in range(len(orbs))
        for j in range(len(orbs))
        if i != j and (sub[i, j] or h[i] < h[j])
    ]
    return OrderRelation.from_generators(orbs, gens)


def _carrier_str(rel: OrderRelation, cycle: Sequence[int]) -> str:
    return " -> ".join(str(rel.carrier[i]) for i in cycle)


def _antisymmetry_report(statement: str, n: int, rel: OrderRelation) -> Report:
    t = Tally(statement, n)
    t.check(rel.antisymmetric, lambda: "cycle " + _carrier_str(rel, rel.cycle or ()))
    t.counts.update(elements=len(rel.carrier), generators=len(rel.generators), related=int(rel.reach.sum()))
    return t.report()


def _related_pairs(rel: OrderRelation):
    for i, j in zip(*np.nonzero(rel.reach)):
        yield rel.carrier[int(i)], rel.carrier[int(j)]


def verify_monotonicity(n: int) -> list[Report]:
    check_n(n)
    labs = labels(n)
    leq = build_order(n, "leq_XN1")
    pre = build_order(n, "preceq_XN2")

    reports = [_antisymmetry_report("2.5a", n, leq)]

    t = Tally("2.5b", n)
    for lo, hi in _related_pairs(leq):
        t.check(len(lo.b0) <= len(hi.b0), lambda lo=lo, hi=hi: f"{lo} <= {hi}")
    reports.append(t.report())

    reports.append(_antisymmetry_report("2.10b", n, pre))

    t = Tally("2.10c", n)
    for lo, hi in _related_pairs(pre):
        t.check(leq.leq(phi(lo), phi(hi)), lambda lo=lo, hi=hi: f"{lo} <= {hi} but phi images unrelated")
    reports.append(t.report())

    t214 = Tally("2.14a", n)
    t32 = Tally("3.2a", n)
    t33 = Tally("3.3a", n)
    t34 = Tally("3.4a", n)
    for lo, hi in _related_pairs(pre):
        a, b = labs[lo], labs[hi]
        w = lambda lo=lo, hi=hi: f"{lo} <= {hi}"  # noqa: E731
        if b.plus is not None:
            t214.check(a.plus is not None, w)
            if a.plus is not None:
                tp, t_ = a.plus.t, b.plus.t
                if t_ < 0:
                    t32.check(tp == t_ or abs(tp) < abs(t_), w)
                if t_ == 0 and b.plus.refinement == "prime":
                    t33.check(a.plus.t == 0 and a.plus.refinement == "prime", w)
        if b.minus is not None and a.minus is not None and b.minus >= 0:
            tp, t_ = a.minus, b.minus
            t34.check(tp == t_ or abs(tp + 1) < abs(t_ + 1), w)
    reports += [t214.report(), t32.report(), t33.report(), t34.report()]

    for sign, statement in (("+", "3.6b"), ("-", "3.7b")):
        rel = build_order(n, "bar_plus" if sign == "+" else "bar_minus")
        reports.append(_antisymmetry_report(statement, n, rel))
        t = Tally(f"{statement}-height", n)
        for lo, hi in _related_pairs(rel):
            t.check(
                _height(lo.rep, sign) <= _height(hi.rep, sign),
                lambda lo=lo, hi=hi: f"{lo} below {hi} but height drops",
            )
        reports.append(t.report())
    return reports
