"""0/1 transition matrices between delta functions and span indicators.

Column X of ``c`` is the indicator of <X> written in the delta basis
(rows X'), and likewise for ``cprime``.  ``cplus`` / ``cminus`` live on the
orbit sets and are obtained by summing 'c over the two members of each row
orbit against the primed representative of the column orbit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Literal, Sequence

import numpy as np

from .correspondences import eps_prime_table, eps_table, span_members
from .gf2 import (
    EvenSubset,
    Orbit,
    Sign,
    bang_mask,
    check_n,
    even_masks,
    gamma_mask,
    in_prime_part,
    orbit_index,
    orbits,
    sign_of,
)
from .orders import OrderRelation, build_order, vector_order
from .report import Report, Tally

Kind = Literal["c", "cprime", "cplus", "cminus"]


class CarrierMismatch(ValueError):
    """A matrix and an order are indexed by different sets."""


@dataclass(frozen=True, eq=False)
class F2Matrix:
    """Square matrix with entries in {0, 1}; ``entries[i, j]`` pairs row carrier[i] with column carrier[j]."""

    carrier: tuple[Hashable, ...]
    entries: np.ndarray

    def __post_init__(self) -> None:
        size = len(self.carrier)
        if self.entries.shape != (size, size):
            raise ValueError(f"entries shape {self.entries.shape} vs carrier size {size}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return self.carrier == other.carrier and np.array_equal(self.entries, other.entries)

    def submatrix(self, indices: Sequence[int]) -> F2Matrix:
        idx = list(indices)
        return F2Matrix(tuple(self.carrier[i] for i in idx), self.entries[np.ix_(idx, idx)])

    def column(self, j: int) -> np.ndarray:
        return self.entries[:, j].astype(np.int64)


def _span_matrix(n: int, primed: bool) -> F2Matrix:
    table = eps_prime_table(n) if primed else eps_table(n)
    vecs = sorted(table.backward)
    pos = {x.bits: i for i, x in enumerate(vecs)}
    m = np.zeros((len(vecs), len(vecs)), dtype=np.uint8)
    for j, x in enumerate(vecs):
        for mask in span_members(table.backward[x]):
            m[pos[mask], j] = 1
    return F2Matrix(tuple(vecs), m)


@lru_cache(maxsize=None)
def orbit_sums(n: int, sign: Sign) -> np.ndarray:
    """Integer orbit sums of 'c before reduction mod 2 (rows Y', columns Y)."""
    cp = transition_matrix(n, "cprime")
    pos = {x.bits: i for i, x in enumerate(cp.carrier)}
    orbs = orbits(n, sign)
    out = np.zeros((len(orbs), len(orbs)), dtype=np.int64)
    for j, y in enumerate(orbs):
        col = pos[y.rep.bits]
        for i, yp in enumerate(orbs):
            out[i, j] = sum(int(cp.entries[pos[x.bits], col]) for x in yp.members)
    return out


@lru_cache(maxsize=None)
def transition_matrix(n: int, kind: Kind) -> F2Matrix:
    check_n(n)
    if kind == "c":
        return _span_matrix(n, primed=False)
    if kind == "cprime":
        return _span_matrix(n, primed=True)
    if kind in ("cplus", "cminus"):
        sign: Sign = "+" if kind == "cplus" else "-"
        sums = orbit_sums(n, sign)
        return F2Matrix(orbits(n, sign), (sums % 2).astype(np.uint8))
    raise ValueError(f"unknown matrix kind {kind!r}")


def psi_span(n: int, x: EvenSubset, primed: bool = False) -> np.ndarray:
    """psi_<X> (or psi_'<X>) as an integer vector over E_N in ascending order."""
    m = transition_matrix(n, "cprime" if primed else "c")
    return m.column(m.carrier.index(x))


def psi_tilde(n: int, y: Orbit) -> np.ndarray:
    """The tilde basis vector of an orbit, as an integer vector over the orbit set."""
    m = transition_matrix(n, "cplus" if y.sign == "+" else "cminus")
    return m.column(m.carrier.index(y))


def _triangular_into(t: Tally, m: F2Matrix, order: OrderRelation, prefix: str = "") -> None:
    e = m.entries
    for i in range(len(m.carrier)):
        t.check(e[i, i] == 1, lambda i=i: f"{prefix}diagonal entry at {m.carrier[i]} is {e[i, i]}")
    nonzero = int((e != 0).sum())
    t.checked += nonzero - len(m.carrier)
    for i, j in np.argwhere((e != 0) & ~order.reach):
        t.fail(f"{prefix}entry ({m.carrier[i]}, {m.carrier[j]}) nonzero but not ordered")
    t.counts["nonzero"] = t.counts.get("nonzero", 0) + nonzero


def unitriangular_check(
    m: F2Matrix, order: OrderRelation, statement: str = "unitriangular", n: int | None = None
) -> Report:
    """Diagonal all ones, and every nonzero entry (X', X) has X' below X."""
    if m.carrier != order.carrier:
        raise CarrierMismatch("matrix and order carriers differ")
    t = Tally(statement, n)
    _triangular_into(t, m, order)
    return t.report()


def triangular_determinant(m: F2Matrix, order: OrderRelation) -> int | None:
    """det of ``m`` read off a linear extension of ``order``, or None if not triangular there.

    The same permutation is applied to rows and columns, so the determinant is
    unchanged and equals the product of the diagonal once the matrix is upper
    triangular.
    """
    perm = order.linear_extension()
    p = m.entries[np.ix_(perm, perm)].astype(np.int64)
    if np.tril(p, -1).any():
        return None
    return int(np.prod(np.diag(p)))


def _unimodular(t: Tally, m: F2Matrix, order: OrderRelation, what: str) -> None:
    det = triangular_determinant(m, order)
    t.check(det in (1, -1), f"{what}: not unitriangular in a linear extension (det={det})")
    t.detail[f"det_{what}"] = det


def verify_orbit_structure(n: int) -> Report:
    check_n(n)
    t = Tally("3.5", n)
    full = (1 << (n - 1)) - 1
    for m in even_masks(n):
        b = bang_mask(m, n)
        g, gb = gamma_mask(m), gamma_mask(b)
        t.check(b != m and bang_mask(b, n) == m, f"{m:#b}: bang not a free involution")
        t.check(sign_of(b, n) == sign_of(m, n), f"{m:#b}: bang changes sign")
        if sign_of(m, n) == "+":
            if g:
                t.check(gb == -g, f"{m:#b}: gamma {g} -> {gb}")
            else:
                t.check(gb == 0 and in_prime_part(m, n) != in_prime_part(b, n), f"{m:#b}: t=0 split")
        else:
            t.check(gb == -g - 2, f"{m:#b}: gamma {g} -> {gb}")
        t.check(in_prime_part(m, n) != in_prime_part(b, n), f"{m:#b}: prime parts not swapped")
    for sign in "+-":
        orbs = orbits(n, sign)
        t.check(len(orbs) == 2 ** (n - 3), f"{len(orbs)} orbits for sign {sign}")
        t.check(len(orbit_index(n, sign)) == 2 ** (n - 2), "orbit map not total")
    # the radical direction [1, N-1] pairs trivially with E_N^+
    t.check(all(bin(m & full).count("1") % 2 == 0 for m in even_masks(n) if sign_of(m, n) == "+"), "radical")
    return t.report()


def basis_reports(n: int) -> list[Report]:
    check_n(n)
    reports = [verify_orbit_structure(n)]
    c = transition_matrix(n, "c")
    cp = transition_matrix(n, "cprime")
    leq = vector_order(n, "leq_XN1")
    pre = vector_order(n, "preceq_XN2")

    for statement, m, order in (("2.6", c, leq), ("2.11", cp, pre)):
        if m.carrier != order.carrier:
            raise CarrierMismatch("matrix and order carriers differ")
        t = Tally(statement, n)
        _triangular_into(t, m, order)
        _unimodular(t, m, order, "full")
        reports.append(t.report())

    t = Tally("2.15", n)
    plus = [i for i, x in enumerate(cp.carrier) if sign_of(x.bits, n) == "+"]
    minus = [i for i, x in enumerate(cp.carrier) if sign_of(x.bits, n) == "-"]
    for j in plus:
        rows = np.nonzero(cp.entries[:, j])[0]
        t.check(all(i in plus for i in rows), lambda j=j: f"psi_'<{cp.carrier[j]}> leaves E_N^+")
    for keep, what in ((plus, "plus"), (minus, "minus")):
        sub, order = cp.submatrix(keep), pre.restrict(keep)
        _triangular_into(t, sub, order, f"{what}: ")
        _unimodular(t, sub, order, what)
    reports.append(t.report())

    for sign, a, b in (("+", "3.8a", "3.8b"), ("-", "3.9a", "3.9b")):
        m = transition_matrix(n, "cplus" if sign == "+" else "cminus")
        order = build_order(n, "bar_plus" if sign == "+" else "bar_minus")
        e = m.entries
        ta, tb = Tally(a, n), Tally(b, n)
        for i in range(len(m.carrier)):
            tb.check(e[i, i] == 1, lambda i=i: f"diagonal at {m.carrier[i]} is {e[i, i]}")
            for j in range(len(m.carrier)):
                if i != j and e[i, j]:
                    ta.check(bool(order.reach[i, j]), lambda i=i, j=j: f"c({m.carrier[i]}, {m.carrier[j]}) != 0 unordered")
        reports += [ta.report(), tb.report()]

    t = Tally("3.10", n)
    for sign in "+-":
        m = transition_matrix(n, "cplus" if sign == "+" else "cminus")
        order = build_order(n, "bar_plus" if sign == "+" else "bar_minus")
        if m.carrier != order.carrier:
            raise CarrierMismatch("orbit carriers differ")
        _unimodular(t, m, order, "plus" if sign == "+" else "minus")
        sums = orbit_sums(n, sign)
        t.counts[f"orbit_sums_equal_2_{'plus' if sign == '+' else 'minus'}"] = int((sums == 2).sum())
    reports.append(t.report())
    return reports
