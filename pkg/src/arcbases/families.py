"""The families X_{N-1}, X_{N-2}^+, X_{N-2}^- and their recursive description.

Every matching in *P_N gets a :class:`FamilyLabel` recording which of the
three conditions it satisfies, its stratum t in each family, and for the plus
family the distinguished singleton u_B and the prime/double-prime refinement.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

from .gf2 import Refinement, Sign, check_n, range_mask
from .matchings import (
    Arc,
    Matching,
    StarData,
    UniquenessError,
    _all_matchings,
    one_covered_points,
    star_sequence,
    zero_covered_mask,
)
from .report import Report, Tally

Family = Literal["XN1", "XN2plus", "XN2minus", "XN2"]


@dataclass(frozen=True)
class PlusLabel:
    t: int
    refinement: Refinement | None = None  # set only when t == 0
    u: int | None = None  # set only when |B^0| is odd


@dataclass(frozen=True)
class FamilyLabel:
    star: StarData | None = None
    xn1: int | None = None
    plus: PlusLabel | None = None
    minus: int | None = None

    @property
    def in_xn1(self) -> bool:
        return self.xn1 is not None

    @property
    def in_xn2(self) -> bool:
        return self.plus is not None or self.minus is not None

    @property
    def xn2_sign(self) -> Sign | None:
        if self.plus is not None:
            return "+"
        if self.minus is not None:
            return "-"
        return None

    @property
    def xn2_t(self) -> int | None:
        if self.plus is not None:
            return self.plus.t
        return self.minus

    @property
    def primed(self) -> bool | None:
        """Membership in 'X_{N-2}^+ or 'X_{N-2}^- (None outside X_{N-2})."""
        if self.plus is not None:
            if self.plus.t == 0:
                return self.plus.refinement == "prime"
            return self.plus.t < 0
        if self.minus is not None:
            return self.minus >= 0
        return None


def _partner(b: Matching, point: int) -> int | None:
    for a in b.arcs:
        if a.lo == point:
            return a.hi
        if a.hi == point:
            return a.lo
    return None


def _unique_u(x: int, right: dict[int, int], b: Matching) -> int | None:
    us = one_covered_points(x, right)
    if len(us) > 1:
        raise UniquenessError(f"{b}: u_B is not unique, candidates {us}")
    return us[0] if us else None


def classify(b: Matching, audit: bool = False) -> FamilyLabel:
    n = b.n
    star = star_sequence(b, audit=audit)
    if star is None:
        return FamilyLabel()
    right = {a.lo: a.hi for a in b.b1}

    def zc(lo: int, hi: int) -> bool:
        return zero_covered_mask(range_mask(lo, hi), right)

    s = star.s
    cond_i = s == 0 or (zc(1, star.first - 1) and zc(star.last + 1, n))
    xn1 = None
    if cond_i:
        xn1 = s if s % 2 == 0 else -s - 1

    plus = None
    if not b.supp >> (n - 1) & 1:
        if s == 0:
            refinement: Refinement = "doubleprime" if b.supp >> (n - 2) & 1 else "prime"
            plus = PlusLabel(0, refinement)
        elif s % 2:
            head = range_mask(1, star.first - 1)
            tail = range_mask(star.last + 1, n - 1)
            u = None
            if zero_covered_mask(tail, right):  # case (i)
                u = _unique_u(head, right, b)
            if u is None and zero_covered_mask(head, right):  # case (ii)
                u = _unique_u(tail, right, b)
            if u is not None:
                plus = PlusLabel(s + 1 if u % 2 else -s - 1, None, u)

    minus = None
    if cond_i:
        p = _partner(b, n)
        if p is not None and p % 2 == s % 2:
            minus = s if s % 2 == 0 else -s - 1

    return FamilyLabel(star, xn1, plus, minus)


@lru_cache(maxsize=None)
def labels(n: int) -> dict[Matching, FamilyLabel]:
    """Labels of every matching of P_N that lies in at least one family."""
    check_n(n)
    out = {}
    for b in _all_matchings(n):
        lab = classify(b)
        if lab.in_xn1 or lab.in_xn2:
            out[b] = lab
    return out


def label(b: Matching) -> FamilyLabel:
    return labels(b.n).get(b) or classify(b)


def _accepts(
    lab: FamilyLabel, tag: Family, t: int | None, refinement: Refinement | None
) -> bool:
    if tag == "XN1":
        if refinement is not None:
            raise ValueError("X_{N-1} has no prime refinement")
        return lab.xn1 is not None and (t is None or lab.xn1 == t)
    if tag == "XN2plus":
        st = lab.plus.t if lab.plus is not None else None
    elif tag == "XN2minus":
        st = lab.minus
    elif tag == "XN2":
        if refinement is not None:
            raise ValueError("refinements need a signed family")
        st = lab.xn2_t
    else:
        raise ValueError(f"unknown family {tag!r}")
    if st is None or (t is not None and st != t):
        return False
    return refinement is None or lab.primed == (refinement == "prime")


def enumerate_family(
    n: int,
    tag: Family,
    t: int | None = None,
    refinement: Refinement | None = None,
) -> list[Matching]:
    """Members of a family (optionally one stratum / refinement) in P_N order."""
    return [b for b, lab in labels(n).items() if _accepts(lab, tag, t, refinement)]


def iota(k: int, i: int) -> int:
    return i if i < k else i + 2


def embed(k: int, b: Matching) -> Matching:
    """I_k: relabel P_{N-2} into P_N through iota_k and add the arc {k, k+1}."""
    n = b.n + 2
    if n < 5:
        raise ValueError("embedding needs N >= 5")
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} outside [1, {n - 1}]")
    arcs = [Arc(iota(k, a.lo), iota(k, a.hi)) for a in b.arcs]
    arcs.append(Arc(k, k + 1))
    return Matching(n, tuple(sorted(arcs)))


def pr_set(n: int, sign: Sign) -> list[Matching]:
    check_n(n)
    if sign == "+":
        out = [Matching(n, ())]
        for tau in range(2, (n - 1) // 2 + 1, 2):
            out.append(Matching(n, tuple(sorted(Arc(j, n - 1 - j) for j in range(1, tau)))))
        return out
    top = Arc(n - 1, n)
    out = [Matching(n, (top,))]
    for tau in range(2, (n - 3) // 2 + 1, 2):
        arcs = [top] + [Arc(j, n - 1 - j) for j in range(1, tau + 1)]
        out.append(Matching(n, tuple(sorted(arcs))))
    return out


@lru_cache(maxsize=None)
def _sharp(n: int, sign: Sign) -> tuple[Matching, ...]:
    check_n(n)
    if n == 3:
        return (Matching(3, ()),) if sign == "+" else (Matching(3, (Arc(2, 3),)),)
    found = set(pr_set(n, sign))
    for prev in _sharp(n - 2, sign):
        for k in range(1, n - 1):
            b = embed(k, prev)
            # I_k keeps |B^0|; an empty B^0 forbids k = N-2 on the plus side
            if sign == "+" and k == n - 2 and not b.b0:
                continue
            found.add(b)
    return tuple(sorted(found))


def sharp_family(n: int, sign: Sign) -> list[Matching]:
    return list(_sharp(n, sign))


def primed_family(n: int, sign: Sign) -> list[Matching]:
    tag: Family = "XN2plus" if sign == "+" else "XN2minus"
    return sorted(enumerate_family(n, tag, refinement="prime"))


def _set_report(statement: str, n: int, got: set, want: set) -> Report:
    tally = Tally(statement, n)
    for b in sorted(got - want):
        tally.fail(f"only in recursive set: {b}")
    for b in sorted(want - got):
        tally.fail(f"only in primed family: {b}")
    tally.checked = len(got | want)
    tally.counts.update(recursive=len(got), family=len(want))
    return tally.report()


def _embedding_reports(n: int) -> list[Report]:
    if n < 5:
        return [Tally(s, n).report() for s in ("4.1a", "4.1b", "4.1c", "4.1d")]
    small = labels(n - 2)
    big = labels(n)
    ta, tb, tc, td = (Tally(s, n) for s in ("4.1a", "4.1b", "4.1c", "4.1d"))
    for b, lab in small.items():
        for k in range(1, n - 1):
            img = embed(k, b)
            im = big.get(img, FamilyLabel())
            w = lambda: f"I_{k}({b}) = {img}"  # noqa: E731
            if lab.plus is not None:
                ta.check(im.plus is not None and im.plus.t == lab.plus.t, w)
                if lab.plus.t == 0 and k <= n - 3:
                    tally = tc if lab.plus.refinement == "prime" else td
                    tally.check(
                        im.plus is not None
                        and im.plus.t == 0
                        and im.plus.refinement == lab.plus.refinement,
                        w,
                    )
            if lab.minus is not None:
                tb.check(im.minus == lab.minus, w)
    return [ta.report(), tb.report(), tc.report(), td.report()]


def verify_sharp(n: int) -> list[Report]:
    """Embedding compatibilities, the recursive inclusions, and both set equalities."""
    reports = _embedding_reports(n)
    for sign, incl, eq in (("+", "4.1e", "Thm4.3"), ("-", "4.5a", "Thm4.7")):
        got = set(sharp_family(n, sign))
        want = set(primed_family(n, sign))
        t = Tally(incl, n)
        for b in sorted(got):
            t.check(b in want, lambda b=b: f"{b} not in primed family")
        t.counts["recursive"] = len(got)
        reports.append(t.report())
        pr = Tally(f"{incl}-Pr", n)
        for b in pr_set(n, sign):
            pr.check(b in want, lambda b=b: f"Pr element {b} not in primed family")
        reports.append(pr.report())
        reports.append(_set_report(eq, n, got, want))
    return reports
