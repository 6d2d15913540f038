"""Partial matchings of [1, N], the even/odd arc split, and interval covering."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal, NamedTuple, Sequence

from .gf2 import check_n, elements_of, mask_of, range_mask


class UniquenessError(RuntimeError):
    """A construction that must be unique admitted several solutions."""


class Arc(NamedTuple):
    """A 2-element subset {lo, hi} of [1, N] with lo < hi."""

    lo: int
    hi: int

    @classmethod
    def make(cls, a: int, b: int) -> Arc:
        if a == b:
            raise ValueError(f"degenerate arc {{{a}, {b}}}")
        return cls(min(a, b), max(a, b))

    @classmethod
    def parse(cls, written: str | Sequence[int]) -> Arc:
        """Accept a written form like ``"31"`` or a pair of endpoints."""
        if isinstance(written, str):
            if len(written) != 2:
                raise ValueError(f"written form {written!r} needs two single digits")
            written = (int(written[0]), int(written[1]))
        a, b = written
        return cls.make(a, b)

    @property
    def odd(self) -> bool:
        """True for arcs of B^1 (odd endpoint difference)."""
        return bool((self.hi - self.lo) & 1)

    @property
    def written(self) -> tuple[int, int]:
        """(i, j) with i < j for odd arcs and i > j for even arcs."""
        return (self.lo, self.hi) if self.odd else (self.hi, self.lo)

    @property
    def mask(self) -> int:
        return (1 << (self.lo - 1)) | (1 << (self.hi - 1))

    def __str__(self) -> str:
        i, j = self.written
        return f"{i}{j}" if i < 10 and j < 10 else f"{i},{j}"


@dataclass(frozen=True, order=True)
class Matching:
    """A set of pairwise disjoint arcs in [1, n], arcs sorted by (lo, hi)."""

    n: int
    arcs: tuple[Arc, ...]

    def __post_init__(self) -> None:
        seen = 0
        for a in self.arcs:
            if not 1 <= a.lo < a.hi <= self.n:
                raise ValueError(f"arc {tuple(a)} outside [1, {self.n}]")
            if seen & a.mask:
                raise ValueError(f"arcs overlap in {self.arcs}")
            seen |= a.mask
        if list(self.arcs) != sorted(self.arcs):
            object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))

    @classmethod
    def of(cls, n: int, arcs: Iterable[str | Sequence[int]]) -> Matching:
        return cls(n, tuple(sorted(Arc.parse(a) for a in arcs)))

    @property
    def supp(self) -> int:
        m = 0
        for a in self.arcs:
            m |= a.mask
        return m

    @property
    def b0(self) -> tuple[Arc, ...]:
        return tuple(a for a in self.arcs if not a.odd)

    @property
    def b1(self) -> tuple[Arc, ...]:
        return tuple(a for a in self.arcs if a.odd)

    def __len__(self) -> int:
        return len(self.arcs)

    def __contains__(self, arc: object) -> bool:
        return arc in self.arcs

    def with_arc(self, arc: Arc) -> Matching:
        return Matching(self.n, tuple(sorted(self.arcs + (arc,))))

    def without_arc(self, arc: Arc) -> Matching:
        return Matching(self.n, tuple(a for a in self.arcs if a != arc))

    def __str__(self) -> str:
        return "{" + ",".join(str(a) for a in self.arcs) + "}"


def enumerate_matchings(n: int) -> list[Matching]:
    return list(_all_matchings(n))


@lru_cache(maxsize=None)
def _all_matchings(n: int) -> tuple[Matching, ...]:
    check_n(n)
    out: list[Matching] = []

    def rec(free: list[int], arcs: list[Arc]) -> None:
        if not free:
            out.append(Matching(n, tuple(sorted(arcs))))
            return
        first, rest = free[0], free[1:]
        rec(rest, arcs)
        for k, other in enumerate(rest):
            arcs.append(Arc(first, other))
            rec(rest[:k] + rest[k + 1 :], arcs)
            arcs.pop()

    rec(list(range(1, n + 1)), [])
    return tuple(out)


def decompose(b: Matching) -> tuple[int, tuple[Arc, ...], tuple[Arc, ...]]:
    """(supp mask, B^0 arcs, B^1 arcs)."""
    return b.supp, b.b0, b.b1


def _right_ends(b1: Iterable[Arc]) -> dict[int, int]:
    return {a.lo: a.hi for a in b1}


def zero_covered_mask(x: int, right: dict[int, int]) -> bool:
    """Is ``x`` a disjoint union of intervals [lo, hi] of odd arcs?

    ``right`` maps the left end of each odd arc to its right end.  The lowest
    remaining element of ``x`` can only be the left end of one interval, so
    peeling greedily from the left is exact.
    """
    while x:
        low = (x & -x).bit_length()
        hi = right.get(low)
        if hi is None:
            return False
        block = range_mask(low, hi)
        if x & block != block:
            return False
        x ^= block
    return True


def one_covered_points(x: int, right: dict[int, int]) -> list[int]:
    """All u such that ``x`` minus {u} is 0-covered (u ranges over ``x``)."""
    out = []
    rest = x
    while rest:
        bit = rest & -rest
        rest ^= bit
        if zero_covered_mask(x ^ bit, right):
            out.append(bit.bit_length())
    return out


def covered(
    x: Iterable[int] | int,
    b1: Iterable[Arc],
    mode: Literal["zero", "one"] = "zero",
) -> bool | tuple[bool, int | None]:
    """0-/1-covering test of a subset by the intervals of odd arcs.

    Mode ``"zero"`` returns a bool.  Mode ``"one"`` returns ``(ok, u)`` where
    ``u`` is the extra singleton; several valid singletons raise
    :class:`UniquenessError`.
    """
    xm = x if isinstance(x, int) else mask_of(x)
    arcs = list(b1)
    if any(not a.odd for a in arcs):
        raise ValueError("covering is only defined by odd arcs")
    right = _right_ends(arcs)
    if mode == "zero":
        return zero_covered_mask(xm, right)
    if mode != "one":
        raise ValueError(f"bad mode {mode!r}")
    us = one_covered_points(xm, right)
    if len(us) > 1:
        raise UniquenessError(f"{elements_of(xm)} is 1-covered with u in {us}")
    return (True, us[0]) if us else (False, None)


@dataclass(frozen=True)
class StarData:
    """The increasing sequence i_1 < ... < i_2s of even-arc endpoints."""

    seq: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.seq) // 2

    @property
    def first(self) -> int:
        return self.seq[0]

    @property
    def last(self) -> int:
        return self.seq[-1]


def _admissible(seq: Sequence[int], right: dict[int, int]) -> bool:
    s = len(seq) // 2
    for half in (seq[:s], seq[s:]):
        for a, b in zip(half, half[1:]):
            # [a+1, b-1] must be a genuine (possibly empty) interval
            if b <= a:
                return False
            if not zero_covered_mask(range_mask(a + 1, b - 1), right):
                return False
    return True


def _b1_interiors_covered(b1: Sequence[Arc], right: dict[int, int]) -> bool:
    return all(zero_covered_mask(range_mask(a.lo + 1, a.hi - 1), right) for a in b1)


def admissible_sequences(b: Matching) -> list[tuple[int, ...]]:
    """Brute force over every way of listing B^0 as {i_2s i_1, i_2s-1 i_2, ...}.

    Each even arc is written ``ij`` with i > j, so the pair placed at positions
    (k, 2s+1-k) is (lo, hi).  Returns every listing whose intervals are
    0-covered; used to audit :func:`star_sequence`.
    """
    b0, b1 = b.b0, b.b1
    right = _right_ends(b1)
    s = len(b0)
    out = []
    for perm in itertools.permutations(b0):
        seq = [0] * (2 * s)
        for k, arc in enumerate(perm):
            seq[k], seq[2 * s - 1 - k] = arc.lo, arc.hi
        if _admissible(seq, right):
            out.append(tuple(seq))
    return out


def star_sequence(b: Matching, audit: bool = False) -> StarData | None:
    """i_*(B) if B lies in *P_N, else None.

    With ``audit`` the answer is cross-checked against the exhaustive
    :func:`admissible_sequences` and a second solution raises
    :class:`UniquenessError`.
    """
    b0, b1 = b.b0, b.b1
    right = _right_ends(b1)
    if not _b1_interiors_covered(b1, right):
        return None
    ordered = sorted(b0)
    s = len(ordered)
    seq = tuple(a.lo for a in ordered) + tuple(a.hi for a in reversed(ordered))
    ok = _admissible(seq, right)
    if audit:
        found = admissible_sequences(b)
        if len(found) > 1:
            raise UniquenessError(f"{b}: several sequences {found}")
        if bool(found) != ok or (ok and found[0] != seq):
            raise AssertionError(f"{b}: direct {seq if ok else None} vs search {found}")
    if not ok:
        return None
    assert s == 0 or all(x < y for x, y in zip(seq, seq[1:]))
    return StarData(seq)
