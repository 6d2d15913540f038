"""F2 linear algebra on subsets of [1, N] stored as int bitsets.

Position ``i`` of [1, N] is bit ``i - 1``.  Arbitrary subsets are passed around
as plain ints ("masks"); elements of the even subspace E_N are wrapped in
:class:`EvenSubset` when they cross a public boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Literal, Sequence

Sign = Literal["+", "-"]
Refinement = Literal["prime", "doubleprime"]


class DimensionError(ValueError):
    """Operands live in different ambient spaces."""


class OrbitStructureError(RuntimeError):
    """An orbit of X -> X + [1, N-1] does not have exactly one member in the primed part."""


def check_n(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"N must be odd and >= 3, got {n}")


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def range_mask(a: int, b: int) -> int:
    """Mask of [a, b] for 1 <= a; empty when a > b."""
    if a > b:
        return 0
    return ((1 << (b - a + 1)) - 1) << (a - 1)


def interval(a: int, b: int, n: int) -> int:
    """Mask of {h : a <= h <= b} intersected with [1, n]; empty when a > b."""
    return range_mask(max(a, 1), min(b, n))


# parity masks: positions 2, 4, ... and 1, 3, ...
_EVEN_POSITIONS = int("10" * 64, 2)
_ODD_POSITIONS = int("01" * 64, 2)


def gamma_mask(mask: int) -> int:
    return popcount(mask & _EVEN_POSITIONS) - popcount(mask & _ODD_POSITIONS)


@dataclass(frozen=True, order=True)
class EvenSubset:
    """An even-cardinality subset of [1, n], i.e. a vector of E_N."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits {self.bits:#b} outside [1, {self.n}]")
        if popcount(self.bits) % 2:
            raise ValueError(f"{set(elements_of(self.bits))} has odd cardinality")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> EvenSubset:
        return cls(n, mask_of(elements))

    @property
    def elements(self) -> tuple[int, ...]:
        return elements_of(self.bits)

    def __len__(self) -> int:
        return popcount(self.bits)

    def __contains__(self, i: int) -> bool:
        return bool(self.bits >> (i - 1) & 1) if i >= 1 else False

    def __add__(self, other: EvenSubset) -> EvenSubset:
        return sym_add(self, other)

    def __repr__(self) -> str:
        return f"EvenSubset({self.n}, {self})"

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def _same_n(x: EvenSubset, y: EvenSubset) -> None:
    if x.n != y.n:
        raise DimensionError(f"ambient mismatch: N={x.n} vs N={y.n}")


def sym_add(x: EvenSubset, y: EvenSubset) -> EvenSubset:
    _same_n(x, y)
    return EvenSubset(x.n, x.bits ^ y.bits)


def pairing(x: EvenSubset, y: EvenSubset) -> int:
    """The symplectic form |x & y| mod 2."""
    _same_n(x, y)
    return popcount(x.bits & y.bits) & 1


def gamma(x: EvenSubset) -> int:
    """Number of even members minus number of odd members."""
    return gamma_mask(x.bits)


def bang_mask(mask: int, n: int) -> int:
    return mask ^ interval(1, n - 1, n)


def bang(x: EvenSubset) -> EvenSubset:
    """The involution X -> X + [1, N-1]."""
    return EvenSubset(x.n, bang_mask(x.bits, x.n))


def sign_of(mask: int, n: int) -> Sign:
    return "-" if mask >> (n - 1) & 1 else "+"


def in_prime_part(mask: int, n: int) -> bool:
    """Membership in 'E_N^+ (for masks avoiding N) or 'E_N^- (masks containing N)."""
    g = gamma_mask(mask)
    if sign_of(mask, n) == "+":
        return g < 0 or (g == 0 and not mask >> (n - 2) & 1)
    return g >= 0


@dataclass(frozen=True)
class Subspace:
    """An F2-subspace of E_N held as a reduced row-echelon basis.

    Pivots are highest set bits; basis vectors are sorted by decreasing pivot
    and every pivot bit is cleared from all other basis vectors, so two spans
    are equal exactly when their ``basis`` tuples are equal.
    """

    n: int
    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, mask: int) -> int:
        for v in self.basis:
            if mask >> (v.bit_length() - 1) & 1:
                mask ^= v
        return mask

    def __contains__(self, x: EvenSubset | int) -> bool:
        if isinstance(x, EvenSubset):
            if x.n != self.n:
                raise DimensionError(f"ambient mismatch: N={x.n} vs N={self.n}")
            x = x.bits
        return self.reduce(x) == 0

    def elements(self) -> list[int]:
        """All 2**dim member masks, ascending."""
        out = [0]
        for v in self.basis:
            out += [u ^ v for u in out]
        return sorted(out)


def span_masks(n: int, masks: Iterable[int]) -> Subspace:
    rows: list[int] = []
    for m in masks:
        for r in rows:
            if m >> (r.bit_length() - 1) & 1:
                m ^= r
        if m:
            p = m.bit_length() - 1
            rows = [r ^ m if r >> p & 1 else r for r in rows]
            rows.append(m)
    rows.sort(reverse=True)
    return Subspace(n, tuple(rows))


def span(n: int, vs: Sequence[EvenSubset] = ()) -> Subspace:
    for v in vs:
        if v.n != n:
            raise DimensionError(f"ambient mismatch: N={v.n} vs N={n}")
    return span_masks(n, (v.bits for v in vs))


def member(s: Subspace, x: EvenSubset) -> bool:
    return x in s


def dim(s: Subspace) -> int:
    return s.dim


@dataclass(frozen=True)
class StratumFilter:
    """Selects a piece of E_N.

    ``gamma`` fixes the stratum E_N^t, ``sign`` picks E_N^+ / E_N^-, and
    ``refinement`` (which needs a sign) picks the primed or double-primed part.
    Unset fields do not constrain.
    """

    gamma: int | None = None
    sign: Sign | None = None
    refinement: Refinement | None = None

    def __post_init__(self) -> None:
        if self.gamma is not None and self.gamma % 2:
            raise ValueError("gamma strata are indexed by even integers")
        if self.sign not in (None, "+", "-"):
            raise ValueError(f"bad sign {self.sign!r}")
        if self.refinement is not None:
            if self.refinement not in ("prime", "doubleprime"):
                raise ValueError(f"bad refinement {self.refinement!r}")
            if self.sign is None:
                raise ValueError("a refinement needs a sign")

    def accepts(self, mask: int, n: int) -> bool:
        if self.gamma is not None and gamma_mask(mask) != self.gamma:
            return False
        if self.sign is not None and sign_of(mask, n) != self.sign:
            return False
        if self.refinement is not None:
            return in_prime_part(mask, n) == (self.refinement == "prime")
        return True


ALL = StratumFilter()


@lru_cache(maxsize=None)
def even_masks(n: int) -> tuple[int, ...]:
    """All of E_N in ascending bit-pattern order."""
    check_n(n)
    return tuple(m for m in range(1 << n) if not popcount(m) & 1)


def enumerate_vectors(n: int, filter: StratumFilter = ALL) -> list[EvenSubset]:
    return [EvenSubset(n, m) for m in even_masks(n) if filter.accepts(m, n)]


@dataclass(frozen=True)
class Orbit:
    """A two-element orbit {X, X^!} inside E_N^+ or E_N^-; ``rep`` is the primed member."""

    sign: Sign
    rep: EvenSubset

    @property
    def members(self) -> tuple[EvenSubset, EvenSubset]:
        return (self.rep, bang(self.rep))

    @property
    def other(self) -> EvenSubset:
        return bang(self.rep)

    def __iter__(self) -> Iterator[EvenSubset]:
        return iter(self.members)

    def __repr__(self) -> str:
        return f"Orbit({self.sign}, rep={self.rep})"

    def __str__(self) -> str:
        return f"[{self.rep}]"


@lru_cache(maxsize=None)
def orbits(n: int, sign: Sign) -> tuple[Orbit, ...]:
    """Orbits of X -> X^! on E_N^sign, ordered by representative."""
    check_n(n)
    seen: set[int] = set()
    out = []
    for m in even_masks(n):
        if sign_of(m, n) != sign or m in seen:
            continue
        other = bang_mask(m, n)
        seen.update((m, other))
        a, b = in_prime_part(m, n), in_prime_part(other, n)
        if a == b:
            raise OrbitStructureError(
                f"N={n}: orbit {{{elements_of(m)}, {elements_of(other)}}} has "
                f"{'both' if a else 'no'} members in the primed part"
            )
        out.append(Orbit(sign, EvenSubset(n, m if a else other)))
    out.sort(key=lambda o: o.rep.bits)
    return tuple(out)


def orbit_index(n: int, sign: Sign) -> dict[int, int]:
    """Map each mask of E_N^sign to the index of its orbit in :func:`orbits`."""
    idx = {}
    for i, o in enumerate(orbits(n, sign)):
        for x in o.members:
            idx[x.bits] = i
    return idx
