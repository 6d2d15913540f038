"""Exact dyadic rationals a * 2**-k and matrices over them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Sequence, Union

import numpy as np


class NonDyadicError(ArithmeticError):
    """A value whose denominator is not a power of two."""


def _strip(num: int, exp: int) -> tuple[int, int]:
    if num == 0:
        return 0, 0
    while exp > 0 and num % 2 == 0:
        num //= 2
        exp -= 1
    return num, exp


@dataclass(frozen=True)
class Dyadic:
    """num * 2**-exp with exp >= 0; canonical (num odd unless exp is 0)."""

    num: int
    exp: int = 0

    def __post_init__(self) -> None:
        if self.exp < 0:
            object.__setattr__(self, "num", self.num * 2 ** (-self.exp))
            object.__setattr__(self, "exp", 0)
        num, exp = _strip(int(self.num), self.exp)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    @classmethod
    def of(cls, value: DyadicLike) -> Dyadic:
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, (int, np.integer)):
            return cls(int(value))
        frac = Fraction(value)
        den = frac.denominator
        if den & (den - 1):
            raise NonDyadicError(f"{frac} is not dyadic")
        return cls(frac.numerator, den.bit_length() - 1)

    def _align(self, other: Dyadic) -> tuple[int, int, int]:
        e = max(self.exp, other.exp)
        return self.num << (e - self.exp), other.num << (e - other.exp), e

    def __add__(self, other: DyadicLike) -> Dyadic:
        a, b, e = self._align(Dyadic.of(other))
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __neg__(self) -> Dyadic:
        return Dyadic(-self.num, self.exp)

    def __sub__(self, other: DyadicLike) -> Dyadic:
        return self + (-Dyadic.of(other))

    def __rsub__(self, other: DyadicLike) -> Dyadic:
        return Dyadic.of(other) - self

    def __mul__(self, other: DyadicLike) -> Dyadic:
        o = Dyadic.of(other)
        return Dyadic(self.num * o.num, self.exp + o.exp)

    __rmul__ = __mul__

    def halve(self, k: int = 1) -> Dyadic:
        """Division by 2**k, the only division available."""
        return Dyadic(self.num, self.exp + k)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Dyadic):
            return self.num == other.num and self.exp == other.exp
        if isinstance(other, (int, Fraction, np.integer)):
            return self.to_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __bool__(self) -> bool:
        return self.num != 0

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __str__(self) -> str:
        return str(self.num) if self.exp == 0 else f"{self.num}/2^{self.exp}"

    def __repr__(self) -> str:
        return f"Dyadic({self})"


DyadicLike = Union[Dyadic, int, Fraction]


def _object_array(values) -> np.ndarray:
    arr = np.empty(np.shape(values), dtype=object)
    arr[...] = [[int(v) for v in row] for row in values] if np.ndim(values) == 2 else values
    return arr


@dataclass(frozen=True, eq=False)
class DyadicMatrix:
    """Square matrix ``ints * 2**-exp`` with Python-int entries; exact throughout."""

    carrier: tuple[Hashable, ...]
    ints: np.ndarray
    exp: int = 0

    def __post_init__(self) -> None:
        ints = self.ints
        if ints.dtype != object:
            ints = _object_array(ints.tolist())
        exp = self.exp
        if exp < 0:
            ints = ints * (2 ** (-exp))
            exp = 0
        while exp > 0 and all(v % 2 == 0 for v in ints.flat):
            ints = ints // 2
            exp -= 1
        if not ints.any():
            exp = 0
        object.__setattr__(self, "ints", ints)
        object.__setattr__(self, "exp", exp)
        if ints.shape != (len(self.carrier), len(self.carrier)):
            raise ValueError(f"shape {ints.shape} vs carrier size {len(self.carrier)}")

    @classmethod
    def from_entries(cls, carrier: Sequence[Hashable], rows: Sequence[Sequence[DyadicLike]]) -> DyadicMatrix:
        vals = [[Dyadic.of(v) for v in row] for row in rows]
        e = max((v.exp for row in vals for v in row), default=0)
        return cls(tuple(carrier), _object_array([[v.num << (e - v.exp) for v in row] for row in vals]), e)

    @classmethod
    def identity(cls, carrier: Sequence[Hashable]) -> DyadicMatrix:
        size = len(carrier)
        return cls(tuple(carrier), _object_array(np.eye(size, dtype=np.int64).tolist()), 0)

    def __len__(self) -> int:
        return len(self.carrier)

    def entry(self, i: int, j: int) -> Dyadic:
        return Dyadic(self.ints[i, j], self.exp)

    def rows(self) -> list[list[Dyadic]]:
        return [[self.entry(i, j) for j in range(len(self))] for i in range(len(self))]

    def __matmul__(self, other: DyadicMatrix) -> DyadicMatrix:
        if self.carrier != other.carrier:
            raise ValueError("carrier mismatch")
        return DyadicMatrix(self.carrier, self.ints.dot(other.ints), self.exp + other.exp)

    def scaled(self, k: int) -> DyadicMatrix:
        """Multiply every entry by 2**k (k may be negative)."""
        return DyadicMatrix(self.carrier, self.ints, self.exp - k)

    def transpose(self) -> DyadicMatrix:
        return DyadicMatrix(self.carrier, self.ints.T.copy(), self.exp)

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
        """Sub-array of Dyadic entries."""
        out = np.empty((len(rows), len(cols)), dtype=object)
        for a, i in enumerate(rows):
            for b, j in enumerate(cols):
                out[a, b] = self.entry(i, j)
        return out

    def nonzero(self) -> np.ndarray:
        return np.array([[v != 0 for v in row] for row in self.ints], dtype=bool).reshape(self.ints.shape)

    def is_identity(self) -> bool:
        return self.exp == 0 and np.array_equal(self.nonzero(), np.eye(len(self), dtype=bool)) and all(
            self.ints[i, i] == 1 for i in range(len(self))
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DyadicMatrix):
            return NotImplemented
        return self.carrier == other.carrier and self.exp == other.exp and bool(
            (self.ints == other.ints).all()
        )

    def strings(self) -> list[list[str]]:
        return [[str(self.entry(i, j)) for j in range(len(self))] for i in range(len(self))]
