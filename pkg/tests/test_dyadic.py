from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from arcbases.dyadic import Dyadic, DyadicMatrix, NonDyadicError
from arcbases.export import decode_dyadic, encode_dyadic

dyadics = st.builds(Dyadic, st.integers(-1000, 1000), st.integers(0, 12))


def test_canonical_form():
    assert Dyadic(4, 2) == Dyadic(1, 0)
    assert (Dyadic(4, 2).num, Dyadic(4, 2).exp) == (1, 0)
    assert (Dyadic(6, 3).num, Dyadic(6, 3).exp) == (3, 2)
    assert (Dyadic(0, 5).num, Dyadic(0, 5).exp) == (0, 0)
    assert str(Dyadic(1, 1)) == "1/2^1"
    assert str(Dyadic(-3)) == "-3"


def test_non_dyadic_rejected():
    with pytest.raises(NonDyadicError):
        Dyadic.of(Fraction(1, 3))
    assert Dyadic.of(Fraction(3, 8)) == Dyadic(3, 3)


@given(dyadics, dyadics, dyadics)
def test_field_laws_agree_with_fractions(a, b, c):
    fa, fb, fc = a.to_fraction(), b.to_fraction(), c.to_fraction()
    assert (a + b).to_fraction() == fa + fb
    assert (a - b).to_fraction() == fa - fb
    assert (a * b).to_fraction() == fa * fb
    assert (a * (b + c)) == a * b + a * c
    assert a.halve(3).to_fraction() == fa / 8
    assert decode_dyadic(encode_dyadic(a)) == a


def test_matrix_product_and_identity():
    h = DyadicMatrix(("x", "y"), np.array([[1, 1], [1, -1]]), 0).scaled(0)
    half = DyadicMatrix(h.carrier, h.ints, 1)
    assert not (h @ h).is_identity()
    assert (half @ h).rows() == [[Dyadic(1), Dyadic(0)], [Dyadic(0), Dyadic(1)]]
    assert DyadicMatrix.identity(("x", "y")).is_identity()
    m = DyadicMatrix.from_entries(("x", "y"), [[Fraction(1, 2), 0], [1, 3]])
    assert m.exp == 1 and m.entry(0, 0) == Dyadic(1, 1) and m.entry(1, 1) == 3
    assert m.transpose().entry(0, 1) == 1
