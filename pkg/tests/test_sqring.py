from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from belowcolor.errors import GuardError
from belowcolor.ffield import Q, Rng
from belowcolor.sqring import (
    RingElement,
    coefficient_at,
    from_sparse_terms,
    ranked_mobius,
    ranked_zeta,
    ring_add,
    ring_mul,
    ring_neg,
    top_coefficient,
)


def naive_convolution(a: RingElement, b: RingElement) -> list[int]:
    """Disjoint-union convolution by the O(4^p) double loop."""
    size = 1 << a.p
    out = [0] * size
    ca = [int(x) for x in a.coeffs]
    cb = [int(x) for x in b.coeffs]
    for s in range(size):
        if ca[s]:
            for t in range(size):
                if cb[t] and not s & t:
                    out[s | t] = (out[s | t] + ca[s] * cb[t]) % Q
    return out


def random_element(p: int, rng: Rng, density: float = 1.0) -> RingElement:
    c = rng.sample_array(1 << p)
    c[rng.random(1 << p) >= density] = 0
    return RingElement(p, c)


@st.composite
def triples(draw, max_p: int = 8):
    p = draw(st.integers(0, max_p))
    rng = Rng(draw(st.integers(0, 2**32)))
    return tuple(random_element(p, rng, 0.6) for _ in range(3))


def test_add_examples():
    rng = Rng(1)
    a = random_element(3, rng)
    assert ring_add(a, RingElement.zero(3)) == a
    assert (a + ring_neg(a)).is_zero()
    y1, y2 = RingElement.variable(3, 1), RingElement.variable(3, 2)
    one = RingElement.one(3)
    assert (one + y1) + (one + y2) == from_sparse_terms(3, [(0, 2), (0b010, 1), (0b100, 1)])


def test_mul_examples():
    y1, y2 = RingElement.variable(3, 1), RingElement.variable(3, 2)
    one = RingElement.one(3)
    prod = ring_mul(one + y1, one + y2)
    assert prod == from_sparse_terms(3, [(0, 1), (0b010, 1), (0b100, 1), (0b110, 1)])
    assert ring_mul(y1, y1).is_zero()


def test_mul_matches_naive_p6():
    rng = Rng(6)
    a, b = random_element(6, rng), random_element(6, rng)
    assert [int(x) for x in ring_mul(a, b).coeffs] == naive_convolution(a, b)


@pytest.mark.parametrize("p", [0, 1, 3, 7, 10])
def test_mul_matches_naive_various_p(p):
    rng = Rng(100 + p)
    for _ in range(3):
        a, b = random_element(p, rng, 0.5), random_element(p, rng, 0.5)
        assert [int(x) for x in ring_mul(a, b).coeffs] == naive_convolution(a, b)


@given(triples())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(t):
    a, b, c = t
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * RingElement.one(a.p) == a


def test_coefficient_at_examples():
    e = from_sparse_terms(2, [(0, 1), (0b11, 3)])
    assert coefficient_at(e, 0b11) == 3
    assert coefficient_at(RingElement.zero(4), 0b1010) == 0
    one = RingElement.one(2)
    prod = (one + RingElement.variable(2, 0)) * (one + RingElement.variable(2, 1))
    assert coefficient_at(prod, 0b11) == 1
    with pytest.raises(ValueError):
        coefficient_at(e, 4)


def test_from_sparse_terms_examples():
    assert from_sparse_terms(3, []).is_zero()
    assert from_sparse_terms(3, [(0, 1)]) == RingElement.one(3)
    assert from_sparse_terms(3, [(0b010, 5), (0b010, 2)]) == RingElement.variable(3, 1) * 7
    with pytest.raises(ValueError):
        from_sparse_terms(2, [(4, 1)])


def test_mismatched_p_rejected():
    with pytest.raises(ValueError):
        RingElement.one(2) + RingElement.one(3)
    with pytest.raises(ValueError):
        ring_mul(RingElement.one(2), RingElement.one(3))


def test_memory_guard():
    with pytest.raises(GuardError):
        RingElement.zero(25)


def test_inverse_of_unit():
    rng = Rng(8)
    a = random_element(5, rng)
    a = a - RingElement.constant(5, int(a.coeffs[0])) + RingElement.constant(5, 7)
    assert a.is_unit()
    assert a * a.inverse() == RingElement.one(5)
    with pytest.raises(ZeroDivisionError):
        RingElement.variable(5, 0).inverse()


def test_ranked_round_trip_and_top_coefficient():
    rng = Rng(12)
    for p in range(0, 8):
        a = random_element(p, rng)
        hat = ranked_zeta(a.coeffs, p)
        assert np.array_equal(ranked_mobius(hat, p), a.coeffs)
        assert top_coefficient(hat, p) == int(a.coeffs[-1])
