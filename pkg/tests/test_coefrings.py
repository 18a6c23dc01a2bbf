from collections import Counter

import pytest
from hypothesis import given, strategies as st

from floerlocal.coefrings import (RING_R, RING_UV, ONE, U, V, Bigrading, Monomial, RingElem,
                                  RingError, grading_shift, monomial_for_shift, mul, parse_elem,
                                  parse_monomial, pdivmod, pgcd, pmul)

monos = st.builds(Monomial, st.integers(0, 3), st.integers(0, 3))


def elems(ring):
    return st.lists(monos, max_size=5).map(lambda ms: RingElem.of(ms, ring))


rings = st.sampled_from([RING_R, RING_UV])


def naive_product(a, b, ring):
    """Term-by-term expansion with explicit F2 counting."""
    cnt = Counter()
    for x in a.terms:
        for y in b.terms:
            m = (x.u_exp + y.u_exp, x.v_exp + y.v_exp)
            if ring == RING_R and m[0] and m[1]:
                continue
            cnt[m] += 1
    return {Monomial(*m) for m, k in cnt.items() if k % 2}


@given(rings.flatmap(lambda r: st.tuples(elems(r), elems(r), elems(r))))
def test_ring_axioms(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + a == RingElem.zero(a.ring)


@given(rings.flatmap(lambda r: st.tuples(elems(r), elems(r))))
def test_product_matches_expansion(t):
    a, b = t
    assert set((a * b).terms) == naive_product(a, b, a.ring)


@given(monos, monos)
def test_mixed_products_vanish_in_r(m1, m2):
    prod = RingElem.of([m1], RING_R) * RingElem.of([m2], RING_R)
    if (m1.u_exp + m2.u_exp) and (m1.v_exp + m2.v_exp):
        assert prod.is_zero()


@given(monos, monos)
def test_grading_shift_additive(m1, m2):
    assert grading_shift(m1 * m2) == grading_shift(m1) + grading_shift(m2)


def test_uv_examples():
    u, v = RingElem.of([U], RING_R), RingElem.of([V], RING_R)
    assert (u * v).is_zero()
    assert (RingElem.of([U], RING_UV) * RingElem.of([V], RING_UV)).terms == {Monomial(1, 1)}
    s = u + v
    assert mul(s, s) == RingElem.of([Monomial(2, 0), Monomial(0, 2)], RING_R)


def test_grading_shift_examples():
    assert grading_shift(U) == (-2, 0)
    assert grading_shift(Monomial(0, 3)) == (0, -6)
    assert grading_shift(ONE) == (0, 0)


def test_monomial_for_shift():
    assert monomial_for_shift((-4, -2)) == Monomial(2, 1)
    assert monomial_for_shift((-1, 0)) is None
    assert monomial_for_shift((2, 0)) is None


def test_mismatched_rings():
    with pytest.raises(RingError):
        mul(RingElem.of([U], RING_R), RingElem.of([U], RING_UV))


def test_text_roundtrip():
    for txt in ["1", "U", "V^3", "U^2+V"]:
        e = parse_elem(txt, RING_R)
        assert parse_elem(e.text(), RING_R) == e
    assert parse_elem("U+U", RING_R).is_zero()
    assert parse_monomial("U^2V^3") == Monomial(2, 3)
    assert parse_elem("0").is_zero()
    with pytest.raises(RingError):
        parse_elem("UV", RING_R)


def test_alexander_parity():
    assert Bigrading(-2, 0).alexander == -1
    assert Bigrading(-2, 0).maslov == -2
    with pytest.raises(ValueError):
        Bigrading(1, 0).alexander


@given(st.integers(1, 1 << 12), st.integers(1, 1 << 12))
def test_poly_division(a, b):
    q, r = pdivmod(a, b)
    assert pmul(q, b) ^ r == a
    assert r.bit_length() < b.bit_length()
    g = pgcd(a, b)
    assert pdivmod(a, g)[1] == 0 and pdivmod(b, g)[1] == 0
