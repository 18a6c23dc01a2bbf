from collections import Counter

import pytest

from floerlocal.coefrings import Bigrading
from floerlocal.hatfilter import (FilteredComplex, FilteredComplexError, ch_contains,
                                  ch_from_basis, ch_from_definition, direct_sum, format_ch,
                                  format_filtered, hat_of, parse_ch, parse_filtered,
                                  total_homology, vertically_simplify)
from floerlocal.sampling import random_filtered, unit_pair
from floerlocal.standard import build_standard, ch_closed_form, params, symmetric_params


def hat(*entries):
    return hat_of(build_standard(params(*entries)))


def test_hat_of_trefoil():
    f = hat(1, -1)
    assert len(f) == 3
    assert f.arrows == {("x1", "x2")}
    assert f.length("x1", "x2") == 1


def test_hat_of_121():
    f = hat(1, -2, 2, -1)
    assert f.arrows == {("x1", "x2"), ("x3", "x4")}
    assert f.length("x1", "x2") == 2 and f.length("x3", "x4") == 1


def test_hat_single_generator():
    f = hat()
    assert len(f) == 1 and not f.arrows


def test_hat_rejects_unreduced():
    with pytest.raises(FilteredComplexError):
        hat_of(unit_pair("p", Bigrading(0, 0)))


def test_hat_rejects_odd_parity():
    c = build_standard(params(1, -1)).shifted(1, 0)
    with pytest.raises(FilteredComplexError):
        hat_of(c)


def test_shortest_arrow_wins():
    f = FilteredComplex({"y": (1, 3), "y2": (1, 2), "z": (0, 1)}, {("y", "z"), ("y2", "z")})
    vb = vertically_simplify(f)
    assert [(a.target_a, a.target_m, a.length) for a in vb.arrows] == [(1, 0, 1)]
    assert vb.cycles == [["y", "y2"]]


def test_vertical_basis_d11():
    vb = vertically_simplify(hat(1, -1, 1, -1))
    assert Counter((a.target_a, a.target_m, a.length) for a in vb.arrows) == \
        Counter({(0, -2, 1): 1, (-2, -4, 1): 1})


def test_arrowless():
    f = FilteredComplex({"a": (0, 0), "b": (2, 1)}, set())
    assert vertically_simplify(f).arrows == []
    assert ch_from_definition(f) == Counter()


def test_ch_examples():
    assert ch_from_basis(hat(1, -1)) == Counter({(-1, -2, 1): 1})
    assert ch_from_definition(hat(1, -1)) == Counter({(-1, -2, 1): 1})
    assert ch_from_definition(hat(1, -2, 2, -1)) == Counter({(0, -2, 2): 1, (-3, -6, 1): 1})
    assert ch_from_basis(hat()) == Counter()
    for n in range(1, 6):
        assert ch_from_basis(hat(1, -n, n, -1)) == Counter({(0, -2, n): 1, (-n - 1, -2 * n - 2, 1): 1})


def test_ch_basis_requires_rank_one():
    f = FilteredComplex({"a": (0, 0), "b": (0, 1)}, set())
    with pytest.raises(FilteredComplexError):
        ch_from_basis(f)


def test_bad_maslov_step():
    f = FilteredComplex({"a": (0, 1), "b": (0, 0)}, {("a", "b")})
    with pytest.raises(FilteredComplexError):
        vertically_simplify(f)


def test_total_homology_examples():
    for p in symmetric_params(6, 3):
        assert total_homology(hat_of(build_standard(p))) == {0: 1}
    pair = FilteredComplex({"a": (1, 2), "b": (0, 0)}, {("a", "b")})
    assert total_homology(pair) == {}
    s = direct_sum(hat(1, -1), FilteredComplex({"p": (4, 3), "q": (3, 1)}, {("p", "q")}))
    assert total_homology(s) == {0: 1}


def test_ch_cross_check_standard():
    for p in symmetric_params(6, 3):
        f = hat_of(build_standard(p))
        assert ch_from_basis(f) == ch_from_definition(f) == ch_closed_form(p)


def test_ch_cross_check_random(rnd):
    for _ in range(100):
        f = random_filtered(rnd)
        assert ch_from_basis(f) == ch_from_definition(f)


def test_order_independence(rnd):
    for _ in range(30):
        f = random_filtered(rnd)
        names = list(f.gens)
        perm = names[:]
        rnd.shuffle(perm)
        ren = dict(zip(names, perm))
        g = FilteredComplex({ren[n]: f.gens[n] for n in names}, {(ren[s], ren[t]) for s, t in f.arrows})
        key = lambda vb: Counter((a.target_a, a.target_m, a.length) for a in vb.arrows)  # noqa: E731
        assert key(vertically_simplify(f)) == key(vertically_simplify(g))


def test_ch_additive_on_sums(rnd):
    """Ch of a sum with an acyclic piece is the union of the two multisets."""
    for _ in range(30):
        f = random_filtered(rnd, max_gens=7)
        # acyclic piece: pairs only, given directly as arrows
        k = rnd.randint(1, 3)
        gens, arrows = {}, set()
        for i in range(k):
            m, a, l = rnd.randint(-3, 3), rnd.randint(-3, 3), rnd.randint(1, 3)
            gens[f"p{i}"], gens[f"q{i}"] = (m + 1, a + l), (m, a)
            arrows.add((f"p{i}", f"q{i}"))
        acyc = FilteredComplex(gens, arrows)
        expect = ch_from_definition(f) + Counter({(a, m, gens[s][1] - a): 1
                                                   for s, t in arrows for m, a in [gens[t]]})
        s = direct_sum(f, acyc)
        assert ch_from_definition(s) == expect
        assert ch_from_basis(s) == expect


def test_ch_contains():
    big = Counter({(0, -2, 1): 2, (1, 0, 3): 1})
    assert ch_contains(big, Counter({(0, -2, 1): 2}))
    assert not ch_contains(big, Counter({(0, -2, 1): 3}))


def test_formats_roundtrip(rnd):
    f = random_filtered(rnd)
    g = parse_filtered(format_filtered(f))
    assert g.gens == f.gens and g.arrows == f.arrows
    ch = ch_from_basis(f)
    assert parse_ch(format_ch(ch)) == +ch
    lines = format_ch(Counter({(1, 0, 2): 1, (-1, -2, 1): 3})).splitlines()
    assert lines == ["ch -1 -2 1 3", "ch 1 0 2 1"]


def test_parse_filtered_errors():
    with pytest.raises(FilteredComplexError, match="line 2"):
        parse_filtered("fgen a 0 0\nfgen a 1 1\n")
    with pytest.raises(FilteredComplexError):
        parse_filtered("fgen a 0 0\nfarr a b\n")
