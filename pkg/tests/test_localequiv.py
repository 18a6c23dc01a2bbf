import pytest

from floerlocal.coefrings import Bigrading
from floerlocal.complexes import direct_sum, reduce, tensor, unit_complex
from floerlocal.hatfilter import ch_contains, ch_from_basis, hat_of
from floerlocal.localequiv import (LocalEquivError, compose, find_local_map, format_map,
                                   is_local_map, is_locally_equivalent, standard_representative)
from floerlocal.sampling import box, random_r_complex, unit_pair
from floerlocal.standard import (all_params, build_standard, ch_closed_form, params, phi,
                                 symmetric_params)


def C(*e):
    return build_standard(params(*e))


def test_identity_map():
    c = C(1, -1)
    f = find_local_map(c, c)
    assert f is not None and is_local_map(f, c, c)


def test_projection_off_acyclic_pair():
    c = C(1, -1)
    s = direct_sum(c, unit_pair("p", Bigrading(0, 0)))
    f = find_local_map(s, c)
    assert f is not None and is_local_map(f, s, c)


def test_no_map_to_mirror():
    assert find_local_map(C(1, -1), C(-1, 1)) is None


def test_examples():
    base = reduce(tensor(C(1, -1), C(1, -1)))
    assert is_locally_equivalent(base, C(1, -1, 1, -1))
    assert not is_locally_equivalent(C(1, -1), C(1, -2))


def test_rejects_non_knot_like():
    with pytest.raises(LocalEquivError):
        find_local_map(unit_pair("p", Bigrading(0, 0)), C(1, -1))


def test_reflexive_on_random(rnd):
    for _ in range(15):
        c, _ = random_r_complex(rnd)
        f = find_local_map(c, c)
        assert f is not None and is_local_map(f, c, c)


def test_transitive_by_composition(rnd):
    for _ in range(10):
        a, p = random_r_complex(rnd, max_len=4)
        b = C(*p.entries)
        c, _ = random_r_complex(rnd, p=p)
        f, g = find_local_map(a, b), find_local_map(b, c)
        assert f is not None and g is not None
        assert is_local_map(compose(f, g), a, c)
        back = compose(find_local_map(c, b), find_local_map(b, a))
        assert is_local_map(back, c, a)


def test_reduce_and_acyclic_invariance(rnd):
    for k in range(10):
        c, _ = random_r_complex(rnd, max_len=4)
        assert is_locally_equivalent(c, reduce(c))
        s = direct_sum(c, box(f"b{k}_", Bigrading(2, -2)), unit_pair(f"u{k}_", Bigrading(1, 1)))
        assert is_locally_equivalent(c, s)


def test_ch_containment_for_equivalent_pairs(rnd):
    for _ in range(15):
        c, p = random_r_complex(rnd, max_len=4)
        assert is_locally_equivalent(c, C(*p.entries))
        assert ch_contains(ch_from_basis(hat_of(reduce(c))), ch_closed_form(p))


def test_standard_representative_examples():
    base = reduce(tensor(C(1, -1), C(1, -1)))
    assert standard_representative(base, 6, 2) == params(1, -1, 1, -1)
    assert standard_representative(C(1, -2, 2, -1), 4, 2) == params(1, -2, 2, -1)
    assert standard_representative(unit_complex(), 4, 2) == params()


def test_round_trip_symmetric_small():
    for p in symmetric_params(4, 3):
        assert standard_representative(build_standard(p), 4, 3) == p


def test_round_trip_non_symmetric():
    for p in all_params(4, 2):
        assert standard_representative(build_standard(p), 4, 2) == p


def test_distinct_params_not_equivalent():
    ps = list(all_params(2, 2))
    for i, p in enumerate(ps):
        for q in ps[i + 1:]:
            assert not is_locally_equivalent(build_standard(p), build_standard(q))


@pytest.mark.parametrize("p,q", [((1, -1), (1, -1)), ((1, -1), (-1, 1)), ((1, -2), (1, -1)),
                                 ((2, -1), (1, -1)), ((1, -1), ())])
def test_phi_additive_on_tensors(p, q):
    t = reduce(tensor(C(*p), C(*q)))
    rep = standard_representative(t, 6, 3)
    assert rep is not None
    for j in (1, 2, 3):
        assert phi(rep, j) == phi(params(*p), j) + phi(params(*q), j)


def test_format_map():
    c = C(1, -1)
    txt = format_map(find_local_map(c, c), c, c)
    assert txt.splitlines()[1].split() == ["x0", "1", "0", "0"]
