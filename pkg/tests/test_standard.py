import pytest
import sympy
from hypothesis import given, strategies as st

from floerlocal.complexes import is_knot_like, validate
from floerlocal.standard import (ParamsError, StandardParams, all_params, build_standard,
                                 ch_closed_form, params, parse_params, phi, standard_gradings,
                                 symmetric_params, tau_epsilon_of)
from floerlocal.hatfilter import ch_from_basis, hat_of

nonzero = st.integers(-4, 4).filter(bool)
param_lists = st.integers(0, 3).flatmap(lambda k: st.lists(nonzero, min_size=2 * k, max_size=2 * k))


def gradings_by_linear_solve(entries):
    """Solve every arrow's homogeneity equation plus the two normalisations."""
    n = len(entries)
    u = sympy.symbols(f"u0:{n + 1}")
    v = sympy.symbols(f"v0:{n + 1}")
    eqs = [u[0], v[n]]
    for i, b in enumerate(entries, 1):
        k = abs(b)
        a, c = (2 * k, 0) if i % 2 else (0, 2 * k)
        s, t = (i - 1, i) if b < 0 else (i, i - 1)
        # gr(s) - (1,1) = gr(t) - (a, c)
        eqs += [u[s] - 1 - (u[t] - a), v[s] - 1 - (v[t] - c)]
    sol = sympy.solve(eqs, u + v, dict=True)
    assert len(sol) == 1
    return [(int(sol[0][u[i]]), int(sol[0][v[i]])) for i in range(n + 1)]


@given(param_lists)
def test_gradings_match_linear_solve(entries):
    got = [tuple(g) for g in standard_gradings(StandardParams(tuple(entries)))]
    assert got == gradings_by_linear_solve(entries)


def test_grading_examples():
    assert standard_gradings(params(1, -1)) == [(0, -2), (-1, -1), (-2, 0)]
    g = standard_gradings(params(1, -1, 1, -1))
    assert g[0] == (0, -4) and g[-1] == (-4, 0)
    assert standard_gradings(params()) == [(0, 0)]


def test_trefoil_arrows():
    c = build_standard(params(1, -1))
    assert {k: e.text() for k, e in c.diff.items()} == {("x1", "x0"): "U", ("x1", "x2"): "V"}


@given(param_lists)
def test_build_is_valid_and_knot_like(entries):
    c = build_standard(StandardParams(tuple(entries)))
    assert validate(c).ok
    assert is_knot_like(c)


def test_phi_examples():
    p = params(1, -2, 2, -1)
    assert [phi(p, j) for j in (1, 2, 3, 4)] == [1, 1, 0, 0]
    assert phi(params(), 5) == 0
    assert phi(params(1, -1), 1) == 1
    assert phi(params(-2, 1, -1, 2), 2) == -1
    with pytest.raises(ParamsError):
        phi(p, 0)


def test_tau_epsilon_examples():
    assert tau_epsilon_of(params(1, -2, 2, -1)) == (3, 1)
    assert tau_epsilon_of(params(1, -1, 1, -1)) == (2, 1)
    assert tau_epsilon_of(params()) == (0, 0)
    assert tau_epsilon_of(params(-1, 1)) == (-1, -1)


def test_ch_closed_form_examples():
    assert ch_closed_form(params(1, -1)) == {(-1, -2, 1): 1}
    assert ch_closed_form(params()) == {}
    for n in range(1, 5):
        assert ch_closed_form(params(1, -n, n, -1)) == {(0, -2, n): 1, (-n - 1, -2 * n - 2, 1): 1}


def test_closed_form_agrees_with_hat_on_all_params():
    for p in all_params(4, 3):
        assert ch_closed_form(p) == ch_from_basis(hat_of(build_standard(p)))


def test_symmetric_grading_symmetry():
    for p in symmetric_params(6, 3):
        pts = sorted((g.alexander, g.maslov) for g in standard_gradings(p))
        mirrored = sorted((-a, m - 2 * a) for a, m in pts)
        assert pts == mirrored


def test_symmetric_flag():
    assert params(1, -2, 2, -1).symmetric()
    assert not params(1, -2, 1, -1).symmetric()


def test_params_validation():
    with pytest.raises(ParamsError):
        params(1, -1, 1)
    with pytest.raises(ParamsError):
        params(1, 0)
    assert parse_params("(1,-2,2,-1)") == params(1, -2, 2, -1)
    assert parse_params("") == params()
    with pytest.raises(ParamsError):
        parse_params("1,x")
    assert str(params(1, -1)) == "(1,-1)" and params(1, -1).text() == "1,-1"


def test_enumeration_counts():
    # 6 nonzero values in [-3,3]; a symmetric vector is fixed by its first half
    assert sum(1 for _ in symmetric_params(6, 3)) == 1 + 6 + 36 + 216
    assert sum(1 for _ in all_params(4, 2)) == 1 + 16 + 256
