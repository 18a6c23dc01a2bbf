"""Acceptance gate: nine criteria, each timed, each reporting PASS or FAIL."""

import time

import pytest

from floerlocal.complexes import direct_sum, is_knot_like, reduce, tensor
from floerlocal.deduce import DeductionInput, candidates, expected, phi_matrix, pipeline
from floerlocal.hatfilter import ch_from_basis, ch_from_definition, hat_of, total_homology
from floerlocal.localequiv import find_local_map, is_local_map, is_locally_equivalent, \
    standard_representative
from floerlocal.mazur import build_gradings, lemma33_constraints, mirror, partner_label
from floerlocal.obstructions import LEMMA_FAMILIES, lifting_oracle, not_realizable
from floerlocal.sampling import acyclic_summand, random_filtered, random_r_complex, rng
from floerlocal.standard import build_standard, params, phi, symmetric_params

RESULTS: list = []


def report(num, title, ok, elapsed, limit=None):
    status = "PASS" if ok else "FAIL"
    lim = f" (limit {limit:g} s)" if limit else ""
    line = f"{status} criterion {num}: {title} [{elapsed:.2f} s{lim}]"
    RESULTS.append(line)
    print(line)


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def gate(num, title, limit, body):
    ok, err = False, None
    with Timer() as t:
        try:
            body()
            ok = True
        except AssertionError as exc:
            err = exc
    ok = ok and (limit is None or t.elapsed < limit)
    report(num, title, ok, t.elapsed, limit)
    if err is not None:
        raise err
    assert limit is None or t.elapsed < limit, f"took {t.elapsed:.2f} s, limit {limit} s"


def test_c1_phi_table():
    def body():
        for n in range(1, 21):
            p = params(1, -(n + 1), n + 1, -1)
            for j in range(1, 25):
                want = 1 if j in (1, n + 1) else 0
                assert phi(p, j) == want, (n, j)
    gate(1, "phi table for n = 1..20", 1.0, body)


def test_c2_summand_matrix():
    def body():
        mat, rank = phi_matrix(20)
        assert rank == 20
        assert mat == [[int(r == c) for c in range(20)] for r in range(20)]
    gate(2, "phi_matrix(20) is the identity, rank 20", 1.0, body)


def test_c3_base_case():
    def body():
        c = build_standard(params(1, -1))
        r = reduce(tensor(c, c))
        assert len(r) == 9
        assert is_knot_like(r)
        assert standard_representative(r, 6, 2) == params(1, -1, 1, -1)
    gate(3, "base case reduces to 9 generators with representative (1,-1,1,-1)", 30.0, body)


def test_c4_pipeline():
    step_times = []

    def body():
        trace: list = []
        classes = pipeline(8, report=trace)
        assert classes == [expected(k) for k in range(9)]
        assert len(trace) == 9
        for k, line in enumerate(trace):
            assert line.startswith(f"step n={k} survivors=[{expected(k)}]"), line
        # rerun each inductive step on its own to time it
        for k in range(1, 9):
            n = k + 1
            inp = DeductionInput(lemma33_constraints(n), k + 2, 1, 8, n + 2)
            t0 = time.perf_counter()
            surv = candidates(inp)
            step_times.append(time.perf_counter() - t0)
            assert surv == {expected(k)}, (k, surv)
        assert max(step_times) < 60.0, step_times
    gate(4, "pipeline(8) with a unique survivor at every step, each under 60 s", None, body)


def test_c5_ch_cross_check():
    def body():
        for p in symmetric_params(6, 3):
            f = hat_of(build_standard(p))
            assert ch_from_basis(f) == ch_from_definition(f), p
        r = rng()
        for _ in range(200):
            f = random_filtered(r, max_gens=12)
            assert len(f) <= 12
            assert ch_from_basis(f) == ch_from_definition(f)
    gate(5, "Ch from basis equals Ch from definition", 60.0, body)


def test_c6_obstructions():
    def body():
        insts = [p for fam in LEMMA_FAMILIES for p in fam.instances((1, 2, 3))]
        assert len(insts) == 20
        # (1,-1,1,1) belongs to two families
        prefixes = sorted(set(insts))
        assert len(prefixes) == 19
        for pre in prefixes:
            assert not_realizable(pre), pre
            res = lifting_oracle(pre, extra_gens=2, exp_bound=2 * max(abs(b) for b in pre) + 2)
            assert res.refuted, pre
        for pre in [(1, -1), (1, -1, 1, -1)]:
            assert lifting_oracle(pre, 2, 2 * max(abs(b) for b in pre) + 2).verdict == "exists"
    gate(6, "six obstruction families refuted, controls exist", 300.0, body)


def test_c7_mazur_table():
    def body():
        for n in range(2, 13):
            t = build_gradings(n)
            assert len(t) == 32 * n - 3
            assert (t["t_12"].a, t["t_12"].m) == (n + 1, 0)
            assert (t["c"].a, t["c"].m) == (0, -2)
            assert (t["t_13"].a, t["t_13"].m) == (n + 1, 1 - 2 * n)
            for i in range(1, n):
                assert (t[f"a^{i}_8"].a, t[f"a^{i}_8"].m) == (i, 2 * i - 2)
            for p in t.points:
                q = t.pair(p.label)
                assert (p.a, p.m) == mirror(q.a, q.m)
                assert partner_label(q.label) == p.label
    gate(7, "Mazur grading table n = 2..12", 1.0, body)


def test_c8_reduction_invariance():
    def body():
        r = rng()
        for _ in range(100):
            c, _ = random_r_complex(r)
            h = hat_of(c, allow_unreduced=True)
            hr = hat_of(reduce(c))
            assert total_homology(h) == total_homology(hr)
            assert ch_from_definition(h) == ch_from_basis(hr) == ch_from_definition(hr)
    gate(8, "reduce preserves hat homology and Ch on 100 complexes", None, body)


def test_c9_local_equivalence():
    def body():
        r = rng()
        for _ in range(50):
            c, _ = random_r_complex(r)
            f = find_local_map(c, c)
            assert f is not None and is_local_map(f, c, c)
        for k in range(20):
            c, _ = random_r_complex(r, max_len=4)
            s = direct_sum(c, acyclic_summand(r, f"s{k}a"), acyclic_summand(r, f"s{k}b"))
            assert is_locally_equivalent(c, s)
        for p in symmetric_params(6, 3):
            assert standard_representative(build_standard(p), 6, 3) == p, p
    gate(9, "reflexivity, acyclic sums and representative round trip", None, body)
