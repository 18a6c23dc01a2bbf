"""Constraint solver for local classes of iterated satellites, the inductive
pipeline built on it, and the phi-matrix check.

Candidates are symmetric standard params.  Only the first half is searched:
every U arrow of the head mirrors to a V arrow of the tail with swapped
(gr_U, gr_V), so every V arrow of the full complex is known as soon as its
head entry is chosen and the constraint set can prune early.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .coefrings import Bigrading
from .complexes import reduce, tensor
from .hatfilter import hat_of
from .localequiv import standard_representative
from .mazur import ConstraintSet, arrow_violations, check_against, lemma33_constraints
from .obstructions import not_realizable
from .standard import (StandardParams, _step, build_standard, params, phi, symmetric_params,
                       tau_epsilon_of, v_arrows)

log = logging.getLogger(__name__)

LEVINE_AXIOM = ("axiom: K ~ C(1,-(n-1),n-1,-1) gives tau(M(K)) = n+1, epsilon(M(K)) = 1 "
                "(Levine 2016, Theorem 1.4; imported, not recomputed)")


class DeductionError(AssertionError):
    """A step did not leave exactly one survivor."""

    def __init__(self, msg: str, trace: list):
        super().__init__(msg + "\n" + "\n".join(trace))
        self.trace = trace


@dataclass(frozen=True)
class DeductionInput:
    cs: ConstraintSet
    tau: int
    epsilon: int
    max_len: int
    max_abs: int

    def __post_init__(self):
        if self.epsilon not in (-1, 0, 1):
            raise ValueError("epsilon must be -1, 0 or 1")
        if self.max_len < 0 or self.max_abs < 1:
            raise ValueError("bounds must be positive")


def _swap(g: Bigrading) -> Bigrading:
    return Bigrading(g.gr_v, g.gr_u)


def _v_arrow(i: int, b: int, prev: Bigrading, cur: Bigrading) -> tuple[int, int, int]:
    """(target A, target M, length) of the V arrow contributed by head entry i.

    Even i is itself a V arrow between x_{i-1} and x_i.  Odd i is a U arrow;
    its mirror joins the swapped gradings, in the same direction.
    """
    if i % 2 == 0:
        tgt = cur if b < 0 else prev
    else:
        tgt = _swap(cur) if b < 0 else _swap(prev)
    return tgt.alexander, tgt.maslov, abs(b)


class _Solver:
    def __init__(self, inp: DeductionInput, shuffle=None):
        self.inp = inp
        self.vals = [v for v in range(-inp.max_abs, inp.max_abs + 1) if v]
        if shuffle is not None:
            shuffle.shuffle(self.vals)
        self.out: list = []
        self.nodes = 0

    def run(self, first: Optional[int] = None) -> list:
        inp = self.inp
        if inp.epsilon == 0:
            return [StandardParams(())] if inp.tau == 0 else []
        x0 = Bigrading(0, -2 * inp.tau)
        heads = [first] if first is not None else [v for v in self.vals if v * inp.epsilon > 0]
        for b in heads:
            self._extend((), [x0], [], b)
        return self.out

    def _extend(self, head: tuple, gr: list, arrows: list, b: int):
        self.nodes += 1
        i = len(head) + 1
        head = head + (b,)
        if not_realizable(head):
            return
        cur = _step(gr[-1], i, b)
        arrows = arrows + [_v_arrow(i, b, gr[-1], cur)]
        if arrow_violations(arrows, self.inp.cs):
            return
        gr = gr + [cur]
        half = self.inp.max_len // 2
        if cur.alexander == 0:
            self._finish(head)
        left = half - i
        if left <= 0 or abs(cur.alexander) > left * self.inp.max_abs:
            return
        for v in self.vals:
            self._extend(head, gr, arrows, v)

    def _finish(self, head: tuple):
        p = StandardParams(head + tuple(-b for b in reversed(head)))
        if accepts(p, self.inp):
            self.out.append(p)


def accepts(p: StandardParams, inp: DeductionInput) -> bool:
    """Full test of a single candidate, from scratch."""
    if len(p) > inp.max_len or any(abs(b) > inp.max_abs for b in p):
        return False
    if not p.symmetric():
        return False
    tau, eps = tau_epsilon_of(p)
    if (tau, eps) != (inp.tau, inp.epsilon):
        return False
    for k in range(1, len(p) + 1):
        if not_realizable(p.entries[:k]):
            return False
    arrows = [(t.alexander, t.maslov, l) for _, t, l in v_arrows(p)]
    return not arrow_violations(arrows, inp.cs)


def _run_branch(args):
    inp, first = args
    return _Solver(inp).run(first)


def candidates(inp: DeductionInput, jobs: int = 1, shuffle=None) -> set:
    """Symmetric params surviving the tau/epsilon, constraint and obstruction filters.

    ``shuffle`` (a random.Random) permutes the branching order; the result
    must not depend on it.
    """
    if jobs <= 1 or inp.epsilon == 0:
        return set(_Solver(inp, shuffle).run())
    firsts = [v for v in range(1, inp.max_abs + 1)]
    firsts = [v * inp.epsilon for v in firsts]
    out: set = set()
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for res in ex.map(_run_branch, [(inp, f) for f in firsts]):
            out.update(res)
    return out


def candidates_bruteforce(inp: DeductionInput) -> set:
    """Enumerate every symmetric params vector and audit its hat complex."""
    out = set()
    for p in symmetric_params(inp.max_len, inp.max_abs):
        if tau_epsilon_of(p) != (inp.tau, inp.epsilon):
            continue
        if any(not_realizable(p.entries[:k]) for k in range(1, len(p) + 1)):
            continue
        if check_against(hat_of(build_standard(p)), inp.cs).ok:
            out.add(p)
    return out


# --- pipeline -----------------------------------------------------------------


def expected(k: int) -> StandardParams:
    return params(1, -(k + 1), k + 1, -1)


def base_case(max_len: int = 6, max_abs: int = 2) -> Optional[StandardParams]:
    """Standard representative of the reduced square of C(1,-1)."""
    c = build_standard(params(1, -1))
    return standard_representative(reduce(tensor(c, c)), max_len, max_abs)


def step_line(k: int, survivors, tau: int, epsilon: int) -> str:
    txt = ",".join(str(p) for p in sorted(survivors, key=lambda p: p.entries))
    return f"step n={k} survivors=[{txt}] tau={tau} epsilon={epsilon}"


def pipeline(N: int, max_len: int = 8, jobs: int = 1, report: Optional[list] = None) -> list:
    """Local classes of the iterates 0..N, each derived from the previous one."""
    if N < 0:
        raise ValueError("N must be >= 0")
    trace = report if report is not None else []
    base = base_case()
    trace.append(step_line(0, [base] if base else [], 2, 1))
    if base != expected(0):
        raise DeductionError("base case did not give (1,-1,1,-1)", trace)
    out = [base]
    for k in range(1, N + 1):
        prev = out[-1]
        n = k + 1
        # the constraint lemma needs the previous class to be C(1,-n+1,n-1,-1)
        if prev != expected(k - 1):
            raise DeductionError(f"step {k}: hypothesis fails for {prev}", trace)
        # imported satellite formula: tau goes up by one, epsilon stays 1
        tau, eps = tau_epsilon_of(prev)[0] + 1, 1
        inp = DeductionInput(lemma33_constraints(n), tau, eps, max_len, n + 2)
        surv = candidates(inp, jobs)
        trace.append(step_line(k, surv, tau, eps))
        if len(surv) != 1:
            raise DeductionError(f"step {k}: {len(surv)} survivors", trace)
        out.append(next(iter(surv)))
    return out


def rational_rank(rows: list) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        col += 1
    return rank


def phi_matrix(N: int, classes: Optional[list] = None) -> tuple[list, int]:
    """Rows n = 1..N, columns j = 2..N+1, entry phi_j of the n-th class."""
    if N < 1:
        raise ValueError("N must be >= 1")
    classes = classes if classes is not None else pipeline(N)
    mat = [[phi(classes[n], j) for j in range(2, N + 2)] for n in range(1, N + 1)]
    rank = rational_rank(mat)
    ident = all(mat[r][c] == (1 if r == c else 0) for r in range(N) for c in range(N))
    if not ident or rank != N:
        raise DeductionError("phi matrix is not the identity", [str(r) for r in mat])
    return mat, rank
