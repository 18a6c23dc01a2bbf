"""Local maps and local equivalence between small knot-like R-complexes.

A local map is a bigrading-preserving R-linear chain map that induces an
isomorphism on H(C/U)/V-torsion and on H(C/V)/U-torsion.  Both free parts
have rank one, so the condition splits into

* the tower generators of source and target sit in the same bigrading, and
* the map is nonzero on the one-dimensional homology of each collapsed
  complex (U=0, V=1 and V=0, U=1), i.e. after inverting the kept variable.

The chain-map condition is linear over F2 in the unknown coefficients, so
existence reduces to a kernel computation plus a 2-bit span test.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

from . import gf2
from .coefrings import RING_R, Monomial, RingElem, monomial_for_shift, mono_mul
from .complexes import BigradedComplex, ComplexError, collapse, is_knot_like, tower_generator
from .standard import StandardParams, all_params, build_standard, symmetric_params, tau_epsilon_of

log = logging.getLogger(__name__)


class LocalEquivError(ValueError):
    pass


@dataclass
class LocalMapProblem:
    source: BigradedComplex
    target: BigradedComplex
    unknowns: list  # [(x, y, Monomial)]


def admissible_monomial(gx, gy, ring: str = RING_R) -> Optional[Monomial]:
    """Monomial r with gr(x) == gr(r * y), if any survives in the ring."""
    m = monomial_for_shift((gx[0] - gy[0], gx[1] - gy[1]))
    if m is None or (ring == RING_R and m.is_mixed()):
        return None
    return m


def local_map_problem(a: BigradedComplex, b: BigradedComplex) -> LocalMapProblem:
    unknowns = []
    for x, gx in a.gens.items():
        for y, gy in b.gens.items():
            m = admissible_monomial(gx, gy, a.ring)
            if m is not None:
                unknowns.append((x, y, m))
    return LocalMapProblem(a, b, unknowns)


def _single(e: RingElem) -> Monomial:
    if len(e.terms) != 1:
        raise ComplexError("differential entries must be single monomials")
    return next(iter(e.terms))


def _chain_equations(prob: LocalMapProblem) -> list[int]:
    """One F2 equation per (x in source, z in target) entry of d f + f d."""
    a, b, ring = prob.source, prob.target, prob.source.ring
    idx = {(x, y): k for k, (x, y, _) in enumerate(prob.unknowns)}
    mono = {(x, y): m for x, y, m in prob.unknowns}
    b_out = b.out_edges()
    a_out = a.out_edges()
    eqs: dict = {}
    for (x, y), k in idx.items():
        # d_B f: x -> y -> z
        for z, e in b_out.get(y, {}).items():
            if mono_mul(mono[(x, y)], _single(e), ring) is not None:
                eqs[(x, z)] = eqs.get((x, z), 0) ^ (1 << k)
    by_src: dict = {}
    for (w, z), k in idx.items():
        by_src.setdefault(w, []).append((z, k))
    for x, targets in a_out.items():
        # f d_A: x -> w -> z
        for w, e in targets.items():
            dm = _single(e)
            for z, k in by_src.get(w, ()):
                if mono_mul(dm, mono[(w, z)], ring) is not None:
                    eqs[(x, z)] = eqs.get((x, z), 0) ^ (1 << k)
    return [v for v in eqs.values() if v]


def _collapsed_image(vec_bits: int, col_src, col_tgt, f_coeffs: dict, keep: str) -> int:
    """Apply the collapsed map to a bitset over source generators."""
    out = 0
    for i in gf2.bits(vec_bits):
        x = col_src.names[i]
        for y, m in f_coeffs.get(x, ()):
            if (keep == "V" and m.u_exp == 0) or (keep == "U" and m.v_exp == 0):
                out ^= 1 << col_tgt.index[y]
    return out


class _Col:
    def __init__(self, c: BigradedComplex, keep: str):
        col = collapse(c, keep)
        self.names = col.names
        self.index = {n: i for i, n in enumerate(col.names)}
        self.boundaries = gf2.Basis(col.cols[j] for j in range(len(col.names)) if col.grading[j] == 1)
        self.cycle, self.top = tower_generator(c, keep)


def _tower_bits(prob: LocalMapProblem, sol: int, cols) -> tuple[int, int]:
    coeffs: dict = {}
    for k in gf2.bits(sol):
        x, y, m = prob.unknowns[k]
        coeffs.setdefault(x, []).append((y, m))
    bits = []
    for keep in ("V", "U"):
        src, tgt = cols[keep]
        img = _collapsed_image(src.cycle, src, tgt, coeffs, keep)
        bits.append(0 if tgt.boundaries.contains(img) else 1)
    return bits[0], bits[1]


def _solution_to_map(prob: LocalMapProblem, sol: int) -> dict:
    f = {}
    for k in gf2.bits(sol):
        x, y, m = prob.unknowns[k]
        f[(x, y)] = RingElem.of([m], prob.source.ring)
    return f


def find_local_map(a: BigradedComplex, b: BigradedComplex, check: bool = True) -> Optional[dict]:
    """A local map a -> b as {(x, y): RingElem}, or None."""
    if a.ring != RING_R or b.ring != RING_R:
        raise LocalEquivError("local maps are defined between R-complexes")
    if check and not (is_knot_like(a) and is_knot_like(b)):
        raise LocalEquivError("find_local_map expects knot-like complexes")
    cols = {keep: (_Col(a, keep), _Col(b, keep)) for keep in ("V", "U")}
    for keep in ("V", "U"):
        if cols[keep][0].top != cols[keep][1].top:
            return None
    prob = local_map_problem(a, b)
    eqs = _chain_equations(prob)
    basis = gf2.solve_homogeneous(eqs, len(prob.unknowns))
    # need a combination whose tower bits are (1, 1)
    seen: dict = {}
    for sol in basis:
        t = _tower_bits(prob, sol, cols)
        if t == (1, 1):
            return _solution_to_map(prob, sol)
        if t != (0, 0):
            seen.setdefault(t, sol)
    if (1, 0) in seen and (0, 1) in seen:
        return _solution_to_map(prob, seen[(1, 0)] ^ seen[(0, 1)])
    return None


def compose(f: dict, g: dict, ring: str = RING_R) -> dict:
    """g after f."""
    out: dict = {}
    g_by_src: dict = {}
    for (y, z), e in g.items():
        g_by_src.setdefault(y, []).append((z, e))
    for (x, y), e1 in f.items():
        for z, e2 in g_by_src.get(y, ()):
            out[(x, z)] = out.get((x, z), RingElem.zero(ring)) + e1 * e2
    return {k: v for k, v in out.items() if not v.is_zero()}


def is_local_map(f: dict, a: BigradedComplex, b: BigradedComplex) -> bool:
    """Independent check of a proposed map: grading, chain map, tower isos."""
    for (x, y), e in f.items():
        for m in e.terms:
            if admissible_monomial(a.gens[x], b.gens[y], a.ring) != m:
                return False
    # d f == f d
    lhs: dict = {}
    b_out = b.out_edges()
    for (x, y), e in f.items():
        for z, d in b_out.get(y, {}).items():
            lhs[(x, z)] = lhs.get((x, z), RingElem.zero(a.ring)) + e * d
    for (x, w), d in a.diff.items():
        for (w2, z), e in f.items():
            if w2 == w:
                lhs[(x, z)] = lhs.get((x, z), RingElem.zero(a.ring)) + d * e
    if any(not v.is_zero() for v in lhs.values()):
        return False
    cols = {keep: (_Col(a, keep), _Col(b, keep)) for keep in ("V", "U")}
    coeffs: dict = {}
    for (x, y), e in f.items():
        for m in e.terms:
            coeffs.setdefault(x, []).append((y, m))
    for keep in ("V", "U"):
        src, tgt = cols[keep]
        if src.top != tgt.top:
            return False
        img = _collapsed_image(src.cycle, src, tgt, coeffs, keep)
        if tgt.boundaries.contains(img):
            return False
    return True


def is_locally_equivalent(a: BigradedComplex, b: BigradedComplex) -> bool:
    return find_local_map(a, b) is not None and find_local_map(b, a) is not None


def candidate_order(max_len: int, max_abs: int) -> Iterable[StandardParams]:
    """Symmetric params first (by length), then the rest."""
    seen = set()
    for p in symmetric_params(max_len, max_abs):
        seen.add(p.entries)
        yield p
    for p in all_params(max_len, max_abs):
        if p.entries not in seen:
            yield p


def standard_representative(c: BigradedComplex, max_len: int = 8, max_abs: int = 3,
                            stats: Optional[dict] = None) -> Optional[StandardParams]:
    """First standard complex (in candidate order) locally equivalent to ``c``.

    Candidates whose tau differs from the tower position of ``c`` are skipped
    without solving, since their towers cannot line up.
    """
    if not is_knot_like(c):
        raise LocalEquivError("standard_representative expects a knot-like complex")
    _, top = tower_generator(c, "V")
    tau = -top.gr_v // 2
    tried = 0
    for p in candidate_order(max_len, max_abs):
        if tau_epsilon_of(p)[0] != tau:
            continue
        tried += 1
        s = build_standard(p, prefix="s")
        if find_local_map(c, s, check=False) is not None and find_local_map(s, c, check=False) is not None:
            if stats is not None:
                stats["tried"] = tried
            return p
    if stats is not None:
        stats["tried"] = tried
    log.info("no standard representative within max_len=%d max_abs=%d", max_len, max_abs)
    return None


def format_map(f: dict, a: BigradedComplex, b: BigradedComplex) -> str:
    """Matrix of ring-element texts, rows = target generators, cols = source."""
    src, tgt = list(a.gens), list(b.gens)
    width = max([len(n) for n in src + tgt] + [1])
    cells = {k: e.text() for k, e in f.items()}
    width = max([width] + [len(v) for v in cells.values()])
    lines = [" " * width + " " + " ".join(n.rjust(width) for n in src)]
    for y in tgt:
        row = [cells.get((x, y), "0").rjust(width) for x in src]
        lines.append(y.rjust(width) + " " + " ".join(row))
    return "\n".join(lines) + "\n"
