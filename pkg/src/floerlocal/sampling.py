"""Seeded random complexes for property tests and the acceptance suite.

The seed comes from ``FLOERLOCAL_SEED`` when set, else a fixed default.
"""

from __future__ import annotations

import os
import random
from typing import Optional

from .coefrings import RING_R, Bigrading, Monomial, RingElem, monomial_for_shift
from .complexes import BigradedComplex, direct_sum
from .hatfilter import FilteredComplex
from .standard import StandardParams, build_standard

DEFAULT_SEED = 20240917


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    raw = os.environ.get("FLOERLOCAL_SEED")
    return int(raw) if raw else default


def rng(seed: Optional[int] = None) -> random.Random:
    return random.Random(seed_from_env() if seed is None else seed)


# --- filtered (hat) complexes -------------------------------------------------


def random_filtered(r: random.Random, max_gens: int = 12, max_len: int = 4,
                    spread: int = 3) -> FilteredComplex:
    """Reduced filtered complex with H = F2 in Maslov grading 0.

    Starts from a vertically simplified model (a cycle plus arrows x -> y)
    and scrambles it with random filtered, grading-preserving basis changes.
    """
    npairs = r.randint(0, (max_gens - 1) // 2)
    names = ["z"]
    gr = [(0, r.randint(-spread, spread))]  # (M, A)
    for k in range(npairs):
        m, a, l = r.randint(-3, 3), r.randint(-spread, spread), r.randint(1, max_len)
        names += [f"x{k}", f"y{k}"]
        gr += [(m + 1, a + l), (m, a)]
    n = len(names)
    cols = [0] * n
    for k in range(npairs):
        cols[1 + 2 * k] = 1 << (2 + 2 * k)
    for _ in range(r.randint(0, 4 * n)):
        i, j = r.randrange(n), r.randrange(n)
        if i == j or gr[i][0] != gr[j][0] or gr[j][1] > gr[i][1]:
            continue
        # new basis element e_i + e_j, so coordinates on e_i also count on e_j
        cols[i] ^= cols[j]
        for k in range(n):
            if cols[k] >> i & 1:
                cols[k] ^= 1 << j
    order = list(range(n))
    r.shuffle(order)
    label = {i: f"g{p}" for p, i in enumerate(order)}
    gens = {label[i]: gr[i] for i in range(n)}
    arrows = {(label[i], label[j]) for i in range(n) for j in range(n) if cols[i] >> j & 1}
    return FilteredComplex(gens, arrows)


# --- R-complexes --------------------------------------------------------------


def random_params(r: random.Random, max_len: int = 6, max_abs: int = 3,
                  symmetric: bool = True) -> StandardParams:
    vals = [v for v in range(-max_abs, max_abs + 1) if v]
    if symmetric:
        head = tuple(r.choice(vals) for _ in range(r.randint(0, max_len // 2)))
        return StandardParams(head + tuple(-b for b in reversed(head)))
    return StandardParams(tuple(r.choice(vals) for _ in range(2 * r.randint(0, max_len // 2))))


def unit_pair(name: str, g: Bigrading) -> BigradedComplex:
    """Acyclic piece a -> b with unit coefficient."""
    c = BigradedComplex({f"{name}a": g, f"{name}b": g - (1, 1)}, {}, RING_R)
    c.add_arrow(f"{name}a", f"{name}b", Monomial(0, 0))
    return c


def box(name: str, g: Bigrading, k: int = 1) -> BigradedComplex:
    """Square with d a = U^k b + V^k c, d b = V^k e, d c = U^k e.

    Both localizations are acyclic, so it never changes the local class.
    """
    a, b, c, e = (f"{name}{s}" for s in "abce")
    gb = Bigrading(g.gr_u - 1 + 2 * k, g.gr_v - 1)
    gc = Bigrading(g.gr_u - 1, g.gr_v - 1 + 2 * k)
    ge = Bigrading(g.gr_u - 2 + 2 * k, g.gr_v - 2 + 2 * k)
    out = BigradedComplex({a: g, b: gb, c: gc, e: ge}, {}, RING_R)
    out.add_arrow(a, b, Monomial(k, 0))
    out.add_arrow(a, c, Monomial(0, k))
    out.add_arrow(b, e, Monomial(0, k))
    out.add_arrow(c, e, Monomial(k, 0))
    return out


def _random_grading(r: random.Random) -> Bigrading:
    m = r.randint(-4, 4)
    return Bigrading(m, m - 2 * r.randint(-3, 3))


def acyclic_summand(r: random.Random, tag: str) -> BigradedComplex:
    if r.random() < 0.5:
        return unit_pair(tag, _random_grading(r))
    return box(tag, _random_grading(r), r.randint(1, 2))


def scramble(c: BigradedComplex, r: random.Random, moves: int) -> BigradedComplex:
    """Random homogeneous basis changes e_i -> e_i + m e_j."""
    c = c.copy()
    names = c.names
    for _ in range(moves):
        i, j = r.sample(names, 2) if len(names) > 1 else (names[0], names[0])
        if i == j:
            continue
        gi, gj = c.gens[i], c.gens[j]
        m = monomial_for_shift((gi.gr_u - gj.gr_u, gi.gr_v - gj.gr_v))
        if m is None or m.is_mixed():
            continue
        elem = RingElem.of([m], c.ring)
        # d(e_i + m e_j) = d e_i + m d e_j
        for (s, t), e in list(c.diff.items()):
            if s == j:
                c.add_arrow(i, t, elem * e)
        # old e_i = f_i + m f_j, so a coefficient x on e_i adds x*m on f_j
        for (s, t), e in list(c.diff.items()):
            if t == i:
                c.add_arrow(s, j, e * elem)
    return c


def random_r_complex(r: random.Random, max_len: int = 6, max_abs: int = 3,
                     summands: int = 2, moves: int = 12,
                     p: Optional[StandardParams] = None) -> tuple[BigradedComplex, StandardParams]:
    """Scrambled C(p) plus acyclic summands; returns the complex and p."""
    if p is None:
        p = random_params(r, max_len, max_abs, symmetric=r.random() < 0.7)
    parts = [build_standard(p)]
    for k in range(r.randint(0, summands)):
        parts.append(acyclic_summand(r, f"q{k}"))
    c = direct_sum(*parts)
    return scramble(c, r, r.randint(0, moves)), p
