"""Free, finitely generated bigraded chain complexes over R or F2[U,V].

The differential has bidegree (-1, -1): an entry ``U^a V^b`` from ``x`` to ``y``
requires ``gr(x) - (1, 1) == gr(y) + (-2a, -2b)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from . import gf2
from .coefrings import (
    ONE,
    RING_R,
    RING_UV,
    RINGS,
    Bigrading,
    Monomial,
    RingElem,
    RingError,
    grading_shift,
    mono_mul,
    parse_elem,
)
from .snf import smith_diagonal

DIFF_DEGREE = Bigrading(-1, -1)


class ComplexError(ValueError):
    pass


class ComplexParseError(ComplexError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass
class BigradedComplex:
    """Generators in insertion order, differential keyed by (source, target)."""

    gens: dict = field(default_factory=dict)  # name -> Bigrading
    diff: dict = field(default_factory=dict)  # (src, dst) -> RingElem
    ring: str = RING_R

    def __post_init__(self):
        if self.ring not in RINGS:
            raise ComplexError(f"unknown ring {self.ring!r}")
        self.gens = {k: Bigrading(*g) for k, g in self.gens.items()}
        self.diff = {k: e for k, e in self.diff.items() if not e.is_zero()}

    @property
    def names(self) -> list[str]:
        return list(self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def grading(self, name: str) -> Bigrading:
        return self.gens[name]

    def add_gen(self, name: str, gr_u: int, gr_v: int) -> None:
        if name in self.gens:
            raise ComplexError(f"duplicate generator {name!r}")
        self.gens[name] = Bigrading(gr_u, gr_v)

    def add_arrow(self, src: str, dst: str, coeff) -> None:
        """Add ``coeff`` (RingElem or Monomial) to the entry src -> dst."""
        if isinstance(coeff, Monomial):
            coeff = RingElem.of([coeff], self.ring)
        new = self.diff.get((src, dst), RingElem.zero(self.ring)) + coeff
        if new.is_zero():
            self.diff.pop((src, dst), None)
        else:
            self.diff[(src, dst)] = new

    def out_edges(self) -> dict:
        out = defaultdict(dict)
        for (s, t), e in self.diff.items():
            out[s][t] = e
        return out

    def in_edges(self) -> dict:
        inc = defaultdict(dict)
        for (s, t), e in self.diff.items():
            inc[t][s] = e
        return inc

    def copy(self) -> "BigradedComplex":
        return BigradedComplex(dict(self.gens), dict(self.diff), self.ring)

    def is_reduced(self) -> bool:
        return not any(ONE in e.terms for e in self.diff.values())

    def shifted(self, du: int, dv: int) -> "BigradedComplex":
        return BigradedComplex({k: g + (du, dv) for k, g in self.gens.items()},
                               dict(self.diff), self.ring)

    def renamed(self, fn) -> "BigradedComplex":
        return BigradedComplex({fn(k): g for k, g in self.gens.items()},
                               {(fn(s), fn(t)): e for (s, t), e in self.diff.items()},
                               self.ring)


# --- validation -------------------------------------------------------------

@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        if self.ok:
            return ["valid"]
        return [f"violation {v}" for v in self.violations]


def entry_is_homogeneous(src: Bigrading, dst: Bigrading, m: Monomial) -> bool:
    return src + DIFF_DEGREE == dst + grading_shift(m)


def validate(c: BigradedComplex) -> ValidationReport:
    rep = ValidationReport()
    for (s, t), e in sorted(c.diff.items()):
        if s not in c.gens or t not in c.gens:
            rep.violations.append(f"unknown-generator {s} {t}")
            continue
        if e.ring != c.ring:
            rep.violations.append(f"ring-mismatch {s} {t}")
            continue
        for m in e.sorted_terms():
            if not entry_is_homogeneous(c.gens[s], c.gens[t], m):
                rep.violations.append(f"inhomogeneous {s} {t} {m.text()}")
    for (x, z), e in sorted(d_squared(c).items()):
        rep.violations.append(f"d-squared {x} {z} {e.text()}")
    return rep


def d_squared(c: BigradedComplex) -> dict:
    """Nonzero entries of the composite differential."""
    out = c.out_edges()
    acc: dict = {}
    for x, targets in out.items():
        for y, e1 in targets.items():
            for z, e2 in out.get(y, {}).items():
                acc[(x, z)] = acc.get((x, z), RingElem.zero(c.ring)) + e1 * e2
    return {k: v for k, v in acc.items() if not v.is_zero()}


# --- reduction --------------------------------------------------------------

def reduce(c: BigradedComplex) -> BigradedComplex:
    """Cancel unit entries until the differential vanishes mod (U, V).

    The cancelled entry is always the lexicographically smallest (src, dst)
    pair whose coefficient is exactly 1.
    """
    gens = dict(c.gens)
    diff = dict(c.diff)
    one = RingElem.one(c.ring)
    while True:
        units = [k for k, e in diff.items() if e == one]
        if not units:
            break
        x, y = min(units)
        into_y = [(z, e) for (z, t), e in diff.items() if t == y and z != x]
        from_x = [(w, e) for (s, w), e in diff.items() if s == x and w != y]
        # d'(z) = d(z) + <dz, y> dx, with x and y removed
        for z, ezy in into_y:
            for w, exw in from_x:
                new = diff.get((z, w), RingElem.zero(c.ring)) + ezy * exw
                if new.is_zero():
                    diff.pop((z, w), None)
                else:
                    diff[(z, w)] = new
        diff = {(s, t): e for (s, t), e in diff.items()
                if s not in (x, y) and t not in (x, y)}
        del gens[x]
        del gens[y]
    return BigradedComplex(gens, diff, c.ring)


# --- tensor product -----------------------------------------------------------

def pair_name(a: str, b: str) -> str:
    return f"{a}*{b}"


def tensor(c1: BigradedComplex, c2: BigradedComplex, name=pair_name) -> BigradedComplex:
    if c1.ring != c2.ring:
        raise ComplexError(f"ring mismatch: {c1.ring} vs {c2.ring}")
    gens = {name(a, b): ga + gb for a, ga in c1.gens.items() for b, gb in c2.gens.items()}
    diff = {}
    for (s, t), e in c1.diff.items():
        for b in c2.gens:
            diff[(name(s, b), name(t, b))] = e
    for (s, t), e in c2.diff.items():
        for a in c1.gens:
            key = (name(a, s), name(a, t))
            diff[key] = diff[key] + e if key in diff else e
    return BigradedComplex(gens, diff, c1.ring)


def direct_sum(*parts: BigradedComplex) -> BigradedComplex:
    ring = parts[0].ring if parts else RING_R
    out = BigradedComplex(ring=ring)
    for p in parts:
        if p.ring != ring:
            raise ComplexError("ring mismatch in direct sum")
        for k, g in p.gens.items():
            out.add_gen(k, *g)
        out.diff.update(p.diff)
    return out


def unit_complex(ring: str = RING_R, name: str = "x0") -> BigradedComplex:
    return BigradedComplex({name: Bigrading(0, 0)}, {}, ring)


# --- homology of the quotients C/U and C/V ------------------------------------

def _quotient_poly(e: RingElem, kill: str) -> int:
    """Image of an entry in F2[t] after setting ``kill`` to 0 (t = other variable)."""
    p = 0
    for m in e.terms:
        if kill == "U":
            if m.u_exp == 0:
                p ^= 1 << m.v_exp
        else:
            if m.v_exp == 0:
                p ^= 1 << m.u_exp
    return p


@dataclass
class QuotientHomology:
    """H_*(C/U) over F2[V] (or H_*(C/V) over F2[U]) split by the kept grading."""

    kill: str
    free: dict  # preserved grading -> free rank
    torsion: dict  # preserved grading -> list of torsion exponents

    @property
    def free_rank(self) -> int:
        return sum(self.free.values())


def quotient_homology(c: BigradedComplex, kill: str) -> QuotientHomology:
    """Module structure of H(C/kill) via Smith forms over the one-variable ring.

    Setting U = 0 keeps gr_U as a grading that the differential lowers by one,
    so the quotient complex splits as a direct sum over gr_U values.
    """
    if c.ring != RING_R:
        raise ComplexError("quotient homology is defined for R-complexes")
    if kill not in ("U", "V"):
        raise ComplexError("kill must be 'U' or 'V'")
    idx = 0 if kill == "U" else 1
    by_deg = defaultdict(list)
    for name, g in c.gens.items():
        by_deg[g[idx]].append(name)

    def diag(m: int) -> list[int]:
        # differential from degree m to m-1
        src, dst = by_deg.get(m, []), by_deg.get(m - 1, [])
        if not src or not dst:
            return []
        pos = {n: i for i, n in enumerate(dst)}
        mat = [[0] * len(src) for _ in dst]
        for j, s in enumerate(src):
            for t in dst:
                e = c.diff.get((s, t))
                if e is not None:
                    mat[pos[t]][j] = _quotient_poly(e, kill)
        return smith_diagonal(mat)

    diags = {m: diag(m) for m in set(by_deg) | {m + 1 for m in by_deg}}
    free, torsion = {}, {}
    for m, names in by_deg.items():
        r_out = len(diags.get(m, []))
        r_in = diags.get(m + 1, [])
        f = len(names) - r_out - len(r_in)
        if f:
            free[m] = f
        tors = [d.bit_length() - 1 for d in r_in if d != 1]
        if tors:
            torsion[m] = sorted(tors)
    return QuotientHomology(kill, free, torsion)


def is_knot_like(c: BigradedComplex) -> bool:
    if c.ring != RING_R:
        raise ComplexError("is_knot_like expects an R-complex")
    hu = quotient_homology(c, "U")
    hv = quotient_homology(c, "V")
    return hu.free == {0: 1} and hv.free == {0: 1}


# --- collapsed F2 complexes (one variable set to 0, the other to 1) -----------

@dataclass
class Collapsed:
    """F2 complex with a grading and a filtration level per generator."""

    names: list
    grading: list
    level: list
    cols: list  # cols[j] = bitset of images of generator j


def collapse(c: BigradedComplex, keep: str) -> Collapsed:
    """Set the other variable to 0 and ``keep`` to 1.

    keep='V' gives the hat complex: grading gr_U, filtration A.
    keep='U' gives the mirror flavour: grading gr_V, filtration -A.
    """
    names = list(c.gens)
    pos = {n: i for i, n in enumerate(names)}
    cols = [0] * len(names)
    kill = "U" if keep == "V" else "V"
    for (s, t), e in c.diff.items():
        p = _quotient_poly(e, kill)
        # F2[t] -> F2 at t = 1 is the parity of the term count
        if bin(p).count("1") % 2:
            cols[pos[s]] ^= 1 << pos[t]
    if keep == "V":
        grading = [c.gens[n].gr_u for n in names]
        level = [(c.gens[n].gr_u - c.gens[n].gr_v) // 2 for n in names]
    else:
        grading = [c.gens[n].gr_v for n in names]
        level = [(c.gens[n].gr_v - c.gens[n].gr_u) // 2 for n in names]
    return Collapsed(names, grading, level, cols)


def _boundaries(col: Collapsed, deg: int) -> gf2.Basis:
    return gf2.Basis(col.cols[j] for j in range(len(col.names)) if col.grading[j] == deg + 1)


def _cycles(col: Collapsed, members: list[int]) -> list[int]:
    ker = gf2.nullspace([col.cols[j] for j in members])
    out = []
    for k in ker:
        v = 0
        for b in gf2.bits(k):
            v |= 1 << members[b]
        out.append(v)
    return out


def tower_generator(c: BigradedComplex, keep: str):
    """A cycle generating the free tower, and the grading of the tower top.

    Returns (cycle_bitset_over_generators, top_grading) in the collapsed model
    for ``keep``.  The top is the bigrading of the tower generator in C/U
    (keep='V') or C/V (keep='U').  Raises if the collapsed homology is not
    one-dimensional in degree 0.
    """
    col = collapse(c, keep)
    n = len(col.names)
    deg0 = [j for j in range(n) if col.grading[j] == 0]
    bnd = _boundaries(col, 0)
    total = _cycles(col, deg0)
    if len(total) - len(bnd) != 1:
        raise ComplexError("collapsed homology in degree 0 is not one-dimensional")
    for a in sorted(set(col.level[j] for j in deg0)):
        members = [j for j in deg0 if col.level[j] <= a]
        for z in _cycles(col, members):
            if not bnd.contains(z):
                top = -2 * a
                grading = Bigrading(0, top) if keep == "V" else Bigrading(top, 0)
                return z, grading
    raise ComplexError("no tower generator found")  # unreachable for valid input


# --- text format ------------------------------------------------------------

def format_complex(c: BigradedComplex) -> str:
    lines = [f"ring {c.ring}"]
    for name, g in c.gens.items():
        lines.append(f"gen {name} {g.gr_u} {g.gr_v}")
    order = {n: i for i, n in enumerate(c.gens)}
    for (s, t), e in sorted(c.diff.items(), key=lambda kv: (order.get(kv[0][0], 0), order.get(kv[0][1], 0))):
        lines.append(f"dif {s} {t} {e.text()}")
    return "\n".join(lines) + "\n"


def parse_complex(text: str) -> BigradedComplex:
    ring = None
    gens: dict = {}
    difs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        if kw == "ring":
            if len(parts) != 2 or parts[1] not in RINGS:
                raise ComplexParseError(lineno, f"expected 'ring R' or 'ring UV', got {line!r}")
            if ring is not None:
                raise ComplexParseError(lineno, "ring declared twice")
            ring = parts[1]
        elif kw == "gen":
            if len(parts) != 4:
                raise ComplexParseError(lineno, "expected 'gen <name> <gr_u> <gr_v>'")
            try:
                g = Bigrading(int(parts[2]), int(parts[3]))
            except ValueError:
                raise ComplexParseError(lineno, "gradings must be integers") from None
            if parts[1] in gens:
                raise ComplexParseError(lineno, f"duplicate generator {parts[1]!r}")
            gens[parts[1]] = g
        elif kw == "dif":
            if len(parts) < 4:
                raise ComplexParseError(lineno, "expected 'dif <from> <to> <ring-elem>'")
            difs.append((lineno, parts[1], parts[2], "".join(parts[3:])))
        else:
            raise ComplexParseError(lineno, f"unknown keyword {kw!r}")
    if ring is None:
        ring = RING_R
    diff = {}
    for lineno, s, t, etext in difs:
        if s not in gens or t not in gens:
            raise ComplexParseError(lineno, f"unknown generator in 'dif {s} {t}'")
        if (s, t) in diff:
            raise ComplexParseError(lineno, f"duplicate entry {s} -> {t}")
        try:
            e = parse_elem(etext, ring)
        except RingError as exc:
            raise ComplexParseError(lineno, str(exc)) from None
        diff[(s, t)] = e
    return BigradedComplex(gens, diff, ring)


def from_arrows(gens: dict, arrows: Iterable, ring: str = RING_R) -> BigradedComplex:
    """Convenience builder: arrows are (src, dst, Monomial-or-text)."""
    c = BigradedComplex({k: Bigrading(*v) for k, v in gens.items()}, {}, ring)
    for s, t, m in arrows:
        if isinstance(m, str):
            c.add_arrow(s, t, parse_elem(m, ring))
        else:
            c.add_arrow(s, t, Monomial(*m))
    return c


__all__ = [
    "BigradedComplex", "ComplexError", "ComplexParseError", "ValidationReport",
    "validate", "reduce", "tensor", "direct_sum", "is_knot_like", "quotient_homology",
    "collapse", "tower_generator", "format_complex", "parse_complex", "from_arrows",
    "unit_complex", "d_squared", "RING_R", "RING_UV", "mono_mul",
]
