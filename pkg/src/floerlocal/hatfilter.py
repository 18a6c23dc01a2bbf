"""The hat flavour: filtered F2 complexes, vertically simplified bases and
characteristic multi-sets.

Ch is computed twice: from a vertically simplified basis (fast), and straight
from the inclusion maps of filtration subquotients (slow, used as an oracle).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple

from . import gf2
from .coefrings import ONE, RING_R
from .complexes import BigradedComplex, ComplexError


class FilteredComplexError(ValueError):
    pass


@dataclass
class FilteredComplex:
    gens: dict = field(default_factory=dict)  # name -> (maslov, alexander)
    arrows: set = field(default_factory=set)  # {(src, dst)}

    def maslov(self, name: str) -> int:
        return self.gens[name][0]

    def alexander(self, name: str) -> int:
        return self.gens[name][1]

    def length(self, src: str, dst: str) -> int:
        return self.gens[src][1] - self.gens[dst][1]

    def __len__(self) -> int:
        return len(self.gens)


def direct_sum(*parts: FilteredComplex) -> FilteredComplex:
    out = FilteredComplex()
    for p in parts:
        for k, g in p.gens.items():
            if k in out.gens:
                raise FilteredComplexError(f"duplicate generator {k!r}")
            out.gens[k] = g
        out.arrows |= p.arrows
    return out


def hat_of(c: BigradedComplex, allow_unreduced: bool = False) -> FilteredComplex:
    """Set U = 0 and V = 1.

    Over a reduced complex only V-power entries survive and each arrow drops
    the Alexander grading by its V exponent.  With ``allow_unreduced`` unit
    entries are kept as length-0 arrows.
    """
    if c.ring != RING_R:
        raise FilteredComplexError("hat_of expects an R-complex")
    gens = {}
    for name, g in c.gens.items():
        if (g.gr_u - g.gr_v) % 2:
            raise FilteredComplexError(f"generator {name} has odd gr_U - gr_V")
        gens[name] = (g.gr_u, (g.gr_u - g.gr_v) // 2)
    arrows = set()
    for (s, t), e in c.diff.items():
        if ONE in e.terms and not allow_unreduced:
            raise FilteredComplexError(f"complex is not reduced at {s} -> {t}; reduce it first")
        if sum(1 for m in e.terms if m.u_exp == 0) % 2:
            arrows.add((s, t))
    return FilteredComplex(gens, arrows)


def check_filtered(f: FilteredComplex) -> None:
    for s, t in f.arrows:
        if s not in f.gens or t not in f.gens:
            raise FilteredComplexError(f"arrow {s} -> {t} references an unknown generator")
        if f.maslov(s) - f.maslov(t) != 1:
            raise FilteredComplexError(f"arrow {s} -> {t} changes M by {f.maslov(t) - f.maslov(s)}")
        if f.length(s, t) < 0:
            raise FilteredComplexError(f"arrow {s} -> {t} raises the filtration")
    out = {}
    for s, t in f.arrows:
        out.setdefault(s, set()).add(t)
    for x, ys in out.items():
        hit = set()
        for y in ys:
            hit ^= out.get(y, set())
        if hit:
            raise FilteredComplexError(f"d^2 != 0 at {x} -> {sorted(hit)[0]}")


class VArrow(NamedTuple):
    source: str
    target: str
    target_a: int
    target_m: int
    length: int

    @property
    def source_a(self) -> int:
        return self.target_a + self.length

    @property
    def source_m(self) -> int:
        return self.target_m + 1


@dataclass
class VerticalBasis:
    arrows: list  # of VArrow
    cycles: list  # each cycle is a sorted list of generator names


def vertically_simplify(f: FilteredComplex) -> VerticalBasis:
    """Filtered Gaussian elimination, shortest arrow first.

    Ties break on (target, source) names.  When ``x -> y`` is selected every
    other source of ``y`` gets ``x`` added to it and ``y`` absorbs the other
    targets of ``x``; both moves are filtered because no shorter arrow exists.
    """
    check_filtered(f)
    names = sorted(f.gens)
    pos = {n: i for i, n in enumerate(names)}
    alex = [f.gens[n][1] for n in names]
    maslov = [f.gens[n][0] for n in names]
    # column j: images of basis element j; basis[j]: generators making it up
    cols = [0] * len(names)
    for s, t in f.arrows:
        cols[pos[s]] ^= 1 << pos[t]
    basis = [1 << j for j in range(len(names))]
    alive = set(range(len(names)))
    out = []
    while True:
        best = None
        for j in alive:
            c = cols[j]
            while c:
                low = c & -c
                i = low.bit_length() - 1
                c ^= low
                key = (alex[j] - alex[i], names[i], names[j])
                if best is None or key < best[0]:
                    best = (key, j, i)
        if best is None:
            break
        (length, _, _), x, y = best
        # other sources of y: x' += x
        for j in alive:
            if j != x and cols[j] >> y & 1:
                cols[j] ^= cols[x]
                basis[j] ^= basis[x]
        # other targets y' of x: row_{y'} += row_y, only column x carries y now
        others = cols[x] & ~(1 << y)
        cols[x] = 1 << y
        # basis element y becomes d(x), i.e. y + others
        for k in gf2.bits(others):
            basis[y] ^= basis[k]
        alive.discard(x)
        alive.discard(y)
        for j in alive:
            cols[j] &= ~((1 << x) | (1 << y))
        out.append(VArrow(names[x], names[y], alex[y], maslov[y], length))
    cycles = []
    for j in sorted(alive):
        cycles.append(sorted(names[i] for i in gf2.bits(basis[j])))
    return VerticalBasis(out, cycles)


def ch_from_basis(f: FilteredComplex) -> Counter:
    vb = vertically_simplify(f)
    if len(vb.cycles) != 1:
        raise FilteredComplexError(f"homology has rank {len(vb.cycles)}, expected 1")
    return Counter((a.target_a, a.target_m, a.length) for a in vb.arrows if a.length > 0)


def ch_from_definition(f: FilteredComplex) -> Counter:
    """Ch via dim ker of H_m(F_a/F_{a-1}) -> H_m(F_{a+l}/F_{a-1})."""
    check_filtered(f)
    names = sorted(f.gens)
    if not names:
        return Counter()
    pos = {n: i for i, n in enumerate(names)}
    cols = [0] * len(names)
    for s, t in f.arrows:
        cols[pos[s]] ^= 1 << pos[t]
    alex = [f.gens[n][1] for n in names]
    maslov = [f.gens[n][0] for n in names]
    amin, amax = min(alex), max(alex)
    out = Counter()
    for a, m in sorted(set(zip(alex, maslov))):
        src = [i for i in range(len(names)) if alex[i] == a and maslov[i] == m]
        # differential on the associated graded piece at level a
        level_a = sum(1 << i for i in range(len(names)) if alex[i] == a)
        z_src = gf2.nullspace([cols[i] & level_a for i in src])
        z_vecs = [sum(1 << src[b] for b in gf2.bits(k)) for k in z_src]
        b_src = gf2.Basis(cols[i] & level_a for i in range(len(names))
                          if alex[i] == a and maslov[i] == m + 1)
        h_src = len(z_vecs) - len(b_src)
        prev = 0
        for l in range(1, amax - amin + 1):
            window = sum(1 << i for i in range(len(names)) if a <= alex[i] <= a + l)
            b_tgt = [cols[i] & window for i in range(len(names))
                     if a <= alex[i] <= a + l and maslov[i] == m + 1]
            r_b = gf2.rank(b_tgt)
            r_zb = gf2.rank(z_vecs + b_tgt)
            # dim(Z_src ∩ B_tgt) - dim B_src
            ker = len(z_vecs) + r_b - r_zb - len(b_src)
            if ker > prev:
                out[(a, m, l)] += ker - prev
            prev = ker
            if ker == h_src:
                break
    return out


def total_homology(f: FilteredComplex) -> dict:
    """dim H_m of the underlying F2 complex, by Maslov grading (zeros omitted)."""
    names = sorted(f.gens)
    pos = {n: i for i, n in enumerate(names)}
    cols = [0] * len(names)
    for s, t in f.arrows:
        cols[pos[s]] ^= 1 << pos[t]
    out = {}
    for m in sorted(set(g[0] for g in f.gens.values())):
        deg = [i for i, n in enumerate(names) if f.gens[n][0] == m]
        z = len(gf2.nullspace([cols[i] for i in deg]))
        b = gf2.rank(cols[i] for i, n in enumerate(names) if f.gens[n][0] == m + 1)
        if z - b:
            out[m] = z - b
    return out


def ch_contains(big: Counter, small: Counter) -> bool:
    """Multiset containment small ⊆ big."""
    return all(big[k] >= v for k, v in small.items())


# --- text formats -------------------------------------------------------------

def format_filtered(f: FilteredComplex) -> str:
    lines = [f"fgen {n} {m} {a}" for n, (m, a) in f.gens.items()]
    order = {n: i for i, n in enumerate(f.gens)}
    for s, t in sorted(f.arrows, key=lambda st: (order[st[0]], order[st[1]])):
        lines.append(f"farr {s} {t}")
    return "\n".join(lines) + "\n"


def parse_filtered(text: str) -> FilteredComplex:
    f = FilteredComplex()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "fgen" and len(parts) == 4:
                if parts[1] in f.gens:
                    raise FilteredComplexError(f"line {lineno}: duplicate generator {parts[1]!r}")
                f.gens[parts[1]] = (int(parts[2]), int(parts[3]))
            elif parts[0] == "farr" and len(parts) == 3:
                if (parts[1], parts[2]) in f.arrows:
                    raise FilteredComplexError(f"line {lineno}: duplicate arrow")
                f.arrows.add((parts[1], parts[2]))
            else:
                raise FilteredComplexError(f"line {lineno}: cannot parse {line!r}")
        except ValueError as exc:
            if isinstance(exc, FilteredComplexError):
                raise
            raise FilteredComplexError(f"line {lineno}: gradings must be integers") from None
    for s, t in f.arrows:
        if s not in f.gens or t not in f.gens:
            raise FilteredComplexError(f"arrow {s} -> {t} references an unknown generator")
    return f


def format_ch(ch: Counter) -> str:
    return "".join(f"ch {a} {m} {l} {k}\n" for (a, m, l), k in sorted(ch.items()) if k)


def parse_ch(text: str) -> Counter:
    out = Counter()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            _, a, m, l, k = line.split()
            out[(int(a), int(m), int(l))] += int(k)
    return out


__all__ = [
    "FilteredComplex", "FilteredComplexError", "check_filtered", "VArrow", "VerticalBasis", "hat_of",
    "vertically_simplify", "ch_from_basis", "ch_from_definition", "total_homology",
    "ch_contains", "direct_sum", "format_filtered", "parse_filtered", "format_ch",
    "parse_ch", "ComplexError",
]
