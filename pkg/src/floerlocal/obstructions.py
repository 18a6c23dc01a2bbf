"""Realizability obstructions for standard complexes, with a lifting oracle.

``not_realizable`` is the fast predicate battery.  ``lifting_oracle`` looks for
an F2[U,V] complex that extends a concrete prefix under the structural
constraints a knot complex would have to satisfy, and certifies a predicate
hit when no such extension exists within the search bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

from .coefrings import Bigrading, Monomial
from .standard import _step

# --- predicate battery --------------------------------------------------------


@dataclass(frozen=True)
class PrefixPattern:
    """A family of forbidden prefixes; ``build`` instantiates it concretely."""

    name: str
    shape: str
    params: tuple  # names of the free parameters
    build: Callable

    def instances(self, values=(1, 2, 3)):
        for combo in itertools.product(values, repeat=len(self.params)):
            yield tuple(self.build(*combo))


LEMMA_FAMILIES = (
    PrefixPattern("1", "(1,-1,-1,...)", (), lambda: (1, -1, -1)),
    PrefixPattern("2", "(1,-1,1,1,...)", (), lambda: (1, -1, 1, 1)),
    PrefixPattern("3", "(1,-n,-1,-l,...)", ("n", "l"), lambda n, l: (1, -n, -1, -l)),
    PrefixPattern("4", "(1,-n,-1,1,1,...)", ("n",), lambda n: (1, -n, -1, 1, 1)),
    PrefixPattern("5", "(1,-n,1,1,...)", ("n",), lambda n: (1, -n, 1, 1)),
    PrefixPattern("6", "(1,-n,1,-1,-1,...)", ("n",), lambda n: (1, -n, 1, -1, -1)),
)


def _matches(e: tuple) -> Optional[str]:
    """Name of the first rule the entry list starts with, or None."""
    n = len(e)
    if n >= 2 and e[0] == 1 and e[1] > 0:
        return "a1=1=>a2<0"
    if n >= 3 and e[:3] == (1, -1, -1):
        return "1"
    if n >= 4 and e[:4] == (1, -1, 1, 1):
        return "2"
    if n >= 4 and e[0] == 1 and e[1] < 0 and e[2] == -1 and e[3] < 0:
        return "3"
    if n >= 5 and e[0] == 1 and e[1] < 0 and e[2:5] == (-1, 1, 1):
        return "4"
    if n >= 4 and e[0] == 1 and e[1] < 0 and e[2:4] == (1, 1):
        return "5"
    if n >= 5 and e[0] == 1 and e[1] < 0 and e[2:5] == (1, -1, -1):
        return "6"
    return None


def not_realizable(prefix) -> bool:
    e = tuple(int(b) for b in prefix)
    if any(b == 0 for b in e):
        raise ValueError("entries must be nonzero")
    return _matches(e) is not None


def matching_rule(prefix) -> Optional[str]:
    return _matches(tuple(int(b) for b in prefix))


# --- lifting oracle -----------------------------------------------------------


@dataclass
class OracleResult:
    verdict: str  # "exists" | "refuted"
    nodes: int
    extra_gens: int
    exp_bound: int
    witness: dict = field(default_factory=dict)  # extra arrows of a found lift
    aux_gradings: dict = field(default_factory=dict)

    @property
    def refuted(self) -> bool:
        return self.verdict == "refuted"


def prefix_complex(prefix) -> tuple[list[Bigrading], dict]:
    """Gradings (x_0 at (0, 0)) and prescribed arrows of a prefix over F2[U,V]."""
    gr = [Bigrading(0, 0)]
    arrows = {}
    for i, b in enumerate(prefix, 1):
        gr.append(_step(gr[-1], i, b))
        k = abs(b)
        m = Monomial(k, 0) if i % 2 else Monomial(0, k)
        key = (f"x{i-1}", f"x{i}") if b < 0 else (f"x{i}", f"x{i-1}")
        arrows[key] = m
    return gr, arrows


class _Search:
    def __init__(self, prefix, extra_gens: int, exp_bound: int, max_nodes: int):
        gr, prescribed = prefix_complex(prefix)
        self.gr = {f"x{i}": g for i, g in enumerate(gr)}
        k = len(prefix)
        # the last generator continues into the unseen rest of the complex
        self.constrained = {f"x{i}" for i in range(k)}
        self.prescribed = prescribed
        self.extra_gens = extra_gens
        self.exp_bound = exp_bound
        self.max_nodes = max_nodes
        self.nodes = 0
        self.seen: set = set()

    def monomial(self, gs: Bigrading, gt: Bigrading) -> Optional[Monomial]:
        """Monomial an arrow s -> t must carry, if gradings allow one."""
        du = gt.gr_u - gs.gr_u + 1
        dv = gt.gr_v - gs.gr_v + 1
        if du < 0 or dv < 0 or du % 2 or dv % 2:
            return None
        return Monomial(du // 2, dv // 2)

    def admissible(self, s: str, t: str, m: Monomial, gr: dict) -> bool:
        if s == t or (s, t) in self.prescribed:
            return False
        if m.u_exp + m.v_exp == 0:
            return False  # reduced
        if m.u_exp > self.exp_bound or m.v_exp > self.exp_bound:
            return False
        if (s in self.constrained or t in self.constrained) and not (m.u_exp and m.v_exp):
            return False
        return True

    def defects(self, arrows: dict) -> list:
        out: dict = {}
        for s, t in arrows:
            out.setdefault(s, []).append(t)
        acc: dict = {}
        for x, ys in out.items():
            for y in ys:
                for z in out.get(y, ()):
                    acc[(x, z)] = acc.get((x, z), 0) ^ 1
        return sorted(k for k, v in acc.items() if v)

    def run(self) -> OracleResult:
        arrows = dict(self.prescribed)
        found = self._dfs(arrows, dict(self.gr))
        verdict = "exists" if found is not None else "refuted"
        res = OracleResult(verdict, self.nodes, self.extra_gens, self.exp_bound)
        if found is not None:
            arr, gr = found
            res.witness = {k: v for k, v in arr.items() if k not in self.prescribed}
            res.aux_gradings = {k: v for k, v in gr.items() if k not in self.gr}
        return res

    def _dfs(self, arrows: dict, gr: dict):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise RuntimeError(f"lifting search exceeded {self.max_nodes} nodes")
        key = frozenset(arrows.items())
        if key in self.seen:
            return None
        self.seen.add(key)
        bad = self.defects(arrows)
        if not bad:
            return arrows, gr
        x, z = bad[0]
        # every lift containing the current arrows must cancel this entry of
        # d^2 with a path x -> y -> z that uses at least one new arrow
        for y in list(gr):
            m1 = self.monomial(gr[x], gr[y])
            m2 = self.monomial(gr[y], gr[z])
            if m1 is None or m2 is None:
                continue
            new = {}
            ok = True
            for s, t, m in ((x, y, m1), (y, z, m2)):
                if (s, t) in arrows:
                    continue
                if not self.admissible(s, t, m, gr):
                    ok = False
                    break
                new[(s, t)] = m
            if not ok or not new:
                continue
            res = self._dfs({**arrows, **new}, gr)
            if res is not None:
                return res
        naux = len(gr) - len(self.gr)
        if naux < self.extra_gens:
            # split the d^2 monomial through a fresh generator
            name = f"y{naux + 1}"
            du, dv = _d2_monomial(gr[x], gr[z])
            for a, b in itertools.product(range(du + 1), range(dv + 1)):
                m1 = Monomial(a, b)
                m2 = Monomial(du - a, dv - b)
                gy = Bigrading(gr[x].gr_u - 1 + 2 * a, gr[x].gr_v - 1 + 2 * b)
                gr2 = {**gr, name: gy}
                if not (self.admissible(x, name, m1, gr2) and self.admissible(name, z, m2, gr2)):
                    continue
                res = self._dfs({**arrows, (x, name): m1, (name, z): m2}, gr2)
                if res is not None:
                    return res
        return None


def _d2_monomial(gx: Bigrading, gz: Bigrading) -> tuple[int, int]:
    # d^2 has bidegree (-2, -2): gr(x) - (2, 2) == gr(z) - 2 * exps
    return (gz.gr_u - gx.gr_u + 2) // 2, (gz.gr_v - gx.gr_v + 2) // 2


def lifting_oracle(prefix, extra_gens: int = 2, exp_bound: Optional[int] = None,
                   max_nodes: int = 200_000) -> OracleResult:
    """Search for an F2[U,V] lift of the prefix arrows.

    Constraints: the prefix arrows are fixed; every other arrow touching
    x_0..x_{k-1} is divisible by UV; all arrows are homogeneous, nonunit
    (reduced) and have exponents <= exp_bound; at most ``extra_gens``
    auxiliary generators; d^2 = 0.  The search branches on the first nonzero
    entry of d^2 over every way of cancelling it, which is exhaustive.
    """
    prefix = tuple(int(b) for b in prefix)
    if exp_bound is None:
        exp_bound = 2 * max((abs(b) for b in prefix), default=0) + 2
    return _Search(prefix, extra_gens, exp_bound, max_nodes).run()


def report_line(prefix, res: OracleResult) -> str:
    txt = ",".join(str(b) for b in prefix)
    pred = "true" if not_realizable(prefix) else "false"
    return (f"obstruction ({txt}) predicate={pred} oracle={res.verdict} "
            f"bounds={res.extra_gens},{res.exp_bound}")
