"""Standard complexes C(b_1, ..., b_n), their gradings, tau/epsilon and phi_j."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .coefrings import RING_R, Bigrading, Monomial
from .complexes import BigradedComplex


class ParamsError(ValueError):
    pass


@dataclass(frozen=True)
class StandardParams:
    entries: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(b) for b in self.entries))
        if len(self.entries) % 2:
            raise ParamsError(f"odd length {len(self.entries)}")
        if any(b == 0 for b in self.entries):
            raise ParamsError("entries must be nonzero")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def symmetric(self) -> bool:
        n = len(self.entries)
        return all(self.entries[i] == -self.entries[n - 1 - i] for i in range(n))

    def text(self) -> str:
        return ",".join(str(b) for b in self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(str(b) for b in self.entries) + ")"


def params(*entries) -> StandardParams:
    if len(entries) == 1 and not isinstance(entries[0], int):
        entries = tuple(entries[0])
    return StandardParams(tuple(entries))


def parse_params(text: str) -> StandardParams:
    s = text.strip().strip("()[]").replace(" ", "")
    if not s:
        return StandardParams(())
    try:
        return StandardParams(tuple(int(t) for t in s.split(",")))
    except ValueError:
        raise ParamsError(f"cannot parse params {text!r}") from None


def _step(prev: Bigrading, i: int, b: int) -> Bigrading:
    """Grading of x_i from x_{i-1} along the arrow for the 1-based index i."""
    k = abs(b)
    shift = (2 * k, 0) if i % 2 else (0, 2 * k)
    if b < 0:
        # d x_{i-1} = W^k x_i
        return Bigrading(prev.gr_u - 1 + shift[0], prev.gr_v - 1 + shift[1])
    # d x_i = W^k x_{i-1}
    return Bigrading(prev.gr_u + 1 - shift[0], prev.gr_v + 1 - shift[1])


def standard_gradings(p: StandardParams, gr_v0: int | None = None) -> list[Bigrading]:
    """Gradings of x_0..x_n.

    gr_U(x_0) = 0; gr_V(x_0) is solved from gr_V(x_n) = 0 unless given.
    """
    gr = [Bigrading(0, 0)]
    for i, b in enumerate(p.entries, 1):
        gr.append(_step(gr[-1], i, b))
    s = -gr[-1].gr_v if gr_v0 is None else gr_v0
    out = [g + (0, s) for g in gr]
    if gr_v0 is None:
        assert out[-1].gr_v == 0
    return out


def arrows(p: StandardParams) -> list[tuple[int, int, Monomial]]:
    """(source index, target index, monomial) for each parameter."""
    out = []
    for i, b in enumerate(p.entries, 1):
        k = abs(b)
        m = Monomial(k, 0) if i % 2 else Monomial(0, k)
        out.append((i - 1, i, m) if b < 0 else (i, i - 1, m))
    return out


def build_standard(p, prefix: str = "x") -> BigradedComplex:
    if not isinstance(p, StandardParams):
        p = params(p)
    gr = standard_gradings(p)
    c = BigradedComplex({f"{prefix}{i}": g for i, g in enumerate(gr)}, {}, RING_R)
    for s, t, m in arrows(p):
        c.add_arrow(f"{prefix}{s}", f"{prefix}{t}", m)
    return c


def phi(p, j: int) -> int:
    if j < 1:
        raise ParamsError("j must be a positive integer")
    e = tuple(p)
    odd = e[0::2]
    return sum(1 for b in odd if b == j) - sum(1 for b in odd if b == -j)


def tau_epsilon_of(p) -> tuple[int, int]:
    if not isinstance(p, StandardParams):
        p = params(p)
    if not p.entries:
        return 0, 0
    x0 = standard_gradings(p)[0]
    eps = 1 if p.entries[0] > 0 else -1
    return x0.alexander, eps


def v_arrows(p) -> list[tuple[Bigrading, Bigrading, int]]:
    """(source grading, target grading, length) of every V-power arrow."""
    if not isinstance(p, StandardParams):
        p = params(p)
    gr = standard_gradings(p)
    out = []
    for s, t, m in arrows(p):
        if m.v_exp:
            out.append((gr[s], gr[t], m.v_exp))
    return out


def ch_closed_form(p) -> Counter:
    """Ch of the hat complex: one triple per even-index parameter."""
    out = Counter()
    for _, tgt, length in v_arrows(p):
        out[(tgt.alexander, tgt.maslov, length)] += 1
    return out


def symmetric_params(max_len: int, max_abs: int) -> Iterable[StandardParams]:
    """All symmetric params with length <= max_len and |entries| <= max_abs."""
    from itertools import product

    vals = [v for v in range(-max_abs, max_abs + 1) if v]
    for half in range(0, max_len // 2 + 1):
        for head in product(vals, repeat=half):
            yield StandardParams(head + tuple(-b for b in reversed(head)))


def all_params(max_len: int, max_abs: int) -> Iterable[StandardParams]:
    from itertools import product

    vals = [v for v in range(-max_abs, max_abs + 1) if v]
    for n in range(0, max_len + 1, 2):
        for e in product(vals, repeat=n):
            yield StandardParams(e)
