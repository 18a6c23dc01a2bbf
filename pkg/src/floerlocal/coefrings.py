"""Exact arithmetic over F2, F2[U,V] and R = F2[U,V]/(UV).

Elements are stored as frozensets of monomials (coefficients are implicitly 1),
so structural equality is ring equality.  Univariate F2[t] polynomials used by
the Smith-form code are plain ints read as bit vectors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

RING_R = "R"
RING_UV = "UV"
RINGS = (RING_R, RING_UV)


class RingError(ValueError):
    pass


class Monomial(NamedTuple):
    u_exp: int
    v_exp: int

    def is_mixed(self) -> bool:
        return self.u_exp > 0 and self.v_exp > 0

    def __mul__(self, other: "Monomial") -> "Monomial":  # type: ignore[override]
        return Monomial(self.u_exp + other.u_exp, self.v_exp + other.v_exp)

    def divides(self, other: "Monomial") -> bool:
        return self.u_exp <= other.u_exp and self.v_exp <= other.v_exp

    def text(self) -> str:
        if self.u_exp == 0 and self.v_exp == 0:
            return "1"
        parts = []
        for var, e in (("U", self.u_exp), ("V", self.v_exp)):
            if e == 1:
                parts.append(var)
            elif e > 1:
                parts.append(f"{var}^{e}")
        return "".join(parts)


ONE = Monomial(0, 0)
U = Monomial(1, 0)
V = Monomial(0, 1)


class Bigrading(NamedTuple):
    gr_u: int
    gr_v: int

    @property
    def maslov(self) -> int:
        return self.gr_u

    @property
    def alexander(self) -> int:
        """(gr_U - gr_V) / 2; raises if the parity is wrong."""
        d = self.gr_u - self.gr_v
        if d % 2:
            raise RingError(f"odd gr_U - gr_V for grading {tuple(self)}")
        return d // 2

    def __add__(self, other) -> "Bigrading":  # type: ignore[override]
        return Bigrading(self.gr_u + other[0], self.gr_v + other[1])

    def __sub__(self, other) -> "Bigrading":
        return Bigrading(self.gr_u - other[0], self.gr_v - other[1])


def grading_shift(m: Monomial) -> Bigrading:
    """Bigrading change caused by multiplying with ``m``."""
    return Bigrading(-2 * m.u_exp, -2 * m.v_exp)


def monomial_for_shift(shift: tuple[int, int]) -> Monomial | None:
    """The unique monomial with the given grading shift, if there is one."""
    du, dv = shift
    if du > 0 or dv > 0 or du % 2 or dv % 2:
        return None
    return Monomial(-du // 2, -dv // 2)


def _check_ring(ring: str) -> None:
    if ring not in RINGS:
        raise RingError(f"unknown ring tag {ring!r}")


@dataclass(frozen=True)
class RingElem:
    terms: frozenset
    ring: str = RING_R

    def __post_init__(self):
        _check_ring(self.ring)
        if self.ring == RING_R and any(m.is_mixed() for m in self.terms):
            raise RingError("mixed monomial in R-context; use RingElem.of() to normalise")

    @classmethod
    def of(cls, monomials: Iterable[Monomial], ring: str = RING_R) -> "RingElem":
        """Build an element from a monomial list, cancelling pairs over F2."""
        _check_ring(ring)
        acc: set = set()
        for m in monomials:
            m = Monomial(*m)
            if ring == RING_R and m.is_mixed():
                continue
            acc ^= {m}
        return cls(frozenset(acc), ring)

    @classmethod
    def zero(cls, ring: str = RING_R) -> "RingElem":
        return cls(frozenset(), ring)

    @classmethod
    def one(cls, ring: str = RING_R) -> "RingElem":
        return cls(frozenset([ONE]), ring)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "RingElem") -> "RingElem":
        if self.ring != other.ring:
            raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")
        return RingElem(self.terms ^ other.terms, self.ring)

    __sub__ = __add__

    def __mul__(self, other: "RingElem") -> "RingElem":
        return mul(self, other)

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms, key=_term_key)

    def text(self) -> str:
        if not self.terms:
            return "0"
        return "+".join(m.text() for m in self.sorted_terms())

    def __str__(self) -> str:
        return self.text()


def _term_key(m: Monomial):
    # 1, then pure U powers, then pure V powers, then mixed
    if m == ONE:
        return (0, 0, 0)
    if m.v_exp == 0:
        return (1, m.u_exp, 0)
    if m.u_exp == 0:
        return (2, m.v_exp, 0)
    return (3, m.u_exp, m.v_exp)


def mul(a: RingElem, b: RingElem) -> RingElem:
    if a.ring != b.ring:
        raise RingError(f"ring mismatch: {a.ring} vs {b.ring}")
    return RingElem.of((x * y for x in a.terms for y in b.terms), a.ring)


def mono_mul(a: Monomial, b: Monomial, ring: str) -> Monomial | None:
    """Monomial product, or None when it vanishes in R."""
    p = Monomial(a.u_exp + b.u_exp, a.v_exp + b.v_exp)
    if ring == RING_R and p.is_mixed():
        return None
    return p


_MONO_RE = re.compile(r"^(?:1|(?:U(?:\^(\d+))?)?(?:V(?:\^(\d+))?)?)$")


def parse_monomial(text: str, ring: str = RING_UV) -> Monomial:
    s = text.strip()
    m = _MONO_RE.match(s)
    if not s or not m:
        raise RingError(f"bad monomial {text!r}")
    if s == "1":
        return ONE
    u = int(m.group(1)) if m.group(1) else (1 if "U" in s else 0)
    v = int(m.group(2)) if m.group(2) else (1 if "V" in s else 0)
    mono = Monomial(u, v)
    if ring == RING_R and mono.is_mixed():
        raise RingError(f"mixed monomial {text!r} is not allowed over R")
    return mono


def parse_elem(text: str, ring: str = RING_R) -> RingElem:
    """Parse ``U^2+V`` style text.  Repeated monomials cancel."""
    _check_ring(ring)
    s = text.replace(" ", "")
    if s == "0":
        return RingElem.zero(ring)
    if not s:
        raise RingError("empty ring element")
    return RingElem.of([parse_monomial(t, ring) for t in s.split("+")], ring)


# --- F2[t] as bit vectors ------------------------------------------------------

def pdeg(a: int) -> int:
    return a.bit_length() - 1


def pmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def pdivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = pdeg(b)
    while a and pdeg(a) >= db:
        s = pdeg(a) - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, pdivmod(a, b)[1]
    return a


def ptext(a: int, var: str = "t") -> str:
    if a == 0:
        return "0"
    terms = []
    for e in range(pdeg(a), -1, -1):
        if a >> e & 1:
            terms.append("1" if e == 0 else var if e == 1 else f"{var}^{e}")
    return "+".join(terms)
