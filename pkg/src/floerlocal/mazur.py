"""Intersection-point gradings for the Mazur satellite hat complex and the
vertical-arrow claims about it, stored as checkable rules.

Only gradings and arrow-length rules live here.  There is no attempt to
compute the differential itself; ``check_against`` audits any complex that
someone else produced.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

from .hatfilter import FilteredComplex, vertically_simplify


class MazurError(ValueError):
    pass


class Point(NamedTuple):
    label: str
    a: int
    m: int


# (A, M) of a^i_j for j = 1..16 as functions of the row index i
_A_ROW = (
    lambda i: (i - 1, 2 * i - 3),
    lambda i: (i - 1, 2 * i - 4),
    lambda i: (i - 2, 2 * i - 5),
    lambda i: (i - 2, 2 * i - 4),
    lambda i: (i - 1, 2 * i - 3),
    lambda i: (i - 1, 2 * i - 4),
    lambda i: (i, 2 * i - 3),
    lambda i: (i, 2 * i - 2),
    lambda i: (i - 1, -3),
    lambda i: (i - 1, -2),
    lambda i: (i, -1),
    lambda i: (i, -2),
    lambda i: (i + 1, -1),
    lambda i: (i + 1, 0),
    lambda i: (i, -1),
    lambda i: (i, -2),
)

# (A, M) of t_j for j = 1..14 as functions of n
_T_ROW = (
    lambda n: (n - 1, 2 * n - 3),
    lambda n: (n - 2, 2 * n - 4),
    lambda n: (n - 2, -3),
    lambda n: (n - 1, -2),
    lambda n: (n - 1, 2 * n - 3),
    lambda n: (n, 2 * n - 2),
    lambda n: (n, -1),
    lambda n: (n - 1, -2),
    lambda n: (n - 1, -2 * n - 1),
    lambda n: (n, -2 * n),
    lambda n: (n, -1),
    lambda n: (n + 1, 0),
    lambda n: (n + 1, 1 - 2 * n),
    lambda n: (n, -2 * n),
)


def mirror(a: int, m: int) -> tuple[int, int]:
    """Grading of the centrally symmetric partner."""
    return -a, m - 2 * a


def a_label(i: int, j: int) -> str:
    return f"a^{i}_{j}"


def t_label(j: int) -> str:
    return f"t_{j}"


def partner_label(label: str) -> str:
    if label == "c":
        return "c"
    if label.startswith("t_"):
        return t_label(-int(label[2:]))
    i, j = label[2:].split("_")
    return a_label(-int(i), -int(j))


@dataclass
class IntersectionTable:
    n: int
    points: list = field(default_factory=list)

    def __post_init__(self):
        self._by_label = {p.label: p for p in self.points}

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, label: str) -> Point:
        return self._by_label[label]

    def pair(self, label: str) -> Point:
        return self._by_label[partner_label(label)]

    def classes(self) -> Counter:
        """Number of points in each (A, M) class."""
        return Counter((p.a, p.m) for p in self.points)

    def points_in(self, a: int, m: int) -> list:
        return [p.label for p in self.points if (p.a, p.m) == (a, m)]


def build_gradings(n: int) -> IntersectionTable:
    """All 32n - 3 intersection points for the n-th diagram."""
    if not isinstance(n, int) or n < 2:
        raise MazurError(f"n must be an integer >= 2, got {n!r}")
    pts = [Point("c", 0, -2)]
    for i in range(1, n):
        for j, g in enumerate(_A_ROW, 1):
            a, m = g(i)
            pts.append(Point(a_label(i, j), a, m))
            pts.append(Point(a_label(-i, -j), *mirror(a, m)))
    for j, g in enumerate(_T_ROW, 1):
        a, m = g(n)
        pts.append(Point(t_label(j), a, m))
        pts.append(Point(t_label(-j), *mirror(a, m)))
    return IntersectionTable(n, pts)


def format_table(t: IntersectionTable) -> str:
    """One ``fgen label M A`` line per point."""
    return "".join(f"fgen {p.label} {p.m} {p.a}\n" for p in t.points)


# --- constraint sets ----------------------------------------------------------

KINDS = ("target", "source", "absent")


@dataclass(frozen=True)
class Rule:
    """Restriction on vertical arrows meeting one (A, M) class.

    ``target``/``source`` rules bound the lengths of arrows ending/starting
    in the class.  ``absent`` forbids arrows in the given ``role``.
    ``exactly`` = (length, count) caps how many arrows of that length may
    start (or end) there.
    """

    kind: str
    a: int
    m: int
    lengths: frozenset = frozenset()
    exactly: Optional[tuple] = None
    role: str = ""
    clause: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MazurError(f"unknown rule kind {self.kind!r}")
        role = self.role or (self.kind if self.kind != "absent" else "")
        if role not in ("target", "source"):
            raise MazurError("absent rules need role=target or role=source")
        object.__setattr__(self, "role", role)
        object.__setattr__(self, "lengths", frozenset(self.lengths))

    def text(self) -> str:
        ls = "{" + ",".join(str(x) for x in sorted(self.lengths)) + "}"
        s = f"rule {self.kind} {self.a} {self.m} lengths={ls}"
        if self.exactly:
            s += f" exactly {self.exactly[0]} {self.exactly[1]}"
        if self.kind == "absent":
            s += f" role={self.role}"
        if self.clause:
            s += f" clause={self.clause}"
        return s


@dataclass
class ConstraintSet:
    n: int
    rules: list = field(default_factory=list)

    def text(self) -> str:
        return "".join(r.text() + "\n" for r in self.rules)

    def for_clause(self, k: int) -> list:
        return [r for r in self.rules if r.clause == k]


def lemma33_constraints(n: int) -> ConstraintSet:
    """The nine vertical-arrow claims for the satellite at level n."""
    if not isinstance(n, int) or n < 2:
        raise MazurError(f"n must be an integer >= 2, got {n!r}")
    R = Rule
    rules = [
        R("target", -n - 1, -2 * n - 2, {1}, clause=1),
        R("source", n, -1, {1, n}, exactly=(n, 1), clause=2),
        R("source", -n + 1, -2 * n, {1}, clause=3),
        R("target", -n + 1, -2 * n, {1}, clause=3),
        R("absent", n - 2, -3, role="source", clause=4),
        R("target", n - 2, -3, {1}, clause=4),
        R("target", 0, -2, {1, n}, clause=5),
        R("source", 0, -2, {1}, clause=5),
        R("target", 1, -1, {1}, clause=6),
        R("absent", -2, -4, role="source", clause=7),
        R("target", -2, -4, {1}, clause=7),
        R("source", -1, -3, {1}, clause=8),
        R("target", -1, -3, {1}, clause=8),
        R("absent", 2, 0, role="target", clause=9),
        R("source", 2, 0, {1}, clause=9),
    ]
    return ConstraintSet(n, rules)


def parse_constraints(text: str, n: int = 0) -> ConstraintSet:
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] != "rule" or len(parts) < 5 or not parts[4].startswith("lengths="):
                raise ValueError
            kind, a, m = parts[1], int(parts[2]), int(parts[3])
            body = parts[4][len("lengths="):].strip("{}")
            lengths = {int(x) for x in body.split(",") if x}
            rest = parts[5:]
            exactly, role, clause = None, "", 0
            while rest:
                tok = rest.pop(0)
                if tok == "exactly":
                    exactly = (int(rest.pop(0)), int(rest.pop(0)))
                elif tok.startswith("role="):
                    role = tok[5:]
                elif tok.startswith("clause="):
                    clause = int(tok[7:])
                else:
                    raise ValueError
            rules.append(Rule(kind, a, m, lengths, exactly, role, clause))
        except (ValueError, IndexError) as exc:
            if isinstance(exc, MazurError):
                raise MazurError(f"line {lineno}: {exc}") from None
            raise MazurError(f"line {lineno}: cannot parse {line!r}") from None
    return ConstraintSet(n, rules)


# --- auditing -----------------------------------------------------------------


def arrow_violations(arrows: Iterable[tuple[int, int, int]], cs: ConstraintSet) -> list[str]:
    """Check (target A, target M, length) arrows against ``cs``.

    A source sits at (A + length, M + 1).  Classes no rule names are free.
    """
    arrows = list(arrows)
    out = []
    for r in cs.rules:
        hits = []
        for ta, tm, length in arrows:
            cls = (ta, tm) if r.role == "target" else (ta + length, tm + 1)
            if cls == (r.a, r.m):
                hits.append(length)
        tag = f"clause {r.clause}" if r.clause else r.text()
        if r.kind == "absent":
            if hits:
                out.append(f"{tag}: {len(hits)} arrow(s) with {r.role} at ({r.a},{r.m})")
            continue
        bad = sorted(l for l in hits if l not in r.lengths)
        if bad:
            out.append(f"{tag}: {r.role} ({r.a},{r.m}) has length(s) {bad}, "
                       f"allowed {sorted(r.lengths)}")
        if r.exactly:
            length, count = r.exactly
            k = hits.count(length)
            if k > count:
                out.append(f"{tag}: {k} arrows of length {length} at {r.role} ({r.a},{r.m}), "
                           f"at most {count} allowed")
    return out


@dataclass
class CheckReport:
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        if self.ok:
            return ["ok: no violations"]
        return [f"violation {v}" for v in self.violations]


def check_against(f: FilteredComplex, cs: ConstraintSet) -> CheckReport:
    """Audit the vertically simplified arrows of ``f`` against ``cs``."""
    vb = vertically_simplify(f)
    return CheckReport(arrow_violations(((x.target_a, x.target_m, x.length) for x in vb.arrows), cs))
