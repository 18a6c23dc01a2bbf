"""Smith normal form over the PID F2[t] (polynomials as int bitsets)."""

from __future__ import annotations

from .coefrings import pdeg, pdivmod, pgcd, pmul


def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Invariant factors (nonzero diagonal of the Smith form) of ``matrix``.

    The result satisfies d[0] | d[1] | ... ; zero entries are dropped.
    """
    a = [row[:] for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    diag = []
    r = 0
    while r < nrows and r < ncols:
        piv = _min_entry(a, r, nrows, ncols)
        if piv is None:
            break
        i, j = piv
        a[r], a[i] = a[i], a[r]
        for row in a:
            row[r], row[j] = row[j], row[r]
        while True:
            p = a[r][r]
            dirty = False
            for i in range(r + 1, nrows):
                if a[i][r]:
                    q, rem = pdivmod(a[i][r], p)
                    for k in range(r, ncols):
                        a[i][k] ^= pmul(q, a[r][k])
                    if rem:
                        dirty = True
            for j in range(r + 1, ncols):
                if a[r][j]:
                    q, rem = pdivmod(a[r][j], p)
                    for k in range(r, nrows):
                        a[k][j] ^= pmul(q, a[k][r])
                    if rem:
                        dirty = True
            if not dirty:
                break
            # a smaller remainder appeared in the pivot row/column; move it in
            i, j = _min_entry_cross(a, r, nrows, ncols)
            a[r], a[i] = a[i], a[r]
            for row in a:
                row[r], row[j] = row[j], row[r]
        diag.append(a[r][r])
        r += 1
    return _fix_divisibility(diag)


def _min_entry(a, r, nrows, ncols):
    best = None
    for i in range(r, nrows):
        for j in range(r, ncols):
            x = a[i][j]
            if x and (best is None or pdeg(x) < best[0]):
                best = (pdeg(x), i, j)
    return None if best is None else best[1:]


def _min_entry_cross(a, r, nrows, ncols):
    best = (pdeg(a[r][r]), r, r)
    for i in range(r + 1, nrows):
        if a[i][r] and pdeg(a[i][r]) < best[0]:
            best = (pdeg(a[i][r]), i, r)
    for j in range(r + 1, ncols):
        if a[r][j] and pdeg(a[r][j]) < best[0]:
            best = (pdeg(a[r][j]), r, j)
    return best[1], best[2]


def _fix_divisibility(diag: list[int]) -> list[int]:
    d = diag[:]
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            g = pgcd(d[i], d[j])
            if g != d[i]:
                lcm = pdivmod(pmul(d[i], d[j]), g)[0]
                d[i], d[j] = g, lcm
    return d
