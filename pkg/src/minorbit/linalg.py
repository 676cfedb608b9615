"""Exact dense linear algebra over the rationals (small matrices)."""

from __future__ import annotations

from gmpy2 import mpq


def to_rational(m) -> list[list[mpq]]:
    return [[mpq(x) for x in row] for row in m]


def zeros(n: int, k: int | None = None) -> list[list[mpq]]:
    return [[mpq(0)] * (n if k is None else k) for _ in range(n)]


def identity(n: int) -> list[list[mpq]]:
    return [[mpq(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a, b) -> list[list[mpq]]:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = zeros(n, m)
    for i in range(n):
        row = a[i]
        oi = out[i]
        for t in range(k):
            x = row[t]
            if x:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] += x * bt[j]
    return out


def is_zero(a) -> bool:
    return all(not x for row in a for x in row)


def rank(m) -> int:
    """Exact rank by Gaussian elimination over Q."""
    a = [list(map(mpq, row)) for row in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        for i in range(r + 1, rows):
            if a[i][c]:
                f = a[i][c] * inv
                ai, ar = a[i], a[r]
                for j in range(c, cols):
                    if ar[j]:
                        ai[j] -= f * ar[j]
        r += 1
        if r == rows:
            break
    return r


def det(m) -> mpq:
    a = [list(map(mpq, row)) for row in m]
    n = len(a)
    sign = 1
    total = mpq(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return mpq(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        total *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return sign * total


def trace(m) -> mpq:
    return sum((m[i][i] for i in range(len(m))), mpq(0))


def block(m, k: int) -> list[list[mpq]]:
    """Upper-left k x k block."""
    return [list(row[:k]) for row in m[:k]]


def nilpotency_index(m) -> int | None:
    """Smallest p with m^p = 0, or None if m is not nilpotent."""
    n = len(m)
    p = to_rational(m)
    for k in range(1, n + 1):
        if is_zero(p):
            return k
        p = matmul(p, m)
    return n + 1 if is_zero(p) else None


def elementary_symmetric(m, r: int) -> mpq:
    """Tr(Lambda^r m): sum of principal r x r minors."""
    from itertools import combinations

    n = len(m)
    total = mpq(0)
    for idx in combinations(range(n), r):
        total += det([[m[i][j] for j in idx] for i in idx])
    return total
