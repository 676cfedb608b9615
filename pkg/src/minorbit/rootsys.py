"""Root systems of the simple types A-G in Bourbaki labeling.

Roots are integer tuples in the basis of simple roots, weights are integer
tuples in the basis of fundamental weights (Dynkin labels).  The Cartan
matrix follows the Bourbaki/Kac convention ``cartan[i][j] = <alpha_j, alpha_i^vee>``,
so the Dynkin labels of a root with coordinates ``c`` are ``cartan @ c``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import count

from gmpy2 import mpq

_TYPE_RE = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")

# number of positive roots, used as a construction self-check
_POSITIVE_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


class InvalidTypeError(ValueError):
    """Raised for a family/rank pair that names no simple Lie algebra."""


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        fam, n = self.family, self.rank
        if fam not in "ABCDEFG" or len(fam) != 1:
            raise InvalidTypeError(f"unknown family {fam!r}; expected one of A B C D E F G")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,  # D3 is accepted as the relabeled A3
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[fam]
        if not ok:
            raise InvalidTypeError(
                f"invalid rank {n} for family {fam}: need A>=1, B>=2, C>=2, D>=3, E6-8, F4, G2"
            )

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        m = _TYPE_RE.match(text)
        if not m:
            raise InvalidTypeError(
                f"cannot parse type {text!r}; grammar is <family><rank>, e.g. A3, E8, G2"
            )
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"


def cartan_matrix(t: SimpleType) -> tuple[tuple[int, ...], ...]:
    n, fam = t.rank, t.family
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if fam == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif fam == "B":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -1, -2)  # alpha_n short
    elif fam == "C":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -2, -1)  # alpha_n long
    elif fam == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif fam == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif fam == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif fam == "G":
        link(0, 1, -3, -1)  # alpha_1 short
    return tuple(tuple(row) for row in a)


def _symmetrizer(a) -> tuple[mpq, ...]:
    """Half squared lengths d_i, normalised so that long roots have d = 1."""
    n = len(a)
    d = [None] * n
    d[0] = mpq(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if a[i][j] and d[j] is None:
                d[j] = d[i] * a[i][j] / a[j][i]
                stack.append(j)
    top = max(d)
    return tuple(x / top for x in d)


def _inverse(a) -> list[list[mpq]]:
    n = len(a)
    m = [[mpq(a[i][j]) for j in range(n)] + [mpq(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Lattice data of a simple type.

    ``positive_roots`` is ordered by height, then reverse-lexicographically, so
    the simple roots come first as alpha_1, ..., alpha_l.
    """

    type: SimpleType
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[mpq, ...]
    positive_roots: tuple[tuple[int, ...], ...]
    _index: dict = field(repr=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    @cached_property
    def highest_root(self) -> tuple[int, ...]:
        return self.positive_roots[-1]

    @cached_property
    def comarks(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coroot(self.highest_root))

    @cached_property
    def dual_coxeter(self) -> int:
        return 1 + sum(self.comarks)

    @cached_property
    def inverse_cartan(self) -> tuple[tuple[mpq, ...], ...]:
        return tuple(tuple(r) for r in _inverse(self.cartan))

    @cached_property
    def rho(self) -> tuple[int, ...]:
        return (1,) * self.rank

    # -- roots ---------------------------------------------------------------

    def is_root(self, c) -> bool:
        c = tuple(c)
        return c in self._index or tuple(-x for x in c) in self._index

    def root_index(self, c) -> int:
        """Position of a positive root in ``positive_roots``."""
        return self._index[tuple(c)]

    def height(self, c) -> int:
        return sum(c)

    def inner(self, b, c) -> mpq:
        """Invariant form on root coordinates, long roots of squared length 2."""
        a, d = self.cartan, self.symmetrizer
        n = self.rank
        return sum(
            (d[i] * a[i][j] * b[i] * c[j] for i in range(n) if b[i] for j in range(n) if c[j]),
            mpq(0),
        )

    def root_length2(self, c) -> mpq:
        c = tuple(c)
        cache = self._coroot_cache
        key = ("len", c)
        hit = cache.get(key)
        if hit is None:
            hit = cache[key] = self.inner(c, c)
        return hit

    @cached_property
    def _coroot_cache(self) -> dict:
        return {}

    def coroot(self, c) -> tuple[mpq, ...]:
        """Coordinates of beta^vee in the basis of simple coroots."""
        c = tuple(c)
        hit = self._coroot_cache.get(c)
        if hit is None:
            half = self.root_length2(c) / 2
            hit = tuple(c[j] * self.symmetrizer[j] / half for j in range(self.rank))
            self._coroot_cache[c] = hit
        return hit

    def pair(self, mu, c) -> mpq:
        """<mu, beta^vee> for mu in Dynkin labels and beta a root."""
        k = self.coroot(c)
        total = sum((k[j] * mu[j] for j in range(self.rank)), mpq(0))
        return total

    def is_long(self, c) -> bool:
        return self.inner(c, c) == 2

    # -- weights -------------------------------------------------------------

    def root_to_weight(self, c) -> tuple[int, ...]:
        a = self.cartan
        n = self.rank
        return tuple(sum(a[i][j] * c[j] for j in range(n)) for i in range(n))

    def weight_to_root(self, mu) -> tuple[mpq, ...]:
        inv = self.inverse_cartan
        n = self.rank
        return tuple(sum((inv[i][j] * mu[j] for j in range(n)), mpq(0)) for i in range(n))

    def fundamental_weight(self, k: int) -> tuple[int, ...]:
        """Dynkin labels of varpi_k (1-based node)."""
        return tuple(int(i == k - 1) for i in range(self.rank))

    def fundamental_coweight_pairing(self, k: int, c) -> int:
        """<varpi_k, beta^vee> as an integer."""
        return int(self.coroot(c)[k - 1])

    def in_root_lattice(self, mu) -> bool:
        return all(x.denominator == 1 for x in self.weight_to_root(mu))

    def reflect(self, mu, i: int) -> tuple[int, ...]:
        """Simple reflection s_{i+1} (0-based i) on Dynkin labels."""
        m = mu[i]
        if m == 0:
            return tuple(mu)
        col = [self.cartan[r][i] for r in range(self.rank)]
        return tuple(mu[r] - m * col[r] for r in range(self.rank))

    def to_dict(self) -> dict:
        return {
            "type": str(self.type),
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "symmetrizer": [str(x) for x in self.symmetrizer],
            "positive_roots": [list(r) for r in self.positive_roots],
            "highest_root": list(self.highest_root),
            "comarks": list(self.comarks),
            "dual_coxeter": self.dual_coxeter,
        }


def _positive_roots(a) -> list[tuple[int, ...]]:
    n = len(a)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    known = set(simple)
    layer = list(simple)
    out = list(simple)
    for _ in count():
        nxt = set()
        for beta in layer:
            labels = [sum(a[i][j] * beta[j] for j in range(n)) for i in range(n)]
            for i in range(n):
                # p = how far down the alpha_i-string through beta goes
                p = 0
                cur = list(beta)
                while True:
                    cur[i] -= 1
                    if tuple(cur) in known:
                        p += 1
                    else:
                        break
                q = p - labels[i]
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    nxt.add(tuple(up))
        if not nxt:
            break
        layer = sorted(nxt, key=lambda c: tuple(-x for x in c))
        known.update(layer)
        out.extend(layer)
    return out


def build_root_system(t: "SimpleType | str | RootSystem") -> RootSystem:
    if isinstance(t, RootSystem):
        return t
    if isinstance(t, str):
        t = SimpleType.parse(t)
    return _build(t)


@lru_cache(maxsize=None)
def _build(t: SimpleType) -> RootSystem:
    a = cartan_matrix(t)
    roots = _positive_roots(a)
    expected = _POSITIVE_ROOT_COUNT[t.family](t.rank)
    if t.family == "D" and t.rank == 3:
        expected = 6
    if len(roots) != expected:
        raise AssertionError(f"{t}: found {len(roots)} positive roots, expected {expected}")
    return RootSystem(
        type=t,
        cartan=a,
        symmetrizer=_symmetrizer(a),
        positive_roots=tuple(roots),
        _index={r: i for i, r in enumerate(roots)},
    )


def dual_coxeter_number(rs: RootSystem) -> int:
    return rs.dual_coxeter


def dominance_leq(mu, lam, rs: RootSystem) -> bool:
    """True iff lam - mu is a nonnegative integer combination of simple roots."""
    diff = tuple(l - m for l, m in zip(lam, mu))
    coords = rs.weight_to_root(diff)
    return all(x.denominator == 1 and x >= 0 for x in coords)


def dominant_conjugate(mu, rs: RootSystem) -> tuple[int, ...]:
    mu = tuple(mu)
    while True:
        for i, m in enumerate(mu):
            if m < 0:
                mu = rs.reflect(mu, i)
                break
        else:
            return mu


def longest_element_image(mu, rs: RootSystem) -> tuple[int, ...]:
    """w_0 mu for dominant mu: the antidominant point of the orbit."""
    neg = dominant_conjugate(tuple(-x for x in mu), rs)
    return tuple(-x for x in neg)


def is_weight_of(mu, lam, rs: RootSystem) -> bool:
    """Is ``mu`` a weight of the irreducible module of highest weight ``lam``?"""
    if any(x < 0 for x in lam):
        raise ValueError(f"highest weight {tuple(lam)} is not dominant")
    diff = tuple(l - m for l, m in zip(lam, mu))
    if not rs.in_root_lattice(diff):
        return False
    return dominance_leq(dominant_conjugate(mu, rs), lam, rs)


def weyl_orbit(mu, rs: RootSystem, limit: int = 200000) -> set[tuple[int, ...]]:
    """Brute-force orbit of ``mu`` under simple reflections."""
    seen = {tuple(mu)}
    frontier = [tuple(mu)]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(rs.rank):
                r = rs.reflect(w, i)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        if len(seen) > limit:
            raise ValueError("orbit exceeds enumeration limit")
        frontier = nxt
    return seen
