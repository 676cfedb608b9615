"""Chevalley basis with exact structure constants.

Flat basis order: ``h_1..h_l``, then ``e_beta`` for the positive roots in the
root system's canonical order, then ``f_beta`` in the same order.  Signs are
fixed by declaring every extraspecial pair positive; ``f_beta = -omega(e_beta)``
for the Chevalley involution ``omega``, so ``[e_beta, f_beta] = h_beta``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache

from gmpy2 import mpq

from .rootsys import RootSystem, SimpleType, build_root_system


class JacobiError(AssertionError):
    pass


@dataclass(frozen=True)
class BasisIndex:
    kind: str  # "h", "e" or "f"
    index: int  # node (0-based) for h, position in positive_roots for e/f
    flat_index: int


def _neg(c):
    return tuple(-x for x in c)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class ChevalleyBasis:
    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.rank = rs.rank
        self.npos = len(rs.positive_roots)
        self.dim = self.rank + 2 * self.npos
        self._npos_table: dict[tuple, int] = {}
        self._compute_positive_constants()
        self.structure = self._build_table()

    # -- indexing ------------------------------------------------------------

    def h(self, i: int) -> int:
        """Flat index of h_{i+1}."""
        return i

    def e(self, root) -> int:
        return self.rank + self.rs.root_index(root)

    def f(self, root) -> int:
        return self.rank + self.npos + self.rs.root_index(root)

    def root_vector(self, signed_root) -> int:
        """Flat index of the root vector of a (positive or negative) root."""
        signed_root = tuple(signed_root)
        if signed_root in self.rs._index:
            return self.e(signed_root)
        return self.f(_neg(signed_root))

    def index(self, flat: int) -> BasisIndex:
        if flat < self.rank:
            return BasisIndex("h", flat, flat)
        if flat < self.rank + self.npos:
            return BasisIndex("e", flat - self.rank, flat)
        return BasisIndex("f", flat - self.rank - self.npos, flat)

    def weight_of(self, flat: int) -> tuple[int, ...]:
        """Root-lattice weight (root coordinates) of a basis element."""
        b = self.index(flat)
        if b.kind == "h":
            return (0,) * self.rank
        r = self.rs.positive_roots[b.index]
        return r if b.kind == "e" else _neg(r)

    def label(self, flat: int) -> str:
        b = self.index(flat)
        if b.kind == "h":
            return f"h{b.index + 1}"
        r = self.rs.positive_roots[b.index]
        return f"{b.kind}[{','.join(map(str, r))}]"

    @cached_property
    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.dim)]

    # -- structure constants -------------------------------------------------

    def _string_down(self, alpha, beta) -> int:
        p = 0
        cur = beta
        while True:
            cur = tuple(c - a for c, a in zip(cur, alpha))
            if any(cur) and self.rs.is_root(cur):
                p += 1
            else:
                return p

    def N(self, x, y) -> int:
        """N_{x,y} with [e_x, e_y] = N_{x,y} e_{x+y}; zero when x+y is not a root."""
        x, y = tuple(x), tuple(y)
        s = _add(x, y)
        rs = self.rs
        if not any(s) or not rs.is_root(s):
            return 0
        xpos = x in rs._index
        ypos = y in rs._index
        if xpos and ypos:
            return self._npos_table[(x, y)]
        if not xpos and not ypos:
            return -self._npos_table[(_neg(x), _neg(y))]
        if not xpos:
            return -self.N(y, x)
        z = _neg(s)
        if s in rs._index:
            val = rs.root_length2(z) / rs.root_length2(x) * self.N(y, z)
        else:
            val = rs.root_length2(z) / rs.root_length2(y) * self.N(z, x)
        return int(val)

    def _compute_positive_constants(self):
        rs = self.rs
        roots = rs.positive_roots
        order = rs._index
        tab = self._npos_table
        for xi in roots:
            if sum(xi) == 1:
                continue
            pairs = []
            for g in roots:
                d = tuple(a - b for a, b in zip(xi, g))
                if d in order and order[g] < order[d]:
                    pairs.append((g, d))
            pairs.sort(key=lambda gd: order[gd[0]])
            alpha, beta = pairs[0]
            nab = self._string_down(alpha, beta) + 1
            tab[(alpha, beta)] = nab
            tab[(beta, alpha)] = -nab
            xx = rs.root_length2(xi)
            for gamma, delta in pairs[1:]:
                total = mpq(0)
                d_a = tuple(a - b for a, b in zip(delta, alpha))
                if any(d_a) and rs.is_root(d_a):
                    total += (
                        mpq(self.N(delta, _neg(alpha)) * self.N(gamma, _neg(beta)))
                        / rs.root_length2(d_a)
                    )
                g_a = tuple(a - b for a, b in zip(gamma, alpha))
                if any(g_a) and rs.is_root(g_a):
                    total += (
                        mpq(self.N(_neg(alpha), gamma) * self.N(delta, _neg(beta)))
                        / rs.root_length2(g_a)
                    )
                val = xx * total / nab
                if val.denominator != 1:
                    raise AssertionError(f"non-integral N for {gamma},{delta}: {val}")
                tab[(gamma, delta)] = int(val)
                tab[(delta, gamma)] = -int(val)

    def _build_table(self) -> dict[tuple[int, int], dict[int, int]]:
        rs = self.rs
        l = self.rank
        table: dict[tuple[int, int], dict[int, int]] = {}
        signed = [(self.e(r), r) for r in rs.positive_roots] + [
            (self.f(r), _neg(r)) for r in rs.positive_roots
        ]
        for i in range(l):
            for a, r in signed:
                c = sum(rs.cartan[i][j] * r[j] for j in range(l))
                if c:
                    table[(i, a)] = {a: c}
                    table[(a, i)] = {a: -c}
        for a, x in signed:
            for b, y in signed:
                s = _add(x, y)
                if not any(s):
                    if x in rs._index:
                        k = rs.coroot(x)
                        table[(a, b)] = {j: int(k[j]) for j in range(l) if k[j]}
                    else:
                        k = rs.coroot(y)
                        table[(a, b)] = {j: -int(k[j]) for j in range(l) if k[j]}
                    continue
                n = self.N(x, y)
                if n:
                    table[(a, b)] = {self.root_vector(s): n}
        return table

    # -- algebra -------------------------------------------------------------

    def bracket_basis(self, a: int, b: int) -> dict[int, int]:
        return self.structure.get((a, b), {})

    def bracket(self, x: dict, y: dict) -> dict:
        """Bracket of two sparse vectors ``{flat_index: coefficient}``."""
        out: dict = {}
        for a, ca in x.items():
            if not ca:
                continue
            for b, cb in y.items():
                if not cb:
                    continue
                for c, v in self.structure.get((a, b), {}).items():
                    out[c] = out.get(c, 0) + ca * cb * v
        return {k: v for k, v in out.items() if v}

    def adjoint_matrix(self, x) -> list[list]:
        """Matrix of ad(x) on the flat basis; ``x`` a flat index or sparse vector."""
        if isinstance(x, int):
            x = {x: 1}
        m = [[0] * self.dim for _ in range(self.dim)]
        for b in range(self.dim):
            for c, v in self.bracket(x, {b: 1}).items():
                m[c][b] = v
        return m

    def ad_apply(self, x: dict, y: dict) -> dict:
        return self.bracket(x, y)

    @cached_property
    def normalized_form(self) -> dict[tuple[int, int], mpq]:
        """Invariant form with long roots of squared length 2, on basis pairs."""
        rs = self.rs
        l = self.rank
        g = {}
        for i in range(l):
            for j in range(l):
                if rs.cartan[i][j]:
                    g[(i, j)] = mpq(rs.cartan[i][j]) / rs.symmetrizer[j]
        for r in rs.positive_roots:
            v = 2 / rs.root_length2(r)
            g[(self.e(r), self.f(r))] = v
            g[(self.f(r), self.e(r))] = v
        return g

    @cached_property
    def killing_form(self) -> dict[tuple[int, int], mpq]:
        """tr(ad a ad b) on the nonzero basis pairs, computed from the table."""
        pairs = [(i, j) for i in range(self.rank) for j in range(self.rank)]
        pairs += [(self.e(r), self.f(r)) for r in self.rs.positive_roots]
        pairs += [(self.f(r), self.e(r)) for r in self.rs.positive_roots]
        out = {}
        for a, b in pairs:
            tr = 0
            for c in range(self.dim):
                for d, v in self.structure.get((b, c), {}).items():
                    w = self.structure.get((a, d), {}).get(c, 0)
                    tr += v * w
            if tr:
                out[(a, b)] = mpq(tr)
        return out

    def form(self, x: dict, y: dict, which: str = "normalized"):
        g = self.normalized_form if which == "normalized" else self.killing_form
        total = mpq(0)
        for a, ca in x.items():
            for b, cb in y.items():
                v = g.get((a, b))
                if v:
                    total += ca * cb * v
        return total

    @cached_property
    def dual_basis(self) -> list[dict[int, mpq]]:
        """e^a with (e^a, e_b) = delta_ab under the normalized form."""
        rs = self.rs
        l = self.rank
        gram = [[self.normalized_form.get((i, j), mpq(0)) for j in range(l)] for i in range(l)]
        from .rootsys import _inverse

        inv = _inverse(gram)
        out: list[dict[int, mpq]] = []
        for i in range(l):
            out.append({j: inv[i][j] for j in range(l) if inv[i][j]})
        for r in rs.positive_roots:
            out.append({self.f(r): 1 / self.normalized_form[(self.e(r), self.f(r))]})
        for r in rs.positive_roots:
            out.append({self.e(r): 1 / self.normalized_form[(self.e(r), self.f(r))]})
        return out

    def to_json(self) -> dict:
        triples = [
            [a, b, c, v]
            for (a, b), res in sorted(self.structure.items())
            for c, v in sorted(res.items())
        ]
        return {"type": str(self.rs.type), "dim": self.dim, "basis": self.labels, "structure": triples}

    # -- self checks ---------------------------------------------------------

    def jacobi_violation(self, a: int, b: int, c: int):
        x, y, z = {a: 1}, {b: 1}, {c: 1}
        br = self.bracket
        tot: dict = {}
        for part in (br(x, br(y, z)), br(y, br(z, x)), br(z, br(x, y))):
            for k, v in part.items():
                tot[k] = tot.get(k, 0) + v
        tot = {k: v for k, v in tot.items() if v}
        return tot or None

    def check_jacobi(self, triples) -> None:
        for a, b, c in triples:
            bad = self.jacobi_violation(a, b, c)
            if bad:
                raise JacobiError(
                    f"Jacobi fails on ({self.label(a)}, {self.label(b)}, {self.label(c)}): {bad}"
                )


def _sample_triples(dim: int, n: int, seed: int):
    rng = random.Random(seed)
    return [(rng.randrange(dim), rng.randrange(dim), rng.randrange(dim)) for _ in range(n)]


@lru_cache(maxsize=None)
def _build_cached(t: SimpleType) -> ChevalleyBasis:
    cb = ChevalleyBasis(build_root_system(t))
    cb.check_jacobi(_sample_triples(cb.dim, 500, 0))
    return cb


def build_chevalley(rs: RootSystem | SimpleType | str) -> ChevalleyBasis:
    if isinstance(rs, str):
        rs = SimpleType.parse(rs)
    if isinstance(rs, SimpleType):
        return _build_cached(rs)
    return _build_cached(rs.type)


def bracket(x: dict, y: dict, cb: ChevalleyBasis) -> dict:
    return cb.bracket(x, y)


def adjoint_matrix(x, cb: ChevalleyBasis) -> list[list]:
    return cb.adjoint_matrix(x)
