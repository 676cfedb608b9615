"""Irreducible highest-weight modules with exact generator actions.

The module is generated from v_lambda by the lowering operators f_i, one
weight space at a time in order of depth (height of lambda - mu).  A candidate
vector f_i b of weight mu != lambda is zero in V_lambda iff every e_j kills it,
so the stacked images (e_1 w, ..., e_l w) are injective on each weight space
below the top.  Independence is therefore decided exactly on those images; this
is the contravariant-form criterion applied one level at a time, without
forming the Gram matrix.  Once a weight space reaches its multiplicity (known
from a dominant weight of the same norm built earlier), the remaining
candidates are dependent and are resolved from the pivot coordinates alone.

Operators are stored column-sparse: ``op[b]`` is the image of basis vector b as
a dict ``{row: coefficient}``.
"""

from __future__ import annotations

import gc
import heapq
from contextlib import contextmanager
from dataclasses import dataclass, field
from math import lcm
from typing import Mapping

from gmpy2 import mpq

from .rootsys import RootSystem, build_root_system, dominant_conjugate


class RepTooLargeError(ValueError):
    def __init__(self, weyl_dim: int, cap: int):
        super().__init__(f"representation has Weyl dimension {weyl_dim}, above the cap {cap}")
        self.weyl_dim = weyl_dim
        self.cap = cap


def weyl_dimension(rs: RootSystem, lam) -> int:
    lam = tuple(lam)
    if any(x < 0 for x in lam):
        raise ValueError(f"highest weight {lam} is not dominant")
    num = mpq(1)
    for a in rs.positive_roots:
        k = rs.coroot(a)
        num *= sum((k[j] * (lam[j] + 1) for j in range(rs.rank)), mpq(0)) / sum(k, mpq(0))
    assert num.denominator == 1
    return int(num)


def _apply(op: Mapping[int, dict], vec: Mapping[int, object]) -> dict:
    out: dict = {}
    for b, c in vec.items():
        col = op.get(b)
        if not col:
            continue
        for r, v in col.items():
            out[r] = out.get(r, 0) + c * v
    return {r: v for r, v in out.items() if v}


def _compose(a: Mapping[int, dict], b: Mapping[int, dict]) -> dict:
    """Column-sparse product a*b."""
    out = {}
    for col, vec in b.items():
        img = _apply(a, vec)
        if img:
            out[col] = img
    return out


def commutator_matrix(a, b, scale=1) -> dict:
    ab = _compose(a, b)
    ba = _compose(b, a)
    out = {}
    for col in set(ab) | set(ba):
        x = dict(ab.get(col, {}))
        for r, v in ba.get(col, {}).items():
            x[r] = x.get(r, 0) - v
        x = {r: v / scale for r, v in x.items() if v}
        if x:
            out[col] = x
    return out


@dataclass
class RepModule:
    rs: RootSystem
    highest_weight: tuple
    dim: int
    basis_weights: list  # Dynkin labels per basis vector
    depths: list  # lambda - mu in simple-root coordinates
    words: list  # generating f-word (node indices, applied right to left)
    e_ops: list  # per node, column-sparse
    f_ops: list
    hw_index: int = 0
    lw_index: int | None = None
    truncation: tuple | None = None
    _recipes: dict = field(default_factory=dict, repr=False)
    _columns: dict = field(default_factory=dict, repr=False)
    _by_depth: dict = field(default_factory=dict, repr=False)

    @property
    def complete(self) -> bool:
        return self.truncation is None

    def weight_space(self, depth) -> list[int]:
        return self._by_depth.get(tuple(depth), [])

    def h_eigen(self, i: int, b: int) -> int:
        return self.basis_weights[b][i]

    # -- root vectors --------------------------------------------------------

    def _root_recipe(self, key, cb):
        """(simple node i, shorter root, N) with rho(x_key) = [x_i, x_rest]/N."""
        recipe = self._recipes.get(key)
        if recipe is None:
            rs = self.rs
            positive = key in rs._index
            beta = key if positive else tuple(-x for x in key)
            if sum(beta) == 1:
                recipe = (beta.index(1), None, None)
            else:
                for i in range(rs.rank):
                    rest = tuple(c - (j == i) for j, c in enumerate(beta))
                    if all(c >= 0 for c in rest) and rs.is_root(rest):
                        break
                simple = tuple(int(j == i) for j in range(rs.rank))
                if not positive:
                    simple = tuple(-x for x in simple)
                    rest = tuple(-x for x in rest)
                recipe = (i, rest, cb.N(simple, rest))
            self._recipes[key] = recipe
        return recipe

    def root_column(self, signed_root, b: int, cb) -> dict:
        """Image of basis vector b under rho(e_beta) / rho(f_beta), memoized."""
        key = tuple(signed_root)
        memo = self._columns.setdefault(key, {})
        col = memo.get(b)
        if col is not None:
            return col
        i, rest, n = self._root_recipe(key, cb)
        simple_op = (self.e_ops if key in self.rs._index else self.f_ops)[i]
        if rest is None:
            col = simple_op.get(b, {})
        else:
            out: dict = {}
            for s_, c in self.root_column(rest, b, cb).items():
                for r, v in simple_op.get(s_, {}).items():
                    out[r] = out.get(r, 0) + c * v
            for s_, c in simple_op.get(b, {}).items():
                for r, v in self.root_column(rest, s_, cb).items():
                    out[r] = out.get(r, 0) - c * v
            col = {r: v / n for r, v in out.items() if v}
        memo[b] = col
        return col

    def apply_root(self, signed_root, vec: Mapping[int, object], cb) -> dict:
        out: dict = {}
        for b, c in vec.items():
            for r, v in self.root_column(signed_root, b, cb).items():
                out[r] = out.get(r, 0) + c * v
        return {r: v for r, v in out.items() if v}

    def root_operator(self, signed_root, cb) -> dict:
        """rho(e_beta) or rho(f_beta) (negative root) as a column-sparse matrix."""
        key = tuple(signed_root)
        op = {}
        for b in range(self.dim):
            col = self.root_column(key, b, cb)
            if col:
                op[b] = col
        return op

    def operator(self, flat: int, cb) -> dict:
        """Column-sparse matrix of a Chevalley basis element."""
        b = cb.index(flat)
        if b.kind == "h":
            return {v: {v: mpq(self.basis_weights[v][b.index])} for v in range(self.dim) if self.basis_weights[v][b.index]}
        root = self.rs.positive_roots[b.index]
        return self.root_operator(root if b.kind == "e" else tuple(-x for x in root), cb)

    def dense(self, flat: int, cb) -> list[list]:
        m = [[mpq(0)] * self.dim for _ in range(self.dim)]
        for col, vec in self.operator(flat, cb).items():
            for r, v in vec.items():
                m[r][col] = v
        return m

    # -- dual pairings -------------------------------------------------------

    def pair_lowest(self, vec: Mapping[int, object]):
        """Coefficient of the canonical lowest-weight basis vector."""
        if self.lw_index is None:
            raise ValueError("lowest weight vector not constructed (truncated module)")
        return vec.get(self.lw_index, mpq(0))

    def pair_highest(self, vec: Mapping[int, object]):
        """Coefficient of v_lambda: the pairing with the dual of the highest line."""
        return vec.get(self.hw_index, mpq(0))


def act(rep: RepModule, x: Mapping[int, object], v: Mapping[int, object], cb) -> dict:
    """rho(x) v for a sparse g-vector x and a sparse module vector v."""
    out: dict = {}
    for a, ca in x.items():
        if not ca:
            continue
        for r, val in _apply(rep.operator(a, cb), v).items():
            out[r] = out.get(r, 0) + ca * val
    return {r: val for r, val in out.items() if val}


def pair_lowest(rep: RepModule, v) -> mpq:
    return rep.pair_lowest(v)


def pair_highest(rep: RepModule, v) -> mpq:
    return rep.pair_highest(v)


def _quotient(x, y):
    """Exact x / y, kept as a Python int when it is one (ints are much faster than mpq)."""
    if type(x) is int and type(y) is int:
        q, r = divmod(x, y)
        if not r:
            return q
    q = mpq(x) / y
    return int(q) if q.denominator == 1 else q


class _Echelon:
    """Forward echelon over the candidates' e-images.

    Every stored row satisfies row = sum_k combo[k] * image(new_k), and its
    pivot is its smallest column, so eliminating columns in increasing order
    never reintroduces an eliminated column.
    """

    __slots__ = ("rows", "rank")

    def __init__(self):
        self.rows: dict = {}  # pivot column -> (row, combo)
        self.rank = 0

    def solve(self, img: dict):
        """Combination for an image known to lie in the span, read off the pivot
        coordinates only; None when it is zero."""
        if not img:
            return None
        row = dict(img)
        combo: dict = {}
        for col in sorted(self.rows):
            x = row.get(col)
            if not x:
                continue
            prow, pcombo = self.rows[col]
            factor = _quotient(x, prow[col])
            for c in self.rows:
                if c > col and c in prow:
                    row[c] = row.get(c, 0) - factor * prow[c]
            for k, v in pcombo.items():
                combo[k] = combo.get(k, 0) + factor * v
        combo = {k: v for k, v in combo.items() if v}
        return combo or None

    def insert(self, img: dict) -> tuple[bool, dict]:
        """Reduce ``img``; store it if independent.

        Returns (True, {}) for a new vector, else (False, c) with
        img = sum_k c[k] * image(new_k).
        """
        rows = self.rows
        if not rows:
            self.rank = 1
            rows[min(img)] = (img, {0: 1})
            return True, {}
        if len(rows) == 1:
            # one-dimensional so far (the common case): test proportionality directly
            ((p, (prow, pcombo)),) = rows.items()
            x = img.get(p)
            if x is not None and len(img) == len(prow):
                factor = _quotient(x, prow[p])
                if all(img.get(c) == factor * v for c, v in prow.items()):
                    return False, {k: factor * v for k, v in pcombo.items()}
        row = dict(img)
        combo: dict = {}
        heap = [c for c in row if c in rows]
        heapq.heapify(heap)
        while heap:
            col = heapq.heappop(heap)
            x = row.get(col)
            if x is None:
                continue
            prow, pcombo = rows[col]
            factor = _quotient(x, prow[col])
            for c, v in prow.items():
                nv = row.get(c, 0) - factor * v
                if nv:
                    if c not in row and c in rows:
                        heapq.heappush(heap, c)
                    row[c] = nv
                else:
                    row.pop(c, None)
            for k, v in pcombo.items():
                nv = combo.get(k, 0) - factor * v
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
        if not row:
            return False, {k: -v for k, v in combo.items()}
        k = self.rank
        self.rank += 1
        combo[k] = 1
        rows[min(row)] = (row, combo)
        return True, {}


def _image_at(rows, i, b, ecol, fi, diag, l) -> dict:
    """The e-image of f_i b restricted to the pivot columns of ``rows``."""
    out = {}
    for key in rows:
        r, j = divmod(key, l)
        total = diag if key == b * l + i else 0
        eb = ecol.get(j)
        if eb:
            for s_, c in eb.items():
                col = fi.get(s_)
                if col:
                    v = col.get(r)
                    if v:
                        total += c * v
        if total:
            out[key] = total
    return out


@contextmanager
def _gc_paused():
    # construction allocates millions of acyclic dicts; repeated full
    # collections over them cost more than the construction itself
    was = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was:
            gc.enable()


def build_irrep(rs: RootSystem | str, lam, dim_cap: int = 20000, truncate=None) -> RepModule:
    """Construct V_lambda.

    ``truncate``: optional bound B (simple-root coordinates); only weights with
    lambda - mu <= B componentwise are built.  The result is then the top part
    of the module, closed under the e_i and under the f_i within the bound.
    """
    with _gc_paused():
        return _build_irrep(rs, lam, dim_cap, truncate)


def _build_irrep(rs, lam, dim_cap, truncate) -> RepModule:
    if isinstance(rs, str):
        rs = build_root_system(rs)
    lam = tuple(int(x) for x in lam)
    if len(lam) != rs.rank:
        raise ValueError(f"weight {lam} has wrong length for rank {rs.rank}")
    wdim = weyl_dimension(rs, lam)
    if wdim > dim_cap:
        raise RepTooLargeError(wdim, dim_cap)
    l = rs.rank
    cart = rs.cartan
    bound = tuple(truncate) if truncate is not None else None

    weights = [lam]
    depths = [(0,) * l]
    words: list = [()]
    e_ops = [dict() for _ in range(l)]
    f_ops = [dict() for _ in range(l)]
    ecols: list = [{}]  # per basis vector: {j: column of e_j}
    by_depth: dict = {(0,) * l: [0]}
    frontier = [(0,) * l]
    alpha = [tuple(cart[r][i] for r in range(l)) for i in range(l)]  # alpha_i in Dynkin labels
    # Multiplicities are W-invariant and the dominant member of an orbit is
    # built first; a weight whose norm matches exactly one dominant weight built
    # so far has that weight's multiplicity.  norm_key(d) is a positive integer
    # multiple of (lam, lam) - (mu, mu) for mu = lam - d.
    scale = lcm(*(int(x.denominator) for x in rs.symmetrizer))
    dsym = [int(x * scale) for x in rs.symmetrizer]
    gram = [[dsym[i] * cart[i][j] for j in range(l)] for i in range(l)]
    lam_d = [2 * lam[j] * dsym[j] for j in range(l)]

    def norm_key(d):
        nz = [(i, x) for i, x in enumerate(d) if x]
        return sum(x * lam_d[i] for i, x in nz) - sum(x * y * gram[i][j] for i, x in nz for j, y in nz)

    dominant_mult: dict = {0: [1]}
    while frontier:
        candidates_at: dict = {}
        weight_at: dict = {}
        for d in frontier:
            mu = weights[by_depth[d][0]]
            for i in range(l):
                # Weights form unbroken alpha_i-strings: mu - alpha_i is a
                # weight iff p + <mu, alpha_i^vee> > 0, p the steps upward.
                p = 0
                up = list(d)
                while up[i] > 0:
                    up[i] -= 1
                    if tuple(up) not in by_depth:
                        break
                    p += 1
                if p + mu[i] <= 0:
                    continue
                if bound is not None and d[i] >= bound[i]:
                    continue
                nd = d[:i] + (d[i] + 1,) + d[i + 1 :]
                if nd not in candidates_at:
                    candidates_at[nd] = []
                    weight_at[nd] = tuple(m - c for m, c in zip(mu, alpha[i]))
                candidates_at[nd].extend([(i, b) for b in by_depth[d]])
        next_frontier = []
        for nd in sorted(candidates_at):
            cands = candidates_at[nd]
            mu = weight_at[nd]
            mult = None
            if any(x < 0 for x in mu):
                known = dominant_mult.get(norm_key(nd))
                if known is not None and len(known) == 1:
                    mult = known[0]
            ech = _Echelon()
            new_imgs: list = []
            results = []
            one = None
            for i, b in cands:
                if ech.rank == mult:
                    # the space is spanned: only the pivot coordinates are needed
                    if mult != 1:
                        results.append(ech.solve(_image_at(ech.rows, i, b, ecols[b], f_ops[i], weights[b][i], l)))
                        continue
                    if one is None:
                        ((p, (prow, pcombo)),) = ech.rows.items()
                        pr, pj = divmod(p, l)
                        one = (p, prow[p], pcombo[0], pr, pj)
                    p, pv, pc, pr, pj = one
                    x = weights[b][i] if p == b * l + i else 0
                    eb = ecols[b].get(pj)
                    if eb:
                        fi = f_ops[i]
                        for s_, c in eb.items():
                            col = fi.get(s_)
                            if col:
                                v = col.get(pr)
                                if v:
                                    x += c * v
                    results.append({0: _quotient(x, pv) * pc} if x else None)
                    continue
                # e_j f_i b = f_i e_j b + delta_ij <mu + alpha_i, alpha_i^vee> b,
                # keyed by r * l + j for basis vector r at weight mu + alpha_j
                img: dict = {}
                fi = f_ops[i]
                for j, eb in ecols[b].items():
                    for s_, c in eb.items():
                        col = fi.get(s_)
                        if col:
                            for r, v in col.items():
                                key = r * l + j
                                img[key] = img.get(key, 0) + c * v
                c = weights[b][i]
                if c:
                    key = b * l + i
                    img[key] = img.get(key, 0) + c
                img = {k: v for k, v in img.items() if v}
                if not img:
                    results.append(None)
                else:
                    is_new, combo = ech.insert(img)
                    if is_new:
                        results.append(len(new_imgs))
                        new_imgs.append((i, b, img))
                    else:
                        results.append(combo)
            if not new_imgs:
                continue
            base = len(weights)
            ids = []
            for k, (i, b, img) in enumerate(new_imgs):
                idx = base + k
                ids.append(idx)
                weights.append(mu)
                depths.append(nd)
                words.append((i,) + words[b])
                cols: dict = {}
                for key, v in img.items():
                    r, j = divmod(key, l)
                    cols.setdefault(j, {})[r] = v
                for j, col in cols.items():
                    e_ops[j][idx] = col
                ecols.append(cols)
            for (i, b), res in zip(cands, results):
                if res is None:
                    continue
                if isinstance(res, int):
                    f_ops[i].setdefault(b, {})[ids[res]] = 1
                else:
                    vec = {ids[k]: v for k, v in res.items() if v}
                    if vec:
                        f_ops[i].setdefault(b, {}).update(vec)
            by_depth[nd] = ids
            if all(x >= 0 for x in mu):
                dominant_mult.setdefault(norm_key(nd), []).append(len(ids))
            next_frontier.append(nd)
        frontier = next_frontier

    # integers were kept as Python ints during construction; the module speaks mpq
    for op in e_ops + f_ops:
        for col in op.values():
            for r, v in col.items():
                col[r] = mpq(v)
    dim = len(weights)
    lw = None
    if bound is None:
        if dim != wdim:
            raise AssertionError(f"built dimension {dim} != Weyl dimension {wdim}")
        target = tuple(-x for x in _dominant_neg(rs, lam))
        lows = [b for b, w in enumerate(weights) if w == target]
        lw = lows[0] if len(lows) == 1 else None
    rep = RepModule(
        rs=rs,
        highest_weight=lam,
        dim=dim,
        basis_weights=weights,
        depths=depths,
        words=words,
        e_ops=e_ops,
        f_ops=f_ops,
        lw_index=lw,
        truncation=bound,
    )
    rep._by_depth = by_depth
    return rep


def _dominant_neg(rs, lam):
    return dominant_conjugate(tuple(-x for x in lam), rs)
