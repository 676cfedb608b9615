"""PBW normal ordering in U(g) and the two proposed quantizations.

PBW monomials are ordered f-block (negative root vectors, canonical root
order), then h-block (node order), then e-block.  Products are straightened
with [x, y] = xy - yx using the Chevalley structure constants.

Travkin's proposal: H_k for order 1, and for order 2

    H_k^2 + sum_{alpha > 0, <varpi_k, alpha^vee> != 0} <varpi_k, alpha^vee> / kappa(alpha, alpha) E_alpha E_{-alpha},

where H_k is the element of h that kappa identifies with varpi_k.  The
Heisenberg-orbit proposal replaces the chart variables of the order-r
Heisenberg Hamiltonian by the noncommuting E_i, each weighted by
1/kappa(phi_i, phi_i).  kappa is the Killing form or the normalized form
(long roots of squared length 2); they differ by the factor 2h^vee.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from gmpy2 import mpq

from .chevalley import ChevalleyBasis, build_chevalley
from .polyring import Poly
from .repbuild import RepModule, build_irrep
from .rootsys import RootSystem, _inverse, build_root_system

FORMS = ("killing", "normalized")


class BasisMismatchError(ValueError):
    pass


class PBWAlgebra:
    """U(g) in the PBW basis of one ChevalleyBasis; caches straightening."""

    def __init__(self, cb: ChevalleyBasis):
        self.cb = cb
        rs = cb.rs
        n, l = len(rs.positive_roots), rs.rank
        pos = {}
        for i, r in enumerate(rs.positive_roots):
            pos[cb.f(r)] = i
            pos[cb.e(r)] = n + l + i
        for i in range(l):
            pos[cb.h(i)] = n + i
        self.pos = pos
        self._mul: dict = {}

    def key(self, a: int) -> int:
        return self.pos[a]

    def times_generator(self, word: tuple, g: int) -> dict:
        """Normal form of (sorted word) * g as {sorted word: coeff}."""
        if not word or self.pos[word[-1]] <= self.pos[g]:
            return {word + (g,): mpq(1)}
        memo = self._mul.get((word, g))
        if memo is not None:
            return memo
        head, x = word[:-1], word[-1]
        # head x g = (head g) x + head [x, g]
        out: dict = {}
        for w, c in self.times_generator(head, g).items():
            for w2, c2 in self.times_generator(w, x).items():
                out[w2] = out.get(w2, 0) + c * c2
        for y, v in self.cb.bracket_basis(x, g).items():
            for w2, c2 in self.times_generator(head, y).items():
                out[w2] = out.get(w2, 0) + v * c2
        out = {w: mpq(c) for w, c in out.items() if c}
        self._mul[(word, g)] = out
        return out

    def times_word(self, word: tuple, other: tuple) -> dict:
        acc = {word: mpq(1)}
        for g in other:
            nxt: dict = {}
            for w, c in acc.items():
                for w2, c2 in self.times_generator(w, g).items():
                    nxt[w2] = nxt.get(w2, 0) + c * c2
            acc = {w: c for w, c in nxt.items() if c}
        return acc

    def element(self, terms) -> "EnvElement":
        return EnvElement(self, terms)

    def one(self) -> "EnvElement":
        return EnvElement(self, {(): mpq(1)})

    def gen(self, a, c=1) -> "EnvElement":
        """A Lie algebra element (flat index or sparse vector) inside U(g)."""
        if isinstance(a, int):
            a = {a: c}
        return EnvElement(self, {(b,): mpq(v) for b, v in a.items() if v})

    def word(self, letters, c=1) -> "EnvElement":
        """Product of generators in the given (not necessarily PBW) order."""
        return EnvElement(self, self.times_word((), tuple(letters))).scale(c)


@dataclass(frozen=True)
class EnvElement:
    alg: PBWAlgebra
    terms: dict = field(default_factory=dict)  # sorted word -> mpq

    def __post_init__(self):
        clean = {}
        for w, c in self.terms.items():
            c = mpq(c)
            if c:
                w = tuple(sorted(w, key=self.alg.key))
                clean[w] = clean.get(w, 0) + c
        object.__setattr__(self, "terms", {w: c for w, c in clean.items() if c})

    def _check(self, other: "EnvElement"):
        if not isinstance(other, EnvElement):
            raise TypeError("expected an EnvElement")
        if other.alg.cb is not self.alg.cb:
            raise BasisMismatchError("elements live over different Chevalley bases")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return EnvElement(self.alg, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "EnvElement":
        c = mpq(c)
        return EnvElement(self.alg, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, EnvElement):
            return self.scale(other)
        return pbw_multiply(self, other)

    def __eq__(self, other):
        return isinstance(other, EnvElement) and other.alg.cb is self.alg.cb and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def monomials(self):
        """[(((flat, exp), ...), coeff)] in a deterministic order."""
        out = []
        for w, c in self.terms.items():
            exps = []
            for a in w:
                if exps and exps[-1][0] == a:
                    exps[-1] = (a, exps[-1][1] + 1)
                else:
                    exps.append((a, 1))
            out.append((tuple(exps), c))
        out.sort(key=lambda t: (-sum(e for _, e in t[0]), [self.alg.key(a) for a, _ in t[0]]))
        return out

    def symbol(self) -> Poly:
        """Top graded component as a commutative polynomial in the flat variables."""
        d = self.degree
        if d < 0:
            return Poly()
        terms = {}
        for mono, c in self.monomials():
            if sum(e for _, e in mono) == d:
                key = tuple(sorted(mono))
                terms[key] = terms.get(key, 0) + c
        return Poly(terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        labels = self.alg.cb.labels
        parts = []
        for mono, c in self.monomials():
            word = "*".join(labels[a] if e == 1 else f"{labels[a]}^{e}" for a, e in mono)
            if not word:
                parts.append(str(c))
            elif c == 1:
                parts.append(word)
            elif c == -1:
                parts.append("-" + word)
            else:
                parts.append(f"{c}*{word}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [[[list(p) for p in mono], str(c)] for mono, c in self.monomials()]


def pbw_multiply(a: EnvElement, b: EnvElement) -> EnvElement:
    a._check(b)
    alg = a.alg
    out: dict = {}
    for wa, ca in a.terms.items():
        for wb, cb_ in b.terms.items():
            for w, c in alg.times_word(wa, wb).items():
                out[w] = out.get(w, 0) + ca * cb_ * c
    return EnvElement(alg, out)


def commutator(a: EnvElement, b: EnvElement) -> EnvElement:
    return pbw_multiply(a, b) - pbw_multiply(b, a)


# -- forms ---------------------------------------------------------------------------


def form_scale(rs: RootSystem, kappa: str) -> int:
    """kappa = scale * normalized form on g."""
    if kappa == "killing":
        return 2 * rs.dual_coxeter
    if kappa == "normalized":
        return 1
    raise ValueError(f"unknown form {kappa!r}; expected one of {FORMS}")


def root_norm(rs: RootSystem, root, kappa: str) -> mpq:
    """kappa(alpha, alpha) for the form induced on h*."""
    return mpq(rs.root_length2(root)) / form_scale(rs, kappa)


def cartan_dual(cb: ChevalleyBasis, k: int, kappa: str) -> dict:
    """H_k in h with kappa(H_k, h) = varpi_k(h), as {flat: coeff}."""
    rs = cb.rs
    l = rs.rank
    s = form_scale(rs, kappa)
    gram = [[cb.normalized_form.get((i, j), mpq(0)) * s for j in range(l)] for i in range(l)]
    inv = _inverse(gram)
    # kappa(sum c_j h_j, h_i) = delta_{ik}
    return {cb.h(j): mpq(inv[j][k - 1]) for j in range(l) if inv[j][k - 1]}


# -- Travkin's proposal ----------------------------------------------------------


def _alg(cb: ChevalleyBasis) -> PBWAlgebra:
    alg = cb.__dict__.get("_pbw")
    if alg is None:
        alg = cb.__dict__["_pbw"] = PBWAlgebra(cb)
    return alg


def travkin_quantize(
    rs,
    cb: ChevalleyBasis | None,
    k: int,
    n: int,
    rep: RepModule | None = None,
    kappa: str = "killing",
) -> EnvElement:
    """Closed forms for n = 1, 2; the Casimir-tensor expansion for n >= 3."""
    rs = rs if isinstance(rs, RootSystem) else build_root_system(rs)
    cb = cb or build_chevalley(rs)
    alg = _alg(cb)
    if not 1 <= k <= rs.rank:
        raise ValueError(f"node {k} outside 1..{rs.rank}")
    H = alg.gen(cartan_dual(cb, k, kappa))
    if n == 1:
        return H
    if n == 2:
        out = pbw_multiply(H, H)
        for a in rs.positive_roots:
            c = rs.fundamental_coweight_pairing(k, a)
            if c:
                out = out + alg.word((cb.e(a), cb.f(a)), mpq(c) / root_norm(rs, a, kappa))
        return out
    return casimir_expansion(rs, cb, k, n, rep, kappa)


def casimir_expansion(rs, cb: ChevalleyBasis, k: int, n: int, rep: RepModule | None = None, kappa: str = "killing"):
    """sum over a_1..a_n of <v^k, x_{a_1}...x_{a_n} v_k> x^{a_1}...x^{a_n}, x^a the kappa-dual basis."""
    rs = rs if isinstance(rs, RootSystem) else build_root_system(rs)
    alg = _alg(cb)
    rep = rep or build_irrep(rs, rs.fundamental_weight(k))
    s = form_scale(rs, kappa)
    dual = [{b: v / s for b, v in d.items()} for d in cb.dual_basis]
    ops = [rep.operator(a, cb) for a in range(cb.dim)]
    # walk down from v_k: states (module vector index -> coefficient) per word
    paths = {(): {rep.hw_index: mpq(1)}}
    for _ in range(n):
        nxt = {}
        for word, vec in paths.items():
            for a, op in enumerate(ops):
                img = {}
                for b, c in vec.items():
                    for r, v in op.get(b, {}).items():
                        img[r] = img.get(r, 0) + c * v
                img = {r: v for r, v in img.items() if v}
                if img:
                    nxt[(a,) + word] = img  # x_a applied last sits leftmost
        paths = nxt
    out = EnvElement(alg, {})
    for word, vec in paths.items():
        c = vec.get(rep.hw_index)
        if not c:
            continue
        term = alg.one().scale(c)
        for a in word:
            term = pbw_multiply(term, alg.gen(dual[a]))
        out = out + term
    return out


# -- Heisenberg-orbit proposal --------------------------------------------------------


def heisenberg_quantize(hb, k: int, r: int, cb: ChevalleyBasis | None = None, kappa: str = "killing") -> EnvElement:
    """Sum_j (1/j!) sum_{i_1..i_j} <v^k, E_{i_1}..E_{i_j} f_theta^r v_k> prod_t E_{i_t}/kappa(phi_{i_t}, phi_{i_t}).

    The j-sum runs until the expansion terminates (E_i are nilpotent on V).
    """
    from math import factorial

    rs = hb.rs
    cb = cb or build_chevalley(rs)
    alg = _alg(cb)
    rep = build_irrep(rs, rs.fundamental_weight(k))
    ftheta = tuple(-c for c in rs.highest_root)
    w = {rep.hw_index: mpq(1)}
    for _ in range(r):
        w = rep.apply_root(ftheta, w, cb)
    weights = [1 / root_norm(rs, phi, kappa) for phi in hb.roots]
    out = EnvElement(alg, {})
    paths = {(): w}
    j = 0
    while paths:
        j += 1
        nxt = {}
        for word, vec in paths.items():
            for i, phi in enumerate(hb.roots):
                img = rep.apply_root(phi, vec, cb)
                if img:
                    nxt[(i,) + word] = img
        paths = nxt
        for word, vec in paths.items():
            c = vec.get(rep.hw_index)
            if c:
                coeff = c / factorial(j)
                letters = []
                for i in word:
                    coeff *= weights[i]
                    letters.append(cb.e(hb.roots[i]))
                out = out + alg.word(letters, coeff)
    return out


# -- reports --------------------------------------------------------------------------


@dataclass
class CommutatorCheck:
    left: tuple  # (node, degree)
    right: tuple
    asserted: bool  # vanishing claimed (degree 1 with degree <= 2)
    result: EnvElement

    @property
    def vanishes(self) -> bool:
        return not self.result

    @property
    def status(self) -> str:
        if not self.asserted:
            return "report"
        return "pass" if self.vanishes else "fail"

    def line(self) -> str:
        (k1, n1), (k2, n2) = self.left, self.right
        tail = "0" if self.vanishes else f"{len(self.result.terms)} terms, degree {self.result.degree}"
        return f"[{self.status}] [Q(w{k1},{n1}), Q(w{k2},{n2})] = {tail}"


@dataclass
class QuantizationReport:
    type: str
    kappa: str
    elements: dict  # (node, degree) -> EnvElement
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_json(self) -> dict:
        return {
            "type": self.type,
            "kappa": self.kappa,
            "elements": [
                {"node": k, "degree": n, "terms": e.to_json(), "text": e.render()}
                for (k, n), e in sorted(self.elements.items())
            ],
            "checks": [
                {"left": list(c.left), "right": list(c.right), "status": c.status, "vanishes": c.vanishes}
                for c in self.checks
            ],
            "ok": self.ok,
        }


def quantization_report(rs, max_degree: int = 2, kappa: str = "killing") -> QuantizationReport:
    """Travkin elements for degrees <= max_degree (only where m_k allows) and all pairwise commutators.

    Vanishing is asserted for degree-1 against degree <= 2; other pairs are reported.
    """
    from .hamiltonian import m_numbers

    rs = rs if isinstance(rs, RootSystem) else build_root_system(rs)
    cb = build_chevalley(rs)
    m = m_numbers(rs)
    elements = {}
    for k in range(1, rs.rank + 1):
        for n in range(1, min(max_degree, m[k - 1]) + 1):
            elements[(k, n)] = travkin_quantize(rs, cb, k, n, kappa=kappa)
    keys = sorted(elements, key=lambda t: (t[1], t[0]))
    checks = []
    for i, a in enumerate(keys):
        for b in keys[i + 1 :]:
            asserted = min(a[1], b[1]) == 1 and max(a[1], b[1]) <= 2
            checks.append(CommutatorCheck(a, b, asserted, commutator(elements[a], elements[b])))
    return QuantizationReport(str(rs.type), kappa, elements, checks)


def root_pair_checks(rs, kappa: str = "killing") -> list[tuple]:
    """[H_beta, E_alpha E_{-alpha}] for every simple coroot H_beta and positive root alpha."""
    rs = rs if isinstance(rs, RootSystem) else build_root_system(rs)
    cb = build_chevalley(rs)
    alg = _alg(cb)
    out = []
    for i, a in product(range(rs.rank), rs.positive_roots):
        c = commutator(alg.gen(cb.h(i)), alg.word((cb.e(a), cb.f(a))))
        out.append((i + 1, a, c))
    return out
