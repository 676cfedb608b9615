"""Hamiltonians of the integrable system on the minimal nilpotent orbit.

f_{n,k}(x) is the coefficient of v_k in rho(x)^n v_k, where v_k spans the
highest weight line of V_{varpi_k}; variables are the coordinates of x in the
flat Chevalley basis.  The 1/n! of the exponential is not included.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import factorial

from gmpy2 import mpq

from . import linalg
from .chevalley import ChevalleyBasis, build_chevalley
from .polyring import Poly, mono_mul
from .repbuild import RepModule, build_irrep
from .rootsys import (
    RootSystem,
    SimpleType,
    build_root_system,
    dominance_leq,
    is_weight_of,
    longest_element_image,
)

PARAMETERS = (mpq(1), mpq(-1), mpq(2), mpq(-2), mpq(1, 2))
METHODS = ("sl2", "dominance", "rep", "bound")


def _coerce(rs) -> RootSystem:
    if isinstance(rs, RootSystem):
        return rs
    return build_root_system(rs)


# -- Hamiltonian polynomials ------------------------------------------------------


def _check_rep(rs: RootSystem, k: int, rep: RepModule | None, dim_cap: int) -> RepModule:
    lam = rs.fundamental_weight(k)
    if rep is None:
        return build_irrep(rs, lam, dim_cap=dim_cap)
    if tuple(rep.highest_weight) != lam or rep.rs.type != rs.type:
        raise ValueError(f"module has highest weight {rep.highest_weight}, expected varpi_{k} = {lam}")
    if not rep.complete:
        raise ValueError("a truncated module cannot be used for Hamiltonians")
    return rep


def hamiltonian_poly(
    rs,
    cb: ChevalleyBasis | None,
    k: int,
    n: int,
    rep: RepModule | None = None,
    dim_cap: int = 20000,
) -> Poly:
    """<v^k, x^n v_k> expanded in the Chevalley coordinates x_a (flat index a)."""
    rs = _coerce(rs)
    cb = cb or build_chevalley(rs)
    if not 1 <= k <= rs.rank:
        raise ValueError(f"node {k} outside 1..{rs.rank}")
    if n < 0:
        raise ValueError("order must be nonnegative")
    rep = _check_rep(rs, k, rep, dim_cap)
    ops = [rep.operator(a, cb) for a in range(cb.dim)]
    theta = rs.highest_root
    depths = rep.depths
    # component b carries {monomial: coefficient}
    vec: dict[int, dict] = {rep.hw_index: {(): mpq(1)}}
    for t in range(n):
        room = n - t - 1  # steps left after this one
        out: dict[int, dict] = {}
        for b, poly in vec.items():
            for a, op in enumerate(ops):
                col = op.get(b)
                if not col:
                    continue
                var = ((a, 1),)
                for r, v in col.items():
                    d = depths[r]
                    if any(d[j] > room * theta[j] for j in range(rs.rank)):
                        continue
                    tgt = out.setdefault(r, {})
                    for m, c in poly.items():
                        key = mono_mul(m, var)
                        tgt[key] = tgt.get(key, 0) + c * v
        vec = {r: {m: c for m, c in p.items() if c} for r, p in out.items()}
        vec = {r: p for r, p in vec.items() if p}
    return Poly(vec.get(rep.hw_index, {}))


def linear_form(rs, cb: ChevalleyBasis, k: int) -> Poly:
    """varpi_k as a function on g: x -> <varpi_k, Cartan part of x>."""
    return Poly.var(cb.h(k - 1))


def quadratic_formula(rs, cb: ChevalleyBasis, k: int) -> Poly:
    """varpi_k^2 + sum over alpha in R+ minus R_{P_k} of <varpi_k, alpha^vee> e*_alpha f*_alpha."""
    rs = _coerce(rs)
    out = linear_form(rs, cb, k) ** 2
    for a in rs.positive_roots:
        c = rs.fundamental_coweight_pairing(k, a)
        if c:
            out = out + Poly.var(cb.e(a)) * Poly.var(cb.f(a)) * c
    return out


@dataclass
class HamiltonianSet:
    type: SimpleType
    m: tuple[int, ...]
    entries: dict = field(default_factory=dict)  # (k, n) -> Poly

    def items(self):
        return sorted(self.entries.items())


def hamiltonian_set(rs, cb: ChevalleyBasis | None = None, dim_cap: int = 20000) -> HamiltonianSet:
    rs = _coerce(rs)
    cb = cb or build_chevalley(rs)
    m = m_numbers(rs, "sl2")
    hs = HamiltonianSet(rs.type, m)
    for k in range(1, rs.rank + 1):
        rep = build_irrep(rs, rs.fundamental_weight(k), dim_cap=dim_cap)
        for n in range(1, m[k - 1] + 1):
            hs.entries[(k, n)] = hamiltonian_poly(rs, cb, k, n, rep)
    return hs


# -- m_k ---------------------------------------------------------------------------


def _shift(rs: RootSystem, lam, r: int):
    """lam - r*theta in Dynkin labels."""
    tw = rs.root_to_weight(rs.highest_root)
    return tuple(x - r * y for x, y in zip(lam, tw))


def m_number(rs, k: int, method: str = "sl2", dim_cap: int = 20000, cb: ChevalleyBasis | None = None) -> int:
    """m_k = max r with f_theta^r v_k != 0, by one of four methods.

    sl2: the comark <varpi_k, theta^vee>.
    dominance: max r with varpi_k - r theta a weight of V_{varpi_k}.
    rep: f_theta applied inside the module until it vanishes.
    bound: max r with varpi_k - r theta >= w_0 varpi_k (the order comparison
    used as a shortcut in the literature; reported, not trusted).
    """
    rs = _coerce(rs)
    if not 1 <= k <= rs.rank:
        raise ValueError(f"node {k} outside 1..{rs.rank}")
    lam = rs.fundamental_weight(k)
    if method == "sl2":
        return rs.comarks[k - 1]
    if method == "dominance":
        r = 0
        while is_weight_of(_shift(rs, lam, r + 1), lam, rs):
            r += 1
        return r
    if method == "bound":
        low = longest_element_image(lam, rs)
        r = 0
        while dominance_leq(low, _shift(rs, lam, r + 1), rs):
            r += 1
        return r
    if method == "rep":
        # vanishing of f_theta^r v does not see the scale of f_theta, so the
        # commutator chain may use unit structure constants
        cb = cb or _UNIT_CONSTANTS
        theta = rs.highest_root
        ftheta = tuple(-x for x in theta)
        # every weight mu of V satisfies mu >= w_0 lam, so the bound method
        # caps r; weights above lam - (cap + 1) theta suffice
        cap = m_number(rs, k, "bound")
        box = tuple((cap + 1) * x for x in theta)
        rep = build_irrep(rs, lam, dim_cap=dim_cap, truncate=box)
        vec = {rep.hw_index: mpq(1)}
        r = 0
        while True:
            vec = rep.apply_root(ftheta, vec, cb)
            if not vec:
                return r
            r += 1
            if r > cap:
                raise AssertionError(f"f_theta^{r} v nonzero beyond the lattice bound {cap}")
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


class _UnitConstants:
    @staticmethod
    def N(x, y) -> int:
        return 1


_UNIT_CONSTANTS = _UnitConstants()


def m_numbers(rs, method: str = "sl2", dim_cap: int = 20000) -> tuple[int, ...]:
    rs = _coerce(rs)
    return tuple(m_number(rs, k, method, dim_cap) for k in range(1, rs.rank + 1))


def lattice_divergence(rs) -> list[dict]:
    """Nodes where the bound criterion and the dominant-conjugate criterion differ."""
    rs = _coerce(rs)
    out = []
    for k in range(1, rs.rank + 1):
        a = m_number(rs, k, "dominance")
        b = m_number(rs, k, "bound")
        if a != b:
            out.append({"node": k, "dominance": a, "bound": b})
    return out


# -- orbit samples -------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitPoint:
    coeffs: dict  # flat index -> mpq
    provenance: tuple  # ((flat generator, parameter), ...) applied left to right

    def vector(self, dim: int) -> list[mpq]:
        return [self.coeffs.get(a, mpq(0)) for a in range(dim)]

    def to_json(self) -> dict:
        return {
            "coeffs": {str(a): str(v) for a, v in sorted(self.coeffs.items())},
            "word": [[g, str(t)] for g, t in self.provenance],
        }


def exp_ad(cb: ChevalleyBasis, a, t, x: dict) -> dict:
    """exp(t ad a) x, with ``a`` a flat index or sparse vector (ad a nilpotent)."""
    if isinstance(a, int):
        a = {a: 1}
    out = dict(x)
    term = dict(x)
    j = 0
    while term:
        j += 1
        term = cb.bracket(a, term)
        term = {b: v * t / j for b, v in term.items() if v}
        for b, v in term.items():
            out[b] = out.get(b, 0) + v
        if j > 2 * cb.dim:
            raise ValueError("ad is not nilpotent on this vector")
    return {b: mpq(v) for b, v in out.items() if v}


def sample_orbit_point(
    rs,
    cb: ChevalleyBasis | None,
    seed: int,
    word_length: int | None = 8,
    mode: str = "simple",
) -> OrbitPoint:
    """Ad(exp t_1 ad a_1) ... Ad(exp t_r ad a_r) e_theta with t_j from PARAMETERS.

    mode "simple": ``word_length`` random letters over the 2l directions e_i, f_i.
    mode "generic": every f_alpha (random order), then every e_alpha, then
    ``word_length`` simple letters.  Short simple words rarely leave the upper
    nilradical, where all Hamiltonians vanish; the generic prefix puts the
    point in the big cell, so checks on it are not vacuous.
    """
    rs = _coerce(rs)
    cb = cb or build_chevalley(rs)
    rng = random.Random(seed)
    simple = rs.positive_roots[: rs.rank]
    gens = [cb.e(r) for r in simple] + [cb.f(r) for r in simple]
    tail = [(rng.choice(gens), rng.choice(PARAMETERS)) for _ in range(word_length or 0)]
    if mode == "simple":
        word = tail
    elif mode == "generic":
        neg = [cb.f(r) for r in rs.positive_roots]
        pos = [cb.e(r) for r in rs.positive_roots]
        rng.shuffle(neg)
        rng.shuffle(pos)
        # applied right to left: negative part first, then positive, then tail
        word = tail + [(g, rng.choice(PARAMETERS)) for g in pos] + [(g, rng.choice(PARAMETERS)) for g in neg]
    else:
        raise ValueError(f"unknown sampling mode {mode!r}")
    return replay_word(cb, rs, tuple(word))


def replay_word(cb: ChevalleyBasis, rs, word) -> OrbitPoint:
    """Rebuild an OrbitPoint from its provenance word."""
    rs = _coerce(rs)
    x = {cb.e(rs.highest_root): mpq(1)}
    for g, t in reversed(word):
        x = exp_ad(cb, g, mpq(t), x)
    return OrbitPoint(x, tuple((g, mpq(t)) for g, t in word))


# -- matrix realization (classical types) ----------------------------------------------


class MatrixRealization:
    """g acting on V_{varpi_1} with the constructed weight basis.

    The basis is ordered by depth below the highest weight, so raising
    operators are strictly upper triangular and the first k basis vectors span
    a B-stable subspace: the block statements apply to upper-left blocks.
    """

    def __init__(self, rs, cb: ChevalleyBasis | None = None):
        rs = _coerce(rs)
        if rs.type.family not in "ABCD":
            raise ValueError(f"no classical matrix realization for {rs.type}")
        self.rs = rs
        self.cb = cb or build_chevalley(rs)
        self.rep = build_irrep(rs, rs.fundamental_weight(1))
        self.size = self.rep.dim
        self._mats = [self.rep.dense(a, self.cb) for a in range(self.cb.dim)]

    def matrix(self, x) -> list[list[mpq]]:
        coeffs = x.coeffs if isinstance(x, OrbitPoint) else x
        out = linalg.zeros(self.size)
        for a, c in coeffs.items():
            if not c:
                continue
            m = self._mats[a]
            for i in range(self.size):
                for j in range(self.size):
                    if m[i][j]:
                        out[i][j] += c * m[i][j]
        return out

    @property
    def trace_index(self) -> mpq:
        """iota with tr(rho(x) rho(y)) = iota (x, y) for the normalized form."""
        cb = self.cb
        e, f = cb.e(self.rs.highest_root), cb.f(self.rs.highest_root)
        tr = sum(self._mats[e][i][j] * self._mats[f][j][i] for i in range(self.size) for j in range(self.size))
        return tr / cb.normalized_form[(e, f)]

    def coordinate_forms(self) -> list[dict[int, mpq]]:
        """x_a = tr(rho(e^a) A) / iota as linear forms in the entries (index i*size+j)."""
        iota = self.trace_index
        out = []
        for dual in self.cb.dual_basis:
            m = self.matrix(dual)
            out.append({j * self.size + i: m[i][j] / iota for i in range(self.size) for j in range(self.size) if m[i][j]})
        return out

    def from_chevalley(self, f: Poly) -> Poly:
        """Rewrite a function on g in the matrix entries a_ij via the trace form."""
        forms = self.coordinate_forms()
        return f.substitute({a: Poly.linear(forms[a]) for a in f.variables()})

    def prefix_weight(self, k: int) -> tuple[int, ...]:
        """Weight of e_1 ^ ... ^ e_k (Dynkin labels)."""
        ws = self.rep.basis_weights[:k]
        return tuple(sum(w[i] for w in ws) for i in range(self.rs.rank))


def trace_range(family: str, n: int, r: int) -> range:
    """Values of k for which the trace theorem lists Tr(Lambda^r A_{k,k})."""
    if r == 1:
        return range(1, n + 1)
    if r == 2 and family == "B":
        return range(2, n)
    if r == 2 and family == "D":
        return range(2, n - 1)
    return range(0)


def classical_trace_hamiltonian(family: str, k: int, r: int, a, n: int | None = None) -> mpq:
    """Tr(A_{k,k}) for r = 1, Tr(Lambda^2 A_{k,k}) for r = 2 (types B, D).

    ``n`` is the rank; inferred from the matrix size when omitted.
    """
    family = family.upper()
    size = len(a)
    if n is None:
        n = {"A": size - 1, "B": (size - 1) // 2, "C": size // 2, "D": size // 2}[family]
    if k not in trace_range(family, n, r):
        raise ValueError(f"k = {k} outside the trace family for {family}{n}, r = {r}")
    b = linalg.block(a, k)
    if r == 1:
        return linalg.trace(b)
    return linalg.elementary_symmetric(b, 2)


def _poly_matrix_det_coeff(a, k: int, m: int) -> mpq:
    """Coefficient of t^m in det[exp(tA)_{k x k}] by exact interpolation."""
    size = len(a)
    powers = [linalg.identity(size)]
    while True:
        nxt = linalg.matmul(powers[-1], a)
        if linalg.is_zero(nxt):
            break
        powers.append(nxt)
    deg = k * (len(powers) - 1)
    if m > deg:
        return mpq(0)

    def det_at(t):
        mat = linalg.zeros(k)
        for p, pw in enumerate(powers):
            c = mpq(t) ** p / factorial(p)
            for i in range(k):
                for j in range(k):
                    if pw[i][j]:
                        mat[i][j] += c * pw[i][j]
        return linalg.det(mat)

    xs = list(range(deg + 1))
    ys = [det_at(x) for x in xs]
    # Newton divided differences, then expand to monomial coefficients
    coef = list(ys)
    for j in range(1, len(xs)):
        for i in range(len(xs) - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [mpq(0)] * (deg + 1)
    for i in range(len(xs) - 1, -1, -1):
        # poly = poly * (t - xs[i]) + coef[i]
        new = [mpq(0)] * (deg + 1)
        for p in range(deg, -1, -1):
            if poly[p]:
                if p + 1 <= deg:
                    new[p + 1] += poly[p]
                new[p] -= poly[p] * xs[i]
        new[0] += coef[i]
        poly = new
    return poly[m]


def exp_det_coefficient(a, k: int, m: int) -> mpq:
    """Coefficient of t^m in det[(1 + tA + t^2A^2/2 + ...)_{k x k}] for nilpotent A."""
    a = linalg.to_rational(a)
    if linalg.nilpotency_index(a) is None:
        raise ValueError("matrix is not nilpotent; the exponential series does not truncate")
    if not 0 <= k <= len(a):
        raise ValueError(f"block size {k} outside 0..{len(a)}")
    if m == 0:
        return mpq(1)
    return _poly_matrix_det_coeff(a, k, m)


def trace_poly(family: str, k: int, r: int, size: int) -> Poly:
    """The trace Hamiltonian as a polynomial in matrix entries a_ij (index i*size+j)."""
    idx = lambda i, j: i * size + j  # noqa: E731
    if r == 1:
        return sum((Poly.var(idx(i, i)) for i in range(k)), Poly())
    out = Poly()
    for i in range(k):
        for j in range(i + 1, k):
            out = out + Poly.var(idx(i, i)) * Poly.var(idx(j, j)) - Poly.var(idx(i, j)) * Poly.var(idx(j, i))
    return out


def matrix_entry_names(size: int):
    return lambda v: f"a{v // size + 1}_{v % size + 1}"


# -- the textbook G2 basis ------------------------------------------------------------


class G2Textbook:
    """The basis {H1, H2, X1..X6, Y1..Y6} with X_i = s_i e_{root_i}, Y_i = s_i f_{root_i}.

    Variables of a point A = h1 H1 + h2 H2 + sum x_i X_i + sum y_i Y_i are
    numbered h1, h2, x1..x6, y1..y6 = 0..13.
    """

    def __init__(self, cb: ChevalleyBasis | None = None):
        import json
        from importlib import resources

        data = json.loads(resources.files(__package__).joinpath("data/g2_textbook_basis.json").read_text())
        self.cb = cb or build_chevalley("G2")
        self.roots = [tuple(r) for r in data["roots"]]
        self.signs = list(data["signs"])
        self.undetermined = list(data["undetermined"])
        self.names = ["h1", "h2"] + [f"x{i}" for i in range(1, 7)] + [f"y{i}" for i in range(1, 7)]
        self.basis_names = ["H1", "H2"] + [f"X{i}" for i in range(1, 7)] + [f"Y{i}" for i in range(1, 7)]
        cb = self.cb
        # textbook element j as a sparse Chevalley vector
        self.elements = [{cb.h(0): mpq(1)}, {cb.h(1): mpq(1)}]
        self.elements += [{cb.e(r): mpq(s)} for r, s in zip(self.roots, self.signs)]
        self.elements += [{cb.f(r): mpq(s)} for r, s in zip(self.roots, self.signs)]

    def from_chevalley(self, f: Poly) -> Poly:
        """Rewrite a polynomial in Chevalley coordinates in textbook coordinates."""
        images = {}
        for j, el in enumerate(self.elements):
            ((a, s),) = el.items()
            # the Chevalley coordinate of basis vector a is s * (textbook coordinate j)
            images[a] = Poly.var(j).scale(s)
        return f.substitute(images)

    def coordinates(self, x: dict) -> dict:
        """Textbook coordinates of a sparse Chevalley vector."""
        out = {}
        for j, el in enumerate(self.elements):
            ((a, s),) = el.items()
            if x.get(a):
                out[j] = x[a] / s
        return out

    def bracket_with_general(self, j: int) -> dict:
        """[A, B_j] for general A, as {textbook basis index: linear Poly in A's coordinates}."""
        out: dict = {}
        for i, el in enumerate(self.elements):
            br = self.cb.bracket(el, self.elements[j])
            for t, c in self.coordinates(br).items():
                out[t] = out.get(t, Poly()) + Poly.var(i).scale(c)
        return {t: p for t, p in out.items() if p}


__all__ = [
    "G2Textbook",
    "HamiltonianSet",
    "MatrixRealization",
    "OrbitPoint",
    "classical_trace_hamiltonian",
    "exp_ad",
    "exp_det_coefficient",
    "hamiltonian_poly",
    "hamiltonian_set",
    "lattice_divergence",
    "linear_form",
    "matrix_entry_names",
    "m_number",
    "m_numbers",
    "quadratic_formula",
    "sample_orbit_point",
    "trace_poly",
    "trace_range",
]
