"""Kostant's Heisenberg subalgebra, the Heisenberg chart of O_min, and the
Hamiltonians written in chart coordinates x_0, x_1, ...

n* is spanned by the root vectors e_phi with (phi, theta) != 0; it is two-step
nilpotent with centre C e_theta.  The chart is

    (c, x) -> Ad(exp(sum_i x_i E_i)) (c f_theta),   E_i = e_{phi_i},

and the order-r Hamiltonian of node k in chart coordinates is

    (1/r!) <v^k, exp(sum_i x_i rho(E_i)) rho(f_theta)^r v_k>     (read at c = 1).

Since exp(X) fixes v_k and f_{r,k} carries no 1/r!, the two sets of
coordinates are related by f_{r,k}(chart(c, x)) = c^r r! heis_{k,r}(x).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product
from math import factorial

from gmpy2 import mpq

from .chevalley import ChevalleyBasis, build_chevalley
from .hamiltonian import OrbitPoint, exp_ad, m_numbers
from .polyring import Poly, mono_mul, parse_poly
from .repbuild import RepModule, build_irrep
from .rootsys import RootSystem, build_root_system

PRINTED_TYPES = ("B2", "D3", "B3", "D4", "B4", "D5", "G2")


@lru_cache(maxsize=None)
def _label_tables() -> dict:
    raw = json.loads(resources.files(__package__).joinpath("data/heisenberg_labels.json").read_text())
    return {k: tuple(tuple(r) for r in v) for k, v in raw.items() if not k.startswith("_")}


def _coerce(rs) -> RootSystem:
    return rs if isinstance(rs, RootSystem) else build_root_system(rs)


@dataclass(frozen=True)
class HeisenbergBasis:
    rs: RootSystem
    roots: tuple  # phi_0, phi_1, ...; chart variable x_i multiplies E_i = e_{phi_i}
    center_index: int
    order: str = "canonical"

    @property
    def size(self) -> int:
        return len(self.roots)

    def flat(self, cb: ChevalleyBasis) -> list[int]:
        """Flat Chevalley indices of E_0, E_1, ..."""
        return [cb.e(r) for r in self.roots]

    def bracket_table(self, cb: ChevalleyBasis) -> dict[tuple[int, int], mpq]:
        """[E_i, E_j] = c_ij e_theta; only nonzero c_ij are returned."""
        flat = self.flat(cb)
        centre = cb.e(self.rs.highest_root)
        out = {}
        for i, a in enumerate(flat):
            for j, b in enumerate(flat):
                br = cb.bracket({a: 1}, {b: 1})
                if not br:
                    continue
                if set(br) != {centre}:
                    raise AssertionError(f"[E_{i}, E_{j}] leaves the centre line: {br}")
                out[(i, j)] = mpq(br[centre])
        return out

    def permutation_to(self, other: "HeisenbergBasis") -> list[int]:
        """p with self.roots[i] == other.roots[p[i]]."""
        pos = {r: j for j, r in enumerate(other.roots)}
        return [pos[r] for r in self.roots]

    def labels(self) -> list[str]:
        out = []
        for r in self.roots:
            parts = []
            for i, c in enumerate(r):
                if c:
                    parts.append(f"a{i + 1}" if c == 1 else f"{c}a{i + 1}")
            out.append("+".join(parts))
        return out

    def to_json(self) -> dict:
        return {
            "type": str(self.rs.type),
            "order": self.order,
            "roots": [list(r) for r in self.roots],
            "center_index": self.center_index,
        }


def kostant_roots(rs, order: str = "canonical") -> HeisenbergBasis:
    """Positive roots not orthogonal to theta.

    order="canonical": the root system's height-then-lex order (theta last).
    order="table": the published per-type labelling, available for PRINTED_TYPES.
    """
    rs = _coerce(rs)
    theta = rs.highest_root
    roots = tuple(r for r in rs.positive_roots if rs.inner(r, theta) != 0)
    if order == "table":
        name = str(rs.type)
        table = _label_tables().get(name)
        if table is None:
            raise KeyError(f"no published labelling for {name}")
        if sorted(table) != sorted(roots):
            raise AssertionError(f"label table for {name} does not match n*")
        roots = table
    elif order != "canonical":
        raise ValueError(f"unknown order {order!r}")
    return HeisenbergBasis(rs, roots, roots.index(theta), order)


@dataclass(frozen=True)
class ChartPoint:
    c: mpq
    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "c", mpq(self.c))
        object.__setattr__(self, "x", tuple(mpq(v) for v in self.x))
        if not self.c:
            raise ValueError("chart point needs c != 0")


def chart_to_orbit(hb: HeisenbergBasis, p: ChartPoint, cb: ChevalleyBasis | None = None) -> OrbitPoint:
    """Ad(exp(ad sum x_i E_i)) (c f_theta), exact (the series terminates)."""
    if not isinstance(p, ChartPoint):
        p = ChartPoint(*p)
    if len(p.x) != hb.size:
        raise ValueError(f"expected {hb.size} chart coordinates, got {len(p.x)}")
    cb = cb or build_chevalley(hb.rs)
    X = {a: v for a, v in zip(hb.flat(cb), p.x) if v}
    y = {cb.f(hb.rs.highest_root): p.c}
    y = exp_ad(cb, X, mpq(1), y) if X else y
    return OrbitPoint(y, (("chart", str(p.c)) + tuple(str(v) for v in p.x),))


@dataclass
class HeisenbergHamiltonian:
    poly: Poly
    k: int
    r: int
    beyond_m: bool = False  # r > m_k: identically zero by the vanishing theorem


def heisenberg_hamiltonian(
    hb: HeisenbergBasis,
    rep: RepModule | None,
    k: int,
    r: int,
    cb: ChevalleyBasis | None = None,
    dim_cap: int = 20000,
) -> HeisenbergHamiltonian:
    rs = hb.rs
    cb = cb or build_chevalley(rs)
    if not 1 <= k <= rs.rank:
        raise ValueError(f"node {k} outside 1..{rs.rank}")
    if r < 1:
        raise ValueError("order must be positive")
    if r > m_numbers(rs)[k - 1]:
        return HeisenbergHamiltonian(Poly(), k, r, beyond_m=True)
    lam = rs.fundamental_weight(k)
    rep = rep or build_irrep(rs, lam, dim_cap=dim_cap)
    if tuple(rep.highest_weight) != lam or not rep.complete:
        raise ValueError("module must be the complete V_{varpi_k}")
    ftheta = tuple(-c for c in rs.highest_root)
    w = {rep.hw_index: mpq(1)}
    for _ in range(r):
        w = rep.apply_root(ftheta, w, cb)
    # polynomial-valued vector; each E_i moves strictly up, so the series stops
    vec = {b: {(): c} for b, c in w.items()}
    total = dict(vec.get(rep.hw_index, {}))
    j = 0
    while vec:
        j += 1
        out: dict[int, dict] = {}
        for i, phi in enumerate(hb.roots):
            var = ((i, 1),)
            for b, poly in vec.items():
                for t, v in rep.root_column(phi, b, cb).items():
                    tgt = out.setdefault(t, {})
                    for m, c in poly.items():
                        key = mono_mul(m, var)
                        tgt[key] = tgt.get(key, 0) + c * v
        vec = {}
        for t, p in out.items():
            p = {m: c / j for m, c in p.items() if c}
            if p:
                vec[t] = p
        for m, c in vec.get(rep.hw_index, {}).items():
            total[m] = total.get(m, 0) + c
    poly = Poly(total).scale(mpq(1, factorial(r)))
    return HeisenbergHamiltonian(poly, k, r)


# -- tables -----------------------------------------------------------------------


@dataclass
class HeisenbergTable:
    hb: HeisenbergBasis
    m: tuple
    orders: int = 1
    cells: dict = field(default_factory=dict)  # (k, r) -> HeisenbergHamiltonian

    def render(self) -> str:
        rs = self.hb.rs
        lines = [f"{rs.type}: Heisenberg chart, {self.hb.size} variables"]
        for i, lab in enumerate(self.hb.labels()):
            lines.append(f"  x{i}: E[{i}] = e_({lab})")
        for r in range(1, self.orders + 1):
            lines.append(f"order {r}:")
            for k in range(1, rs.rank + 1):
                cell = self.cells[(k, r)]
                lines.append(f"  w{k}: {cell.poly.render()}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "type": str(self.hb.rs.type),
            "basis": self.hb.to_json(),
            "m": list(self.m),
            "cells": [
                {
                    "node": k,
                    "order": r,
                    "poly": c.poly.render(),
                    "terms": c.poly.to_json(self.hb.size),
                    "beyond_m": c.beyond_m,
                }
                for (k, r), c in sorted(self.cells.items())
            ],
        }


def heisenberg_table(
    rs, order: str | None = None, orders: int | None = None, dim_cap: int = 20000
) -> HeisenbergTable:
    """All cells (k, r) with 1 <= r <= orders (default max_k m_k).

    Uses the published variable order when one exists.
    """
    rs = _coerce(rs)
    if order is None:
        order = "table" if str(rs.type) in _label_tables() else "canonical"
    hb = kostant_roots(rs, order)
    cb = build_chevalley(rs)
    m = m_numbers(rs)
    table = HeisenbergTable(hb, m, orders=orders or max(m))
    for k in range(1, rs.rank + 1):
        rep = build_irrep(rs, rs.fundamental_weight(k), dim_cap=dim_cap)
        for r in range(1, table.orders + 1):
            table.cells[(k, r)] = heisenberg_hamiltonian(hb, rep, k, r, cb)
    return table


# -- gauges and golden comparison --------------------------------------------------


def apply_signs(p: Poly, signs) -> Poly:
    """x_i -> signs[i] x_i."""
    return p.substitute({i: Poly.var(i).scale(s) for i, s in enumerate(signs) if s != 1})


def cell_scalar(computed: Poly, golden: Poly):
    """The scalar s with golden = s * computed, or None if none exists."""
    if not computed or not golden:
        return mpq(1) if not computed and not golden else None
    mono, c = next(iter(golden.sorted_terms()))
    d = computed.coefficient(mono)
    if not d:
        return None
    s = c / d
    return s if computed.scale(s) == golden else None


def fit_signs(computed: dict, golden: dict, nvars: int, tiebreak: tuple = ()):
    """Per-variable sign map for the chart coordinates.

    ``computed``/``golden`` map a cell key -> Poly for the order-1 row; every
    returned map makes each of those cells agree up to a cell scalar.  The
    order-1 row fixes only products of signs, so among its solutions the map
    is chosen to (1) match the most ``tiebreak`` cells (pairs of Polys, e.g.
    unflagged higher orders), (2) need the fewest non-unit scalars, (3) come
    first lexicographically with +1 before -1.  Returns None if no map fits.
    """
    best, best_key = None, None
    for signs in product((1, -1), repeat=nvars):
        scalars = [cell_scalar(apply_signs(computed[k], signs), golden[k]) for k in golden]
        if any(s is None for s in scalars):
            continue
        extra = [cell_scalar(apply_signs(c, signs), g) for c, g in tiebreak]
        key = (
            -sum(s is not None for s in extra),
            sum(s != 1 for s in scalars + extra if s is not None),
        )
        if best_key is None or key < best_key:
            best, best_key = signs, key
    return best


@lru_cache(maxsize=None)
def load_golden(name: str) -> dict:
    path = resources.files(__package__).joinpath(f"testdata/heisenberg_{name}.json")
    return json.loads(path.read_text())


def golden_cells(name: str) -> dict:
    """(k, r) -> (Poly, discrepancy flag, alternate readings) from the shipped transcription."""
    data = load_golden(name)
    out = {}
    for cell in data["cells"]:
        alts = tuple(parse_poly(a) for a in cell.get("alternates", ()))
        out[(cell["node"], cell["order"])] = (parse_poly(cell["poly"]), bool(cell.get("printed_discrepancy")), alts)
    return out


@dataclass
class CellDiff:
    node: int
    order: int
    status: str  # "match", "mismatch", "discrepancy"
    scalar: object = None
    computed: str = ""
    golden: str = ""
    alternate: bool = False  # matched an alternate reading of a flagged cell

    def to_json(self) -> dict:
        return {
            "node": self.node,
            "order": self.order,
            "status": self.status,
            "scalar": None if self.scalar is None else str(self.scalar),
            "computed": self.computed,
            "golden": self.golden,
            "alternate": self.alternate,
        }


@dataclass
class TableComparison:
    type: str
    signs: tuple | None
    cells: list

    @property
    def ok(self) -> bool:
        return self.signs is not None and all(c.status != "mismatch" for c in self.cells)

    @property
    def warnings(self) -> list:
        return [c for c in self.cells if c.status == "discrepancy"]

    def to_json(self) -> dict:
        return {
            "type": self.type,
            "signs": None if self.signs is None else list(self.signs),
            "ok": self.ok,
            "cells": [c.to_json() for c in self.cells],
        }


def compare_with_golden(name: str, table: HeisenbergTable | None = None) -> TableComparison:
    """Diff a regenerated table against the shipped transcription.

    Gauges: one sign per chart variable (fitted on order 1, then frozen) and one
    scalar per cell.  Cells flagged as transcription discrepancies only warn.
    """
    golden = golden_cells(name)
    table = table or heisenberg_table(name, order="table", orders=max(r for _, r in golden))
    n = table.hb.size
    order1 = {k: g for (k, r), (g, _, _) in golden.items() if r == 1}
    higher = tuple(
        (table.cells[key].poly, g) for key, (g, flagged, _) in sorted(golden.items()) if key[1] > 1 and not flagged
    )
    signs = fit_signs({k: table.cells[(k, 1)].poly for k in order1}, order1, n, higher)
    diffs = []
    for (k, r), (g, flagged, alts) in sorted(golden.items()):
        comp = table.cells[(k, r)].poly
        fixed = apply_signs(comp, signs) if signs else comp
        s = cell_scalar(fixed, g)
        alternate = False
        if s is not None:
            status = "match"
        elif flagged:
            status = "discrepancy"
            for a in alts:
                s = cell_scalar(fixed, a)
                if s is not None:
                    alternate = True
                    break
        else:
            status = "mismatch"
        diffs.append(CellDiff(k, r, status, s, fixed.render(), g.render(), alternate))
    return TableComparison(name, signs, diffs)
