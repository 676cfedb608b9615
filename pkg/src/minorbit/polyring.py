"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a sorted tuple of ``(variable, exponent)`` pairs with positive
exponents; a :class:`Poly` maps monomials to nonzero ``mpq`` coefficients.
Polys are immutable and hashable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from gmpy2 import mpq

Mono = tuple  # tuple[tuple[int, int], ...]

ONE: Mono = ()


def as_rational(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


class Poly:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Mono, object] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = as_rational(c)
                if c:
                    clean[m] = c
        self.terms: dict[Mono, mpq] = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def var(cls, i: int) -> "Poly":
        return cls._raw({((i, 1),): mpq(1)})

    @classmethod
    def const(cls, c) -> "Poly":
        c = as_rational(c)
        return cls._raw({ONE: c} if c else {})

    @classmethod
    def linear(cls, coeffs: Mapping[int, object]) -> "Poly":
        return cls({((i, 1),): c for i, c in coeffs.items()})

    # -- arithmetic ----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _coerce(self, other) -> "Poly":
        return other if isinstance(other, Poly) else Poly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        c = as_rational(c)
        if not c:
            return Poly()
        return Poly._raw({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                v = out.get(m, 0) + ca * cb
                out[m] = v
        return Poly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def diff(self, i: int) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            for pos, (v, e) in enumerate(m):
                if v == i:
                    if e == 1:
                        nm = m[:pos] + m[pos + 1 :]
                    else:
                        nm = m[:pos] + ((v, e - 1),) + m[pos + 1 :]
                    out[nm] = c * e
                    break
        return Poly._raw(out)

    # -- inspection ----------------------------------------------------------

    def variables(self) -> set[int]:
        return {v for m in self.terms for v, _ in m}

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly._raw({m: c for m, c in self.terms.items() if mono_degree(m) == d})

    def coefficient(self, mono: Mono) -> mpq:
        return self.terms.get(tuple(mono), mpq(0))

    def evaluate(self, point) -> mpq:
        """Exact value at ``point`` (a sequence or a mapping variable -> value)."""
        get = point.get if isinstance(point, Mapping) else point.__getitem__
        total = mpq(0)
        cache: dict = {}
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                x = cache.get(v)
                if x is None:
                    x = as_rational(get(v) if not isinstance(point, Mapping) else point.get(v, 0))
                    cache[v] = x
                if not x:
                    val = 0
                    break
                val = val * x**e
            total += val
        return total

    def substitute(self, images: Mapping[int, "Poly"]) -> "Poly":
        """Replace variables by polynomials (unlisted variables are kept)."""
        out = Poly()
        powers: dict = {}
        for m, c in self.terms.items():
            term = Poly.const(c)
            for v, e in m:
                if v in images:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = images[v] ** e
                    term = term * powers[key]
                else:
                    term = term * Poly._raw({((v, e),): mpq(1)})
            out = out + term
        return out

    def map_variables(self, f: Callable[[int], int]) -> "Poly":
        out: dict = {}
        for m, c in self.terms.items():
            nm: dict = {}
            for v, e in m:
                w = f(v)
                nm[w] = nm.get(w, 0) + e
            key = tuple(sorted(nm.items()))
            out[key] = out.get(key, 0) + c
        return Poly._raw({m: c for m, c in out.items() if c})

    # -- rendering -----------------------------------------------------------

    def sorted_terms(self):
        """Graded lexicographic order, highest degree first."""

        def key(item):
            m = item[0]
            return (-mono_degree(m), tuple((v, -e) for v, e in m))

        return sorted(self.terms.items(), key=key)

    def render(self, names: Sequence[str] | Callable[[int], str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            name = lambda v: f"x{v}"  # noqa: E731
        elif callable(names):
            name = names
        else:
            name = names.__getitem__
        parts = []
        for m, c in self.sorted_terms():
            factors = [name(v) if e == 1 else f"{name(v)}^{e}" for v, e in m]
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Poly({self.render()!r})"

    def to_json(self, nvars: int | None = None) -> list:
        """``[exponent vector, numerator, denominator]`` triples."""
        n = nvars if nvars is not None else (max(self.variables(), default=-1) + 1)
        out = []
        for m, c in self.sorted_terms():
            exps = [0] * n
            for v, e in m:
                exps[v] = e
            out.append([exps, int(c.numerator), int(c.denominator)])
        return out

    @classmethod
    def from_json(cls, data: Iterable) -> "Poly":
        terms = {}
        for exps, num, den in data:
            m = tuple((i, e) for i, e in enumerate(exps) if e)
            terms[m] = mpq(num, den)
        return cls(terms)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z]\w*?)_?\{?(?P<idx>\d+)\}?|(?P<op>[-+*^()]))")


def parse_poly(text: str, variable_index: Callable[[str, int], int] | None = None) -> Poly:
    """Parse ``1/2*x1*x2 - x0^2`` style text (also ``x_{10}``; ``*`` optional).

    ``variable_index(name, idx)`` maps a variable token to its index; by
    default the numeric suffix is used.
    """
    if variable_index is None:
        variable_index = lambda name, idx: idx  # noqa: E731
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", Fraction(m.group("num"))))
        elif m.group("var"):
            tokens.append(("var", variable_index(m.group("var"), int(m.group("idx")))))
        elif m.group("op"):
            tokens.append(("op", m.group("op")))
    result = Poly()
    sign = 1
    term = None
    i = 0

    def flush(term, sign):
        return result + (term if term is not None else Poly()).scale(sign)

    while i < len(tokens):
        kind, val = tokens[i]
        if kind == "op" and val in "+-":
            if term is not None:
                result = flush(term, sign)
                term = None
            sign = 1 if val == "+" else -1
            i += 1
            continue
        if kind == "op" and val == "*":
            i += 1
            continue
        if kind == "num":
            factor = Poly.const(val)
        elif kind == "var":
            factor = Poly.var(val)
        else:
            raise ValueError(f"unexpected token {val!r}")
        i += 1
        if i < len(tokens) and tokens[i] == ("op", "^"):
            factor = factor ** int(tokens[i + 1][1])
            i += 2
        term = factor if term is None else term * factor
    if term is not None:
        result = flush(term, sign)
    return result


# -- Kirillov-Kostant bracket ----------------------------------------------------


def poisson_tensor(cb, on: str = "coalgebra") -> dict[tuple[int, int], Poly]:
    """Linear polynomials P_ab = {x_a, x_b} on the flat Chevalley basis.

    ``on="coalgebra"``: variables are basis elements read as linear functions
    on g*, so {x_a, x_b} = x_[a,b].  ``on="algebra"``: variables are the
    coordinates of a point of g, and g is identified with g* through the
    normalized invariant form, so {x_a, x_b}(x) = (x, [e^a, e^b]).
    """
    cache = cb.__dict__.setdefault("_poisson_cache", {})
    if on in cache:
        return cache[on]
    out: dict[tuple[int, int], Poly] = {}
    if on == "coalgebra":
        for (a, b), res in cb.structure.items():
            out[(a, b)] = Poly.linear(res)
    elif on == "algebra":
        dual = cb.dual_basis
        form = cb.normalized_form
        # (x, z) as a linear polynomial: coefficient of x_m is (e_m, z)
        partner: dict[int, list] = {}
        for (m, n), v in form.items():
            partner.setdefault(n, []).append((m, v))
        for a in range(cb.dim):
            for b in range(cb.dim):
                z = cb.bracket(dual[a], dual[b])
                if not z:
                    continue
                lin: dict = {}
                for n, cz in z.items():
                    for m, v in partner.get(n, ()):
                        lin[m] = lin.get(m, 0) + cz * v
                p = Poly.linear(lin)
                if p:
                    out[(a, b)] = p
    else:
        raise ValueError(f"unknown convention {on!r}")
    cache[on] = out
    return out


def kk_bracket(f: Poly, g: Poly, cb, on: str = "coalgebra") -> Poly:
    """Kirillov-Kostant bracket sum_ab (df/dx_a)(dg/dx_b) {x_a, x_b}."""
    for p in (f, g):
        bad = [v for v in p.variables() if v >= cb.dim]
        if bad:
            raise ValueError(f"variable index {bad[0]} outside the basis of dimension {cb.dim}")
    tensor = poisson_tensor(cb, on)
    df = {a: f.diff(a) for a in f.variables()}
    dg = {b: g.diff(b) for b in g.variables()}
    by_a: dict[int, list] = {}
    for (a, b), p in tensor.items():
        if a in df and b in dg:
            by_a.setdefault(a, []).append((b, p))
    out = Poly()
    for a, items in by_a.items():
        inner = Poly()
        for b, p in items:
            inner = inner + dg[b] * p
        out = out + df[a] * inner
    return out


def evaluate(f: Poly, point) -> mpq:
    return f.evaluate(point)
