import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minorbit import build_chevalley, build_root_system
from minorbit.quantize import (
    BasisMismatchError,
    EnvElement,
    _alg,
    cartan_dual,
    casimir_expansion,
    commutator,
    form_scale,
    heisenberg_quantize,
    pbw_multiply,
    quantization_report,
    root_pair_checks,
    travkin_quantize,
)
from minorbit.heisenberg import kostant_roots

RANK_LE_3 = ["A1", "A2", "B2", "G2", "A3", "B3", "C3"]


def elements(cb, max_terms=3, max_len=2):
    alg = _alg(cb)
    word = st.lists(st.integers(0, cb.dim - 1), max_size=max_len)
    coeff = st.integers(-3, 3).filter(bool)
    return st.lists(st.tuples(word, coeff), min_size=1, max_size=max_terms).map(
        lambda ts: sum((alg.word(w, c) for w, c in ts), EnvElement(alg, {}))
    )


@pytest.mark.parametrize("name", RANK_LE_3)
@settings(max_examples=1000, database=None)
@given(data=st.data())
def test_pbw_associativity(name, data):
    cb = build_chevalley(name)
    s = elements(cb)
    a, b, c = data.draw(s), data.draw(s), data.draw(s)
    assert pbw_multiply(pbw_multiply(a, b), c) == pbw_multiply(a, pbw_multiply(b, c))


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
@settings(max_examples=200)
@given(data=st.data())
def test_symbol_is_multiplicative(name, data):
    cb = build_chevalley(name)
    s = elements(cb)
    a, b = data.draw(s), data.draw(s)
    if a and b:
        assert (a * b).symbol() == a.symbol() * b.symbol()
        assert (a * b).degree <= a.degree + b.degree


@given(st.sampled_from(RANK_LE_3), st.data())
def test_commutator_of_generators_is_the_bracket(name, data):
    cb = build_chevalley(name)
    alg = _alg(cb)
    x, y = data.draw(st.integers(0, cb.dim - 1)), data.draw(st.integers(0, cb.dim - 1))
    assert commutator(alg.gen(x), alg.gen(y)) == alg.gen(cb.bracket({x: 1}, {y: 1}))


def test_sl2_defining_relation_and_unit():
    cb = build_chevalley("A1")
    alg = _alg(cb)
    h, e, f = 0, 1, 2
    assert alg.word((e, f)) == alg.word((f, e)) + alg.gen(h)
    assert alg.word((e, f)).render() == "f[1]*e[1] + h1"
    a = alg.word((e, h, f), 3)
    assert a * alg.one() == a and alg.one() * a == a
    assert a * 2 == a + a


def test_basis_mismatch():
    a = _alg(build_chevalley("A1")).gen(0)
    b = _alg(build_chevalley("A2")).gen(0)
    with pytest.raises(BasisMismatchError):
        pbw_multiply(a, b)


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_casimir_is_central(name):
    cb = build_chevalley(name)
    alg = _alg(cb)
    cas = EnvElement(alg, {})
    for a, d in enumerate(cb.dual_basis):
        cas = cas + alg.gen(a) * alg.gen(d)
    for g in range(cb.dim):
        assert not commutator(cas, alg.gen(g))


@pytest.mark.parametrize("kappa", ["killing", "normalized"])
def test_cartan_dual_represents_fundamental_weight(kappa):
    rs = build_root_system("B3")
    cb = build_chevalley(rs)
    s = form_scale(rs, kappa)
    for k in range(1, 4):
        hk = cartan_dual(cb, k, kappa)
        for i in range(3):
            assert s * cb.form(hk, {cb.h(i): 1}) == (1 if i == k - 1 else 0)
    with pytest.raises(ValueError):
        form_scale(rs, "other")


def test_sl2_degree_two_shape():
    rs = build_root_system("A1")
    cb = build_chevalley(rs)
    q = travkin_quantize(rs, cb, 1, 2, kappa="normalized")
    # H = h/2, kappa(alpha, alpha) = 2: H^2 + (1/2) e f = h^2/4 + (1/2)(f e + h)
    assert q.render() == "1/2*f[1]*e[1] + 1/4*h1^2 + 1/2*h1"
    assert not commutator(q, travkin_quantize(rs, cb, 1, 1))


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_casimir_expansion_degree_one(name):
    rs = build_root_system(name)
    cb = build_chevalley(rs)
    for k in range(1, rs.rank + 1):
        assert casimir_expansion(rs, cb, k, 1) == travkin_quantize(rs, cb, k, 1)


def test_root_pair_commutators_vanish():
    for name in ["A2", "B2", "G2", "C3"]:
        assert all(not c for _, _, c in root_pair_checks(name))


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_quantization_report(name):
    rep = quantization_report(name)
    assert rep.ok
    assert any(c.status == "pass" for c in rep.checks)
    d = rep.to_json()
    assert d["ok"] and d["kappa"] == "killing"


def test_heisenberg_quantize_symbol_degree():
    hb = kostant_roots("B2")
    q = heisenberg_quantize(hb, 1, 1)
    assert q.degree >= 1
    assert all(all(build_chevalley("B2").index(a).kind == "e" for a in w) for w in q.terms)
