import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from minorbit import build_chevalley, build_root_system
from minorbit.chevalley import JacobiError

SMALL = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"]
ALL = SMALL + ["A4", "C4", "B4", "F4", "E6"]


@given(st.sampled_from(ALL), st.data())
def test_jacobi_identity(name, data):
    cb = build_chevalley(name)
    idx = st.integers(0, cb.dim - 1)
    a, b, c = data.draw(idx), data.draw(idx), data.draw(idx)
    assert cb.jacobi_violation(a, b, c) is None


@given(st.sampled_from(ALL), st.data())
def test_antisymmetry(name, data):
    cb = build_chevalley(name)
    a, b = data.draw(st.integers(0, cb.dim - 1)), data.draw(st.integers(0, cb.dim - 1))
    ab = cb.bracket({a: 1}, {b: 1})
    ba = cb.bracket({b: 1}, {a: 1})
    assert ab == {k: -v for k, v in ba.items()}


@pytest.mark.parametrize("name", ALL)
def test_chevalley_integrality(name):
    """|N_{a,b}| = p + 1 with p the length of the b-string below a."""
    cb = build_chevalley(name)
    rs = cb.rs
    for x in rs.positive_roots:
        for y in rs.positive_roots:
            n = cb.N(x, y)
            s = tuple(u + v for u, v in zip(x, y))
            if rs.is_root(s):
                assert abs(n) == cb._string_down(x, y) + 1
            else:
                assert n == 0


@pytest.mark.parametrize("name", ALL)
def test_cartan_action(name):
    cb = build_chevalley(name)
    rs = cb.rs
    for r in rs.positive_roots:
        w = rs.root_to_weight(r)
        for i in range(rs.rank):
            assert cb.bracket({cb.h(i): 1}, {cb.e(r): 1}) == ({cb.e(r): w[i]} if w[i] else {})
            assert cb.bracket({cb.h(i): 1}, {cb.f(r): 1}) == ({cb.f(r): -w[i]} if w[i] else {})
    for i, r in enumerate(rs.positive_roots[: rs.rank]):
        assert cb.bracket({cb.e(r): 1}, {cb.f(r): 1}) == {cb.h(i): 1}


@pytest.mark.parametrize("name", SMALL)
def test_killing_is_multiple_of_normalized(name):
    cb = build_chevalley(name)
    k2 = 2 * cb.rs.dual_coxeter
    kf, nf = cb.killing_form, cb.normalized_form
    assert set(kf) == set(nf)
    assert all(kf[p] == k2 * nf[p] for p in nf)


@given(st.sampled_from(SMALL), st.data())
def test_normalized_form_invariant(name, data):
    cb = build_chevalley(name)
    idx = st.integers(0, cb.dim - 1)
    x, y, z = ({data.draw(idx): 1} for _ in range(3))
    assert cb.form(cb.bracket(x, y), z) == cb.form(x, cb.bracket(y, z))


@pytest.mark.parametrize("name", SMALL)
def test_dual_basis(name):
    cb = build_chevalley(name)
    for a, d in enumerate(cb.dual_basis):
        for b in range(cb.dim):
            assert cb.form(d, {b: 1}) == (1 if a == b else 0)


def test_adjoint_matrix_is_a_representation():
    cb = build_chevalley("B2")
    from minorbit import linalg

    def ad(v):
        return [[mpq(c) for c in row] for row in cb.adjoint_matrix(v)]

    for a in range(cb.dim):
        for b in range(cb.dim):
            lhs = ad(cb.bracket({a: 1}, {b: 1})) if cb.bracket({a: 1}, {b: 1}) else [[0] * cb.dim for _ in range(cb.dim)]
            ab, ba = linalg.matmul(ad({a: 1}), ad({b: 1})), linalg.matmul(ad({b: 1}), ad({a: 1}))
            rhs = [[p - q for p, q in zip(r1, r2)] for r1, r2 in zip(ab, ba)]
            assert [[mpq(c) for c in row] for row in lhs] == rhs


def test_corrupted_table_is_detected():
    from minorbit.chevalley import ChevalleyBasis

    cb = ChevalleyBasis(build_root_system("A2"))
    key = next((a, b) for (a, b), res in cb.structure.items() if a >= cb.rank and b >= cb.rank and res)
    (c, v), = cb.structure[key].items()
    cb.structure[key] = {c: 2 * v}
    with pytest.raises(JacobiError):
        cb.check_jacobi([(a, b, c) for a in range(cb.dim) for b in range(cb.dim) for c in range(cb.dim)])


def test_to_json_shape():
    d = build_chevalley("A1").to_json()
    assert d["dim"] == 3 and d["basis"] == ["h1", "e[1]", "f[1]"]
