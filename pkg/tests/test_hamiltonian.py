import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from minorbit import build_chevalley, build_root_system, hamiltonian_poly, hamiltonian_set, m_numbers
from minorbit import linalg
from minorbit.hamiltonian import (
    G2Textbook,
    MatrixRealization,
    classical_trace_hamiltonian,
    exp_det_coefficient,
    lattice_divergence,
    linear_form,
    quadratic_formula,
    replay_word,
    sample_orbit_point,
    trace_poly,
)


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4", "G2", "F4", "E6"])
def test_m_number_methods_agree(name):
    rs = build_root_system(name)
    sl2 = m_numbers(rs, "sl2")
    assert m_numbers(rs, "dominance") == sl2
    assert m_numbers(rs, "rep") == sl2
    assert m_numbers(rs, "bound") == sl2
    assert lattice_divergence(rs) == []


def test_m_number_rejects_bad_input():
    with pytest.raises(ValueError):
        m_numbers("A2", "nonsense")
    from minorbit import m_number

    with pytest.raises(ValueError):
        m_number("A2", 3)


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "C2", "G2", "A3"])
def test_low_order_closed_forms(name):
    rs = build_root_system(name)
    cb = build_chevalley(rs)
    for k in range(1, rs.rank + 1):
        assert hamiltonian_poly(rs, cb, k, 0) == 1
        assert hamiltonian_poly(rs, cb, k, 1) == linear_form(rs, cb, k)
        assert hamiltonian_poly(rs, cb, k, 2) == quadratic_formula(rs, cb, k)


def test_hamiltonian_set_ranges():
    hs = hamiltonian_set("G2")
    assert hs.m == (1, 2)
    assert [key for key, _ in hs.items()] == [(1, 1), (2, 1), (2, 2)]


def test_hamiltonians_are_homogeneous():
    rs = build_root_system("B3")
    for k in (1, 2, 3):
        for n in (1, 2, 3):
            f = hamiltonian_poly(rs, None, k, n)
            assert f.homogeneous_part(n) == f


@settings(max_examples=30)
@given(st.sampled_from(["A2", "A3", "B2", "C3"]), st.integers(0, 10**6))
def test_orbit_points_lie_on_the_minimal_orbit(name, seed):
    """In the defining matrix realization A is rank one with A^2 = 0 (A, C) or rank two (B)."""
    rs = build_root_system(name)
    cb = build_chevalley(rs)
    mr = MatrixRealization(rs, cb)
    for mode in ("simple", "generic"):
        p = sample_orbit_point(rs, cb, seed, word_length=4, mode=mode)
        a = mr.matrix(p)
        assert linalg.is_zero(linalg.matmul(a, a)) or rs.type.family == "B"
        assert linalg.rank(a) == (2 if rs.type.family == "B" else 1)
        assert replay_word(cb, rs, p.provenance) == p


@settings(max_examples=25)
@given(st.integers(1, 4), st.data())
def test_exp_det_coefficient_against_sympy(n, data):
    # strictly upper triangular, hence nilpotent
    ent = st.integers(-3, 3)
    a = [[data.draw(ent) if j > i else 0 for j in range(n)] for i in range(n)]
    k = data.draw(st.integers(0, n))
    m = data.draw(st.integers(0, 2 * n))
    t = sympy.Symbol("t")
    e = (sympy.Matrix(a) * t).exp()
    want = sympy.Poly(sympy.expand(e[:k, :k].det()), t).coeff_monomial(t**m) if k else int(m == 0)
    got = exp_det_coefficient(a, k, m)
    assert sympy.Rational(int(got.numerator), int(got.denominator)) == want


def test_exp_det_coefficient_rejects_non_nilpotent():
    with pytest.raises(ValueError):
        exp_det_coefficient([[1]], 1, 1)


def test_trace_hamiltonians_match_polynomials():
    a = [[mpq(i * 3 + j - 4) for j in range(3)] for i in range(3)]
    flat = [a[i][j] for i in range(3) for j in range(3)]
    assert trace_poly("A", 2, 1, 3).evaluate(flat) == linalg.trace(linalg.block(a, 2))
    b = [[mpq((i + 1) * (j + 2) - i * i) for j in range(7)] for i in range(7)]
    flat = [b[i][j] for i in range(7) for j in range(7)]
    assert trace_poly("B", 2, 2, 7).evaluate(flat) == classical_trace_hamiltonian("B", 2, 2, b, 3)
    with pytest.raises(ValueError):
        classical_trace_hamiltonian("A", 1, 2, a)


@pytest.mark.parametrize("name", ["A3", "B3", "C2", "D4"])
def test_matrix_basis_agrees_on_the_realization(name):
    cb = build_chevalley(name)
    mr = MatrixRealization(cb.rs, cb)
    forms = mr.coordinate_forms()
    x = {a: mpq((3 * a) % 7 - 3, 1 + a % 2) for a in range(cb.dim)}
    a = mr.matrix(x)
    flat = [a[i][j] for i in range(mr.size) for j in range(mr.size)]
    assert all(sum(c * flat[e] for e, c in forms[b].items()) == x[b] for b in range(cb.dim))
    for k, n in [(1, 1), (2, 2), (1, 3)]:
        f = hamiltonian_poly(cb.rs, cb, k, n)
        assert mr.from_chevalley(f).evaluate(flat) == f.evaluate(x)
    # first-order Hamiltonians are the traces of upper-left blocks
    f = mr.from_chevalley(hamiltonian_poly(cb.rs, cb, 1, 1))
    assert f.evaluate(flat) == trace_poly(cb.rs.type.family, 1, 1, mr.size).evaluate(flat)


def test_g2_textbook_quadratic():
    cb = build_chevalley("G2")
    g = G2Textbook(cb)
    f = g.from_chevalley(hamiltonian_poly("G2", cb, 2, 2))
    assert f.render(g.names) == "h2^2 + x2*y2 + 3*x3*y3 + 3*x4*y4 + x5*y5 + 2*x6*y6"
    assert g.undetermined == [1]


def test_g2_textbook_bracket_with_x6():
    g = G2Textbook()
    br = g.bracket_with_general(7)  # X6
    shown = {g.basis_names[t]: p.render(g.names) for t, p in br.items()}
    assert shown == {"H1": "-y6", "H2": "-2*y6", "X2": "y5", "X3": "y4", "X4": "-y3", "X5": "-y2", "X6": "h2"}
