import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minorbit import RepTooLargeError, build_chevalley, build_irrep, build_root_system, weyl_dimension
from minorbit import linalg
from minorbit.repbuild import act, pair_highest


# familiar dimensions, independent of the Weyl formula implementation
KNOWN = [
    ("A2", (1, 1), 8),
    ("A3", (0, 1, 0), 6),
    ("B2", (0, 1), 4),
    ("B3", (0, 0, 1), 8),
    ("C3", (0, 1, 0), 14),
    ("D4", (0, 1, 0, 0), 28),
    ("G2", (1, 0), 7),
    ("G2", (0, 1), 14),
    ("F4", (0, 0, 0, 1), 26),
    ("E6", (1, 0, 0, 0, 0, 0), 27),
    ("E8", (0, 0, 0, 0, 0, 0, 0, 1), 248),
]


@pytest.mark.parametrize("name,lam,dim", KNOWN)
def test_weyl_dimension(name, lam, dim):
    assert weyl_dimension(build_root_system(name), lam) == dim


@pytest.mark.parametrize("name,lam,dim", [k for k in KNOWN if k[2] <= 248])
def test_construction_has_weyl_dimension(name, lam, dim):
    rep = build_irrep(build_root_system(name), lam)
    assert rep.dim == dim and rep.complete


CASES = [("A2", (1, 0)), ("A2", (1, 1)), ("B2", (0, 1)), ("B2", (1, 0)), ("G2", (1, 0)), ("C3", (0, 1, 0)), ("B3", (0, 0, 1))]


@settings(max_examples=60)
@given(st.sampled_from(CASES), st.data())
def test_representation_respects_brackets(case, data):
    name, lam = case
    rs = build_root_system(name)
    cb = build_chevalley(rs)
    rep = build_irrep(rs, lam)
    a = data.draw(st.integers(0, cb.dim - 1))
    b = data.draw(st.integers(0, cb.dim - 1))
    ma, mb = rep.dense(a, cb), rep.dense(b, cb)
    lhs = linalg.zeros(rep.dim)
    for c, v in cb.bracket({a: 1}, {b: 1}).items():
        mc = rep.dense(c, cb)
        lhs = [[x + v * y for x, y in zip(r1, r2)] for r1, r2 in zip(lhs, mc)]
    ab, ba = linalg.matmul(ma, mb), linalg.matmul(mb, ma)
    assert lhs == [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


def test_highest_weight_vector():
    rs = build_root_system("C3")
    cb = build_chevalley(rs)
    rep = build_irrep(rs, (0, 1, 0))
    v = {rep.hw_index: 1}
    for r in rs.positive_roots:
        assert not act(rep, {cb.e(r): 1}, v, cb)
    for i in range(rs.rank):
        assert act(rep, {cb.h(i): 1}, v, cb) == ({rep.hw_index: rep.highest_weight[i]} if rep.highest_weight[i] else {})
    assert pair_highest(rep, v) == 1


def test_dim_cap():
    rs = build_root_system("E8")
    with pytest.raises(RepTooLargeError) as exc:
        build_irrep(rs, rs.fundamental_weight(4), dim_cap=20000)
    assert exc.value.weyl_dim > 20000


def test_truncated_module_is_flagged():
    rs = build_root_system("A3")
    rep = build_irrep(rs, (0, 1, 0), truncate=(1, 1, 1))
    assert not rep.complete and rep.dim <= 6
