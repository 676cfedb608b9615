import json

import pytest

from minorbit import build_chevalley, build_root_system
from minorbit.verify import (
    LABEL_TYPES,
    identity_report,
    jacobian_rank,
    orbit_samples,
    published_labels,
    run_claim,
    trace_combination,
    verify_commutativity,
    verify_cross_basis,
    verify_independence,
    verify_tables,
    verify_vanishing,
)
from minorbit.hamiltonian import MatrixRealization


def test_samples_are_deterministic():
    rs = build_root_system("B2")
    cb = build_chevalley(rs)
    a = orbit_samples(rs, cb, 12, 3)
    b = orbit_samples(rs, cb, 12, 3)
    assert a == b
    assert a != orbit_samples(rs, cb, 12, 4)
    assert a[0].coeffs == {cb.e(rs.highest_root): 1}


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_small_claims_pass(name):
    for rep in (
        verify_commutativity(name, samples=15, seed=1),
        verify_independence(name, seed=1),
        verify_vanishing(name, samples=15, seed=1),
        verify_cross_basis(name, samples=5, seed=1),
    ):
        assert rep.passed, rep.failures
        assert rep.checks > 0


def test_report_json_is_reproducible():
    a = verify_commutativity("B2", samples=10, seed=5).to_json()
    b = verify_commutativity("B2", samples=10, seed=5).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert "wall_time" not in a and a["status"] == "pass"


def test_jacobian_rank_detects_dependence():
    from minorbit.hamiltonian import sample_orbit_point
    from minorbit import hamiltonian_poly

    rs = build_root_system("A2")
    cb = build_chevalley(rs)
    p = sample_orbit_point(rs, cb, 0, mode="generic")
    f = hamiltonian_poly(rs, cb, 1, 1)
    g = hamiltonian_poly(rs, cb, 2, 1)
    assert jacobian_rank([f, g], p, cb.dim) == 2
    assert jacobian_rank([f, f.scale(3), g], p, cb.dim) == 2


def test_trace_combination_d_type_spin_nodes():
    mr = MatrixRealization("D4")
    assert trace_combination(mr, 3, 1) == {(3, 1): 1, (4, 1): 1}
    assert trace_combination(mr, 2, 2) == {(2, 2): 0.5}


def test_tables_without_printed_cells():
    rep = verify_tables("D5")
    assert rep.passed and rep.details["cells"].startswith("no printed")


def test_tables_so9_warnings():
    rep = verify_tables("B4")
    assert rep.passed and len(rep.warnings) == 2


def test_published_labels():
    assert published_labels("G2") == (1, 2)
    assert published_labels("D6") == (1, 2, 2, 2, 1, 1)
    assert published_labels("B5") == (1, 2, 2, 2, 1)
    assert len(LABEL_TYPES) == 32


def test_identity_report():
    rep = identity_report("C3")
    assert rep.passed and rep.checks == 6


def test_run_claim_dispatch():
    assert run_claim("mnumbers", "G2").passed
    with pytest.raises(ValueError):
        run_claim("nonsense", "A2")
