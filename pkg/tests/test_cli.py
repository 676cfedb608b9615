import json
import subprocess
import sys

import pytest

from minorbit.cli import dynkin_ascii, main
from minorbit import build_root_system


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mnumbers_text_and_json(capsys):
    code, out, _ = run(capsys, "mnumbers", "F4")
    assert code == 0 and out.strip() == "2 3 2 1"
    code, out, _ = run(capsys, "mnumbers", "E8", "--json")
    d = json.loads(out)
    assert code == 0 and d["m"] == [2, 3, 4, 6, 5, 4, 3, 2] and d["sum"] == 29


def test_mnumbers_methods(capsys):
    for meth in ("sl2", "dominance", "rep", "bound"):
        code, out, _ = run(capsys, "mnumbers", "G2", "--method", meth)
        assert code == 0 and out.strip() == "1 2"


def test_diagram(capsys):
    code, out, _ = run(capsys, "mnumbers", "E6", "--diagram")
    assert code == 0 and "attached to node 4" in out
    assert "=>" in dynkin_ascii(build_root_system("B3"), (1, 2, 1))


@pytest.mark.parametrize(
    "argv",
    [
        ("mnumbers", "Q9"),
        ("roots", "E9"),
        ("hamiltonian", "A2"),
        ("hamiltonian", "E8", "--node", "4", "--order", "1"),
        ("hamiltonian", "B2", "--node", "1", "--order", "2", "--basis", "textbook"),
        ("hamiltonian", "G2", "--node", "1", "--order", "1", "--basis", "matrix"),
        ("verify", "tables", "E8"),
        ("mnumbers", "A2", "--method", "bogus"),
        ("frobnicate", "A2"),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_too_large_message(capsys):
    code, _, err = run(capsys, "hamiltonian", "E8", "--node", "4", "--order", "1")
    assert code == 2 and "Weyl dimension" in err


def test_hamiltonian_textbook(capsys):
    code, out, _ = run(capsys, "hamiltonian", "G2", "--node", "2", "--order", "2", "--basis", "textbook")
    assert code == 0 and out.strip() == "h2^2 + x2*y2 + 3*x3*y3 + 3*x4*y4 + x5*y5 + 2*x6*y6"


def test_hamiltonian_matrix_basis(capsys):
    code, out, _ = run(capsys, "hamiltonian", "A1", "--node", "1", "--order", "2", "--basis", "matrix", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["variables"] == ["a1_1", "a1_2", "a2_1", "a2_2"]
    assert payload["text"] == "1/4*a1_1^2 - 1/2*a1_1*a2_2 + a1_2*a2_1 + 1/4*a2_2^2"


def test_roots_chevalley_heisenberg(capsys):
    assert run(capsys, "roots", "B2")[0] == 0
    code, out, _ = run(capsys, "chevalley", "A2", "--json")
    assert code == 0 and json.loads(out)["dim"] == 8
    code, out, _ = run(capsys, "heisenberg-tables", "B3", "--json")
    assert code == 0 and json.loads(out)["type"] == "B3"


def test_quantize_check(capsys):
    code, out, _ = run(capsys, "quantize", "B2", "--check")
    assert code == 0 and "[pass]" in out
    code, out, _ = run(capsys, "quantize", "A2", "--kappa", "normalized", "--json")
    assert code == 0 and json.loads(out)["kappa"] == "normalized"


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "commute", "G2", "--samples", "20", "--seed", "7")
    assert code == 0 and out.startswith("[pass] commute G2")
    code, out, _ = run(capsys, "verify", "tables", "B4", "--json")
    d = json.loads(out)
    assert code == 0 and len(d["warnings"]) == 2


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "minorbit.cli", "mnumbers", "G2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1 2"
