"""Exact computations for the integrable system on the minimal nilpotent orbit."""

from .chevalley import ChevalleyBasis, build_chevalley
from .hamiltonian import hamiltonian_poly, hamiltonian_set, m_number, m_numbers
from .heisenberg import chart_to_orbit, heisenberg_hamiltonian, heisenberg_table, kostant_roots
from .polyring import Poly, kk_bracket, parse_poly
from .repbuild import RepTooLargeError, build_irrep, weyl_dimension
from .rootsys import InvalidTypeError, RootSystem, SimpleType, build_root_system

__version__ = "0.1.0"

__all__ = [
    "ChevalleyBasis",
    "InvalidTypeError",
    "Poly",
    "RepTooLargeError",
    "RootSystem",
    "SimpleType",
    "build_chevalley",
    "build_irrep",
    "build_root_system",
    "chart_to_orbit",
    "hamiltonian_poly",
    "hamiltonian_set",
    "heisenberg_hamiltonian",
    "heisenberg_table",
    "kk_bracket",
    "kostant_roots",
    "m_number",
    "m_numbers",
    "parse_poly",
    "weyl_dimension",
]
