"""Optimizing compiler for Hamiltonian-simulation programs.

Pauli exponential terms are grouped by support, each group is driven to a
low-weight tableau by two-qubit Clifford conjugations, the resulting
subcircuits are assembled with a gate-cancelling scheduler, lowered to a
CNOT or SU(4) ISA, and optionally routed onto a coupling graph.
"""
from .circuit import Circuit, Gate, from_text, to_text
from .ir import HamiltonianProgram, PauliTerm, TrotterConfig, parse_program, trotterize
from .pipeline import CompileOptions, CompileResult, MetricsReport, compile_program

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "CompileOptions",
    "CompileResult",
    "Gate",
    "HamiltonianProgram",
    "MetricsReport",
    "PauliTerm",
    "TrotterConfig",
    "compile_program",
    "from_text",
    "parse_program",
    "to_text",
    "trotterize",
    "__version__",
]
