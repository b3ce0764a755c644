"""Dense-matrix oracles: circuit unitaries, Pauli-exponential products, exact
Hamiltonian evolution, and the infidelity metric.

Conventions: qubit 0 is the most significant tensor factor; a circuit listed
[G1, G2] has matrix M(G2) @ M(G1) (first gate applied first in time).
"""
from __future__ import annotations

import math

import numpy as np

from .bsf import generator_matrix
from .circuit import Circuit, Gate
from .ir import HamiltonianProgram, PauliTerm

MAX_DENSE_QUBITS = 12

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_S = np.diag([1, 1j]).astype(complex)
_CX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
_SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)
PAULIS = {"I": _I, "X": _X, "Y": _Y, "Z": _Z}


def _rot(p: np.ndarray, theta: float) -> np.ndarray:
    dim = p.shape[0]
    return math.cos(theta / 2) * np.eye(dim, dtype=complex) - 1j * math.sin(theta / 2) * p


def gate_matrix(g: Gate) -> np.ndarray:
    """Dense matrix on the gate's own qubits, ordered as g.qubits."""
    if g.name == "h":
        return _H
    if g.name == "s":
        return _S
    if g.name == "sdg":
        return _S.conj().T
    if g.name == "rx":
        return _rot(_X, g.angle)
    if g.name == "ry":
        return _rot(_Y, g.angle)
    if g.name == "rz":
        return _rot(_Z, g.angle)
    if g.name == "cx":
        return _CX
    if g.name == "swap":
        return _SWAP
    if g.name == "gen":
        return generator_matrix(g.kind)
    if g.name == "rot2":
        return _rot(np.kron(PAULIS[g.kind[0]], PAULIS[g.kind[1]]), g.angle)
    if g.name == "su4":
        local = {q: i for i, q in enumerate(g.qubits)}
        u = np.eye(4, dtype=complex)
        for p in g.payload:
            m = gate_matrix(p)
            qs = tuple(local[q] for q in p.qubits)
            u = _embed(m, qs, 2) @ u
        return u
    raise ValueError(f"unknown gate {g.name!r}")


def _embed(m: np.ndarray, qubits: tuple[int, ...], n: int) -> np.ndarray:
    """Lift a k-qubit matrix to n qubits acting on the given qubit indices."""
    u = np.eye(2**n, dtype=complex)
    return _apply(u, m, qubits, n)


def _apply(u: np.ndarray, m: np.ndarray, qubits: tuple[int, ...], n: int) -> np.ndarray:
    """Left-multiply u by m acting on the given qubits."""
    dim = u.shape[0]
    k = len(qubits)
    t = u.reshape((2,) * n + (dim,))
    t = np.moveaxis(t, qubits, range(k))
    shape = t.shape
    t = t.reshape(2**k, -1)
    t = m @ t
    t = t.reshape(shape)
    t = np.moveaxis(t, range(k), qubits)
    return t.reshape(dim, dim)


def unitary_of(c: Circuit) -> np.ndarray:
    """Dense unitary of the circuit (first gate applied first in time)."""
    if c.n_qubits > MAX_DENSE_QUBITS:
        raise ValueError(f"dense unitary capped at {MAX_DENSE_QUBITS} qubits")
    u = np.eye(2**c.n_qubits, dtype=complex)
    for g in c.gates:
        u = _apply(u, gate_matrix(g), g.qubits, c.n_qubits)
    return u


def pauli_matrix(letters: str) -> np.ndarray:
    m = np.array([[1.0 + 0j]])
    for c in letters:
        m = np.kron(m, PAULIS[c])
    return m


def pauli_exp(term: PauliTerm) -> np.ndarray:
    """exp(-i*theta*P) = cos(theta) I - i sin(theta) P."""
    p = pauli_matrix(term.letters)
    dim = p.shape[0]
    return math.cos(term.coefficient) * np.eye(dim, dtype=complex) - 1j * math.sin(
        term.coefficient
    ) * p


def pauli_exp_product(terms: list[PauliTerm]) -> np.ndarray:
    """Product of term exponentials, first term applied first in time."""
    if not terms:
        raise ValueError("empty term list")
    n = terms[0].n_qubits
    if n > MAX_DENSE_QUBITS:
        raise ValueError(f"dense product capped at {MAX_DENSE_QUBITS} qubits")
    u = np.eye(2**n, dtype=complex)
    for t in terms:
        u = pauli_exp(t) @ u
    return u


def exact_evolution(h: HamiltonianProgram, t: float) -> np.ndarray:
    """exp(-i*H*t) via Hermitian eigendecomposition."""
    if h.n_qubits > 10:
        raise ValueError("exact evolution capped at 10 qubits")
    dim = 2**h.n_qubits
    hm = np.zeros((dim, dim), dtype=complex)
    for term in h.terms:
        hm += term.coefficient * pauli_matrix(term.letters)
    vals, vecs = np.linalg.eigh(hm)
    return (vecs * np.exp(-1j * t * vals)) @ vecs.conj().T


def infidelity(u: np.ndarray, v: np.ndarray) -> float:
    """1 - |Tr(U^dag V)| / N; global-phase invariant."""
    if u.shape != v.shape:
        raise ValueError("dimension mismatch")
    n = u.shape[0]
    return 1.0 - abs(np.trace(u.conj().T @ v)) / n
