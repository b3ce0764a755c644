import math
import random

import numpy as np
import pytest

from pauliforge import verify
from pauliforge.circuit import Circuit, Gate, cx, h, rz, s
from pauliforge.ir import HamiltonianProgram, PauliTerm, TrotterConfig, trotterize


class TestGateMatrices:
    def test_hadamard(self):
        u = verify.unitary_of(Circuit(1, [h(0)]))
        expected = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
        assert np.allclose(u, expected)

    def test_time_order_convention(self):
        # [G1, G2] means M(G2) @ M(G1)
        u = verify.unitary_of(Circuit(1, [h(0), s(0)]))
        hm = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
        sm = np.diag([1, 1j]).astype(complex)
        assert np.allclose(u, sm @ hm)

    def test_qubit0_most_significant(self):
        # Z on qubit 0 of 2 = Z (x) I
        u = verify.unitary_of(Circuit(2, [rz(0, 2 * math.pi / 2)]))
        # rz(pi) = diag(e^{-i pi/2}, e^{i pi/2}) = -i Z up to phase
        z_kron_i = np.kron(np.diag([1, -1]), np.eye(2)).astype(complex)
        assert verify.infidelity(u, z_kron_i) < 1e-12

    def test_su4_payload(self):
        payload = (cx(0, 1), rz(1, 0.5), cx(0, 1))
        blocked = Circuit(2, [Gate("su4", (0, 1), payload=payload)])
        flat = Circuit(2, list(payload))
        assert np.allclose(verify.unitary_of(blocked), verify.unitary_of(flat))

    def test_unknown_gate(self):
        with pytest.raises(ValueError, match="unknown gate"):
            verify.gate_matrix(Gate("ccx", (0,)))


class TestPauliOracles:
    def test_pauli_matrix(self):
        assert np.allclose(verify.pauli_matrix("XZ"),
                           np.kron(verify.PAULIS["X"], verify.PAULIS["Z"]))

    def test_pauli_exp_formula(self):
        t = PauliTerm("ZZ", 0.7)
        m = verify.pauli_exp(t)
        expected = math.cos(0.7) * np.eye(4) - 1j * math.sin(0.7) * verify.pauli_matrix("ZZ")
        assert np.allclose(m, expected)

    def test_product_order(self):
        # first term applied first: U = exp2 @ exp1
        t1, t2 = PauliTerm("X", 0.3), PauliTerm("Z", 0.5)
        u = verify.pauli_exp_product([t1, t2])
        assert np.allclose(u, verify.pauli_exp(t2) @ verify.pauli_exp(t1))

    def test_empty_product_rejected(self):
        with pytest.raises(ValueError):
            verify.pauli_exp_product([])


class TestExactEvolution:
    def test_single_term(self):
        prog = HamiltonianProgram(2, [PauliTerm("ZZ", 0.4, 0)])
        u = verify.exact_evolution(prog, 1.0)
        assert verify.infidelity(u, verify.pauli_exp(PauliTerm("ZZ", 0.4))) < 1e-12

    def test_commuting_terms_product_exact(self):
        prog = HamiltonianProgram(3, [PauliTerm("ZZI", 0.4, 0), PauliTerm("IZZ", -0.3, 1)])
        exact = verify.exact_evolution(prog, 1.0)
        product = verify.pauli_exp_product(prog.terms)
        assert verify.infidelity(exact, product) < 1e-12

    def test_trotter_error_shrinks_with_steps(self):
        terms = [PauliTerm("XZ", 0.4, 0), PauliTerm("ZZ", 0.7, 1)]
        prog = HamiltonianProgram(2, terms)
        exact = verify.exact_evolution(prog, 1.0)
        errs = []
        for steps in (1, 4):
            sched = trotterize(prog, TrotterConfig(1, steps, 1.0))
            errs.append(verify.infidelity(exact, verify.pauli_exp_product(sched)))
        assert errs[1] < errs[0]

    def test_qubit_cap(self):
        prog = HamiltonianProgram(11, [PauliTerm("Z" * 11, 0.1, 0)])
        with pytest.raises(ValueError):
            verify.exact_evolution(prog, 1.0)


class TestInfidelity:
    def test_identical(self):
        u = verify.unitary_of(Circuit(2, [cx(0, 1)]))
        assert verify.infidelity(u, u) == pytest.approx(0.0, abs=1e-15)

    def test_global_phase_invariant(self):
        u = verify.unitary_of(Circuit(1, [h(0)]))
        assert verify.infidelity(u, np.exp(1j * 0.8) * u) < 1e-12

    def test_distinct(self):
        u = np.eye(2, dtype=complex)
        x = verify.PAULIS["X"]
        assert verify.infidelity(u, x) == pytest.approx(1.0)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            verify.infidelity(np.eye(2), np.eye(4))

    def test_dense_cap(self):
        with pytest.raises(ValueError):
            verify.unitary_of(Circuit(13, []))
