import pytest

from pauliforge import verify
from pauliforge.bench import qaoa_program, random_program
from pauliforge.circuit import count_2q, peephole
from pauliforge.ir import HamiltonianProgram, PauliTerm, TrotterConfig
from pauliforge.pipeline import CompileOptions, compile_program, scan_metrics
from pauliforge.route import CouplingGraph
from pauliforge.synthesize import naive_synthesis


def _program():
    terms = [PauliTerm("ZYY", 0.3, 0), PauliTerm("ZZY", 0.5, 1),
             PauliTerm("XYY", -0.2, 2), PauliTerm("XZY", 0.7, 3),
             PauliTerm("IZZ", 0.1, 4)]
    return HamiltonianProgram(3, terms)


class TestCompile:
    def test_equivalence_cnot(self):
        res = compile_program(_program(), CompileOptions())
        u = verify.unitary_of(res.circuit)
        v = verify.pauli_exp_product(res.realized_terms)
        assert verify.infidelity(u, v) < 1e-9

    def test_equivalence_su4(self):
        res = compile_program(_program(), CompileOptions(isa="su4"))
        u = verify.unitary_of(res.circuit)
        v = verify.pauli_exp_product(res.realized_terms)
        assert verify.infidelity(u, v) < 1e-9

    def test_realized_terms_multiset(self):
        prog = _program()
        res = compile_program(prog, CompileOptions())
        assert sorted(t.origin_id for t in res.realized_terms) == [0, 1, 2, 3, 4]

    def test_beats_naive(self):
        prog = _program()
        res = compile_program(prog, CompileOptions())
        naive = peephole(naive_synthesis(prog.terms, 3))
        assert res.metrics.n_2q <= count_2q(naive)

    def test_baseline_guard_never_worse(self):
        for seed in range(5):
            prog = random_program(6, 8, 2, 4, seed)
            res = compile_program(prog, CompileOptions())
            naive = peephole(naive_synthesis(prog.terms, 6))
            assert res.metrics.n_2q <= count_2q(naive)

    def test_baseline_mode(self):
        prog = _program()
        res = compile_program(prog, CompileOptions(baseline_naive=True))
        assert res.used_baseline
        u = verify.unitary_of(res.circuit)
        assert verify.infidelity(u, verify.pauli_exp_product(prog.terms)) < 1e-9

    def test_trotter_stage(self):
        prog = _program()
        res = compile_program(prog, CompileOptions(trotter=TrotterConfig(2, 1, 1.0)))
        assert len(res.realized_terms) == 2 * len(prog.terms)

    def test_routing_stage(self):
        g = CouplingGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        res = compile_program(_program(), CompileOptions(coupling=g))
        assert res.metrics.routed
        for gate in res.circuit.gates:
            if gate.is_2q or gate.name == "swap":
                assert g.adjacent(*gate.qubits)

    def test_decompose_swaps(self):
        g = CouplingGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        res = compile_program(_program(), CompileOptions(coupling=g, decompose_swaps=True))
        assert all(gate.name != "swap" for gate in res.circuit.gates)

    def test_metrics_text(self):
        res = compile_program(_program(), CompileOptions())
        text = res.metrics.text()
        assert "n_2q=" in text and "wall_time_ms=" in text

    def test_deterministic(self):
        from pauliforge.circuit import to_text

        a = compile_program(_program(), CompileOptions())
        b = compile_program(_program(), CompileOptions())
        assert to_text(a.circuit) == to_text(b.circuit)


class TestScanMetrics:
    def test_counts(self):
        res = compile_program(_program(), CompileOptions(isa="su4"))
        m = scan_metrics(res.circuit, isa="su4")
        assert m.n_su4 == res.metrics.n_su4
        assert m.n_2q == res.metrics.n_2q


class TestBenchGenerators:
    def test_qaoa_reg3(self):
        prog = qaoa_program("reg3", 16, 0)
        assert prog.n_qubits == 16
        assert len(prog.terms) == 24  # 3 * 16 / 2 edges
        assert all(t.weight == 2 and set(t.letters) <= {"I", "Z"} for t in prog.terms)

    def test_qaoa_determinism(self):
        a = qaoa_program("rand4", 12, 3)
        b = qaoa_program("rand4", 12, 3)
        assert [t.letters for t in a.terms] == [t.letters for t in b.terms]

    def test_qaoa_bad_kind(self):
        with pytest.raises(ValueError):
            qaoa_program("star", 8, 0)

    def test_qaoa_infeasible(self):
        with pytest.raises(ValueError):
            qaoa_program("reg3", 7, 0)  # odd degree sum

    def test_random_program_shape(self):
        prog = random_program(8, 16, 3, 6, 0)
        assert len(prog.terms) == 16
        assert all(3 <= t.weight <= 6 for t in prog.terms)

    def test_random_program_validation(self):
        with pytest.raises(ValueError):
            random_program(4, 8, 2, 6, 0)
        with pytest.raises(ValueError):
            random_program(4, 8, 0, 2, 0)
