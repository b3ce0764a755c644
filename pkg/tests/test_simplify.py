import random

import pytest

from pauliforge import verify
from pauliforge.bsf import (
    BSFTableau,
    Clifford2QGate,
    apply_clifford2q,
    build_tableau,
    sum_row_weights,
    total_weight,
)
from pauliforge.ir import IRGroup, PauliTerm
from pauliforge.simplify import (
    SimplifyConfig,
    build_and_simplify,
    emit_group_circuit,
    forced_reduction_move,
    simplify_group,
)
from pauliforge.synthesize import expand_to_cnot

from conftest import random_group


def _fuzz_tableau(seed):
    rng = random.Random(seed)
    nl = rng.randint(2, 6)
    t = BSFTableau(nl, qubit_map=tuple(range(nl)))
    for i in range(rng.randint(1, 8)):
        while True:
            x, z = rng.getrandbits(nl), rng.getrandbits(nl)
            if x | z:
                break
        t.xs.append(x)
        t.zs.append(z)
        t.signs.append(rng.randint(0, 1))
        t.angles.append(rng.uniform(-1, 1))
        t.prov.append(i)
    return t


def _local_equivalence(sg):
    """Infidelity between the emitted local circuit and the rotation product."""
    circuit = expand_to_cnot(emit_group_circuit(sg))
    u = verify.unitary_of(circuit)
    support = sg.final.qubit_map
    local_terms = [
        PauliTerm(t.restricted(support), t.coefficient) for t in sg.reported_terms()
    ]
    v = verify.pauli_exp_product(local_terms)
    return verify.infidelity(u, v)


class TestSimplifyGroup:
    def test_motivating_one_epoch(self, motivating_group):
        sg = build_and_simplify(motivating_group)
        assert len(sg.epochs) == 1
        assert total_weight(sg.final) == 2
        assert sg.trailing_locals == []

    def test_weight2_term_needs_no_epochs(self):
        group = IRGroup((0, 1), [PauliTerm("XY", 0.5, 0)])
        sg = build_and_simplify(group)
        assert sg.epochs == []
        assert sg.final.n_rows == 1

    def test_all_local_terms(self):
        group = IRGroup((0, 1), [PauliTerm("XI", 0.1, 0), PauliTerm("IZ", 0.2, 1)])
        sg = build_and_simplify(group)
        assert sg.epochs == []
        assert sg.final.n_rows == 0
        assert [l.prov for l in sg.trailing_locals] == [0, 1]

    def test_reported_order_covers_all_terms(self, motivating_group):
        sg = build_and_simplify(motivating_group)
        assert sorted(sg.reported_positions) == [0, 1, 2, 3]
        assert sorted(sg.reported_order) == [0, 1, 2, 3]

    def test_deterministic(self, motivating_group):
        a = build_and_simplify(motivating_group)
        b = build_and_simplify(motivating_group)
        assert [(e.cliff.kind, e.cliff.a, e.cliff.b) for e in a.epochs] == [
            (e.cliff.kind, e.cliff.a, e.cliff.b) for e in b.epochs
        ]

    @pytest.mark.parametrize("seed", range(40))
    def test_group_equivalence(self, seed):
        sg = build_and_simplify(random_group(seed))
        assert _local_equivalence(sg) < 1e-9

    def test_equivalence_with_signs(self):
        # a case where conjugation flips a sign bit must still verify
        group = IRGroup((0, 1, 2), [PauliTerm("YXZ", 0.4, 0), PauliTerm("ZZX", -0.8, 1),
                                    PauliTerm("XYY", 1.2, 2)])
        sg = build_and_simplify(group)
        assert _local_equivalence(sg) < 1e-9


class TestForcedMove:
    def test_rejects_simplified_tableau(self):
        t = build_tableau(IRGroup((0, 1), [PauliTerm("XY", 0.5, 0)]))
        with pytest.raises(ValueError):
            forced_reduction_move(t)

    @pytest.mark.parametrize("seed", range(30))
    def test_reduces_max_row_weight(self, seed):
        t = _fuzz_tableau(seed)
        if total_weight(t) <= 2:
            pytest.skip("fuzz case already simplified")
        weights = [t.row_weight(i) for i in range(t.n_rows)]
        row = max(range(t.n_rows), key=lambda i: weights[i])
        after = apply_clifford2q(t, forced_reduction_move(t))
        assert after.row_weight(row) == weights[row] - 1


class TestTermination:
    @pytest.mark.parametrize("seed", range(100))
    def test_halts_within_bound(self, seed):
        t = _fuzz_tableau(seed)
        bound = 4 * max(1, sum_row_weights(t))
        sg = simplify_group(t, SimplifyConfig())
        assert len(sg.epochs) <= bound
        assert total_weight(sg.final) <= 2

    def test_epoch_cap_enforced(self):
        group = IRGroup((0, 1, 2), [PauliTerm("XYZ", 0.1, 0), PauliTerm("ZXY", 0.2, 1)])
        t = build_tableau(group)
        with pytest.raises(RuntimeError, match="did not converge"):
            simplify_group(t, SimplifyConfig(max_epochs=0))


class TestEmission:
    def test_zero_epoch_single_rotation(self):
        group = IRGroup((0, 1), [PauliTerm("ZZ", 0.5, 0)])
        sg = build_and_simplify(group)
        c = emit_group_circuit(sg)
        assert len(c.gates) == 1
        g = c.gates[0]
        assert g.name == "rot2" and g.kind == "ZZ" and g.angle == pytest.approx(1.0)

    def test_conjugation_sandwich_structure(self, motivating_group):
        sg = build_and_simplify(motivating_group)
        names = [g.name for g in emit_group_circuit(sg).gates]
        assert names[0] == "gen" and names[-1] == "gen"

    def test_global_circuit_remaps_support(self):
        group = IRGroup((1, 3), [PauliTerm("IXIZ", 0.5, 0)])
        sg = build_and_simplify(group)
        c = sg.global_circuit(4)
        assert c.n_qubits == 4
        assert all(set(g.qubits) <= {1, 3} for g in c.gates)
