"""Greedy two-qubit Clifford search that drives a group tableau down to
total weight <= 2, plus emission of the conjugation-structured subcircuit.

Each epoch pops weight-1 rows, then scores every generator kind on every
column pair (both orientations for the asymmetric kinds) with the tableau
cost function and commits the argmin. A forced reduction move guarantees
termination when the greedy search stagnates.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .bsf import (
    BSFTableau,
    CLIFFORD2Q_KINDS,
    Clifford2QGate,
    LocalRow,
    SYMMETRIC_KINDS,
    apply_clifford2q,
    build_tableau,
    cost_bsf,
    pop_local_rows,
    sum_row_weights,
    total_weight,
)
from .circuit import Circuit, Gate, gen, rot2, rx, ry, rz
from .ir import IRGroup

_ROT_1Q = {"X": rx, "Y": ry, "Z": rz}


@dataclass(frozen=True)
class SimplifyConfig:
    cost_stagnation: int = 3
    weight_stagnation: int = 6
    max_epochs: int | None = None  # defaults to 4 * sum of initial row weights


@dataclass
class Epoch:
    cliff: Clifford2QGate
    locals_: list[LocalRow]  # popped before this epoch's cliff was applied


@dataclass
class SimplifiedGroup:
    group: IRGroup
    epochs: list[Epoch]
    final: BSFTableau  # total weight <= 2
    trailing_locals: list[LocalRow]

    @property
    def reported_positions(self) -> list[int]:
        """Indices into group.terms, in the time order the emitted circuit
        realizes: final rows, trailing locals, then epoch locals last-first."""
        order = list(self.final.prov)
        order.extend(loc.prov for loc in self.trailing_locals)
        for ep in reversed(self.epochs):
            order.extend(loc.prov for loc in ep.locals_)
        return order

    @property
    def reported_order(self) -> list[int]:
        return [self.group.terms[i].origin_id for i in self.reported_positions]

    def reported_terms(self):
        return [self.group.terms[i] for i in self.reported_positions]

    def global_circuit(self, n_qubits: int) -> Circuit:
        return remap_circuit(emit_group_circuit(self), self.final.qubit_map, n_qubits)


def _candidates(n_local: int):
    for kind in CLIFFORD2Q_KINDS:
        for a in range(n_local):
            for b in range(a + 1, n_local):
                yield Clifford2QGate(kind, a, b)
                if kind not in SYMMETRIC_KINDS:
                    yield Clifford2QGate(kind, b, a)


def forced_reduction_move(t: BSFTableau) -> Clifford2QGate:
    """Generator guaranteed to reduce a maximum-weight row's weight by one.

    Picks sigma1 equal to the row's letter on one support qubit and sigma0
    anticommuting with the letter on the other; among all conforming
    candidates the one minimizing (resulting total row weight, cost, lexical
    order) is returned.
    """
    if total_weight(t) <= 2:
        raise ValueError("forced move called on an already simplified tableau")
    weights = [t.row_weight(i) for i in range(t.n_rows)]
    row = max(range(t.n_rows), key=lambda i: weights[i])
    support = [q for q in range(t.n_local) if ((t.xs[row] | t.zs[row]) >> q) & 1]
    best = None
    for b in support:
        s1 = t.row_letter(row, b)
        for a in support:
            if a == b:
                continue
            la = t.row_letter(row, a)
            for ki, kind in enumerate(CLIFFORD2Q_KINDS):
                if kind[1] != s1 or kind[0] == la:
                    continue  # sigma0 must anticommute with the letter on a
                cand = Clifford2QGate(kind, a, b)
                after = apply_clifford2q(t, cand)
                if after.row_weight(row) >= weights[row]:
                    continue
                key = (sum_row_weights(after), cost_bsf(after), ki, a, b)
                if best is None or key < best[0]:
                    best = (key, cand)
    if best is None:  # cannot happen: an anticommuting sigma0 always exists
        raise AssertionError("no weight-reducing generator found")
    return best[1]


def simplify_group(t: BSFTableau, cfg: SimplifyConfig = SimplifyConfig(),
                   group: IRGroup | None = None) -> SimplifiedGroup:
    """Run the greedy epoch loop until total weight <= 2."""
    initial_weight = sum_row_weights(t)
    max_epochs = cfg.max_epochs if cfg.max_epochs is not None else 4 * max(initial_weight, 1)
    epochs: list[Epoch] = []
    cost_stall = 0
    weight_stall = 0
    while True:
        popped, t = pop_local_rows(t)
        if total_weight(t) <= 2:
            trailing = popped
            break
        if len(epochs) >= max_epochs:
            raise RuntimeError(
                f"simplification did not converge within {max_epochs} epochs"
            )
        cost_before = cost_bsf(t)
        weight_before = sum_row_weights(t)
        forced = cost_stall >= cfg.cost_stagnation or weight_stall >= cfg.weight_stagnation
        if forced:
            cliff = forced_reduction_move(t)
            t_next = apply_clifford2q(t, cliff)
        else:
            best = None
            for cand in _candidates(t.n_local):
                after = apply_clifford2q(t, cand)
                key = (
                    cost_bsf(after),
                    CLIFFORD2Q_KINDS.index(cand.kind),
                    cand.a,
                    cand.b,
                )
                if best is None or key < best[0]:
                    best = (key, cand, after)
            cliff, t_next = best[1], best[2]
        cost_stall = 0 if cost_bsf(t_next) < cost_before else cost_stall + 1
        weight_stall = 0 if sum_row_weights(t_next) < weight_before else weight_stall + 1
        if forced:
            cost_stall = weight_stall = 0
        epochs.append(Epoch(cliff, popped))
        t = t_next
    return SimplifiedGroup(group, epochs, t, trailing)


def _local_rotation(loc: LocalRow) -> Gate:
    theta = 2 * loc.angle * (-1 if loc.sign else 1)
    return _ROT_1Q[loc.letter](loc.qubit, theta)


def emit_group_circuit(sg: SimplifiedGroup) -> Circuit:
    """Render the simplified group as a local circuit.

    Time order: C_1 .. C_K, the <=2-column rotations (final rows then trailing
    locals), then C_K, L_K, .., C_1, L_1 where L_i are the locals popped
    before epoch i. Row sign bits are folded into the emitted angles, making
    the circuit an exact operator identity for the product of the original
    exponentials in reported order.
    """
    n_local = sg.final.n_local
    gates: list[Gate] = []
    for ep in sg.epochs:
        gates.append(gen(ep.cliff.kind, ep.cliff.a, ep.cliff.b))
    final = sg.final
    for i in range(final.n_rows):
        support = [q for q in range(n_local) if ((final.xs[i] | final.zs[i]) >> q) & 1]
        theta = 2 * final.angles[i] * (-1 if final.signs[i] else 1)
        if len(support) == 1:
            q = support[0]
            gates.append(_ROT_1Q[final.row_letter(i, q)](q, theta))
        else:
            a, b = support
            axes = final.row_letter(i, a) + final.row_letter(i, b)
            gates.append(rot2(axes, a, b, theta))
    for loc in sg.trailing_locals:
        gates.append(_local_rotation(loc))
    for ep in reversed(sg.epochs):
        gates.append(gen(ep.cliff.kind, ep.cliff.a, ep.cliff.b))
        gates.extend(_local_rotation(loc) for loc in ep.locals_)
    return Circuit(max(n_local, 1), gates)


def build_and_simplify(group: IRGroup, cfg: SimplifyConfig = SimplifyConfig()) -> SimplifiedGroup:
    return simplify_group(build_tableau(group), cfg, group=group)


def remap_circuit(c: Circuit, qubit_map: tuple[int, ...], n_qubits: int) -> Circuit:
    """Map a group-local circuit onto global program qubits."""
    gates = [
        Gate(g.name, tuple(qubit_map[q] for q in g.qubits), angle=g.angle,
             kind=g.kind, payload=g.payload)
        for g in c.gates
    ]
    return Circuit(n_qubits, gates)
