"""Lowering passes: Pauli rotations to CNOT trees, abstract generators to
CNOT plus 1Q conjugations, whole-program baseline synthesis, and SU(4)
block fusion.

Basis-change convention (validated by the dense oracle tests): rotating about
X on a qubit is conjugated by H; rotating about Y by (Sdg, H) before and
(H, S) after, in time order.
"""
from __future__ import annotations

from .circuit import Circuit, Gate, cx, h, peephole, rz, s, sdg
from .ir import PauliTerm

CNOT_ISA = "cnot"
SU4_ISA = "su4"

# time-ordered basis change mapping the axis onto Z, and its inverse
_PRE = {"Z": (), "X": ("h",), "Y": ("sdg", "h")}
_POST = {"Z": (), "X": ("h",), "Y": ("h", "s")}
_1Q = {"h": h, "s": s, "sdg": sdg}


def synth_pauli_rotation(letters: str, theta: float) -> list[Gate]:
    """CNOT-chain synthesis of exp(-i*theta*P) over the string's support.

    Per-qubit basis change onto Z, a left-to-right CNOT chain onto the last
    support qubit, rz(2*theta) there, then the mirrored chain and inverse
    basis change. A weight-w rotation uses exactly 2*(w-1) CNOTs.
    """
    support = [q for q, c in enumerate(letters) if c != "I"]
    if not support:
        raise ValueError("cannot synthesize a weight-0 rotation")
    pre: list[Gate] = []
    post: list[Gate] = []
    for q in support:
        pre.extend(_1Q[name](q) for name in _PRE[letters[q]])
        post.extend(_1Q[name](q) for name in _POST[letters[q]])
    chain = [cx(support[i], support[i + 1]) for i in range(len(support) - 1)]
    return pre + chain + [rz(support[-1], 2 * theta)] + chain[::-1] + post


# 1Q conjugations (time order) putting CNOT's control on the sigma0 axis and
# target on the sigma1 axis: V0 Z V0^dag = sigma0, V1 X V1^dag = sigma1.
_V0 = {"Z": (), "X": ("h",), "Y": ("h", "s")}
_V0_DAG = {"Z": (), "X": ("h",), "Y": ("sdg", "h")}
_V1 = {"X": (), "Z": ("h",), "Y": ("s",)}
_V1_DAG = {"X": (), "Z": ("h",), "Y": ("sdg",)}


def synth_generator(kind: str, a: int, b: int) -> list[Gate]:
    """Lower C(sigma0, sigma1) on (a, b) to exactly one CNOT plus 1Q gates."""
    s0, s1 = kind[0], kind[1]
    pre = [_1Q[n](a) for n in _V0_DAG[s0]] + [_1Q[n](b) for n in _V1_DAG[s1]]
    post = [_1Q[n](a) for n in _V0[s0]] + [_1Q[n](b) for n in _V1[s1]]
    return pre + [cx(a, b)] + post


def naive_synthesis(terms: list[PauliTerm], n_qubits: int) -> Circuit:
    """Baseline: concatenated CNOT-tree synthesis in input term order."""
    gates: list[Gate] = []
    for t in terms:
        gates.extend(synth_pauli_rotation(t.letters, t.coefficient))
    return Circuit(n_qubits, gates)


def expand_to_cnot(c: Circuit) -> Circuit:
    """Expand gen and rot2 gates into the CNOT gate set (no peephole)."""
    gates: list[Gate] = []
    for g in c.gates:
        if g.name == "gen":
            gates.extend(synth_generator(g.kind, *g.qubits))
        elif g.name == "rot2":
            a, b = g.qubits
            letters = {a: g.kind[0], b: g.kind[1]}
            word = "".join(letters.get(q, "I") for q in range(max(a, b) + 1))
            gates.extend(synth_pauli_rotation(word, g.angle / 2))
        else:
            gates.append(g)
    return Circuit(c.n_qubits, gates)


def fuse_su4(c: Circuit) -> Circuit:
    """Greedily fuse maximal runs of 2Q gates on one qubit pair (absorbing 1Q
    gates on those qubits) into su4 blocks; isolated 2Q gates become
    singleton blocks. SWAP gates stay separate so routing stays visible."""

    class _Block:
        __slots__ = ("pair", "gates")

        def __init__(self, pair):
            self.pair = pair
            self.gates: list[Gate] = []

    items: list = []
    open_on: dict[int, object] = {}
    for g in c.gates:
        if g.name == "swap" or (g.is_2q and g.name == "su4"):
            for q in g.qubits:
                open_on[q] = None
            items.append(g)
        elif g.is_2q:
            pair = frozenset(g.qubits)
            blk_a, blk_b = open_on.get(g.qubits[0]), open_on.get(g.qubits[1])
            if isinstance(blk_a, _Block) and blk_a is blk_b and blk_a.pair == pair:
                blk_a.gates.append(g)
            else:
                blk = _Block(pair)
                blk.gates.append(g)
                items.append(blk)
                for q in g.qubits:
                    open_on[q] = blk
        else:
            q = g.qubits[0]
            blk = open_on.get(q)
            if isinstance(blk, _Block):
                blk.gates.append(g)
            else:
                items.append(g)
                open_on[q] = None
    gates: list[Gate] = []
    for it in items:
        if isinstance(it, _Block):
            qubits = tuple(sorted(it.pair))
            gates.append(Gate("su4", qubits, payload=tuple(it.gates)))
        else:
            gates.append(it)
    return Circuit(c.n_qubits, gates)


def lower(c: Circuit, target: str) -> Circuit:
    """Lower a pre-ISA circuit (gen/rot2/1Q) to the requested instruction set."""
    cnot = peephole(expand_to_cnot(c))
    if target == CNOT_ISA:
        return cnot
    if target == SU4_ISA:
        return fuse_su4(cnot)
    raise ValueError(f"unknown ISA target {target!r}")
