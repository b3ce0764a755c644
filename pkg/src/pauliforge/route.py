"""Hardware coupling graphs, heavy-hex generation, and SWAP-insertion
routing in the front-layer + lookahead style."""
from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .circuit import Circuit, Gate, swap


class CouplingError(ValueError):
    pass


@dataclass
class CouplingGraph:
    n: int
    edges: set
    dist: np.ndarray

    @classmethod
    def from_edges(cls, n: int, edges) -> "CouplingGraph":
        eset = set()
        for a, b in edges:
            if a == b:
                raise CouplingError(f"self-loop edge ({a},{b})")
            if not (0 <= a < n and 0 <= b < n):
                raise CouplingError(f"edge ({a},{b}) out of range for {n} qubits")
            eset.add(frozenset((a, b)))
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from(tuple(e) for e in eset)
        if n > 1 and not nx.is_connected(g):
            comps = sorted(sorted(c) for c in nx.connected_components(g))
            raise CouplingError(f"coupling graph is disconnected: components {comps}")
        dist = np.zeros((n, n), dtype=int)
        for src, lengths in nx.all_pairs_shortest_path_length(g):
            for dst, d in lengths.items():
                dist[src, dst] = d
        return cls(n, eset, dist)

    def adjacent(self, a: int, b: int) -> bool:
        return frozenset((a, b)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def degree(self, q: int) -> int:
        return sum(1 for e in self.edges if q in e)


def all_to_all(n: int) -> CouplingGraph:
    return CouplingGraph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def heavy_hex(rows: int, cols: int) -> CouplingGraph:
    """Heavy-hex lattice: a rows x cols hexagonal lattice with one extra
    qubit in the middle of every edge, giving degree <= 3 everywhere."""
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    hexes = nx.hexagonal_lattice_graph(rows, cols)
    nodes = sorted(hexes.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    edges = []
    for u, v in sorted(tuple(sorted(e)) for e in hexes.edges()):
        mid = n
        n += 1
        edges.append((index[u], mid))
        edges.append((mid, index[v]))
    return CouplingGraph.from_edges(n, edges)


def load_coupling(text: str) -> CouplingGraph:
    """Parse the coupling file format: first a qubit count, then one ``a b``
    edge per line; ``#`` starts a comment. Duplicate edges warn."""
    tokens: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            tokens.append((lineno, line))
    if not tokens:
        raise CouplingError("empty coupling file")
    try:
        n = int(tokens[0][1])
    except ValueError:
        raise CouplingError(f"line {tokens[0][0]}: expected qubit count") from None
    edges = []
    seen = set()
    warnings = []
    for lineno, line in tokens[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise CouplingError(f"line {lineno}: expected edge 'a b'")
        a, b = int(parts[0]), int(parts[1])
        key = frozenset((a, b))
        if key in seen:
            warnings.append(f"line {lineno}: duplicate edge ({a},{b})")
            continue
        seen.add(key)
        edges.append((a, b))
    graph = CouplingGraph.from_edges(n, edges)
    graph.warnings = warnings  # type: ignore[attr-defined]
    return graph


@dataclass
class Layout:
    """Bijection between logical and physical qubits."""

    l2p: list[int]

    def __post_init__(self):
        if sorted(self.l2p) != list(range(len(self.l2p))):
            raise ValueError("layout must be a bijection")

    @property
    def p2l(self) -> list[int]:
        inv = [0] * len(self.l2p)
        for l, p in enumerate(self.l2p):
            inv[p] = l
        return inv

    def copy(self) -> "Layout":
        return Layout(list(self.l2p))


@dataclass(frozen=True)
class RouterConfig:
    extended_set_size: int = 20
    extended_weight: float = 0.5
    decay_delta: float = 0.001
    decay_reset_interval: int = 5


def sabre_route(
    c: Circuit,
    g: CouplingGraph,
    initial: Layout | None = None,
    cfg: RouterConfig = RouterConfig(),
) -> tuple[Circuit, Layout, int]:
    """Insert SWAPs so every 2Q gate acts on a coupling edge.

    Front-layer distance heuristic with an extended lookahead set and a decay
    term discouraging repeated swaps on the same qubits. Deterministic: ties
    break on the lexicographically smallest edge. Returns the routed circuit
    (on physical qubits), the final layout, and the SWAP count.
    """
    if c.n_qubits > g.n:
        raise CouplingError(f"circuit needs {c.n_qubits} qubits, graph has {g.n}")
    layout = initial.copy() if initial is not None else Layout(list(range(g.n)))
    gates = list(c.gates)
    n_gates = len(gates)
    # dependency DAG via per-qubit predecessor chains
    preds: list[set[int]] = [set() for _ in range(n_gates)]
    succs: list[set[int]] = [set() for _ in range(n_gates)]
    last_on: dict[int, int] = {}
    for i, gate in enumerate(gates):
        for q in gate.qubits:
            if q in last_on:
                preds[i].add(last_on[q])
                succs[last_on[q]].add(i)
            last_on[q] = i
    unresolved = [len(p) for p in preds]
    front = [i for i in range(n_gates) if unresolved[i] == 0]
    out: list[Gate] = []
    swap_count = 0
    decay = [1.0] * g.n
    swaps_since_reset = 0
    edges = g.sorted_edges()

    def execute(i: int):
        gate = gates[i]
        out.append(Gate(gate.name, tuple(layout.l2p[q] for q in gate.qubits),
                        angle=gate.angle, kind=gate.kind, payload=gate.payload))
        for j in sorted(succs[i]):
            unresolved[j] -= 1
            if unresolved[j] == 0:
                front.append(j)

    def dist(i: int, l2p) -> int:
        a, b = gates[i].qubits
        return int(g.dist[l2p[a], l2p[b]])

    stall = 0
    while front:
        progressed = False
        front.sort()
        remaining = []
        for i in front:
            gate = gates[i]
            if len(gate.qubits) < 2 or dist(i, layout.l2p) == 1:
                execute(i)
                progressed = True
            else:
                remaining.append(i)
        front = remaining
        if progressed:
            stall = 0
            continue
        if not front:
            break
        # extended lookahead: nearest unexecuted 2Q successors of the front
        extended: list[int] = []
        seen = set(front)
        queue = list(front)
        while queue and len(extended) < cfg.extended_set_size:
            j = queue.pop(0)
            for k in sorted(succs[j]):
                if k not in seen:
                    seen.add(k)
                    queue.append(k)
                    if len(gates[k].qubits) == 2:
                        extended.append(k)
        active = {layout.l2p[q] for i in front for q in gates[i].qubits}
        best = None
        for u, v in edges:
            if u not in active and v not in active:
                continue
            trial = list(layout.l2p)
            p2l = layout.p2l
            lu, lv = p2l[u], p2l[v]
            trial[lu], trial[lv] = trial[lv], trial[lu]
            score = sum(dist(i, trial) for i in front) / len(front)
            if extended:
                score += cfg.extended_weight * sum(
                    dist(i, trial) for i in extended
                ) / len(extended)
            score *= max(decay[u], decay[v])
            if best is None or score < best[0]:
                best = (score, (u, v))
        u, v = best[1]
        stall += 1
        if stall > 2 * g.n:
            # fallback: step the first front gate's control toward its target
            i = front[0]
            a, b = gates[i].qubits
            pa, pb = layout.l2p[a], layout.l2p[b]
            nbrs = [w for w in range(g.n) if g.adjacent(pa, w)]
            u = pa
            v = min(nbrs, key=lambda w: (g.dist[w, pb], w))
        out.append(swap(u, v))
        swap_count += 1
        p2l = layout.p2l
        lu, lv = p2l[u], p2l[v]
        layout.l2p[lu], layout.l2p[lv] = layout.l2p[lv], layout.l2p[lu]
        decay[u] += cfg.decay_delta
        decay[v] += cfg.decay_delta
        swaps_since_reset += 1
        if swaps_since_reset >= cfg.decay_reset_interval:
            decay = [1.0] * g.n
            swaps_since_reset = 0
    return Circuit(g.n, out), layout, swap_count


def decompose_swap(c: Circuit) -> Circuit:
    """Unroll every SWAP into its three-CNOT identity."""
    gates: list[Gate] = []
    for g in c.gates:
        if g.name == "swap":
            a, b = g.qubits
            gates.extend([Gate("cx", (a, b)), Gate("cx", (b, a)), Gate("cx", (a, b))])
        else:
            gates.append(g)
    return Circuit(c.n_qubits, gates)
