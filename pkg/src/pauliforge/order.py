"""Tetris-like assembly of simplified group subcircuits: depth cost,
boundary gate cancellation, routing-similarity factor, lookahead ordering.

The depth cost scores a candidate's left boundary against the right boundary
of everything assembled so far. When no qubit is acted at both boundaries the
layers can slide together, so the merged scenario is charged one layer less
per qubit; conflicting boundaries pay the full endian sums.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import (
    Circuit,
    Gate,
    InteractionGraph,
    count_2q,
    depth_2q,
    endian_vectors,
    peephole,
)


@dataclass(frozen=True)
class OrderConfig:
    lookahead_k: int = 10
    hardware_aware: bool = False
    use_similarity: bool = True
    similarity_epsilon: float = 1e-6
    input_order_fallback: bool = True


def depth_cost(e_r: list[int], e_l_next: list[int]) -> float:
    """Boundary-merge depth cost between two adjacent subcircuits.

    If no qubit sits at both facing boundaries (every e_l'==0 qubit has
    e_r>0 and vice versa), the boundary layers can merge and each qubit is
    charged one traversal less; otherwise the full sums are charged.
    """
    if len(e_r) != len(e_l_next):
        raise ValueError("endian vector length mismatch")
    mergeable = all(
        not (r == 0 and l == 0) for r, l in zip(e_r, e_l_next)
    )
    total = sum(e_r) + sum(e_l_next)
    if mergeable:
        return float(total - len(e_r))
    return float(total)


def cancellation_adjustment(cost: float, m: int, depth_drop_sides: int, n: int) -> float:
    """Reward m cancelled boundary pairs; n more per side whose depth drops."""
    if m < 0:
        raise ValueError("pair count must be nonnegative")
    return cost - 2 * m - depth_drop_sides * n


def similarity_factor(tail: InteractionGraph, head: InteractionGraph,
                      epsilon: float = 1e-6) -> float:
    """Row-wise cosine similarity between the two distance matrices, summed.

    Rows with zero norm on either side contribute 0; the result is clamped
    below by epsilon so it can divide the depth cost."""
    if tail.n != head.n:
        raise ValueError("vertex count mismatch")
    s = 0.0
    for i in range(tail.n):
        a, b = tail.dist[i], head.dist[i]
        na, nb = float(np.linalg.norm(a)), float(np.linalg.norm(b))
        if na == 0.0 or nb == 0.0:
            continue
        s += float(np.dot(a, b)) / (na * nb)
    return max(s, epsilon)


def head_tail_graphs(c: Circuit) -> tuple[InteractionGraph, InteractionGraph]:
    """Boundary interaction graphs: scan 2Q gates from the left (head) or
    right (tail), adding edges until every 2Q-touched qubit is covered."""
    two_q = [g for g in c.gates if g.is_2q]
    target = {q for g in two_q for q in g.qubits}

    def window(gates) -> InteractionGraph:
        edges = []
        covered: set[int] = set()
        for g in gates:
            edges.append(g.qubits)
            covered |= set(g.qubits)
            if covered >= target:
                break
        return InteractionGraph.from_edges(c.n_qubits, edges)

    return window(two_q), window(list(reversed(two_q)))


def _exposed_gens(gates: list[Gate], from_tail: bool) -> list[int]:
    """Indices of gen gates at a boundary with no blocking gate outside them."""
    order = range(len(gates) - 1, -1, -1) if from_tail else range(len(gates))
    blocked: set[int] = set()
    out = []
    for i in order:
        g = gates[i]
        if g.name == "gen" and not (set(g.qubits) & blocked):
            out.append(i)
        blocked |= set(g.qubits)
    return out


def cancel_boundary(a_gates: list[Gate], b_gates: list[Gate]) -> tuple[list[Gate], list[Gate], int]:
    """Remove identical Hermitian gen pairs meeting across the boundary.

    Returns the trimmed gate lists and the number of cancelled pairs."""
    a = list(a_gates)
    b = list(b_gates)
    m = 0
    while True:
        tails = _exposed_gens(a, from_tail=True)
        heads = _exposed_gens(b, from_tail=False)
        hit = None
        for ti in tails:
            for hi in heads:
                ga, gb = a[ti], b[hi]
                if ga.kind == gb.kind and ga.qubits == gb.qubits:
                    hit = (ti, hi)
                    break
            if hit:
                break
        if hit is None:
            return a, b, m
        a.pop(hit[0])
        b.pop(hit[1])
        m += 1


def _support(gates: list[Gate]) -> set[int]:
    return {q for g in gates for q in g.qubits}


def assemble(circuits: list[Circuit], cfg: OrderConfig = OrderConfig()) -> tuple[Circuit, list[int]]:
    """Order and concatenate group subcircuits.

    Groups are pre-sorted by descending support width (ties keep first
    appearance); each step scores the next lookahead_k pool entries against
    the assembled prefix and commits the argmin, physically performing the
    detected boundary cancellations. Returns the peepholed circuit and the
    chosen group order.
    """
    if not circuits:
        return Circuit(1, []), []
    n_qubits = circuits[0].n_qubits
    pool = sorted(range(len(circuits)), key=lambda i: -len(_support(circuits[i].gates)))
    assembled: list[Gate] = []
    last_sub: list[Gate] = []
    order: list[int] = []
    while pool:
        if not assembled:
            choice = 0
        else:
            prefix = Circuit(n_qubits, assembled)
            e_r = endian_vectors(prefix).e_r
            _, tail_graph = head_tail_graphs(Circuit(n_qubits, last_sub or assembled))
            best = None
            for pos in range(min(cfg.lookahead_k, len(pool))):
                cand = circuits[pool[pos]]
                cost = depth_cost(e_r, endian_vectors(cand).e_l)
                a2, b2, m = cancel_boundary(assembled, cand.gates)
                if m:
                    sides = int(depth_2q(Circuit(n_qubits, a2)) < depth_2q(prefix))
                    sides += int(depth_2q(Circuit(n_qubits, b2)) < depth_2q(cand))
                    n_adj = len(_support(last_sub or assembled) | _support(cand.gates))
                    cost = cancellation_adjustment(cost, m, sides, n_adj)
                if cfg.hardware_aware and cfg.use_similarity:
                    head_graph, _ = head_tail_graphs(cand)
                    cost /= similarity_factor(tail_graph, head_graph, cfg.similarity_epsilon)
                # endian vectors can overstate boundary conflicts, so ties
                # break on the depth the commit would actually produce
                key = (cost, depth_2q(Circuit(n_qubits, a2 + b2)), pos)
                if best is None or key < best:
                    best = key
            choice = best[2]
        gi = pool.pop(choice)
        cand_gates = circuits[gi].gates
        assembled, trimmed, _ = cancel_boundary(assembled, cand_gates)
        assembled = assembled + trimmed
        last_sub = trimmed or last_sub
        order.append(gi)
    result = peephole(Circuit(n_qubits, assembled))
    if cfg.input_order_fallback:
        plain_gates: list[Gate] = []
        for c in circuits:
            plain_gates.extend(c.gates)
        plain = peephole(Circuit(n_qubits, plain_gates))
        if (depth_2q(plain), count_2q(plain)) < (depth_2q(result), count_2q(result)):
            return plain, list(range(len(circuits)))
    return result, order
