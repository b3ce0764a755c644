"""Seeded benchmark program generators: QAOA cost Hamiltonians over regular
graphs, and heterogeneous-weight random programs with shared supports."""
from __future__ import annotations

import random

import networkx as nx

from .ir import HamiltonianProgram, PauliTerm


def qaoa_program(kind: str, size: int, seed: int) -> HamiltonianProgram:
    """One ZZ term per edge of a seeded regular graph, unit angles.

    kind 'reg3' gives a random 3-regular graph, 'rand4' a random 4-regular
    graph (the degree-4 'random graph' workload).
    """
    degree = {"reg3": 3, "rand4": 4}.get(kind)
    if degree is None:
        raise ValueError(f"unknown QAOA graph kind {kind!r} (expected reg3 or rand4)")
    if (degree * size) % 2 != 0 or size <= degree:
        raise ValueError(f"no {degree}-regular graph on {size} nodes")
    g = nx.random_regular_graph(degree, size, seed=seed)
    terms = []
    for origin, (a, b) in enumerate(sorted(tuple(sorted(e)) for e in g.edges())):
        letters = "".join("Z" if q in (a, b) else "I" for q in range(size))
        terms.append(PauliTerm(letters, 1.0, origin))
    return HamiltonianProgram(size, terms)


def random_program(
    n_qubits: int,
    n_terms: int,
    min_weight: int,
    max_weight: int,
    seed: int,
    terms_per_support: int = 4,
) -> HamiltonianProgram:
    """Heterogeneous-weight Pauli terms drawn over a small pool of shared
    supports, so grouping has something to chew on."""
    if max_weight > n_qubits:
        raise ValueError("weight cannot exceed the qubit count")
    if min_weight < 1 or min_weight > max_weight:
        raise ValueError("invalid weight range")
    rng = random.Random(seed)
    n_supports = max(1, (n_terms + terms_per_support - 1) // terms_per_support)
    supports = []
    for _ in range(n_supports):
        w = rng.randint(min_weight, max_weight)
        supports.append(tuple(sorted(rng.sample(range(n_qubits), w))))
    terms = []
    for origin in range(n_terms):
        sup = supports[origin % len(supports)]
        letters = ["I"] * n_qubits
        for q in sup:
            letters[q] = rng.choice("XYZ")
        coeff = rng.uniform(-1.0, 1.0)
        terms.append(PauliTerm("".join(letters), coeff, origin))
    return HamiltonianProgram(n_qubits, terms)
