import math
import random

import numpy as np
import pytest

from pauliforge.ir import IRGroup, PauliTerm


def random_group(seed: int, max_qubits: int = 6, max_terms: int = 8) -> IRGroup:
    """Seeded group of full-support terms with angles in (-pi, pi)."""
    rng = random.Random(seed)
    nq = rng.randint(2, max_qubits)
    terms = []
    for i in range(rng.randint(1, max_terms)):
        letters = "".join(rng.choice("XYZ") for _ in range(nq))
        terms.append(PauliTerm(letters, rng.uniform(-math.pi, math.pi), i))
    return IRGroup(tuple(range(nq)), terms)


def perm_unitary(l2p: list[int], n: int) -> np.ndarray:
    """Unitary of the qubit permutation moving logical q to physical l2p[q]."""
    dim = 2**n
    p = np.zeros((dim, dim), dtype=complex)
    for x in range(dim):
        y = 0
        for q in range(n):
            bit = (x >> (n - 1 - q)) & 1  # qubit 0 = most significant factor
            y |= bit << (n - 1 - l2p[q])
        p[y, x] = 1.0
    return p


@pytest.fixture
def motivating_group() -> IRGroup:
    terms = [
        PauliTerm("ZYY", 0.3, 0),
        PauliTerm("ZZY", 0.5, 1),
        PauliTerm("XYY", -0.2, 2),
        PauliTerm("XZY", 0.7, 3),
    ]
    return IRGroup((0, 1, 2), terms)
