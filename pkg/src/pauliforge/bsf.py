"""Binary symplectic tableau for Pauli strings with sign-tracked two-qubit
Clifford conjugation.

Each Pauli string is one row: X -> [1|0], Z -> [0|1], Y -> [1|1], I -> [0|0].
Rows carry a sign bit (1 means the tracked operator is -P relative to the bit
encoding), the rotation angle, and a provenance index into the owning group's
term list. Bits are packed into Python ints, one X word and one Z word per row.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .ir import IRGroup

# Generator kinds in the canonical enumeration order used for tie-breaking.
CLIFFORD2Q_KINDS = ("XX", "YY", "ZZ", "XY", "YZ", "ZX")
SYMMETRIC_KINDS = frozenset({"XX", "YY", "ZZ"})

_PAULI_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_BITS_TO_LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_LETTER_TO_BITS = {v: k for k, v in _BITS_TO_LETTER.items()}


@dataclass(frozen=True)
class Clifford2QGate:
    """One of the six Hermitian universal controlled-gate generators."""

    kind: str
    a: int
    b: int

    def __post_init__(self):
        if self.kind not in CLIFFORD2Q_KINDS:
            raise ValueError(f"unknown Clifford2Q kind {self.kind!r}")
        if self.a == self.b:
            raise ValueError("control and target must differ")


def generator_matrix(kind: str) -> np.ndarray:
    """4x4 matrix of C(s0, s1) = ((I+s0) x I + (I-s0) x s1) / 2."""
    s0, s1 = _PAULI_MATS[kind[0]], _PAULI_MATS[kind[1]]
    eye = _PAULI_MATS["I"]
    return 0.5 * (np.kron(eye + s0, eye) + np.kron(eye - s0, s1))


@lru_cache(maxsize=None)
def conjugation_table(kind: str) -> dict:
    """Map (pauli_on_a, pauli_on_b) -> (new_a, new_b, sign) for one generator.

    Computed once by exact 4x4 matrix conjugation; the generators are
    Hermitian so C P C is again a signed Pauli pair.
    """
    c = generator_matrix(kind)
    table = {}
    for pa in "IXYZ":
        for pb in "IXYZ":
            m = c @ np.kron(_PAULI_MATS[pa], _PAULI_MATS[pb]) @ c
            hit = None
            for qa in "IXYZ":
                for qb in "IXYZ":
                    ref = np.kron(_PAULI_MATS[qa], _PAULI_MATS[qb])
                    if np.allclose(m, ref, atol=1e-9):
                        hit = (qa, qb, 1)
                    elif np.allclose(m, -ref, atol=1e-9):
                        hit = (qa, qb, -1)
                    if hit:
                        break
                if hit:
                    break
            if hit is None:  # cannot happen for Clifford conjugation
                raise AssertionError(f"C({kind}) did not map {pa}{pb} to a Pauli pair")
            table[(pa, pb)] = hit
    return table


@dataclass
class BSFTableau:
    n_local: int
    xs: list[int] = field(default_factory=list)  # packed X bits, bit q = local qubit q
    zs: list[int] = field(default_factory=list)
    signs: list[int] = field(default_factory=list)
    angles: list[float] = field(default_factory=list)
    prov: list[int] = field(default_factory=list)  # index into the group's term list
    qubit_map: tuple[int, ...] = ()  # local index -> global qubit

    @property
    def n_rows(self) -> int:
        return len(self.xs)

    def copy(self) -> "BSFTableau":
        return BSFTableau(
            self.n_local,
            list(self.xs),
            list(self.zs),
            list(self.signs),
            list(self.angles),
            list(self.prov),
            self.qubit_map,
        )

    def row_letter(self, i: int, q: int) -> str:
        return _BITS_TO_LETTER[((self.xs[i] >> q) & 1, (self.zs[i] >> q) & 1)]

    def row_letters(self, i: int) -> str:
        return "".join(self.row_letter(i, q) for q in range(self.n_local))

    def row_weight(self, i: int) -> int:
        return (self.xs[i] | self.zs[i]).bit_count()


def build_tableau(group: IRGroup) -> BSFTableau:
    """Encode a support group as a tableau with locally re-indexed columns."""
    sup = group.support
    t = BSFTableau(n_local=len(sup), qubit_map=tuple(sup))
    for idx, term in enumerate(group.terms):
        x = z = 0
        for local, q in enumerate(sup):
            xb, zb = _LETTER_TO_BITS[term.letters[q]]
            x |= xb << local
            z |= zb << local
        if x | z == 0:
            continue  # weight-0 rows are never stored
        t.xs.append(x)
        t.zs.append(z)
        t.signs.append(0)
        t.angles.append(term.coefficient)
        t.prov.append(idx)
    return t


def apply_clifford2q(t: BSFTableau, g: Clifford2QGate) -> BSFTableau:
    """Conjugate every row by the generator, column-local with sign tracking."""
    if not (0 <= g.a < t.n_local and 0 <= g.b < t.n_local):
        raise IndexError(f"gate qubits ({g.a},{g.b}) out of range for {t.n_local} columns")
    table = conjugation_table(g.kind)
    out = t.copy()
    ma, mb = 1 << g.a, 1 << g.b
    clear = ~(ma | mb)
    for i in range(out.n_rows):
        pa = _BITS_TO_LETTER[((out.xs[i] >> g.a) & 1, (out.zs[i] >> g.a) & 1)]
        pb = _BITS_TO_LETTER[((out.xs[i] >> g.b) & 1, (out.zs[i] >> g.b) & 1)]
        qa, qb, sign = table[(pa, pb)]
        xa, za = _LETTER_TO_BITS[qa]
        xb, zb = _LETTER_TO_BITS[qb]
        out.xs[i] = (out.xs[i] & clear) | (xa * ma) | (xb * mb)
        out.zs[i] = (out.zs[i] & clear) | (za * ma) | (zb * mb)
        if sign < 0:
            out.signs[i] ^= 1
    return out


def total_weight(t: BSFTableau) -> int:
    """Number of columns touched by any row (the w_tot reduction target)."""
    occ = 0
    for x, z in zip(t.xs, t.zs):
        occ |= x | z
    return occ.bit_count()


def sum_row_weights(t: BSFTableau) -> int:
    return sum((x | z).bit_count() for x, z in zip(t.xs, t.zs))


@dataclass(frozen=True)
class LocalRow:
    """A popped weight-1 row: a single-qubit Pauli rotation."""

    qubit: int  # local index
    letter: str
    angle: float
    sign: int
    prov: int


def pop_local_rows(t: BSFTableau) -> tuple[list[LocalRow], BSFTableau]:
    """Remove all weight-1 rows, returning them in row order."""
    locals_: list[LocalRow] = []
    rest = BSFTableau(t.n_local, qubit_map=t.qubit_map)
    for i in range(t.n_rows):
        occ = t.xs[i] | t.zs[i]
        if occ.bit_count() == 1:
            q = occ.bit_length() - 1
            locals_.append(LocalRow(q, t.row_letter(i, q), t.angles[i], t.signs[i], t.prov[i]))
        else:
            rest.xs.append(t.xs[i])
            rest.zs.append(t.zs[i])
            rest.signs.append(t.signs[i])
            rest.angles.append(t.angles[i])
            rest.prov.append(t.prov[i])
    return locals_, rest


def cost_bsf(t: BSFTableau) -> float:
    """Greedy-search cost: w_tot * n_nonlocal^2 plus pairwise column overlaps.

    Pair sums run over all stored rows; n_nonlocal counts rows of weight >= 2.
    """
    n = t.n_rows
    n_nl = sum(1 for i in range(n) if t.row_weight(i) >= 2)
    cost = float(total_weight(t) * n_nl * n_nl)
    for i in range(n):
        xi, zi = t.xs[i], t.zs[i]
        oi = xi | zi
        for j in range(i + 1, n):
            xj, zj = t.xs[j], t.zs[j]
            cost += (oi | xj | zj).bit_count()
            cost += 0.5 * ((xi | xj).bit_count() + (zi | zj).bit_count())
    return cost


def symplectic_products(t: BSFTableau) -> list[list[int]]:
    """Pairwise symplectic inner products mod 2 (0 = commute, 1 = anticommute)."""
    n = t.n_rows
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            v = (t.xs[i] & t.zs[j]).bit_count() + (t.zs[i] & t.xs[j]).bit_count()
            out[i][j] = v & 1
    return out
