"""Source language for the compiler: weighted Pauli terms, Hamiltonian
programs, Trotter expansion, and support-based grouping."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

PAULI_LETTERS = "IXYZ"


class HamiltonianParseError(ValueError):
    """Raised for malformed Hamiltonian files; carries the 1-based line number."""

    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class PauliTerm:
    """A Pauli string with its rotation angle folded into the coefficient.

    ``letters[q]`` is the Pauli acting on qubit ``q``. The coefficient is
    interpreted as the angle theta of exp(-i*theta*P) once the term reaches
    synthesis. ``origin_id`` tracks the source Hamiltonian term the rotation
    came from (terms repeat under Trotterization).
    """

    letters: str
    coefficient: float
    origin_id: int = -1

    def __post_init__(self):
        bad = set(self.letters) - set(PAULI_LETTERS)
        if bad:
            raise ValueError(f"invalid Pauli letters: {sorted(bad)}")

    @property
    def n_qubits(self) -> int:
        return len(self.letters)

    @property
    def weight(self) -> int:
        return sum(1 for c in self.letters if c != "I")

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(q for q, c in enumerate(self.letters) if c != "I")

    def restricted(self, support: tuple[int, ...]) -> str:
        """Letters on the given qubits only."""
        return "".join(self.letters[q] for q in support)


@dataclass
class HamiltonianProgram:
    n_qubits: int
    terms: list[PauliTerm] = field(default_factory=list)


@dataclass(frozen=True)
class TrotterConfig:
    order: int
    steps: int
    total_time: float

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValueError(f"unsupported Trotter order {self.order} (must be 1 or 2)")
        if self.steps < 1:
            raise ValueError("steps must be positive")
        tau = self.total_time / self.steps
        if not math.isfinite(tau) or tau == 0.0:
            raise ValueError("time step t/r must be finite and nonzero")

    @property
    def tau(self) -> float:
        return self.total_time / self.steps


@dataclass
class IRGroup:
    """Terms sharing one identical non-trivial support, compiled as a unit."""

    support: tuple[int, ...]
    terms: list[PauliTerm]


def parse_term(line: str, n_qubits: int, lineno: int, origin_id: int) -> PauliTerm | None:
    """Parse one ``coeff letters`` line. Returns None for identity terms
    (they contribute only a global phase and are dropped by the caller)."""
    parts = line.split()
    if len(parts) != 2:
        raise HamiltonianParseError(f"expected 'coefficient letters', got {line!r}", lineno)
    try:
        coeff = float(parts[0])
    except ValueError:
        raise HamiltonianParseError(f"non-numeric coefficient {parts[0]!r}", lineno) from None
    if coeff != coeff or coeff in (float("inf"), float("-inf")):
        raise HamiltonianParseError(f"non-finite coefficient {parts[0]!r}", lineno)
    letters = parts[1].upper()
    if set(letters) - set(PAULI_LETTERS):
        raise HamiltonianParseError(f"invalid Pauli letters in {parts[1]!r}", lineno)
    if len(letters) != n_qubits:
        raise HamiltonianParseError(
            f"term has {len(letters)} letters, program declares {n_qubits} qubits", lineno
        )
    term = PauliTerm(letters, coeff, origin_id)
    if term.weight == 0:
        return None
    return term


def parse_program(text: str) -> tuple[HamiltonianProgram, list[str]]:
    """Parse the Hamiltonian text format.

    Format: a header line ``qubits N``, then one ``coeff letters`` term per
    line; ``#`` starts a comment. Returns the program and a list of warnings
    (e.g. dropped identity terms).
    """
    warnings: list[str] = []
    n_qubits = None
    terms: list[PauliTerm] = []
    origin = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n_qubits is None:
            parts = line.split()
            if len(parts) != 2 or parts[0].lower() != "qubits":
                raise HamiltonianParseError("expected header 'qubits N'", lineno)
            try:
                n_qubits = int(parts[1])
            except ValueError:
                raise HamiltonianParseError(f"bad qubit count {parts[1]!r}", lineno) from None
            if n_qubits < 1:
                raise HamiltonianParseError("qubit count must be >= 1", lineno)
            continue
        term = parse_term(line, n_qubits, lineno, origin)
        if term is None:
            warnings.append(f"line {lineno}: identity term dropped (global phase only)")
        else:
            terms.append(term)
        origin += 1
    if n_qubits is None:
        raise HamiltonianParseError("missing 'qubits N' header", 1)
    return HamiltonianProgram(n_qubits, terms), warnings


def format_program(program: HamiltonianProgram) -> str:
    lines = [f"qubits {program.n_qubits}"]
    lines.extend(f"{t.coefficient:.12g} {t.letters}" for t in program.terms)
    return "\n".join(lines) + "\n"


def trotterize(program: HamiltonianProgram, cfg: TrotterConfig) -> list[PauliTerm]:
    """Expand the program into the ordered rotation schedule of one of the
    first- or second-order product formulas, repeated ``steps`` times.

    Order 1 repeats the term list with angles h_j*tau; order 2 appends the
    reversed list with all angles halved, giving a palindromic schedule.
    """
    tau = cfg.tau
    out: list[PauliTerm] = []
    if cfg.order == 1:
        step = [PauliTerm(t.letters, t.coefficient * tau, t.origin_id) for t in program.terms]
    else:
        half = [PauliTerm(t.letters, t.coefficient * tau / 2, t.origin_id) for t in program.terms]
        step = half + half[::-1]
    for _ in range(cfg.steps):
        out.extend(step)
    return out


def group_by_support(terms: list[PauliTerm]) -> list[IRGroup]:
    """Partition terms by identical non-trivial support.

    Within-group order follows input order; groups are listed in order of
    first appearance. Identity terms (empty support) are skipped.
    """
    groups: dict[tuple[int, ...], IRGroup] = {}
    for term in terms:
        sup = term.support
        if not sup:
            continue
        if sup not in groups:
            groups[sup] = IRGroup(sup, [])
        groups[sup].terms.append(term)
    return list(groups.values())
