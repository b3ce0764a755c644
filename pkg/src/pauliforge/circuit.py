"""Target-level gate IR: gates, 2Q layering, depth metrics, endian vectors,
interaction graphs, peephole cleanup, and the circuit text format.

Gate names: h, s, sdg, rx, ry, rz (1Q); cx, swap (2Q); gen (abstract
two-qubit Clifford generator, lowered later); rot2 (two-qubit Pauli rotation,
internal pre-ISA form); su4 (fused two-qubit block carrying its constituent
gates as payload). Rotation angles follow the half-angle convention:
rz(theta) = exp(-i*theta*Z/2), rot2 likewise on the Pauli pair.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

ONE_QUBIT_NAMES = frozenset({"h", "s", "sdg", "rx", "ry", "rz"})
TWO_QUBIT_NAMES = frozenset({"cx", "swap", "gen", "rot2", "su4"})
ROTATION_NAMES = frozenset({"rx", "ry", "rz"})


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]
    angle: float | None = None
    kind: str | None = None  # gen kind ("XY", ...) or rot2 axes ("ZZ", ...)
    payload: tuple["Gate", ...] | None = None  # su4 constituent gates

    def __post_init__(self):
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"repeated qubit operand in {self.name} gate")
        if self.angle is not None and not np.isfinite(self.angle):
            raise ValueError("gate angle must be finite")

    @property
    def is_2q(self) -> bool:
        return self.name in TWO_QUBIT_NAMES


def h(q): return Gate("h", (q,))
def s(q): return Gate("s", (q,))
def sdg(q): return Gate("sdg", (q,))
def rx(q, theta): return Gate("rx", (q,), angle=theta)
def ry(q, theta): return Gate("ry", (q,), angle=theta)
def rz(q, theta): return Gate("rz", (q,), angle=theta)
def cx(c, t): return Gate("cx", (c, t))
def swap(a, b): return Gate("swap", (a, b))
def gen(kind, a, b): return Gate("gen", (a, b), kind=kind)
def rot2(axes, a, b, theta): return Gate("rot2", (a, b), angle=theta, kind=axes)


@dataclass
class Circuit:
    n_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        for g in self.gates:
            if any(q >= self.n_qubits or q < 0 for q in g.qubits):
                raise ValueError(f"gate {g.name} operand out of range")


def layers_2q(c: Circuit) -> list[list[Gate]]:
    """Greedy left-to-right layering of 2Q gates; 1Q gates are ignored.

    A gate joins the current layer if it shares no qubit with gates already
    in it, otherwise it starts a new layer.
    """
    layers: list[list[Gate]] = []
    busy: set[int] = set()
    for g in c.gates:
        if not g.is_2q:
            continue
        if layers and not (set(g.qubits) & busy):
            layers[-1].append(g)
            busy |= set(g.qubits)
        else:
            layers.append([g])
            busy = set(g.qubits)
    return layers


def depth_2q(c: Circuit) -> int:
    return len(layers_2q(c))


def count_2q(c: Circuit) -> int:
    return sum(1 for g in c.gates if g.is_2q)


def count_1q(c: Circuit) -> int:
    return sum(1 for g in c.gates if not g.is_2q)


@dataclass
class EndianVectors:
    e_l: list[int]
    e_r: list[int]
    depth: int


def endian_vectors(c: Circuit) -> EndianVectors:
    """Per-qubit count of 2Q layers traversed from each side before the qubit
    is first acted on. Qubits never touched by a 2Q gate get the full depth."""
    left = layers_2q(c)
    right = layers_2q(Circuit(c.n_qubits, list(reversed(c.gates))))
    depth = max(len(left), len(right))
    e_l = [depth] * c.n_qubits
    e_r = [depth] * c.n_qubits
    for li, layer in enumerate(left):
        for g in layer:
            for q in g.qubits:
                e_l[q] = min(e_l[q], li)
    for li, layer in enumerate(right):
        for g in layer:
            for q in g.qubits:
                e_r[q] = min(e_r[q], li)
    return EndianVectors(e_l, e_r, depth)


@dataclass
class InteractionGraph:
    """Undirected qubit-coupling structure of a gate window, with an all-pairs
    shortest-path matrix. Disconnected pairs get the finite sentinel n."""

    n: int
    edges: set[frozenset]
    dist: np.ndarray

    @classmethod
    def from_edges(cls, n: int, edges) -> "InteractionGraph":
        eset = {frozenset(e) for e in edges}
        adj: list[list[int]] = [[] for _ in range(n)]
        for e in eset:
            a, b = sorted(e)
            adj[a].append(b)
            adj[b].append(a)
        dist = np.full((n, n), n, dtype=float)
        for src in range(n):
            dist[src, src] = 0
            frontier = [src]
            d = 0
            seen = {src}
            while frontier:
                d += 1
                nxt = []
                for u in frontier:
                    for v in adj[u]:
                        if v not in seen:
                            seen.add(v)
                            dist[src, v] = d
                            nxt.append(v)
                frontier = nxt
        return cls(n, eset, dist)


# --- peephole -------------------------------------------------------------

_SELF_INVERSE_2Q = frozenset({"cx", "swap", "gen"})
_INVERSE_1Q = {("h", "h"), ("s", "sdg"), ("sdg", "s")}
_ANGLE_EPS = 1e-12


def _same_pair_gate(a: Gate, b: Gate) -> bool:
    if a.name != b.name or a.kind != b.kind:
        return False
    if a.name == "swap":
        return set(a.qubits) == set(b.qubits)
    return a.qubits == b.qubits


def _peephole_pass(gates: list[Gate]) -> tuple[list[Gate], bool]:
    out: list[Gate | None] = []
    tops: dict[int, list[int]] = {}  # qubit -> stack of indices into out
    changed = False

    def last_idx(q):
        st = tops.get(q)
        return st[-1] if st else None

    def remove(idx):
        g = out[idx]
        out[idx] = None
        for q in g.qubits:
            tops[q].remove(idx)

    for g in gates:
        while True:
            prev = [last_idx(q) for q in g.qubits]
            if None in prev or len(set(prev)) != 1:
                break
            pg = out[prev[0]]
            # Hermitian self-inverse pair on identical operands
            if g.name in _SELF_INVERSE_2Q and _same_pair_gate(pg, g):
                remove(prev[0])
                changed = True
                g = None
                break
            if (pg.name, g.name) in _INVERSE_1Q and pg.qubits == g.qubits:
                remove(prev[0])
                changed = True
                g = None
                break
            # rotation fusion (1Q same axis, or identical-pair 2Q Pauli rotation)
            fuse = (
                g.name in ROTATION_NAMES and pg.name == g.name and pg.qubits == g.qubits
            ) or (g.name == "rot2" and _same_pair_gate(pg, g))
            if fuse:
                merged = pg.angle + g.angle
                remove(prev[0])
                changed = True
                if abs(merged) < _ANGLE_EPS:
                    g = None
                    break
                g = Gate(g.name, g.qubits, angle=merged, kind=g.kind)
                continue
            break
        if g is None:
            continue
        if g.angle is not None and abs(g.angle) < _ANGLE_EPS and g.name in (
            "rx", "ry", "rz", "rot2"
        ):
            changed = True
            continue
        out.append(g)
        idx = len(out) - 1
        for q in g.qubits:
            tops.setdefault(q, []).append(idx)
    return [g for g in out if g is not None], changed


def peephole(c: Circuit) -> Circuit:
    """Fixpoint cleanup: cancel adjacent self-inverse 2Q pairs and inverse 1Q
    Cliffords, fuse adjacent same-axis rotations, drop zero rotations."""
    gates = list(c.gates)
    while True:
        gates, changed = _peephole_pass(gates)
        if not changed:
            return Circuit(c.n_qubits, gates)


# --- text format ----------------------------------------------------------

def _fmt_angle(a: float) -> str:
    return f"{a:.12g}"


def _gate_line(g: Gate) -> str:
    qs = ",".join(f"q[{q}]" for q in g.qubits)
    if g.name in ("rx", "ry", "rz"):
        return f"{g.name}({_fmt_angle(g.angle)}) {qs}"
    if g.name == "gen":
        return f"gen({g.kind.lower()}) {qs}"
    if g.name == "rot2":
        return f"rot2({g.kind.lower()},{_fmt_angle(g.angle)}) {qs}"
    return f"{g.name} {qs}"


def to_text(c: Circuit) -> str:
    lines = [f"qubits {c.n_qubits}"]
    for g in c.gates:
        if g.name == "su4":
            lines.append(f"su4 {','.join(f'q[{q}]' for q in g.qubits)} {{")
            lines.extend("  " + _gate_line(p) for p in g.payload)
            lines.append("}")
        else:
            lines.append(_gate_line(g))
    return "\n".join(lines) + "\n"


class CircuitParseError(ValueError):
    pass


_GATE_RE = re.compile(r"^(?P<name>[a-z0-9]+)(?:\((?P<args>[^)]*)\))?\s+(?P<qs>.+)$")


def _parse_gate_line(line: str, lineno: int) -> Gate:
    m = _GATE_RE.match(line)
    if not m:
        raise CircuitParseError(f"line {lineno}: malformed gate line {line!r}")
    name, args = m.group("name"), m.group("args")
    qubits = tuple(int(x) for x in re.findall(r"q\[(\d+)\]", m.group("qs")))
    if name in ("rx", "ry", "rz"):
        return Gate(name, qubits, angle=float(args))
    if name == "gen":
        return Gate(name, qubits, kind=args.upper())
    if name == "rot2":
        axes, theta = args.split(",")
        return Gate(name, qubits, angle=float(theta), kind=axes.upper())
    if name in ("h", "s", "sdg", "cx", "swap"):
        return Gate(name, qubits)
    raise CircuitParseError(f"line {lineno}: unknown gate {name!r}")


def from_text(text: str) -> Circuit:
    n_qubits = None
    gates: list[Gate] = []
    payload: list[Gate] | None = None
    su4_qubits: tuple[int, ...] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n_qubits is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "qubits":
                raise CircuitParseError(f"line {lineno}: expected header 'qubits N'")
            n_qubits = int(parts[1])
            continue
        if line == "}":
            if payload is None:
                raise CircuitParseError(f"line {lineno}: unmatched '}}'")
            gates.append(Gate("su4", su4_qubits, payload=tuple(payload)))
            payload = None
            continue
        if line.startswith("su4 "):
            if not line.endswith("{"):
                raise CircuitParseError(f"line {lineno}: su4 block must open a brace")
            su4_qubits = tuple(int(x) for x in re.findall(r"q\[(\d+)\]", line))
            payload = []
            continue
        g = _parse_gate_line(line, lineno)
        (payload if payload is not None else gates).append(g)
    if n_qubits is None:
        raise CircuitParseError("missing 'qubits N' header")
    if payload is not None:
        raise CircuitParseError("unterminated su4 block")
    return Circuit(n_qubits, gates)
