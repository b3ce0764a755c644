"""End-to-end compilation pipeline and metrics reporting.

Stages: (optional Trotter expansion) -> support grouping -> per-group tableau
simplification -> Tetris-like assembly -> ISA lowering -> optional routing.
The realized rotation order is tracked throughout so the output can be
verified against the product of the original exponentials.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import synthesize
from .circuit import Circuit, count_1q, count_2q, depth_2q, peephole
from .ir import HamiltonianProgram, PauliTerm, TrotterConfig, group_by_support, trotterize
from .order import OrderConfig, assemble
from .route import CouplingGraph, sabre_route
from .simplify import SimplifyConfig, build_and_simplify
from .synthesize import CNOT_ISA, SU4_ISA


@dataclass
class MetricsReport:
    n_2q: int = 0
    depth_2q: int = 0
    n_1q: int = 0
    n_swap: int = 0
    n_su4: int = 0
    isa: str = CNOT_ISA
    routed: bool = False
    wall_time_ms: float = 0.0
    stages_ms: dict = field(default_factory=dict)

    def lines(self) -> list[str]:
        out = [
            f"isa={self.isa}",
            f"routed={int(self.routed)}",
            f"n_2q={self.n_2q}",
            f"depth_2q={self.depth_2q}",
            f"n_1q={self.n_1q}",
            f"n_swap={self.n_swap}",
            f"n_su4={self.n_su4}",
            f"wall_time_ms={self.wall_time_ms:.3f}",
        ]
        out.extend(f"stage_ms.{k}={v:.3f}" for k, v in self.stages_ms.items())
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def scan_metrics(c: Circuit, isa: str = CNOT_ISA, routed: bool = False) -> MetricsReport:
    """Recount all metrics directly from the gate list."""
    r = MetricsReport(isa=isa, routed=routed)
    r.n_2q = count_2q(c)
    r.depth_2q = depth_2q(c)
    r.n_1q = count_1q(c)
    r.n_swap = sum(1 for g in c.gates if g.name == "swap")
    r.n_su4 = sum(1 for g in c.gates if g.name == "su4")
    return r


@dataclass
class CompileOptions:
    isa: str = CNOT_ISA
    coupling: CouplingGraph | None = None  # None = all-to-all, no routing
    trotter: TrotterConfig | None = None
    baseline_naive: bool = False
    order: OrderConfig = field(default_factory=OrderConfig)
    simplify: SimplifyConfig = field(default_factory=SimplifyConfig)
    decompose_swaps: bool = False
    guard_against_baseline: bool = True


@dataclass
class CompileResult:
    circuit: Circuit
    realized_terms: list[PauliTerm]  # time order the output realizes
    metrics: MetricsReport
    used_baseline: bool = False
    warnings: list[str] = field(default_factory=list)


def _lowered_naive(terms: list[PauliTerm], n_qubits: int, isa: str) -> Circuit:
    naive = peephole(synthesize.naive_synthesis(terms, n_qubits))
    if isa == SU4_ISA:
        naive = synthesize.fuse_su4(naive)
    return naive


def compile_program(program: HamiltonianProgram, opts: CompileOptions) -> CompileResult:
    t0 = time.perf_counter()
    stages: dict[str, float] = {}
    warnings: list[str] = []

    def tick(name: str, since: float) -> float:
        now = time.perf_counter()
        stages[name] = (now - since) * 1000
        return now

    mark = t0
    if opts.trotter is not None:
        terms = trotterize(program, opts.trotter)
    else:
        terms = list(program.terms)
    mark = tick("trotterize", mark)

    if opts.baseline_naive:
        circuit = _lowered_naive(terms, program.n_qubits, opts.isa)
        realized = terms
        used_baseline = True
        mark = tick("synthesize", mark)
    else:
        groups = group_by_support(terms)
        mark = tick("group", mark)
        simplified = [build_and_simplify(g, opts.simplify) for g in groups]
        mark = tick("simplify", mark)
        circuits = [sg.global_circuit(program.n_qubits) for sg in simplified]
        assembled, group_order = assemble(circuits, opts.order)
        mark = tick("order", mark)
        circuit = synthesize.lower(assembled, opts.isa)
        mark = tick("lower", mark)
        realized = []
        for gi in group_order:
            realized.extend(simplified[gi].reported_terms())
        used_baseline = False
        if opts.guard_against_baseline:
            naive = _lowered_naive(terms, program.n_qubits, opts.isa)
            if count_2q(naive) < count_2q(circuit):
                warnings.append("baseline synthesis was smaller; emitting it instead")
                circuit = naive
                realized = terms
                used_baseline = True
        mark = tick("baseline_guard", mark)

    routed = False
    n_swap = 0
    if opts.coupling is not None:
        circuit, _layout, n_swap = sabre_route(circuit, opts.coupling)
        routed = True
        if opts.decompose_swaps:
            from .route import decompose_swap

            circuit = decompose_swap(circuit)
        mark = tick("route", mark)

    metrics = scan_metrics(circuit, isa=opts.isa, routed=routed)
    metrics.stages_ms = stages
    metrics.wall_time_ms = (time.perf_counter() - t0) * 1000
    return CompileResult(circuit, realized, metrics, used_baseline, warnings)
