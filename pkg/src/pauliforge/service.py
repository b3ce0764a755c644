"""HTTP service wrapping the compiler: pydantic request/response models and
the FastAPI app. The CLI reuses the handler functions in-process, so the
service layer is the single entry point for compile/verify/stats/bench."""
from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import bench, verify
from .circuit import CircuitParseError, from_text, to_text
from .ir import (
    HamiltonianParseError,
    HamiltonianProgram,
    TrotterConfig,
    format_program,
    parse_program,
)
from .order import OrderConfig
from .pipeline import CompileOptions, compile_program, scan_metrics
from .route import CouplingError, CouplingGraph, heavy_hex, load_coupling
from .simplify import SimplifyConfig


class TrotterSpec(BaseModel):
    order: int = 1
    steps: int = 1
    total_time: float = 1.0


class CompileRequest(BaseModel):
    hamiltonian: str
    isa: Literal["cnot", "su4"] = "cnot"
    topology: Literal["all-to-all", "heavy-hex", "coupling"] = "all-to-all"
    heavy_hex: Optional[str] = Field(None, description="RxC, e.g. '3x3'")
    coupling: Optional[str] = Field(None, description="coupling file contents")
    lookahead: int = 10
    hardware_aware: bool = False
    similarity: bool = True
    trotter: Optional[TrotterSpec] = None
    baseline: bool = False
    decompose_swaps: bool = False


class MetricsModel(BaseModel):
    n_2q: int
    depth_2q: int
    n_1q: int
    n_swap: int
    n_su4: int
    isa: str
    routed: bool
    wall_time_ms: float
    stages_ms: dict


class CompileResponse(BaseModel):
    circuit: str
    realized_order: str
    metrics: MetricsModel
    used_baseline: bool
    warnings: list[str]


class VerifyRequest(BaseModel):
    circuit: str
    hamiltonian: str


class VerifyResponse(BaseModel):
    infidelity: float
    n_qubits: int


class StatsRequest(BaseModel):
    circuit: str


class QAOABenchRequest(BaseModel):
    kind: Literal["reg3", "rand4"] = "reg3"
    size: int = 16
    seed: int = 0


class RandomBenchRequest(BaseModel):
    n_qubits: int = 8
    n_terms: int = 16
    min_weight: int = 2
    max_weight: int = 4
    seed: int = 0
    terms_per_support: int = 4


class BenchResponse(BaseModel):
    hamiltonian: str
    n_terms: int


def _coupling_from_request(req: CompileRequest) -> Optional[CouplingGraph]:
    if req.topology == "all-to-all":
        if req.coupling or req.heavy_hex:
            raise ValueError("all-to-all topology cannot be combined with a coupling graph")
        return None
    if req.topology == "heavy-hex":
        if not req.heavy_hex:
            raise ValueError("heavy-hex topology requires an RxC size, e.g. '3x3'")
        rows, cols = (int(x) for x in req.heavy_hex.lower().split("x"))
        return heavy_hex(rows, cols)
    if not req.coupling:
        raise ValueError("coupling topology requires the coupling file contents")
    return load_coupling(req.coupling)


def handle_compile(req: CompileRequest) -> CompileResponse:
    program, warnings = parse_program(req.hamiltonian)
    trotter = None
    if req.trotter is not None:
        trotter = TrotterConfig(req.trotter.order, req.trotter.steps, req.trotter.total_time)
    coupling = _coupling_from_request(req)
    opts = CompileOptions(
        isa=req.isa,
        coupling=coupling,
        trotter=trotter,
        baseline_naive=req.baseline,
        order=OrderConfig(
            lookahead_k=req.lookahead,
            hardware_aware=req.hardware_aware,
            use_similarity=req.similarity,
        ),
        simplify=SimplifyConfig(),
        decompose_swaps=req.decompose_swaps,
    )
    result = compile_program(program, opts)
    realized = format_program(HamiltonianProgram(program.n_qubits, result.realized_terms))
    m = result.metrics
    return CompileResponse(
        circuit=to_text(result.circuit),
        realized_order=realized,
        metrics=MetricsModel(
            n_2q=m.n_2q,
            depth_2q=m.depth_2q,
            n_1q=m.n_1q,
            n_swap=m.n_swap,
            n_su4=m.n_su4,
            isa=m.isa,
            routed=m.routed,
            wall_time_ms=m.wall_time_ms,
            stages_ms=m.stages_ms,
        ),
        used_baseline=result.used_baseline,
        warnings=warnings + result.warnings,
    )


def handle_verify(req: VerifyRequest) -> VerifyResponse:
    circuit = from_text(req.circuit)
    program, _ = parse_program(req.hamiltonian)
    u = verify.pauli_exp_product(program.terms)
    v = verify.unitary_of(circuit)
    if u.shape != v.shape:
        raise ValueError(
            f"circuit has {circuit.n_qubits} qubits, program has {program.n_qubits}"
        )
    return VerifyResponse(infidelity=verify.infidelity(u, v), n_qubits=circuit.n_qubits)


def handle_stats(req: StatsRequest) -> MetricsModel:
    circuit = from_text(req.circuit)
    isa = "su4" if any(g.name == "su4" for g in circuit.gates) else "cnot"
    routed = any(g.name == "swap" for g in circuit.gates)
    m = scan_metrics(circuit, isa=isa, routed=routed)
    return MetricsModel(
        n_2q=m.n_2q,
        depth_2q=m.depth_2q,
        n_1q=m.n_1q,
        n_swap=m.n_swap,
        n_su4=m.n_su4,
        isa=m.isa,
        routed=m.routed,
        wall_time_ms=0.0,
        stages_ms={},
    )


def handle_bench_qaoa(req: QAOABenchRequest) -> BenchResponse:
    program = bench.qaoa_program(req.kind, req.size, req.seed)
    return BenchResponse(hamiltonian=format_program(program), n_terms=len(program.terms))


def handle_bench_random(req: RandomBenchRequest) -> BenchResponse:
    program = bench.random_program(
        req.n_qubits, req.n_terms, req.min_weight, req.max_weight, req.seed,
        req.terms_per_support,
    )
    return BenchResponse(hamiltonian=format_program(program), n_terms=len(program.terms))


app = FastAPI(title="pauliforge", description="Pauli-IR circuit compiler service")

_USER_ERRORS = (ValueError, HamiltonianParseError, CircuitParseError, CouplingError)


def _wrap(handler, req):
    try:
        return handler(req)
    except _USER_ERRORS as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/compile", response_model=CompileResponse)
def compile_endpoint(req: CompileRequest):
    return _wrap(handle_compile, req)


@app.post("/verify", response_model=VerifyResponse)
def verify_endpoint(req: VerifyRequest):
    return _wrap(handle_verify, req)


@app.post("/stats", response_model=MetricsModel)
def stats_endpoint(req: StatsRequest):
    return _wrap(handle_stats, req)


@app.post("/bench/qaoa", response_model=BenchResponse)
def bench_qaoa_endpoint(req: QAOABenchRequest):
    return _wrap(handle_bench_qaoa, req)


@app.post("/bench/random", response_model=BenchResponse)
def bench_random_endpoint(req: RandomBenchRequest):
    return _wrap(handle_bench_random, req)
