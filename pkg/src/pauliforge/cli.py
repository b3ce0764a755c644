"""Command-line driver. A thin client over the service layer: each subcommand
builds the same request models the HTTP endpoints accept and either calls the
handlers in-process (default) or POSTs them to a running server (--server)."""
from __future__ import annotations

import sys

import click

from . import service


def _remote_or_local(handler, endpoint, req, server):
    if server is None:
        return handler(req).model_dump()
    import httpx

    resp = httpx.post(f"{server.rstrip('/')}{endpoint}", json=req.model_dump(), timeout=600.0)
    if resp.status_code != 200:
        raise click.ClickException(f"server error {resp.status_code}: {resp.text}")
    return resp.json()


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


@click.group()
def main():
    """Pauli-IR optimizing compiler for Hamiltonian-simulation programs."""


_server_opt = click.option("--server", default=None, help="Base URL of a running service; "
                           "by default commands run in-process.")


@main.command("compile")
@click.argument("hamiltonian", type=click.Path(exists=True))
@click.option("--isa", type=click.Choice(["cnot", "su4"]), default="cnot")
@click.option("--topology", "topology", type=click.Choice(["all-to-all"]), default=None,
              help="Explicit all-to-all topology (default when no graph is given).")
@click.option("--heavy-hex", "heavy_hex", default=None, metavar="RxC",
              help="Route onto a heavy-hex lattice, e.g. 3x3.")
@click.option("--coupling", type=click.Path(exists=True), default=None,
              help="Route onto the coupling graph in this file.")
@click.option("--lookahead", default=10, show_default=True)
@click.option("--hardware-aware", is_flag=True, default=False)
@click.option("--no-similarity", is_flag=True, default=False)
@click.option("--trotter", default=None, metavar="order=K,steps=R,t=T",
              help="Trotterize before compiling, e.g. order=2,steps=1,t=1.0.")
@click.option("--baseline", type=click.Choice(["naive"]), default=None)
@click.option("--decompose-swaps", is_flag=True, default=False)
@click.option("--out", default=None, help="Circuit output file (default stdout).")
@click.option("--order-out", default=None, help="Write the realized rotation order here.")
@click.option("--report-out", default=None, help="Write the key=value report here.")
@_server_opt
def cmd_compile(hamiltonian, isa, topology, heavy_hex, coupling, lookahead, hardware_aware,
                no_similarity, trotter, baseline, decompose_swaps, out, order_out,
                report_out, server):
    """Compile a Hamiltonian file to an optimized circuit."""
    if sum(x is not None for x in (topology, heavy_hex, coupling)) > 1:
        raise click.UsageError("choose one of --topology all-to-all, --heavy-hex, --coupling")
    trotter_spec = None
    if trotter:
        fields = dict(kv.split("=", 1) for kv in trotter.split(","))
        try:
            trotter_spec = service.TrotterSpec(
                order=int(fields.get("order", 1)),
                steps=int(fields.get("steps", 1)),
                total_time=float(fields.get("t", fields.get("total_time", 1.0))),
            )
        except (KeyError, ValueError) as exc:
            raise click.UsageError(f"bad --trotter spec: {exc}") from exc
    coupling_text = None
    if coupling:
        with open(coupling) as fh:
            coupling_text = fh.read()
    with open(hamiltonian) as fh:
        ham_text = fh.read()
    req = service.CompileRequest(
        hamiltonian=ham_text,
        isa=isa,
        topology="heavy-hex" if heavy_hex else ("coupling" if coupling else "all-to-all"),
        heavy_hex=heavy_hex,
        coupling=coupling_text,
        lookahead=lookahead,
        hardware_aware=hardware_aware or heavy_hex is not None or coupling is not None,
        similarity=not no_similarity,
        trotter=trotter_spec,
        baseline=baseline == "naive",
        decompose_swaps=decompose_swaps,
    )
    try:
        resp = _remote_or_local(service.handle_compile, "/compile", req, server)
    except service._USER_ERRORS as exc:
        raise click.ClickException(str(exc)) from exc
    for w in resp["warnings"]:
        click.echo(f"warning: {w}", err=True)
    _write(out, resp["circuit"])
    if order_out:
        _write(order_out, resp["realized_order"])
    m = resp["metrics"]
    report = [
        f"isa={m['isa']}",
        f"routed={int(m['routed'])}",
        f"n_2q={m['n_2q']}",
        f"depth_2q={m['depth_2q']}",
        f"n_1q={m['n_1q']}",
        f"n_swap={m['n_swap']}",
        f"n_su4={m['n_su4']}",
        f"wall_time_ms={m['wall_time_ms']:.3f}",
    ]
    report.extend(f"stage_ms.{k}={v:.3f}" for k, v in m["stages_ms"].items())
    report_text = "\n".join(report) + "\n"
    if report_out:
        _write(report_out, report_text)
    click.echo(report_text, err=out is None, nl=False)


@main.command("verify")
@click.argument("circuit", type=click.Path(exists=True))
@click.argument("hamiltonian", type=click.Path(exists=True))
@_server_opt
def cmd_verify(circuit, hamiltonian, server):
    """Print the infidelity between a circuit file and a term-order file."""
    with open(circuit) as fh:
        circ_text = fh.read()
    with open(hamiltonian) as fh:
        ham_text = fh.read()
    req = service.VerifyRequest(circuit=circ_text, hamiltonian=ham_text)
    try:
        resp = _remote_or_local(service.handle_verify, "/verify", req, server)
    except service._USER_ERRORS as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"infidelity={resp['infidelity']:.3e}")


@main.command("stats")
@click.argument("circuit", type=click.Path(exists=True))
@_server_opt
def cmd_stats(circuit, server):
    """Recount metrics of a circuit file."""
    with open(circuit) as fh:
        text = fh.read()
    req = service.StatsRequest(circuit=text)
    try:
        resp = _remote_or_local(service.handle_stats, "/stats", req, server)
    except service._USER_ERRORS as exc:
        raise click.ClickException(str(exc)) from exc
    for key in ("isa", "routed", "n_2q", "depth_2q", "n_1q", "n_swap", "n_su4"):
        value = int(resp[key]) if key == "routed" else resp[key]
        click.echo(f"{key}={value}")


@main.command("bench-qaoa")
@click.option("--kind", type=click.Choice(["reg3", "rand4"]), default="reg3", show_default=True)
@click.option("--size", default=16, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", default=None)
@_server_opt
def cmd_bench_qaoa(kind, size, seed, out, server):
    """Generate a QAOA cost Hamiltonian over a seeded regular graph."""
    req = service.QAOABenchRequest(kind=kind, size=size, seed=seed)
    try:
        resp = _remote_or_local(service.handle_bench_qaoa, "/bench/qaoa", req, server)
    except service._USER_ERRORS as exc:
        raise click.ClickException(str(exc)) from exc
    _write(out, resp["hamiltonian"])


@main.command("bench-random")
@click.option("--qubits", default=8, show_default=True)
@click.option("--terms", default=16, show_default=True)
@click.option("--min-weight", default=2, show_default=True)
@click.option("--max-weight", default=4, show_default=True)
@click.option("--terms-per-support", default=4, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", default=None)
@_server_opt
def cmd_bench_random(qubits, terms, min_weight, max_weight, terms_per_support, seed, out, server):
    """Generate a seeded heterogeneous-weight random program."""
    req = service.RandomBenchRequest(
        n_qubits=qubits, n_terms=terms, min_weight=min_weight, max_weight=max_weight,
        seed=seed, terms_per_support=terms_per_support,
    )
    try:
        resp = _remote_or_local(service.handle_bench_random, "/bench/random", req, server)
    except service._USER_ERRORS as exc:
        raise click.ClickException(str(exc)) from exc
    _write(out, resp["hamiltonian"])


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def cmd_serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("pauliforge.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
