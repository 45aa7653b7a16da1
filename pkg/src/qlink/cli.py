"""Command-line front end: every model is reachable as a subcommand.

Machine-readable output is the point: CSV for tables and sweeps, JSON for
single reports (with the full input configuration echoed for provenance),
plain text where a human just wants to look. Identical flags and seed give
byte-identical output.
"""
from __future__ import annotations

import csv
import io
import json
import os
import sys

import click

from . import analytic, circuits, montecarlo, timing, workload
from .codes import CodeStack, builtin_codes, parse_stack


class ScientificInt(click.ParamType):
    """Integer that also accepts scientific notation, e.g. 1e7."""

    name = "integer"

    def convert(self, value, param, ctx):
        if isinstance(value, int):
            return value
        try:
            as_float = float(value)
        except ValueError:
            self.fail(f"{value!r} is not an integer", param, ctx)
        if as_float != int(as_float):
            self.fail(f"{value!r} is not a whole number", param, ctx)
        return int(as_float)


class FloatList(click.ParamType):
    """Comma-separated list of reals (scientific notation welcome)."""

    name = "float-list"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            return tuple(float(item) for item in str(value).split(","))
        except ValueError:
            self.fail(f"{value!r} is not a comma-separated list of reals", param, ctx)


SCI_INT = ScientificInt()
FLOAT_LIST = FloatList()

_format_option = click.option(
    "--format", "fmt", type=click.Choice(["csv", "json", "text"]), default=None,
    help="Output format (each command has a natural default).",
)
_out_option = click.option("--out", type=click.Path(dir_okay=False), default=None,
                           help="Write output to a file instead of stdout.")
_seed_option = click.option("--seed", type=SCI_INT, default=0, envvar="QLINK_SEED",
                            show_default=True, help="Master RNG seed (or env QLINK_SEED).")
_workers_option = click.option("--workers", type=SCI_INT, default=lambda: os.cpu_count() or 1,
                               help="Worker threads for trial blocks [default: all cores].")
_mode_option = click.option("--mode", type=click.Choice(["leading", "exact"]), default="leading",
                            show_default=True, help="leading: lowest failure mode; exact: full binomial tail.")


def _fmt_number(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
        click.echo(f"wrote {out}", err=True)
    else:
        click.echo(text, nl=False)


def _emit_rows(header: list[str], rows: list[list], fmt: str, out: str | None) -> None:
    if fmt == "json":
        payload = [dict(zip(header, row)) for row in rows]
        _emit(json.dumps(payload, indent=2) + "\n", out)
        return
    buffer = io.StringIO()
    if fmt == "csv":
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt_number(v) for v in row])
    else:
        cells = [header] + [[_fmt_number(v) for v in row] for row in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
        for r in cells:
            buffer.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
    _emit(buffer.getvalue(), out)


def _emit_report(payload: dict, fmt: str, out: str | None) -> None:
    if fmt == "csv":
        _emit_rows(list(payload), [list(payload.values())], "csv", out)
    elif fmt == "text":
        width = max(len(k) for k in payload)
        text = "".join(f"{k.ljust(width)}  {_fmt_number(v)}\n" for k, v in payload.items())
        _emit(text, out)
    else:
        _emit(json.dumps(payload, indent=2) + "\n", out)


def _load_stack(spec: str) -> CodeStack:
    stack = parse_stack(spec)
    if len(stack) > 2:
        click.echo(
            f"warning: {len(stack)}-level stack; the models are exercised only up to two levels",
            err=True,
        )
    return stack


def _load_circuit(ref: str) -> circuits.EncoderCircuit:
    if ref == "default":
        return circuits.default_steane_encoder()
    return circuits.load_circuit(ref)


@click.group()
def cli():
    """Failure probabilities and EPR-pair costs for teleported logical qubits."""


@cli.command("codes")
@_format_option
@_out_option
def codes_cmd(fmt, out):
    """List the built-in error-correcting codes."""
    header = ["name", "n", "k", "d", "correctable"]
    rows = [[c.name, c.n, c.k, c.d, c.correctable] for c in builtin_codes()]
    _emit_rows(header, rows, fmt or "text", out)


@cli.command("analyze")
@click.option("--stack", default="none", show_default=True, help="Code stack spec, inner first.")
@click.option("--t", type=float, required=True, help="Total logical teleportations.")
@click.option("--target-pf", type=float, default=0.1, show_default=True,
              help="Acceptable whole-computation failure probability.")
@click.option("--pt", type=float, default=None, help="Also evaluate the failure at this error rate.")
@_mode_option
@_format_option
@_out_option
def analyze_cmd(stack, t, target_pf, pt, mode, fmt, out):
    """Allowable teleportation error rate for a stack and workload."""
    stack_obj = _load_stack(stack)
    model = analytic.ModelMode(mode)
    query = analytic.FailureQuery(stack=stack_obj, t=t, target_pf=target_pf, p_t=pt)
    payload = {
        "stack": stack_obj.spec(),
        "scale_up": stack_obj.scale_up,
        "t": t,
        "target_pf": target_pf,
        "mode": model.value,
        "allowable_pt": analytic.allowable_pt(stack_obj, t, target_pf, model),
    }
    if query.p_t is not None:
        failure = analytic.p_algorithm_failure(stack_obj, t, query.p_t, model)
        payload.update(
            p_t=query.p_t,
            block_error=failure.block_error,
            p_f=failure.p_f,
            linearized=failure.linearized,
            linearization_valid=failure.linearization_valid,
        )
    _emit_report(payload, fmt or "json", out)


@cli.command("table3")
@click.option("--t", "t_values", type=FLOAT_LIST, default=None,
              help="Comma-separated workload sizes [default: 1e5,1e8,1e11].")
@click.option("--stack", "stack_specs", default=None,
              help="Comma-separated stack specs [default: the seven reference stacks].")
@click.option("--target-pf", type=float, default=0.1, show_default=True)
@_mode_option
@_format_option
@_out_option
def table3_cmd(t_values, stack_specs, target_pf, mode, fmt, out):
    """Allowable error rate per stack and workload size (reference table)."""
    stacks = None
    if stack_specs is not None:
        stacks = [_load_stack(s) for s in stack_specs.split(",")]
    rows = analytic.table3(t_values, stacks, target_pf, analytic.ModelMode(mode))
    header = ["stack", "scale_up", "t", "mode", "allowable_pt"]
    data = [[r.stack, r.scale_up, r.t, r.mode.value, r.allowable_pt] for r in rows]
    _emit_rows(header, data, fmt or "csv", out)


def _mc_config(stack, pt, pm, serial, lanes, trials, seed, workers) -> montecarlo.McConfig:
    stack_obj = _load_stack(stack)
    mux = montecarlo.Multiplexing.SERIAL if serial else montecarlo.Multiplexing.PARALLEL
    if not serial and lanes is None:
        lanes = stack_obj.scale_up
    link = montecarlo.LinkParams(p_t=pt, p_m=pm, multiplexing=mux, lanes=lanes or 1)
    return montecarlo.McConfig(stack=stack_obj, link=link, trials=trials, seed=seed, workers=workers)


@cli.command("mc")
@click.option("--stack", default="7-1-3", show_default=True)
@click.option("--pt", type=float, required=True, help="Per-qubit teleportation failure probability.")
@click.option("--pm", type=float, default=0.0, show_default=True,
              help="Per-qubit memory error probability per waiting slot.")
@click.option("--serial/--parallel", "serial", default=False,
              help="Link multiplexing [default: parallel].")
@click.option("--lanes", type=SCI_INT, default=None,
              help="Parallel lane count [default: full block width].")
@click.option("--trials", type=SCI_INT, default=100_000, show_default=True)
@_seed_option
@_workers_option
@_format_option
@_out_option
def mc_cmd(stack, pt, pm, serial, lanes, trials, seed, workers, fmt, out):
    """Simulate logical-block transfers and estimate the failure probability."""
    config = _mc_config(stack, pt, pm, serial, lanes, trials, seed, workers)
    estimate = montecarlo.simulate_block_transfer(config)
    payload = {
        "stack": config.stack.spec(),
        "mode": config.link.multiplexing.value,
        "p_t": pt,
        "p_m": pm,
        "lanes": config.link.lanes,
        "trials": estimate.trials,
        "failures": estimate.failures,
        "p_hat": estimate.p_hat,
        "ci_low": estimate.ci_low,
        "ci_high": estimate.ci_high,
        "seed": estimate.seed,
        "workers": config.workers,
    }
    _emit_report(payload, fmt or "json", out)


@cli.command("sweep")
@click.option("--stack", default="7-1-3", show_default=True)
@click.option("--pt", "pt_values", type=FLOAT_LIST, default=(0.003, 0.01, 0.03),
              help="Comma-separated teleportation error rates [default: 0.003,0.01,0.03].")
@click.option("--pm", "pm_values", type=FLOAT_LIST, default=(0.0,),
              help="Comma-separated memory error rates [default: 0].")
@click.option("--serial/--parallel", "serial", default=None,
              help="Restrict to one link style [default: both].")
@click.option("--trials", type=SCI_INT, default=100_000, show_default=True)
@_seed_option
@_workers_option
@_format_option
@_out_option
def sweep_cmd(stack, pt_values, pm_values, serial, trials, seed, workers, fmt, out):
    """Grid of simulations over error rates, as plot-ready rows."""
    if serial is None:
        modes = [True, False]
    else:
        modes = [serial]
    header = ["stack", "mode", "p_t", "p_m", "trials", "failures", "p_hat", "ci_low", "ci_high", "seed"]
    rows = []
    for pt in pt_values:
        for pm in pm_values:
            for is_serial in modes:
                config = _mc_config(stack, pt, pm, is_serial, None, trials, seed, workers)
                est = montecarlo.simulate_block_transfer(config)
                rows.append([
                    config.stack.spec(), config.link.multiplexing.value, pt, pm,
                    est.trials, est.failures, est.p_hat, est.ci_low, est.ci_high, est.seed,
                ])
    _emit_rows(header, rows, fmt or "csv", out)


@cli.command("cut")
@click.option("--circuit", "circuit_ref", default="default", show_default=True,
              help="Encoder circuit: 'default' or a JSON file path.")
@_format_option
@_out_option
def cut_cmd(circuit_ref, fmt, out):
    """EPR cost of telegate vs teledata at every breakpoint of an encoder."""
    circuit = _load_circuit(circuit_ref)
    header = ["breakpoint", "telegate", "teledata", "direction"]
    rows = [
        [row.cut.label, row.telegate_eprs, row.teledata_eprs, row.teledata_direction.value]
        for row in circuits.cut_table(circuit)
    ]
    _emit_rows(header, rows, fmt or "csv", out)


@cli.command("dqec-cost")
@click.option("--circuit", "circuit_ref", default="default", show_default=True)
@click.option("--syndromes", type=SCI_INT, default=6, show_default=True)
@click.option("--repeats", type=SCI_INT, default=2, show_default=True)
@_format_option
@_out_option
def dqec_cost_cmd(circuit_ref, syndromes, repeats, fmt, out):
    """EPR budgets for distributed error correction, static and in motion."""
    circuit = _load_circuit(circuit_ref)
    telegate = circuits.inmotion_dqec_cost(circuit, circuits.TransferMethod.TELEGATE, syndromes, repeats)
    teledata = circuits.inmotion_dqec_cost(circuit, circuits.TransferMethod.TELEDATA, syndromes, repeats)
    center = circuits.CutPoint((circuit.n_qubits + 1) // 2)
    static_center, _ = circuits.teledata_cost(circuit, center)
    payload = {
        "per_syndrome_telegate": telegate.per_syndrome,
        "per_syndrome_teledata": teledata.per_syndrome,
        "per_cycle_telegate": telegate.per_cycle,
        "per_cycle_teledata": teledata.per_cycle,
        "static_cycle_at_center_cut": syndromes * repeats * static_center,
        "worst_case_block_teleports": teledata.worst_case_block_teleports,
        "syndromes": syndromes,
        "repeats": repeats,
    }
    _emit_report(payload, fmt or "json", out)


@cli.command("workload")
@click.option("--bits", type=SCI_INT, required=True, help="Problem size in bits.")
@click.option("--adder", type=click.Choice(["ripple", "lookahead"]), default=None,
              help="Adder choice [default: report the full range].")
@_format_option
@_out_option
def workload_cmd(bits, adder, fmt, out):
    """Teleportation count for the modular-exponentiation workload."""
    spec = workload.WorkloadSpec(bits=bits, adder=workload.AdderKind(adder) if adder else None)
    estimate = workload.teleport_count(spec)
    payload = {
        "bits": bits,
        "adder": adder or "range",
        "t_low": estimate.t_low,
        "t_high": estimate.t_high,
        "extrapolated": estimate.extrapolated,
        "anchor_bits": estimate.anchor_bits,
    }
    _emit_report(payload, fmt or "json", out)


@cli.command("link-timing")
@click.option("--tt", type=float, required=True, help="Single teleportation time.")
@click.option("--tlqec", type=float, required=True, help="Local correction cycle time.")
@click.option("--n", type=SCI_INT, required=True, help="Physical qubits per transferred block.")
@click.option("--lanes", type=SCI_INT, default=1, show_default=True)
@_format_option
@_out_option
def link_timing_cmd(tt, tlqec, n, lanes, fmt, out):
    """Cycle times of serial vs parallel links for one block transfer."""
    params = timing.TimingParams(t_t=tt, t_lqec=tlqec, n=n, lanes=lanes)
    times = timing.cycle_times(params)
    payload = {
        "t_t": tt,
        "t_lqec": tlqec,
        "n": n,
        "lanes": lanes,
        "serial": times.serial,
        "parallel": times.parallel,
        "slowdown": times.slowdown,
        "start_delay_factor": times.start_delay_factor,
    }
    _emit_report(payload, fmt or "json", out)


@cli.command("recommend")
@click.option("--stack", default="7-1-3", show_default=True, help="Single-level code spec.")
@click.option("--tt", type=float, required=True)
@click.option("--tlqec", type=float, required=True)
@click.option("--pt", type=float, required=True)
@click.option("--pm", type=float, default=None,
              help="Memory error rate per slot [default: pt / (10 (n - 1))].")
@click.option("--slowdown-threshold", type=float, default=timing.DEFAULT_SLOWDOWN_THRESHOLD,
              show_default=True)
@click.option("--reliability-threshold", type=float, default=timing.DEFAULT_RELIABILITY_THRESHOLD,
              show_default=True)
@_format_option
@_out_option
def recommend_cmd(stack, tt, tlqec, pt, pm, slowdown_threshold, reliability_threshold, fmt, out):
    """Recommend serial or parallel links for one code's block transfers."""
    stack_obj = _load_stack(stack)
    if len(stack_obj) != 1:
        raise click.UsageError("recommend needs a single-level stack, e.g. --stack 7-1-3")
    code = stack_obj.levels[0]
    if pm is None:
        pm = pt / (10 * (code.n - 1))
    params = timing.TimingParams(t_t=tt, t_lqec=tlqec, n=code.n)
    rec = timing.recommend(params, code, pt, pm, slowdown_threshold, reliability_threshold)
    payload = {
        "code": code.spec(),
        "t_t": tt,
        "t_lqec": tlqec,
        "p_t": pt,
        "p_m": pm,
        "choice": rec.choice.value,
        "slowdown": rec.slowdown,
        "reliability_ratio": rec.reliability_ratio,
        "slowdown_threshold": rec.slowdown_threshold,
        "reliability_threshold": rec.reliability_threshold,
        "reasons": list(rec.reasons),
    }
    _emit_report(payload, fmt or "json", out)


def main(argv=None) -> int:
    """Entry point with the documented exit codes: 0 ok, 1 bad input, 2 internal."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Abort:
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except Exception as exc:  # noqa: BLE001 - anything else is an internal failure
        click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
