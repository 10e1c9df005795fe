"""Command line front end: run experiment plans, compare result files, and
spot-check the exact solvers against the enumeration oracle."""

from __future__ import annotations

import sys

import click
import numpy as np

from . import exact
from .fairness import FairnessState
from .harness import compare_report, load_plan, run as run_plan
from .params import ParamError, SimParams


@click.group()
def main():
    """Cognitive-radio cell scheduling workbench."""


@main.command(name="run")
@click.argument("plan_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=int, default=None, help="Master seed (defaults to the scenario's).")
@click.option("--workers", type=int, default=1, show_default=True,
              help="Concurrent cell simulations.")
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
def run_cmd(plan_file, seed, workers, out_dir):
    """Execute an experiment plan and write results/summary CSV files."""
    try:
        plan = load_plan(plan_file)
        results, summary = run_plan(plan, out_dir, seed=seed, workers=workers)
    except ParamError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"results: {results}")
    click.echo(f"summary: {summary}")


@main.command(name="compare")
@click.argument("csvs", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
@click.option("--out-dir", type=click.Path(file_okay=False), default=None,
              help="Where to write compare.csv and figures; print-only when omitted.")
@click.option("--figures/--no-figures", default=True, show_default=True)
def compare_cmd(csvs, out_dir, figures):
    """Tabulate per-scheduler means (and heuristic/exact ratios) from results CSVs."""
    report = compare_report(list(csvs), out_dir=out_dir, figures=figures)
    header = f"{'scheduler':<10} {'solver':<10} {'periods':>8} {'total':>10} {'jain':>7} {'objective':>11}"
    click.echo(header)
    click.echo("-" * len(header))
    for row in report["table"]:
        jain = f"{row['mean_jain']:.4f}" if row["mean_jain"] is not None else "-"
        obj = f"{row['mean_objective']:.4f}" if row["mean_objective"] is not None else "-"
        click.echo(f"{row['scheduler']:<10} {row['solver']:<10} {row['n_periods']:>8} "
                   f"{row['mean_total_throughput']:>10.4f} {jain:>7} {obj:>11}")
    for kind, ratio in sorted(report["ratios"].items()):
        click.echo(f"heuristic/exact objective ratio for {kind}: {ratio:.4f}")
    for path in report["written"]:
        click.echo(f"wrote {path}")


@main.command(name="oracle-check")
@click.argument("size_limits")
@click.option("--instances", type=int, default=50, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def oracle_check_cmd(size_limits, instances, seed):
    """Cross-check the exact solvers against full enumeration.

    SIZE_LIMITS is "N,F,T" — the maximum SU, frequency and slot counts of
    the random instances (all must stay within the oracle budget).
    """
    try:
        n_max, f_max, t_max = (int(v) for v in size_limits.split(","))
    except ValueError:
        raise click.ClickException("size limits look like 'N,F,T', e.g. '3,3,3'")
    rng = np.random.default_rng(seed)
    worst = {kind: 0.0 for kind in exact.OBJECTIVE_KINDS}
    checked = 0
    while checked < instances:
        n = int(rng.integers(1, n_max + 1))
        f = int(rng.integers(1, f_max + 1))
        t = int(rng.integers(1, t_max + 1))
        if n > f * t:
            continue
        checked += 1
        p = SimParams(n_sus=n, n_pus=1, n_freqs=f, slots_per_period=t,
                      antennas=rng.integers(1, 3, size=n), window=int(rng.integers(1, 6)))
        u = rng.integers(0, 10, size=(n, f))
        fs = FairnessState(r=rng.integers(0, 6, size=n).astype(float),
                           k=int(rng.integers(1, 8)))
        for kind in exact.OBJECTIVE_KINDS:
            got = exact.solve_exact(kind, u, fs, p)
            want = exact.brute_force(u, fs, p, kind)
            if got.objective == want.objective:  # covers the -inf sentinel
                continue
            worst[kind] = max(worst[kind], abs(got.objective - want.objective))
    failed = False
    for kind in exact.OBJECTIVE_KINDS:
        ok = worst[kind] <= 1e-9
        failed |= not ok
        click.echo(f"{'PASS' if ok else 'FAIL'} {kind}: max |solver - oracle| = {worst[kind]:.3e} "
                   f"over {checked} instances")
    if failed:
        sys.exit(1)


if __name__ == "__main__":
    main()
