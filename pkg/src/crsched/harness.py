"""Experiment driver: scenario -> slot/period simulation -> CSV results.

One run covers a grid of (scheduler x sweep point) cells.  Each cell
simulates a single cell trajectory: warm-up slots, then scheduling periods
of T slots each; a period recomputes the rate matrix from the current cell
state, solves or greedily schedules, folds the result into the fairness
state and emits one record.  All schedulers at a sweep point share the same
environment stream, so exact comparisons ride on identical rate sequences.

Replication sizing is either a fixed period count or adaptive: take 50
periods, size n from their standard deviation, take n more (capped), then
re-derive n from the full sample as an independence sanity flag.
"""

from __future__ import annotations

import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .channel import compute_rate_matrix
from .env import init_cell_state, step_slot
from .exact import solve_exact
from .fairness import SCHEDULER_KINDS, FairnessState, period_objective, update
from .heuristic import HeuristicMode, greedy_fair_schedule
from .metrics import MetricsRecord, jain_index, required_sample_size, summarize
from .params import ConfigError, SimParams, load_scenario, scenario_from_dict, validate_params

SCHEMA_VERSION = "1"

CSV_COLUMNS = [
    "schema_version", "scheduler", "solver", "sweep_field", "sweep_value",
    "seed", "period", "su_index", "throughput", "total_throughput", "jain",
    "objective", "proven_optimal",
]

SUMMARY_COLUMNS = [
    "schema_version", "scheduler", "solver", "sweep_field", "sweep_value",
    "seed", "n_periods", "mean_objective", "std_objective", "ci_half_width",
    "n_required", "n_recheck", "replication_ok", "mean_total_throughput",
    "mean_jain", "mean_min_throughput",
]

SOLVER_KINDS = ("exact", "heuristic")
BOOTSTRAP_PERIODS = 50
DEFAULT_MAX_PERIODS = 5000
DEFAULT_WARMUP_SLOTS = 100

PLAN_KEYS = frozenset({
    "scenario", "schedulers", "sweep", "replications", "warmup_slots", "output",
})


class SchemaMismatch(ValueError):
    """A results CSV does not carry the expected header."""


@dataclass(frozen=True)
class SchedulerSpec:
    kind: str
    solver: str


@dataclass(frozen=True, eq=False)
class ExperimentPlan:
    scenario: SimParams
    schedulers: tuple
    sweep_field: str | None
    sweep_values: tuple
    policy: str                    # "fixed" | "adaptive"
    n_periods: int                 # fixed policy
    alpha: float                   # adaptive policy
    half_width: float
    max_periods: int
    warmup_slots: int
    output: str


def _parse_scheduler(text) -> SchedulerSpec:
    if isinstance(text, str) and ":" in text:
        kind, solver = text.split(":", 1)
    elif isinstance(text, dict):
        kind, solver = text.get("kind", ""), text.get("solver", "")
    else:
        raise ConfigError(f"scheduler entries look like 'kind:solver', got {text!r}")
    if kind not in SCHEDULER_KINDS:
        raise ConfigError(f"unknown scheduler kind {kind!r}")
    if solver not in SOLVER_KINDS:
        raise ConfigError(f"unknown solver kind {solver!r}")
    if kind == "thrmax" and solver == "heuristic":
        raise ConfigError("the greedy pass targets the fair objectives only; use thrmax:exact")
    return SchedulerSpec(kind=kind, solver=solver)


def plan_from_dict(data: dict, base_dir: Path) -> ExperimentPlan:
    if not isinstance(data, dict):
        raise ConfigError("plan file must hold a key/value mapping")
    unknown = sorted(set(data) - PLAN_KEYS)
    if unknown:
        raise ConfigError("unknown plan keys: " + ", ".join(unknown))
    scenario = data.get("scenario")
    if isinstance(scenario, dict):
        params = scenario_from_dict(scenario)
    elif isinstance(scenario, str):
        params = load_scenario((base_dir / scenario) if not Path(scenario).is_absolute()
                               else scenario)
    else:
        raise ConfigError("plan needs a 'scenario' path or inline mapping")

    scheds = tuple(_parse_scheduler(s) for s in data.get("schedulers", []))
    if not scheds:
        raise ConfigError("plan needs at least one scheduler")

    sweep = data.get("sweep")
    if sweep is None:
        sweep_field, sweep_values = None, (None,)
    else:
        sweep_field = sweep.get("field")
        sweep_values = tuple(sweep.get("values", ()))
        if sweep_field is None or not sweep_values:
            raise ConfigError("sweep needs a 'field' and a non-empty 'values' list")
        for v in sweep_values:
            validate_params(_apply_sweep(params, sweep_field, v))

    rep = data.get("replications", {"policy": "adaptive", "alpha": 0.05, "half_width": 0.5})
    policy = rep.get("policy", "adaptive")
    if policy == "fixed":
        n_periods = int(rep.get("n", 0))
        if n_periods < 2:
            raise ConfigError("fixed replication policy needs n >= 2")
        alpha, half_width, max_periods = 0.05, 0.5, n_periods
    elif policy == "adaptive":
        alpha = float(rep.get("alpha", 0.05))
        half_width = float(rep.get("half_width", 0.5))
        max_periods = int(rep.get("max_periods", DEFAULT_MAX_PERIODS))
        n_periods = BOOTSTRAP_PERIODS
        if not 0.0 < alpha < 1.0 or half_width <= 0:
            raise ConfigError("adaptive policy needs alpha in (0,1) and half_width > 0")
        if max_periods < BOOTSTRAP_PERIODS:
            raise ConfigError(f"max_periods must be at least {BOOTSTRAP_PERIODS}")
    else:
        raise ConfigError(f"unknown replication policy {policy!r}")

    return ExperimentPlan(
        scenario=params, schedulers=scheds, sweep_field=sweep_field,
        sweep_values=sweep_values, policy=policy, n_periods=n_periods,
        alpha=alpha, half_width=half_width, max_periods=max_periods,
        warmup_slots=int(data.get("warmup_slots", DEFAULT_WARMUP_SLOTS)),
        output=str(data.get("output", "results")))


def load_plan(path) -> ExperimentPlan:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"plan file {path} is not valid JSON: {exc}") from exc
    return plan_from_dict(data, Path(path).resolve().parent)


def _apply_sweep(params: SimParams, field: str | None, value) -> SimParams:
    if field is None:
        return params
    if field == "antennas":
        return replace(params, antennas=np.full(params.n_sus, int(value)))
    if field == "n_sus":
        # dependent per-SU vectors resize with the SU count
        return replace(params, n_sus=int(value), weights=None,
                       antennas=int(params.antennas[0]))
    if field == "n_pus":
        m = int(value)
        return replace(params, n_pus=m,
                       max_tolerable_if_w=np.full((m, params.n_freqs),
                                                  float(params.max_tolerable_if_w.min())))
    if field == "n_freqs":
        f = int(value)
        return replace(params, n_freqs=f, wavelengths_m=None,
                       max_tolerable_if_w=np.full((params.n_pus, f),
                                                  float(params.max_tolerable_if_w.min())))
    if not hasattr(params, field):
        raise ConfigError(f"unknown sweep field {field!r}")
    return replace(params, **{field: value})


def _cell_seed(master_seed: int, sweep_index: int) -> int:
    ss = np.random.SeedSequence([int(master_seed), int(sweep_index)])
    return int(ss.generate_state(1, np.uint32)[0])


_HEURISTIC_MODES = {
    "maxmin": HeuristicMode.MAXMIN,
    "wmaxmin": HeuristicMode.WEIGHTED_MAXMIN,
    "propfair": HeuristicMode.PROPFAIR,
}


def _simulate_cell(args):
    """One trajectory for one (scheduler, sweep point) cell.

    Returns (cell_index, records, sizing dict).  Top-level so worker
    processes can receive it.
    """
    (cell_index, params, spec, master_seed, sweep_index, policy, n_fixed,
     alpha, half_width, max_periods, warmup_slots) = args
    rng = np.random.default_rng(np.random.SeedSequence([int(master_seed), int(sweep_index)]))
    seed_tag = _cell_seed(master_seed, sweep_index)
    state = init_cell_state(params, rng)
    for _ in range(warmup_slots):
        state = step_slot(state, params, rng)

    fs = FairnessState.initial(params.n_sus)
    records = []

    def run_period(state, fs):
        rm = compute_rate_matrix(state, params, period_index=fs.k)
        if spec.solver == "exact":
            res = solve_exact(spec.kind, rm, fs, params)
            sched, objective, proven = res.schedule, res.objective, res.proven_optimal
        else:
            sched = greedy_fair_schedule(rm, params, _HEURISTIC_MODES[spec.kind])
            objective, proven = period_objective(spec.kind, sched, fs, params), False
        thr = sched.per_su_throughput
        records.append(MetricsRecord(
            period_index=fs.k,
            per_su_throughput=thr,
            total_throughput=float(thr.sum()),
            min_throughput=float(thr.min()),
            normalized_min=float((thr / params.weights).min()),
            jain=jain_index(thr),
            objective_value=objective,
            scheduler_kind=spec.kind,
            solver_kind=spec.solver,
            seed=seed_tag,
        ))
        fs = update(fs, sched, params)
        for _ in range(params.slots_per_period):
            state = step_slot(state, params, rng)
        return state, fs

    sizing = {"n_required": "", "n_recheck": "", "ok": ""}
    try:
        if policy == "fixed":
            for _ in range(n_fixed):
                state, fs = run_period(state, fs)
        else:
            for _ in range(min(BOOTSTRAP_PERIODS, max_periods)):
                state, fs = run_period(state, fs)
            sigma = summarize(records, alpha).std
            n_more = required_sample_size(sigma, alpha, half_width)
            sizing["n_required"] = n_more
            for _ in range(min(n_more, max_periods - len(records))):
                state, fs = run_period(state, fs)
            n_recheck = required_sample_size(summarize(records, alpha).std, alpha, half_width)
            sizing["n_recheck"] = n_recheck
            sizing["ok"] = n_recheck <= len(records)
    except Exception:
        print(f"cell failed: scheduler={spec.kind}:{spec.solver} "
              f"sweep_index={sweep_index} seed={seed_tag} period={len(records) + 1}",
              file=sys.stderr)
        raise
    return cell_index, records, sizing


def _fmt(value) -> str:
    if value is None or value == "":
        return ""
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return f"{value:.6f}"
    return str(value)


def run(plan: ExperimentPlan, out_dir, seed: int | None = None, workers: int = 1):
    """Execute a plan; returns (results_csv_path, summary_csv_path).

    Output row order is fixed (sweep point, scheduler, period, SU) no matter
    how many workers execute cells, and the same master seed reproduces the
    files byte for byte.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    master_seed = plan.scenario.rng_seed if seed is None else int(seed)

    cells = []
    for s_idx, value in enumerate(plan.sweep_values):
        params = _apply_sweep(plan.scenario, plan.sweep_field, value)
        validate_params(params)
        for spec in plan.schedulers:
            cells.append((len(cells), params, spec, master_seed, s_idx,
                          plan.policy, plan.n_periods, plan.alpha,
                          plan.half_width, plan.max_periods, plan.warmup_slots))

    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = {idx: (recs, sizing) for idx, recs, sizing in pool.map(_simulate_cell, cells)}
    else:
        outcomes = {}
        for cell in cells:
            idx, recs, sizing = _simulate_cell(cell)
            outcomes[idx] = (recs, sizing)

    results_path = out_dir / f"{plan.output}.csv"
    summary_path = out_dir / f"{plan.output}_summary.csv"
    with open(results_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for cell in cells:
            idx, _, spec, _, s_idx = cell[0], cell[1], cell[2], cell[3], cell[4]
            sweep_value = plan.sweep_values[s_idx]
            recs, _ = outcomes[idx]
            for rec in recs:
                for su in range(len(rec.per_su_throughput)):
                    w.writerow([
                        SCHEMA_VERSION, rec.scheduler_kind, rec.solver_kind,
                        _fmt(plan.sweep_field), _fmt(sweep_value), rec.seed,
                        rec.period_index, su, _fmt(float(rec.per_su_throughput[su])),
                        _fmt(rec.total_throughput), _fmt(rec.jain),
                        _fmt(rec.objective_value),
                        _fmt(spec.solver == "exact"),
                    ])
    with open(summary_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_COLUMNS)
        for cell in cells:
            idx, spec, s_idx = cell[0], cell[2], cell[4]
            recs, sizing = outcomes[idx]
            summary = summarize(recs, plan.alpha)
            jains = [rec.jain for rec in recs if rec.jain is not None]
            w.writerow([
                SCHEMA_VERSION, spec.kind, spec.solver, _fmt(plan.sweep_field),
                _fmt(plan.sweep_values[s_idx]), recs[0].seed, len(recs),
                _fmt(summary.mean), _fmt(summary.std), _fmt(summary.ci_half_width),
                _fmt(sizing["n_required"]), _fmt(sizing["n_recheck"]), _fmt(sizing["ok"]),
                _fmt(float(np.mean([rec.total_throughput for rec in recs]))),
                _fmt(float(np.mean(jains)) if jains else ""),
                _fmt(float(np.mean([rec.min_throughput for rec in recs]))),
            ])
    return results_path, summary_path


# ---------------------------------------------------------------------------
# comparison report over result files
# ---------------------------------------------------------------------------

def read_results(path):
    """Rows of a results CSV as dicts; raises SchemaMismatch on a bad header."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != CSV_COLUMNS:
            raise SchemaMismatch(f"{path}: header {header} != expected schema")
        return [dict(zip(CSV_COLUMNS, row)) for row in reader]


def compare_report(csv_paths, out_dir=None, figures: bool = True):
    """Aggregate result files into a per-scheduler summary table.

    Returns {"table": rows, "ratios": {kind: heuristic/exact objective ratio}};
    when out_dir is given, writes compare.csv and (optionally) figures next
    to it.
    """
    rows = []
    for path in csv_paths:
        rows.extend(read_results(path))
    period_rows = [r for r in rows if r["su_index"] == "0"]
    if not period_rows:
        raise SchemaMismatch("no period rows found in the inputs")

    groups = {}
    for r in period_rows:
        groups.setdefault((r["scheduler"], r["solver"]), []).append(r)

    table = []
    mean_obj = {}
    for (kind, solver) in sorted(groups):
        grp = groups[(kind, solver)]
        objs = [float(r["objective"]) for r in grp if r["objective"] not in ("", "-inf")]
        jains = [float(r["jain"]) for r in grp if r["jain"] != ""]
        entry = {
            "scheduler": kind,
            "solver": solver,
            "n_periods": len(grp),
            "mean_total_throughput": float(np.mean([float(r["total_throughput"]) for r in grp])),
            "mean_jain": float(np.mean(jains)) if jains else None,
            "mean_objective": float(np.mean(objs)) if objs else None,
        }
        mean_obj[(kind, solver)] = entry["mean_objective"]
        table.append(entry)

    ratios = {}
    for kind in SCHEDULER_KINDS:
        h, e = mean_obj.get((kind, "heuristic")), mean_obj.get((kind, "exact"))
        if h is not None and e not in (None, 0.0):
            ratios[kind] = h / e

    written = []
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        cmp_path = out_dir / "compare.csv"
        with open(cmp_path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["scheduler", "solver", "n_periods", "mean_total_throughput",
                        "mean_jain", "mean_objective", "heuristic_over_exact"])
            for entry in table:
                w.writerow([entry["scheduler"], entry["solver"], entry["n_periods"],
                            _fmt(entry["mean_total_throughput"]), _fmt(entry["mean_jain"]),
                            _fmt(entry["mean_objective"]),
                            _fmt(ratios.get(entry["scheduler"], ""))])
        written.append(cmp_path)
        if figures:
            from .plots import render_compare_figures
            written.extend(render_compare_figures(rows, out_dir))
    return {"table": table, "ratios": ratios, "written": written}
