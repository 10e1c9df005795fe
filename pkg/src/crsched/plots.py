"""Figure rendering for the comparison report.

Bars per scheduler for total throughput and fairness, a per-SU throughput
breakdown, and sweep curves when the results carry a sweep axis.  Files go
next to the delimited output; the CSVs stay the contract.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _label(row) -> str:
    return f"{row['scheduler']}:{row['solver']}"


def _group(rows, key):
    out = {}
    for r in rows:
        out.setdefault(key(r), []).append(r)
    return out


def _bar(ax, labels, values, ylabel):
    xs = np.arange(len(labels))
    ax.bar(xs, values, color="tab:blue", width=0.6)
    ax.set_xticks(xs)
    ax.set_xticklabels(labels, rotation=20, ha="right")
    ax.set_ylabel(ylabel)
    ax.grid(True, axis="y", alpha=0.3)


def render_compare_figures(rows, out_dir) -> list:
    """Write PNG figures for a set of results rows; returns written paths."""
    out_dir = Path(out_dir)
    period_rows = [r for r in rows if r["su_index"] == "0"]
    written = []

    by_sched = _group(period_rows, _label)
    labels = sorted(by_sched)

    fig, axes = plt.subplots(1, 2, figsize=(9, 3.2))
    totals = [np.mean([float(r["total_throughput"]) for r in by_sched[k]]) for k in labels]
    _bar(axes[0], labels, totals, "mean total throughput (packets/slot)")
    jains = []
    for k in labels:
        vals = [float(r["jain"]) for r in by_sched[k] if r["jain"] != ""]
        jains.append(np.mean(vals) if vals else 0.0)
    _bar(axes[1], labels, jains, "mean fairness index")
    axes[1].set_ylim(0, 1.05)
    fig.tight_layout()
    path = out_dir / "compare_throughput_fairness.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    # per-SU mean throughput, grouped by scheduler
    su_rows = _group(rows, lambda r: (_label(r), int(r["su_index"])))
    n_sus = 1 + max(k[1] for k in su_rows)
    fig, ax = plt.subplots(figsize=(max(6, 0.9 * n_sus), 3.2))
    width = 0.8 / max(len(labels), 1)
    for pos, k in enumerate(labels):
        means = [np.mean([float(r["throughput"]) for r in su_rows.get((k, su), [])] or [0.0])
                 for su in range(n_sus)]
        ax.bar(np.arange(n_sus) + pos * width, means, width=width, label=k)
    ax.set_xticks(np.arange(n_sus) + 0.4 - width / 2)
    ax.set_xticklabels([f"SU {i}" for i in range(n_sus)])
    ax.set_ylabel("mean throughput (packets/slot)")
    ax.legend(fontsize=8)
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    path = out_dir / "compare_per_su_throughput.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    sweep_rows = [r for r in period_rows if r["sweep_field"] != ""]
    if sweep_rows:
        field = sweep_rows[0]["sweep_field"]
        fig, axes = plt.subplots(1, 2, figsize=(9, 3.2))
        for k in sorted({_label(r) for r in sweep_rows}):
            pts = _group([r for r in sweep_rows if _label(r) == k],
                         lambda r: float(r["sweep_value"]))
            xs = sorted(pts)
            axes[0].plot(xs, [np.mean([float(r["total_throughput"]) for r in pts[x]])
                              for x in xs], marker="o", label=k)
            axes[1].plot(xs, [np.mean([float(r["jain"]) for r in pts[x] if r["jain"] != ""] or [0])
                              for x in xs], marker="s", label=k)
        for ax, ylab in zip(axes, ["mean total throughput", "mean fairness index"]):
            ax.set_xlabel(field)
            ax.set_ylabel(ylab)
            ax.grid(True, alpha=0.3)
            ax.legend(fontsize=8)
        fig.tight_layout()
        path = out_dir / f"compare_sweep_{field}.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written
