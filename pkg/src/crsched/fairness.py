"""Windowed throughput memory carried across scheduling periods.

Each SU's aggregate rate is an exponentially weighted blend of its history
and the current period, with blend weight 1/min(k, window) so early periods
are well defined without a separate bootstrap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import Schedule, SimParams

SCHEDULER_KINDS = ("thrmax", "maxmin", "wmaxmin", "propfair")


@dataclass(frozen=True, eq=False)
class FairnessState:
    """Per-SU windowed aggregate throughput plus the 1-based period counter."""

    r: np.ndarray  # (N,) packets/slot
    k: int = 1

    def __post_init__(self):
        arr = np.array(self.r, dtype=float)
        arr.flags.writeable = False
        object.__setattr__(self, "r", arr)
        object.__setattr__(self, "k", int(self.k))

    @classmethod
    def initial(cls, n_sus: int) -> "FairnessState":
        return cls(r=np.zeros(n_sus), k=1)


def update(state: FairnessState, sched: Schedule, p: SimParams) -> FairnessState:
    """Blend the period's throughput into the aggregate and advance the counter."""
    m = min(state.k, p.window)
    r = (1.0 - 1.0 / m) * state.r + (1.0 / m) * sched.per_su_throughput
    return FairnessState(r=r, k=state.k + 1)


def effective_objective_offsets(state: FairnessState, p: SimParams,
                                weighted: bool = False):
    """Constant and coefficient each solver applies to the raw assigned rate sum.

    An SU's objective term is offset[i] + scale[i] * sum_{f,t} U[i,f] X[i,f,t];
    the weighted variant divides both by the SU's target share.
    """
    m = min(state.k, p.window)
    offsets = (1.0 - 1.0 / m) * state.r
    scales = np.full(len(state.r), 1.0 / (m * p.slots_per_period))
    if weighted:
        offsets = offsets / p.weights
        scales = scales / p.weights
    return offsets, scales


def period_objective(kind: str, sched: Schedule, state: FairnessState,
                     p: SimParams) -> float:
    """Objective value a schedule earns this period under the windowed blend.

    Lets heuristic schedules be scored on the same scale as exact solves.
    Returns -inf for the product objective when some SU's argument is zero.
    """
    if kind == "thrmax":
        return float(sched.per_su_throughput.sum())
    weighted = kind == "wmaxmin"
    offsets, scales = effective_objective_offsets(state, p, weighted=weighted)
    raw = sched.per_su_throughput * p.slots_per_period
    blend = offsets + scales * raw
    if kind in ("maxmin", "wmaxmin"):
        return float(blend.min())
    if kind == "propfair":
        if np.all(blend > 0):
            return float(np.log(blend).sum())
        return float("-inf")
    raise ValueError(f"unknown scheduler kind {kind!r}")
