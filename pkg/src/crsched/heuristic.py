"""Greedy per-period assignment for the fair objectives.

Walks the (frequency, slot) pairs frequency-major and hands each pair to one
SU: the one with the least accumulated (share-normalized) rate for the
max-min flavours, or the one maximizing the running rate product for the
proportional flavour.  Runs in O(N F T) (max-min) / O(N^2 F T) (prop-fair).
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .params import Schedule, SimParams
from .channel import _as_rates


class HeuristicMode(Enum):
    MAXMIN = "maxmin"
    WEIGHTED_MAXMIN = "wmaxmin"
    PROPFAIR = "propfair"


def greedy_fair_schedule(u, p: SimParams, mode: HeuristicMode) -> Schedule:
    """One-pass greedy schedule for a period.

    Ties on the selection score fall to the SU with the fewest assignments so
    far, then the lowest index; that keeps the pass deterministic and covers
    every SU within the first N pairs whenever N <= F*T, zero rates included.
    A pair is left unassigned only when every SU has exhausted its antennas
    for that slot.
    """
    rates = np.asarray(_as_rates(u), dtype=float)
    n, f_cnt = rates.shape
    t_cnt = p.slots_per_period
    work = rates / p.weights[:, None] if mode is HeuristicMode.WEIGHTED_MAXMIN else rates

    acc = np.zeros(n)                 # accumulated work-rate per SU (units of U/T)
    n_assigned = np.zeros(n, dtype=np.int64)
    slot_used = np.zeros((n, t_cnt), dtype=np.int64)
    assign = np.zeros((n, f_cnt, t_cnt), dtype=np.int8)
    antennas = np.asarray(p.antennas)

    for f in range(f_cnt):
        for t in range(t_cnt):
            avail = slot_used[:, t] < antennas
            if not avail.any():
                continue
            if mode is HeuristicMode.PROPFAIR:
                # score: new product of accumulated rates if this SU took the pair
                nonzero = acc != 0
                n_zero = int(np.count_nonzero(~nonzero))
                prod_nz = float(np.prod(acc[nonzero])) if nonzero.any() else 1.0
                if n_zero >= 2:
                    others = np.zeros(n)
                elif n_zero == 1:
                    others = np.where(~nonzero, prod_nz, 0.0)
                else:
                    others = prod_nz / acc
                score = (acc + work[:, f]) * others
                score[~avail] = -np.inf
                winner = _argbest(score, n_assigned, avail, maximize=True)
            else:
                score = acc.copy()
                score[~avail] = np.inf
                winner = _argbest(score, n_assigned, avail, maximize=False)
            assign[winner, f, t] = 1
            acc[winner] += work[winner, f] / t_cnt
            n_assigned[winner] += 1
            slot_used[winner, t] += 1

    return Schedule.from_assign(assign, rates)


def _argbest(score, n_assigned, avail, maximize):
    cand = np.nonzero(avail)[0]
    s = score[cand]
    best = s == (s.max() if maximize else s.min())
    tied = cand[best]
    if tied.size == 1:
        return int(tied[0])
    fewest = n_assigned[tied] == n_assigned[tied].min()
    return int(tied[fewest][0])
