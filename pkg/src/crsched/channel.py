"""Per-link rate model: free-space loss, interference caps, integer rates.

Transmit power toward the base station is capped so that the most exposed
active licensee sharing the frequency stays below its tolerable interference
power; the capped uplink SNR is then mapped through log capacity to whole
packets per slot.  When nobody is active on a frequency, a stand-in licensee
is assumed at the nearest cell-edge point so neighbouring cells stay safe.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .params import CellState, SimParams

# Free-space path loss diverges as d -> 0; distances are clamped below at the
# standard 1 m far-field reference before any gain is evaluated.
FAR_FIELD_M = 1.0

_FOUR_PI = 4.0 * math.pi

# floor() sits on exact integer boundaries for engineered SNRs; absorb the
# last-ulp error instead of flapping between k and k-1.
_FLOOR_EPS = 1e-12


class DegenerateGeometry(ValueError):
    """SU sits exactly on the base station; the path-loss model is undefined."""


@dataclass(frozen=True, eq=False)
class RateMatrix:
    """Max whole packets per slot for each (SU, frequency), frozen for one period."""

    u: np.ndarray          # (N, F) non-negative integers
    period_index: int = 0

    def __post_init__(self):
        arr = np.array(self.u, dtype=np.int64)
        arr.flags.writeable = False
        object.__setattr__(self, "u", arr)


def _as_rates(u) -> np.ndarray:
    return u.u if isinstance(u, RateMatrix) else np.asarray(u)


def max_tx_power(su: int, f: int, state: CellState, p: SimParams,
                 su_pu_fading: np.ndarray | None = None) -> float:
    """Largest transmit power (W) SU `su` may use on frequency `f`.

    Minimum over licensees active on `f` of tolerance / coupling, where the
    coupling is the squared free-space amplitude times fading.  With an empty
    active set the bound comes from a stand-in licensee at the nearest
    boundary point (distance cell_radius - |pos|) carrying the most
    protective configured tolerance.
    """
    lam = float(p.wavelengths_m[f])
    active = np.nonzero(state.pu_state == f)[0]
    if active.size == 0:
        r = float(np.hypot(state.su_pos[su, 0], state.su_pos[su, 1]))
        d = max(p.cell_radius_m - r, FAR_FIELD_M)
        coupling = (lam / (_FOUR_PI * d)) ** 2
        return float(p.max_tolerable_if_w.min()) / coupling
    best = math.inf
    for j in active:
        dx = state.su_pos[su, 0] - state.pu_pos[j, 0]
        dy = state.su_pos[su, 1] - state.pu_pos[j, 1]
        d = max(math.hypot(dx, dy), FAR_FIELD_M)
        h = 1.0 if su_pu_fading is None else float(su_pu_fading[su, j])
        coupling = (lam / (_FOUR_PI * d) * abs(h)) ** 2
        best = min(best, float(p.max_tolerable_if_w[j, f]) / coupling)
    return best


def cbs_gain(su: int, f: int, state: CellState, p: SimParams,
             su_cbs_fading: np.ndarray | None = None) -> float:
    """Amplitude gain of the SU -> base-station link (its square is the path gain)."""
    d = float(np.hypot(state.su_pos[su, 0], state.su_pos[su, 1]))
    if d <= 0.0:
        raise DegenerateGeometry(f"SU {su} is colocated with the base station")
    d = max(d, FAR_FIELD_M)
    h = 1.0 if su_cbs_fading is None else float(su_cbs_fading[su])
    return float(p.wavelengths_m[f]) / (_FOUR_PI * d * h)


def rate(su: int, f: int, state: CellState, p: SimParams,
         su_pu_fading: np.ndarray | None = None,
         su_cbs_fading: np.ndarray | None = None) -> int:
    """Whole packets per slot SU `su` can move on frequency `f` right now."""
    p_x = max_tx_power(su, f, state, p, su_pu_fading)
    g = cbs_gain(su, f, state, p, su_cbs_fading)
    snr = p_x * g * g / p.noise_interference_w
    return int(math.floor(math.log1p(snr) + _FLOOR_EPS))


def compute_rate_matrix(state: CellState, p: SimParams, period_index: int = 0,
                        su_pu_fading: np.ndarray | None = None,
                        su_cbs_fading: np.ndarray | None = None) -> RateMatrix:
    """Evaluate `rate` for every (SU, frequency) at the period's opening slot.

    Vectorized equivalent of the per-link functions above; the result is held
    constant for the whole scheduling period.
    """
    n, m, f_cnt = p.n_sus, p.n_pus, p.n_freqs
    lam = np.asarray(p.wavelengths_m)
    su_r = np.hypot(state.su_pos[:, 0], state.su_pos[:, 1])
    if np.any(su_r <= 0.0):
        raise DegenerateGeometry("an SU is colocated with the base station")
    d_cbs = np.maximum(su_r, FAR_FIELD_M)
    h_cbs = np.ones(n) if su_cbs_fading is None else np.asarray(su_cbs_fading, dtype=float)
    gain2 = (lam[None, :] / (_FOUR_PI * d_cbs[:, None] * h_cbs[:, None])) ** 2

    if m:
        delta = state.su_pos[:, None, :] - state.pu_pos[None, :, :]
        d_pu = np.maximum(np.hypot(delta[..., 0], delta[..., 1]), FAR_FIELD_M)
    else:
        d_pu = np.zeros((n, 0))
    h_pu = np.ones((n, m)) if su_pu_fading is None else np.asarray(su_pu_fading, dtype=float)
    d_virtual = np.maximum(p.cell_radius_m - su_r, FAR_FIELD_M)
    p_if_floor = float(p.max_tolerable_if_w.min()) if p.max_tolerable_if_w.size else 0.0

    p_x = np.empty((n, f_cnt))
    for f in range(f_cnt):
        active = state.pu_state == f
        if active.any():
            coupling = (lam[f] / (_FOUR_PI * d_pu[:, active]) * np.abs(h_pu[:, active])) ** 2
            p_x[:, f] = (p.max_tolerable_if_w[active, f][None, :] / coupling).min(axis=1)
        else:
            p_x[:, f] = p_if_floor / (lam[f] / (_FOUR_PI * d_virtual)) ** 2

    snr = p_x * gain2 / p.noise_interference_w
    u = np.floor(np.log1p(snr) + _FLOOR_EPS).astype(np.int64)
    return RateMatrix(u=u, period_index=period_index)


def write_rate_matrix_csv(rm: RateMatrix, path) -> None:
    """Debug dump: one row per SU, one integer column per frequency."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["su"] + [f"f{j}" for j in range(rm.u.shape[1])])
        for i, row in enumerate(rm.u):
            w.writerow([i] + [int(v) for v in row])
