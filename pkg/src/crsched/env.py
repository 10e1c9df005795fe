"""Cell dynamics: waypoint roaming inside the disk and the licensee ON/OFF chain.

Both processes advance once per time slot.  All randomness flows through one
generator per trajectory, with a fixed draw order (SU motion, PU motion,
occupancy), so a seed fully determines the state sequence.
"""

from __future__ import annotations

import csv
from dataclasses import replace

import numpy as np

from .params import PU_OFF, CellState, SimParams

#: One stream per replication; identical seed means identical draw sequence.
RngStream = np.random.Generator


def uniform_disk(rng: RngStream, n: int, radius: float) -> np.ndarray:
    """n points uniform by area over the disk (sqrt transform on the radius)."""
    r = radius * np.sqrt(rng.random(n))
    theta = 2.0 * np.pi * rng.random(n)
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def init_cell_state(p: SimParams, rng: RngStream) -> CellState:
    """Uniform positions and waypoints, zero pause timers, all licensees idle."""
    return CellState(
        su_pos=uniform_disk(rng, p.n_sus, p.cell_radius_m),
        pu_pos=uniform_disk(rng, p.n_pus, p.cell_radius_m),
        su_waypoint=uniform_disk(rng, p.n_sus, p.cell_radius_m),
        pu_waypoint=uniform_disk(rng, p.n_pus, p.cell_radius_m),
        su_pause_left_s=np.zeros(p.n_sus),
        pu_pause_left_s=np.zeros(p.n_pus),
        pu_state=np.full(p.n_pus, PU_OFF),
    )


def _advance_group(pos, wp, pause, speed, pause_s, radius, rng, dt):
    pos, wp, pause = pos.copy(), wp.copy(), pause.copy()
    was_paused = pause > 0
    if was_paused.any():
        pause[was_paused] = np.maximum(pause[was_paused] - dt, 0.0)
        expired = was_paused & (pause <= 0)
        n_exp = int(expired.sum())
        if n_exp:
            # pause over: aim at a fresh uniform waypoint
            wp[expired] = uniform_disk(rng, n_exp, radius)
            pause[expired] = 0.0
    if speed > 0:
        movers = np.nonzero(~was_paused)[0]
        if movers.size:
            delta = wp[movers] - pos[movers]
            dist = np.hypot(delta[:, 0], delta[:, 1])
            step = speed * dt
            short = dist <= step
            go = movers[~short]
            if go.size:
                pos[go] += delta[~short] * (step / dist[~short])[:, None]
            hit = movers[short]
            if hit.size:
                pos[hit] = wp[hit]
                pause[hit] = pause_s
                if pause_s <= 0:
                    wp[hit] = uniform_disk(rng, hit.size, radius)
    return pos, wp, pause


def step_mobility(state: CellState, p: SimParams, rng: RngStream, dt: float) -> CellState:
    """One waypoint-roaming step of dt seconds for every node.

    A paused node burns its timer and re-aims on expiry; a moving node covers
    speed*dt toward its waypoint and starts a pause of pause_s on arrival.
    Waypoints are interior, so positions never leave the disk.
    """
    su_pos, su_wp, su_pause = _advance_group(
        state.su_pos, state.su_waypoint, state.su_pause_left_s,
        p.su_speed_mps, p.pause_s, p.cell_radius_m, rng, dt)
    pu_pos, pu_wp, pu_pause = _advance_group(
        state.pu_pos, state.pu_waypoint, state.pu_pause_left_s,
        p.pu_speed_mps, p.pause_s, p.cell_radius_m, rng, dt)
    return replace(state, su_pos=su_pos, su_waypoint=su_wp, su_pause_left_s=su_pause,
                   pu_pos=pu_pos, pu_waypoint=pu_wp, pu_pause_left_s=pu_pause)


def step_pu_occupancy(state: CellState, p: SimParams, rng: RngStream) -> CellState:
    """One occupancy-chain step per licensee.

    Stay in the current (macro) state with probability p_stay; otherwise an
    idle licensee jumps to a uniformly drawn frequency and an active one goes
    idle.  An active licensee never hops directly between frequencies.  The
    frequency draw happens for every licensee so the stream advances by a
    fixed amount per slot.
    """
    m = p.n_pus
    stay = rng.random(m) < p.p_stay
    freq = rng.integers(0, p.n_freqs, size=m)
    s = np.array(state.pu_state)
    switch = ~stay
    idle = s == PU_OFF
    s[switch & idle] = freq[switch & idle]
    s[switch & ~idle] = PU_OFF
    return replace(state, pu_state=s)


def step_slot(state: CellState, p: SimParams, rng: RngStream) -> CellState:
    """Advance one time slot: motion over slot_len_s, then one occupancy step."""
    state = step_mobility(state, p, rng, p.slot_len_s)
    return step_pu_occupancy(state, p, rng)


def active_pu_set(state: CellState, f: int) -> set:
    """Indices of licensees currently occupying frequency f."""
    return set(int(j) for j in np.nonzero(state.pu_state == f)[0])


def append_trace_row(writer: csv.writer, slot: int, state: CellState) -> None:
    """Optional per-slot debug trace row (positions flattened, occupancy)."""
    writer.writerow(
        [slot]
        + [f"{v:.3f}" for v in state.su_pos.ravel()]
        + [f"{v:.3f}" for v in state.pu_pos.ravel()]
        + [int(v) for v in state.pu_state])
