"""Scenario parameters and shared domain types.

Everything downstream (channel model, cell dynamics, solvers, harness) reads
from one immutable SimParams value.  Construction never raises so that invalid
configurations can be inspected; validate_params() is the explicit gate and
names the violated invariant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

SPEED_OF_LIGHT_MPS = 299_792_458.0

# Channel carriers default to F channels evenly spaced across this band
# (TV-band style); only the resulting wavelengths are stored.
DEFAULT_BAND_LOW_HZ = 500e6
DEFAULT_BAND_HIGH_HZ = 700e6

#: pu_state value for an idle licensee; an active one stores the 0-based
#: index of the frequency it occupies.
PU_OFF = -1

# Low / middle / high levels of the six swept scenario factors.
PARAM_LEVELS = {
    "n_sus": (5, 15, 30),
    "n_pus": (5, 20, 40),
    "n_freqs": (3, 15, 30),
    "pu_speed_mps": (1.0, 13.0, 25.0),
    "su_speed_mps": (1.0, 13.0, 25.0),
    "antennas": (1, 3, 5),
}


class ParamError(ValueError):
    """Base class for scenario validation failures."""


class WeightSumError(ParamError):
    """Target shares must each lie in (0, 1] and sum to 1."""


class InfeasibleGeometry(ParamError):
    """More SUs than (frequency, slot) pairs: nobody can guarantee coverage."""


class NonPositiveParam(ParamError):
    """A count, power, length, duration or probability is out of range."""


class ConfigError(ParamError):
    """Malformed scenario or plan file (unknown keys, wrong shapes)."""


class ScheduleInvariantError(ValueError):
    """An assignment tensor violates the feasibility constraints."""


def wavelengths_for_band(n_freqs: int, band_low_hz: float = DEFAULT_BAND_LOW_HZ,
                         band_high_hz: float = DEFAULT_BAND_HIGH_HZ) -> np.ndarray:
    """Carrier wavelengths (m) for n_freqs channels evenly spaced over a band."""
    if n_freqs <= 0:
        return np.zeros(0)
    if n_freqs == 1:
        freqs = np.array([(band_low_hz + band_high_hz) / 2.0])
    else:
        freqs = np.linspace(band_low_hz, band_high_hz, n_freqs)
    return SPEED_OF_LIGHT_MPS / freqs


def _frozen(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class SimParams:
    """All scenario constants.  Defaults are the middle study levels plus the
    fixed physical settings (AWGN, 600 m cell, 10 x 100 ms slots per period).
    """

    n_sus: int = 15
    n_pus: int = 20
    n_freqs: int = 15
    slots_per_period: int = 10
    slot_len_s: float = 0.1
    cell_radius_m: float = 600.0
    window: int = 5
    weights: object = None          # (N,) target shares; None -> 1/N each
    antennas: object = 3            # (N,) transceiver counts; scalar broadcasts
    p_stay: float = 0.9
    noise_interference_w: float = 1e-6
    max_tolerable_if_w: object = 0.01   # (M, F) watts; scalar broadcasts
    wavelengths_m: object = None        # (F,) meters; None -> default band
    su_speed_mps: float = 13.0
    pu_speed_mps: float = 13.0
    pause_s: float = 10.0
    rng_seed: int = 0

    def __post_init__(self):
        put = object.__setattr__
        n = max(int(self.n_sus), 0)
        m = max(int(self.n_pus), 0)
        f = max(int(self.n_freqs), 0)
        put(self, "n_sus", int(self.n_sus))
        put(self, "n_pus", int(self.n_pus))
        put(self, "n_freqs", int(self.n_freqs))
        put(self, "slots_per_period", int(self.slots_per_period))
        put(self, "window", int(self.window))

        if self.weights is None:
            w = np.full(n, 1.0 / n) if n else np.zeros(0)
        else:
            w = np.asarray(self.weights, dtype=float)
        put(self, "weights", _frozen(w))

        a = np.asarray(self.antennas)
        if a.ndim == 0:
            a = np.full(n, int(a))
        put(self, "antennas", _frozen(a, dtype=np.int64))

        pif = np.asarray(self.max_tolerable_if_w, dtype=float)
        if pif.ndim == 0:
            pif = np.full((m, f), float(pif))
        put(self, "max_tolerable_if_w", _frozen(pif))

        if self.wavelengths_m is None:
            lam = wavelengths_for_band(f)
        else:
            lam = np.asarray(self.wavelengths_m, dtype=float)
        put(self, "wavelengths_m", _frozen(lam))


def validate_params(p: SimParams) -> None:
    """Raise a ParamError naming the violated invariant; return None if valid."""
    for name in ("n_sus", "n_pus", "n_freqs", "slots_per_period", "window"):
        if getattr(p, name) < 1:
            raise NonPositiveParam(f"{name} must be a positive count, got {getattr(p, name)}")
    for name in ("slot_len_s", "cell_radius_m", "noise_interference_w", "pause_s"):
        v = getattr(p, name)
        if not (v > 0):
            raise NonPositiveParam(f"{name} must be strictly positive, got {v}")
    for name in ("su_speed_mps", "pu_speed_mps"):
        v = getattr(p, name)
        if v < 0:
            raise NonPositiveParam(f"{name} must be non-negative, got {v}")
    if not (0.0 <= p.p_stay <= 1.0):
        raise NonPositiveParam(f"p_stay must lie in [0, 1], got {p.p_stay}")
    if int(p.rng_seed) < 0:
        raise NonPositiveParam(f"rng_seed must be non-negative, got {p.rng_seed}")

    if p.weights.shape != (p.n_sus,):
        raise WeightSumError(f"weights must have one entry per SU, got shape {p.weights.shape}")
    if np.any(p.weights <= 0) or np.any(p.weights > 1):
        raise WeightSumError("every weight must lie in (0, 1]")
    if abs(float(p.weights.sum()) - 1.0) > 1e-9:
        raise WeightSumError(f"weights must sum to 1, got {float(p.weights.sum()):.12f}")

    if p.antennas.shape != (p.n_sus,):
        raise NonPositiveParam(f"antennas must have one entry per SU, got shape {p.antennas.shape}")
    if np.any(p.antennas < 1):
        raise NonPositiveParam("every SU needs at least one antenna")

    if p.max_tolerable_if_w.shape != (p.n_pus, p.n_freqs):
        raise NonPositiveParam(
            f"max_tolerable_if_w must be (n_pus, n_freqs), got shape {p.max_tolerable_if_w.shape}")
    if np.any(p.max_tolerable_if_w <= 0):
        raise NonPositiveParam("tolerable interference powers must be strictly positive")

    if p.wavelengths_m.shape != (p.n_freqs,):
        raise NonPositiveParam(f"wavelengths_m must be (n_freqs,), got shape {p.wavelengths_m.shape}")
    if np.any(p.wavelengths_m <= 0):
        raise NonPositiveParam("wavelengths must be strictly positive")

    if p.n_sus > p.n_freqs * p.slots_per_period:
        raise InfeasibleGeometry(
            f"{p.n_sus} SUs cannot each receive a pair from "
            f"{p.n_freqs} frequencies x {p.slots_per_period} slots")


@dataclass(frozen=True, eq=False)
class CellState:
    """Node positions, waypoints, pause timers and licensee occupancy at one slot.

    The base station sits at the origin; every position stays inside the cell
    disk.  pu_state[j] is PU_OFF or the 0-based frequency PU j occupies.
    """

    su_pos: np.ndarray
    pu_pos: np.ndarray
    su_waypoint: np.ndarray
    pu_waypoint: np.ndarray
    su_pause_left_s: np.ndarray
    pu_pause_left_s: np.ndarray
    pu_state: np.ndarray

    def __post_init__(self):
        put = object.__setattr__
        for name in ("su_pos", "pu_pos", "su_waypoint", "pu_waypoint",
                     "su_pause_left_s", "pu_pause_left_s"):
            put(self, name, _frozen(getattr(self, name)))
        put(self, "pu_state", _frozen(self.pu_state, dtype=np.int64))


@dataclass(frozen=True, eq=False)
class Schedule:
    """Binary assignment tensor (SU, frequency, slot) plus derived throughputs."""

    assign: np.ndarray             # (N, F, T) in {0, 1}
    per_su_throughput: np.ndarray  # (N,) packets/slot

    def __post_init__(self):
        object.__setattr__(self, "assign", _frozen(self.assign, dtype=np.int8))
        object.__setattr__(self, "per_su_throughput", _frozen(self.per_su_throughput))

    @classmethod
    def from_assign(cls, assign: np.ndarray, u: np.ndarray) -> "Schedule":
        assign = np.asarray(assign)
        t = assign.shape[2]
        counts = assign.sum(axis=2)
        thr = (counts * np.asarray(u, dtype=float)).sum(axis=1) / t
        return cls(assign=assign, per_su_throughput=thr)


def check_schedule(sched: Schedule, u: np.ndarray, p: SimParams, atol: float = 1e-9) -> None:
    """Assert the three feasibility constraints plus throughput consistency."""
    x = sched.assign
    n, f, t = p.n_sus, p.n_freqs, p.slots_per_period
    if x.shape != (n, f, t):
        raise ScheduleInvariantError(f"assign shape {x.shape} != {(n, f, t)}")
    if not np.isin(x, (0, 1)).all():
        raise ScheduleInvariantError("assign entries must be binary")
    if np.any(x.sum(axis=0) > 1):
        raise ScheduleInvariantError("some (frequency, slot) pair carries more than one SU")
    if np.any(x.sum(axis=(1, 2)) < 1):
        raise ScheduleInvariantError("some SU received no (frequency, slot) pair")
    if np.any(x.sum(axis=1) > np.asarray(p.antennas)[:, None]):
        raise ScheduleInvariantError("some SU exceeds its antenna count within a slot")
    thr = (x.sum(axis=2) * np.asarray(u, dtype=float)).sum(axis=1) / t
    if np.max(np.abs(thr - sched.per_su_throughput), initial=0.0) > atol:
        raise ScheduleInvariantError("per_su_throughput inconsistent with assign and rates")


# Exact key set accepted in scenario files.  band_* keys are loader sugar:
# they turn into wavelengths_m and are not SimParams fields.
SCENARIO_KEYS = frozenset({
    "n_sus", "n_pus", "n_freqs", "slots_per_period", "slot_len_s",
    "cell_radius_m", "window", "weights", "antennas", "p_stay",
    "noise_interference_w", "max_tolerable_if_w", "band_low_hz",
    "band_high_hz", "su_speed_mps", "pu_speed_mps", "pause_s", "rng_seed",
})

_FIELD_DEFAULTS = {f.name: f.default for f in fields(SimParams)}


def scenario_from_dict(data: dict) -> SimParams:
    """Build and validate SimParams from a scenario mapping (strict keys)."""
    if not isinstance(data, dict):
        raise ConfigError("scenario file must hold a key/value mapping")
    unknown = sorted(set(data) - SCENARIO_KEYS)
    if unknown:
        raise ConfigError("unknown scenario keys: " + ", ".join(unknown))
    data = dict(data)
    band_lo = data.pop("band_low_hz", DEFAULT_BAND_LOW_HZ)
    band_hi = data.pop("band_high_hz", DEFAULT_BAND_HIGH_HZ)
    if not (0 < band_lo <= band_hi):
        raise ConfigError(f"band must satisfy 0 < low <= high, got [{band_lo}, {band_hi}]")
    n_freqs = int(data.get("n_freqs", _FIELD_DEFAULTS["n_freqs"]))
    p = SimParams(wavelengths_m=wavelengths_for_band(n_freqs, band_lo, band_hi), **data)
    validate_params(p)
    return p


def load_scenario(path) -> SimParams:
    """Load a JSON scenario file.  Unknown keys are an error."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"scenario file {path} is not valid JSON: {exc}") from exc
    return scenario_from_dict(data)
