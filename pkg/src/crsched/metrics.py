"""Fairness and replication statistics.

The fairness index is (sum x)^2 / (N sum x^2): 1 at perfect equality, 1/N
when one user holds everything.  Sample sizing follows the normal-theory
rule n = ceil((z_{alpha/2} sigma / E)^2) for a confidence interval of
half-width E; the normal quantile is a rational approximation (Acklam
coefficients, |relative error| < 1.2e-9) sharpened by one Halley step, so
there is no statistics dependency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class TooFewSamples(ValueError):
    """Summaries need at least two records."""


@dataclass(frozen=True, eq=False)
class MetricsRecord:
    """One scheduling period's outcome for one scheduler run."""

    period_index: int
    per_su_throughput: np.ndarray     # packets/slot
    total_throughput: float
    min_throughput: float
    normalized_min: float             # min over SUs of throughput / target share
    jain: float | None                # None when every throughput is zero
    objective_value: float
    scheduler_kind: str
    solver_kind: str                  # "exact" | "heuristic"
    seed: int


def jain_index(throughputs) -> float | None:
    """Fairness index of a non-negative allocation; None when all-zero.

    The all-zero case is 0/0 and is reported as absent rather than pinned to
    either bound.
    """
    x = np.asarray(throughputs, dtype=float)
    total_sq = float(x.sum()) ** 2
    denom = len(x) * float((x * x).sum())
    if denom == 0.0:
        return None
    return total_sq / denom


_ACKLAM_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
             1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_ACKLAM_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
             6.680131188771972e+01, -1.328068155288572e+01)
_ACKLAM_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
             -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_ACKLAM_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
             3.754408661907416e+00)
_P_LOW = 0.02425


def normal_quantile(q: float) -> float:
    """Inverse standard normal CDF on (0, 1)."""
    if not 0.0 < q < 1.0:
        raise ValueError(f"quantile argument must lie in (0, 1), got {q}")
    a, b, c, d = _ACKLAM_A, _ACKLAM_B, _ACKLAM_C, _ACKLAM_D
    if q < _P_LOW:
        r = math.sqrt(-2.0 * math.log(q))
        x = (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) / \
            ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0)
    elif q > 1.0 - _P_LOW:
        r = math.sqrt(-2.0 * math.log(1.0 - q))
        x = -(((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) / \
            ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0)
    else:
        r = q - 0.5
        s = r * r
        x = (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s + a[5]) * r / \
            (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0)
    # one Halley step against erfc brings the estimate to machine precision
    err = 0.5 * math.erfc(-x / math.sqrt(2.0)) - q
    u = err * math.sqrt(2.0 * math.pi) * math.exp(x * x / 2.0)
    return x - u / (1.0 + x * u / 2.0)


def required_sample_size(sigma: float, alpha: float, half_width: float) -> int:
    """Samples needed for the mean to sit within +-half_width at level alpha."""
    if half_width <= 0:
        raise ValueError("half_width must be positive")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    if sigma == 0.0:
        return 0
    z = normal_quantile(1.0 - alpha / 2.0)
    return int(math.ceil((z * sigma / half_width) ** 2))


@dataclass(frozen=True, eq=False)
class Summary:
    mean: float
    std: float            # unbiased sample standard deviation
    ci_half_width: float  # z_{alpha/2} * std / sqrt(n)
    n: int
    alpha: float


def summarize(records, alpha: float = 0.05, field: str = "objective_value") -> Summary:
    """Mean, sample standard deviation and CI half-width of one record field."""
    values = np.array([getattr(rec, field) if hasattr(rec, field) else float(rec)
                       for rec in records], dtype=float)
    if len(values) < 2:
        raise TooFewSamples(f"need at least 2 records, got {len(values)}")
    mean = float(values.mean())
    std = float(values.std(ddof=1))
    z = normal_quantile(1.0 - alpha / 2.0)
    return Summary(mean=mean, std=std, ci_half_width=z * std / math.sqrt(len(values)),
                   n=len(values), alpha=alpha)
