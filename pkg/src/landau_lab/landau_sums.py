"""Landau's exponential sum over the zeros and its residual against the prime-power limit."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .arithmetic import Frequency, classify_frequency, numeric_frequency, predicted_landau_limit
from .errors import DomainError
from .zeros import ZeroTable, count_zeros

CHUNK = 4096


@dataclass(frozen=True)
class LandauScanPoint:
    a: float
    T: float
    lam: float
    normalized: float
    predicted: float
    residual: float

    def row(self) -> list[float]:
        return [self.a, self.T, self.lam, self.normalized, self.predicted, self.residual]


CSV_HEADER = ["a", "T", "lambda", "normalized", "predicted", "residual"]


def lambda_sum(table: ZeroTable, a: float, T: float, *, chunk: int = CHUNK) -> float:
    """lambda_a(T) = 2 sum_{0 < t <= T} cos(a t).

    Kahan summation inside fixed chunks, pairwise across chunks; the result does
    not depend on the thread count.
    """
    if not a > 0:
        raise DomainError("lambda_sum needs a > 0")
    n = count_zeros(table, T)
    if n == 0:
        return 0.0
    partial = kernels.chunk_cos_sums(table.ordinates[:n], a, chunk)
    return 2.0 * kernels.pairwise_sum(partial)


def _as_frequency(a) -> Frequency:
    if isinstance(a, Frequency):
        return a
    if isinstance(a, dict):
        return classify_frequency(a)
    return numeric_frequency(a)


def scan_point(table: ZeroTable, freq, T: float) -> LandauScanPoint:
    freq = _as_frequency(freq)
    lam = lambda_sum(table, freq.a, T)
    normalized = lam / (2.0 * T)
    predicted = predicted_landau_limit(freq)
    return LandauScanPoint(freq.a, T, lam, normalized, predicted, normalized - predicted)


def landau_scan(table: ZeroTable, a_grid: Sequence, T: float) -> list[LandauScanPoint]:
    """One scan point per frequency.  Floats are classified numerically, Frequency objects kept."""
    if len(a_grid) == 0:
        raise DomainError("empty frequency grid")
    freqs = [_as_frequency(a) for a in a_grid]
    if any(f2.a < f1.a for f1, f2 in zip(freqs, freqs[1:])):
        raise DomainError("frequency grid must be ascending")
    return [scan_point(table, f, T) for f in freqs]


@dataclass(frozen=True)
class Convergence:
    T: np.ndarray
    residual: np.ndarray
    slope: float  # of log|residual| against log T; nan with fewer than two usable points

    def pairs(self) -> list[tuple[float, float]]:
        return list(zip(self.T.tolist(), self.residual.tolist()))


def landau_convergence(table: ZeroTable, freq, T_list: Sequence[float]) -> Convergence:
    freq = _as_frequency(freq)
    Ts = np.asarray(list(T_list), dtype=float)
    if Ts.size > 1 and np.any(np.diff(Ts) <= 0):
        raise DomainError("T_list must be ascending")
    res = np.array([scan_point(table, freq, T).residual for T in Ts])
    nz = res != 0
    slope = math.nan
    if nz.sum() >= 2:
        slope = float(np.polyfit(np.log(Ts[nz]), np.log(np.abs(res[nz])), 1)[0])
    return Convergence(Ts, res, slope)


def _residual_sup(table: ZeroTable, freq, T_min: float, T_max: float, weighted: bool) -> float:
    # lambda is a step function, so the sup sits at an ordinate (either side) or an interval end
    freq = _as_frequency(freq)
    table.require_coverage(T_max)
    t = table.ordinates
    steps = 2.0 * np.cos(freq.a * t)
    running = np.cumsum(steps)
    lo = int(np.searchsorted(t, T_min, side="right"))
    hi = int(np.searchsorted(t, T_max, side="right"))
    pred = predicted_landau_limit(freq)

    def scale(T):
        return T / np.log(T) if weighted else np.ones_like(T)

    ends = np.array([T_min, T_max])
    lams = np.array([running[lo - 1] if lo else 0.0, running[hi - 1] if hi else 0.0])
    best = float(np.max(np.abs(lams / (2 * ends) - pred) * scale(ends)))
    if hi > lo:
        Ts = t[lo:hi]
        after = running[lo:hi]
        for lam in (after - steps[lo:hi], after):
            best = max(best, float(np.max(np.abs(lam / (2 * Ts) - pred) * scale(Ts))))
    return best


def residual_envelope(table: ZeroTable, freq, T_min: float, T_max: float) -> float:
    """sup of |residual(T)| T / log T over [T_min, T_max]."""
    return _residual_sup(table, freq, T_min, T_max, weighted=True)


def residual_window_sup(table: ZeroTable, freq, T: float) -> float:
    """sup of |residual| over [T/2, T].

    A single residual can sit near a sign change and be tiny, which makes
    ratios of pointwise residuals erratic; the sup over a dyadic window is
    the quantity that follows the log T / T decay.
    """
    return _residual_sup(table, freq, T / 2.0, T, weighted=False)
