"""Cycle sums eta_{a,h}(n), the orbit function H_a(tau) and the window count nu_a(tau)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import CoverageError, DomainError
from .zeros import ZeroTable, count_zeros

TWO_PI = 2.0 * math.pi
BOUNDARY_EPS = 1e-12


@dataclass(frozen=True)
class CycleSample:
    n: int
    a: float
    h: float
    value: complex


@dataclass(frozen=True)
class OrbitSample:
    tau: float
    a: float
    value: complex
    nu: int
    center: float
    boundary_hit: bool = False


@dataclass(frozen=True)
class EtaSeries:
    """Columnar form of a run of CycleSamples."""

    n: np.ndarray
    a: float
    h: float
    values: np.ndarray

    def samples(self) -> list[CycleSample]:
        return [CycleSample(int(n), self.a, self.h, complex(v)) for n, v in zip(self.n, self.values)]

    def __len__(self):
        return self.n.size


@dataclass(frozen=True)
class OrbitTrace:
    tau: np.ndarray
    a: float
    values: np.ndarray
    nu: np.ndarray
    center: np.ndarray
    boundary_hit: np.ndarray

    def samples(self) -> list[OrbitSample]:
        return [
            OrbitSample(float(t), self.a, complex(v), int(n), float(c), bool(b))
            for t, v, n, c, b in zip(self.tau, self.values, self.nu, self.center, self.boundary_hit)
        ]

    def __len__(self):
        return self.tau.size


def _check_a(a: float) -> None:
    if not a > 0:
        raise DomainError("frequency a must be positive")


def eta_values(table: ZeroTable, a: float, h: float, n_min: int, n_max: int) -> EtaSeries:
    """eta_{a,h}(n) for n_min <= n <= n_max in one pass over the table."""
    _check_a(a)
    if n_min < 1:
        raise DomainError("eta is defined here for n >= 1 only (log(n/a) diverges at n = 0)")
    if n_max < n_min:
        return EtaSeries(np.empty(0, dtype=np.int64), a, h, np.empty(0, dtype=complex))
    top = TWO_PI * (n_max + 1) / a + h
    table.require_coverage(top)
    t = table.ordinates
    # positive ordinates s with s - h in [2 pi n_min / a, 2 pi (n_max + 1) / a]
    lo_h = TWO_PI * n_min / a + h
    i0 = max(int(np.searchsorted(t, lo_h)) - 1, 0)
    i1 = min(int(np.searchsorted(t, top, side="right")) + 1, t.size)
    shifted = [t[i0:i1] - h]
    # mirrored ordinates -s contribute when -s - h reaches the first requested cycle
    limit = -h - TWO_PI * n_min / a
    if limit > 0:
        j1 = min(int(np.searchsorted(t, limit, side="right")) + 1, t.size)
        shifted.insert(0, (-t[:j1] - h)[::-1])
    re, im, _ = kernels.cycle_accumulate(np.concatenate(shifted), a, n_min, n_max)
    n = np.arange(n_min, n_max + 1, dtype=np.int64)
    drift = np.log(n / a) / a
    return EtaSeries(n, a, h, (drift + re) + 1j * im)


def eta_series(table: ZeroTable, a: float, h: float, n_min: int, n_max: int) -> list[CycleSample]:
    return eta_values(table, a, h, n_min, n_max).samples()


def _orbit(table: ZeroTable, a: float, taus: np.ndarray) -> OrbitTrace:
    _check_a(a)
    if np.any(taus <= 0):
        raise DomainError("tau must be positive")
    if taus.size:
        table.require_coverage(float((taus.max() + math.pi) / a))
    re, im, nu, edge = kernels.window_sums(table.ordinates, a, taus, BOUNDARY_EPS)
    center_log = np.log(taus / (TWO_PI * a)) / a
    values = (center_log - re) - 1j * im
    return OrbitTrace(taus, a, values, nu, center_log - nu, edge)


def H_values(table: ZeroTable, a: float, taus) -> OrbitTrace:
    return _orbit(table, a, np.atleast_1d(np.asarray(taus, dtype=float)))


def H_sample(table: ZeroTable, a: float, tau: float) -> OrbitSample:
    return _orbit(table, a, np.array([float(tau)])).samples()[0]


def nu_count(table: ZeroTable, a: float, tau: float) -> int:
    return H_sample(table, a, tau).nu


def tau_grid(tau_start: float, tau_end: float, samples: int) -> np.ndarray:
    """Equally spaced, both endpoints included."""
    if samples < 2:
        raise DomainError("a trace needs at least two samples")
    if tau_start < math.pi:
        raise DomainError("traces start at tau >= pi")
    if tau_end <= tau_start:
        raise DomainError("empty tau range")
    return np.linspace(tau_start, tau_end, samples)


def H_trace(table: ZeroTable, a: float, tau_start: float, tau_end: float, samples: int) -> OrbitTrace:
    return _orbit(table, a, tau_grid(tau_start, tau_end, samples))


def eta_H_gaps(table: ZeroTable, a: float, h: float, n_min: int, n_max: int) -> np.ndarray:
    """|eta_{a,h}(n) - H_a((2n+1) pi + a h)| for n_min <= n <= n_max."""
    eta = eta_values(table, a, h, n_min, n_max)
    taus = (2 * eta.n + 1) * math.pi + a * h
    H = _orbit(table, a, taus.astype(float))
    return np.abs(eta.values - H.values)


def eta_H_gap(table: ZeroTable, a: float, h: float, n: int) -> float:
    return float(eta_H_gaps(table, a, h, n, n)[0])


def nu_integral(table: ZeroTable, a: float, T: float) -> float:
    """Integral of nu_a over [0, T] as a sum of window-overlap lengths.

    Each element s of the zero set contributes the length of
    [a s - pi, a s + pi] intersected with [0, T].  Windows fully inside add
    exactly 2 pi each and are tallied as an integer count.
    """
    _check_a(a)
    if T <= 0:
        raise DomainError("T must be positive")
    table.require_coverage((T + math.pi) / a)
    t = table.ordinates
    centers = np.concatenate([-t[::-1], t]) * a
    lo = np.maximum(centers - math.pi, 0.0)
    hi = np.minimum(centers + math.pi, T)
    overlap = np.clip(hi - lo, 0.0, None)
    full = (centers - math.pi >= 0.0) & (centers + math.pi <= T)
    partial = overlap[~full & (overlap > 0)]
    return TWO_PI * int(full.sum()) + math.fsum(partial.tolist())


def nu_bracket(table: ZeroTable, a: float, T: float) -> tuple[float, float]:
    """(2 pi N((T - pi)/a), 2 pi N((T + pi)/a))."""
    lower = count_zeros(table, (T - math.pi) / a) if T > math.pi else 0
    return TWO_PI * lower, TWO_PI * count_zeros(table, (T + math.pi) / a)


def cesaro_mean(table: ZeroTable, a: float, h: float, M: int) -> complex:
    """Mean of eta_{a,h}(n) over 1 <= n < M (the n = 0 term is undefined and left out)."""
    if M < 2:
        raise DomainError("M must be at least 2")
    vals = eta_values(table, a, h, 1, M - 1).values
    return complex(math.fsum(vals.real.tolist()), math.fsum(vals.imag.tolist())) / (M - 1)


def cesaro_envelope(table: ZeroTable, freq, h: float, M_values) -> float:
    """max over M of |mean_M - predicted| * M / log M."""
    from .arithmetic import predicted_eta_mean

    target = predicted_eta_mean(freq, h)
    M_values = np.asarray(M_values, dtype=np.int64)
    vals = eta_values(table, freq.a, h, 1, int(M_values.max()) - 1).values
    run = np.cumsum(vals)
    means = run[M_values - 2] / (M_values - 1)
    return float(np.max(np.abs(means - target) * M_values / np.log(M_values)))


def max_cycle_for(table: ZeroTable, a: float, h: float = 0.0) -> int:
    """Largest n whose cycle the table fully covers."""
    top = table.max_ordinate - h
    n = int(math.floor(top * a / TWO_PI)) - 1
    if n < 1:
        raise CoverageError("table covers no complete cycle")
    return n
