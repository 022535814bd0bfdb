"""The verification suite behind ``landau-lab verify``.

Each criterion returns a ``Criterion`` record with its measured values and
thresholds.  Thresholds marked as envelopes were measured on the first 10^5
zeros and are stored in ``data/envelopes.json``; the conjectures themselves
come with no rates, so these are empirical bounds, not theorems.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import asdict, dataclass, field
from importlib import resources

import numpy as np

from . import cycle_stats as cs
from . import distributions as dist
from .arithmetic import integer_frequency, numeric_frequency, predicted_eta_mean
from .errors import CoverageError
from .landau_sums import landau_convergence, residual_envelope, residual_window_sup, scan_point
from .zeros import ZeroSource, ZeroTable, certify_table, count_zeros

FULL_T = 74920.0
LANDAU_T_LIST = (9365.0, 18730.0, 37460.0, 74920.0)
ETA_M = 8264
GAP_LOW = (100, 500)
GAP_HIGH = (4000, 8000)
NU_HEIGHT = 74000.0
TRACE_SAMPLES = 50000
FIG5_N = (4, 8264)


@dataclass
class Check:
    name: str
    value: float
    threshold: float
    passed: bool
    note: str = ""
    informational: bool = False


@dataclass
class Criterion:
    id: int
    title: str
    checks: list[Check] = field(default_factory=list)
    skipped: bool = False
    reason: str = ""

    @property
    def passed(self) -> bool:
        return not self.skipped and all(c.passed for c in self.checks if not c.informational)

    def add(self, name, value, threshold, passed, note="", informational=False):
        self.checks.append(Check(name, float(value), float(threshold), bool(passed), note, informational))

    def line(self) -> str:
        state = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        return f"[{state}] criterion {self.id}: {self.title}"


def envelopes() -> dict:
    text = resources.files("landau_lab").joinpath("data/envelopes.json").read_text()
    return json.loads(text)


def reference_first100() -> np.ndarray:
    text = resources.files("landau_lab").joinpath("data/zetazero_first100.txt").read_text()
    return np.array([float(s) for s in text.split("\n") if s and not s.startswith("#")])


@dataclass(frozen=True)
class Scale:
    """Heights and ranges for a run; ``quick`` shrinks everything by 8."""

    factor: float = 1.0

    @property
    def T(self) -> float:
        return FULL_T * self.factor

    @property
    def landau_relax(self) -> float:
        # residuals decay like log T / T
        return (math.log(self.T) / self.T) / (math.log(FULL_T) / FULL_T)

    def t_list(self):
        return tuple(t * self.factor for t in LANDAU_T_LIST)

    def m(self, n: int) -> int:
        return max(2, int(round(n * self.factor)))


FULL = Scale(1.0)
QUICK = Scale(1.0 / 8.0)


def crit_zeros(table: ZeroTable, compute_seconds: float | None = None) -> Criterion:
    c = Criterion(1, "zero engine correctness")
    if len(table) < 100:
        c.skipped, c.reason = True, "fewer than 100 zeros"
        return c
    ref = reference_first100()
    err = float(np.max(np.abs(table.ordinates[:100] - ref)))
    c.add("max |t_k - reference| over first 100", err, 1e-6, err <= 1e-6)
    n100 = count_zeros(table, 100.0)
    c.add("N(100)", n100, 29, n100 == 29)
    cert = table.certificate if table.certificate is not None else certify_table(table)
    mismatches = int(np.sum(cert.expected != cert.found))
    c.add("Gram blocks with count mismatch", mismatches, 0, mismatches == 0,
          f"{cert.gram_index.size} good Gram points checked")
    if compute_seconds is not None:
        c.add("compute time [s]", compute_seconds, 120.0, compute_seconds < 120.0)
    return c


def _need(table: ZeroTable, height: float, c: Criterion) -> bool:
    if table.max_ordinate < height:
        c.skipped = True
        c.reason = f"table reaches {table.max_ordinate:.1f}, needs {height:.1f}"
        return False
    return True


def crit_landau(table: ZeroTable, scale: Scale = FULL) -> Criterion:
    c = Criterion(2, "Landau's formula residuals")
    if not _need(table, scale.T, c):
        return c
    tol = 0.005 * scale.landau_relax
    freqs = [integer_frequency(x) for x in (2, 3, 4, 5)] + [numeric_frequency(1.0), numeric_frequency(math.sqrt(2))]
    for f in freqs:
        p = scan_point(table, f, scale.T)
        c.add(f"|residual| a={f.describe()} T={scale.T:g}", abs(p.residual), tol, abs(p.residual) <= tol)
    for f in freqs:
        conv = landau_convergence(table, f, scale.t_list())
        r = np.abs(conv.residual)
        worst = float(np.max(r[1:] / r[:-1]))
        c.add(f"max |r(2T)|/|r(T)| a={f.describe()}", worst, 3.0, worst <= 3.0,
              "pointwise factor-3 monotonicity")
    for f in freqs:
        sups = np.array([residual_window_sup(table, f, T) for T in scale.t_list()])
        worst = float(np.max(sups[1:] / sups[:-1]))
        c.add(f"max ratio of sup_[T/2,T]|r| a={f.describe()}", worst, 3.0, worst <= 3.0,
              "dyadic-window sup; diagnostic only", informational=True)
    bound = envelopes()["landau_residual_constant"]["bound"]
    for f in freqs[:4]:
        k = residual_envelope(table, f, 1e3, scale.T)
        c.add(f"sup |r| T/log T a={f.describe()}", k, bound, k <= bound)
    return c


def crit_cesaro(table: ZeroTable, scale: Scale = FULL) -> Criterion:
    c = Criterion(3, "Cesaro mean of eta")
    M = scale.m(ETA_M)
    f2 = integer_frequency(2)
    for h in (0.0, 1.0):
        if not _need(table, 2 * math.pi * M / f2.a + h, c):
            return c
    tol = 0.02 * (math.log(M) / M) / (math.log(ETA_M) / ETA_M)
    for h in (0.0, 1.0):
        mean = cs.cesaro_mean(table, f2.a, h, M)
        d = abs(mean - predicted_eta_mean(f2, h))
        c.add(f"|mean - predicted| a=log 2 h={h:g}", d, tol, d <= tol)
    for h in (0.0, 1.0):
        mod = abs(cs.cesaro_mean(table, 1.0, h, M))
        c.add(f"|mean| a=1 h={h:g}", mod, tol, mod <= tol)
    return c


def crit_relation(table: ZeroTable, scale: Scale = FULL) -> Criterion:
    c = Criterion(4, "eta / H relation")
    env = envelopes()["eta_H_gap_n_times"]
    lo_rng = GAP_LOW
    hi_rng = (scale.m(GAP_HIGH[0]), scale.m(GAP_HIGH[1]))
    for a, key in ((1.0, "1"), (math.log(2), "log2")):
        if not _need(table, 2 * math.pi * (hi_rng[1] + 1) / a + math.pi / a, c):
            return c
        n = np.arange(lo_rng[0], hi_rng[1] + 1)
        g = cs.eta_H_gaps(table, a, 0.0, int(n[0]), int(n[-1]))
        low = float(np.median(g[(n >= lo_rng[0]) & (n <= lo_rng[1])]))
        high = float(np.median(g[(n >= hi_rng[0]) & (n <= hi_rng[1])]))
        c.add(f"median gap n in {list(hi_rng)} vs {list(lo_rng)}, a={key}", high, low, high < low)
        worst = float(np.max(n * g))
        c.add(f"max n*gap a={key}", worst, env[key], worst < env[key])
    return c


def crit_nu(table: ZeroTable, scale: Scale = FULL) -> Criterion:
    c = Criterion(5, "exact nu integral bracket")
    for a, key in ((0.5, "1/2"), (1.0, "1"), (math.log(2), "log2")):
        T = a * NU_HEIGHT * scale.factor
        if not _need(table, (T + math.pi) / a, c):
            return c
        val = cs.nu_integral(table, a, T)
        lo, hi = cs.nu_bracket(table, a, T)
        c.add(f"lower gap a={key}", val - lo, 0.0, val >= lo)
        c.add(f"upper gap a={key}", hi - val, 0.0, val <= hi)
    return c


def trace_recipes(scale: Scale = FULL):
    top = FULL_T * scale.factor
    return {
        "1": (1.0, math.pi, top - math.pi),
        "1/2": (0.5, math.pi, top / 2 - math.pi),
        "log2": (math.log(2), math.pi, top * math.log(2) - math.pi),
    }


def crit_stationarity(table: ZeroTable, scale: Scale = FULL) -> Criterion:
    c = Criterion(6, "H stationarity (2-way split)")
    for key, (a, lo, hi) in trace_recipes(scale).items():
        if not _need(table, (hi + math.pi) / a, c):
            return c
        vals = cs.H_trace(table, a, lo, hi, TRACE_SAMPLES).values
        d = dist.stationarity_split_test(vals, 2, (50, 50))[0]
        c.add(f"TV(first half, second half) a={key}", d, 0.15, d <= 0.15, "empirical envelope")
    return c


def crit_convolution(table: ZeroTable, scale: Scale = FULL) -> Criterion:
    c = Criterion(7, "F/f angular convolution")
    recipes = trace_recipes(scale)
    f2 = integer_frequency(2)
    a, lo, hi = recipes["log2"]
    n_hi = scale.m(FIG5_N[1])
    if not _need(table, max((hi + math.pi) / a, 2 * math.pi * (n_hi + 1) / a), c):
        return c
    H = cs.H_trace(table, a, lo, hi, TRACE_SAMPLES).values
    eta = cs.eta_values(table, f2.a, 0.0, FIG5_N[0], n_hi).values - predicted_eta_mean(f2, 0.0)
    window = dist.default_window(H)
    gH = dist.build_histogram(H, *window, 40, 40)
    ge = dist.build_histogram(eta, *window, 40, 40)
    gc = dist.angular_convolve(ge, f2.orbit_radius)
    d = dist.histogram_distance(gH, gc)
    c.add("TV(H_log2, convolved eta_log2)", d, 0.2, d <= 0.2, f"leaked mass {gc.leaked:.3g}")
    gc128 = dist.angular_convolve(ge, f2.orbit_radius, 128)
    dd = dist.histogram_distance(gc, gc128)
    c.add("TV(256 steps, 128 steps)", dd, 1e-3, dd < 1e-3)
    a1, lo1, hi1 = recipes["1"]
    H1 = cs.H_trace(table, a1, lo1, hi1, TRACE_SAMPLES).values
    n1 = cs.max_cycle_for(table, a1)
    e1 = cs.eta_values(table, a1, 0.0, FIG5_N[0], n1).values
    w1 = dist.default_window(H1)
    d1 = dist.histogram_distance(dist.build_histogram(H1, *w1, 40, 40), dist.build_histogram(e1, *w1, 40, 40))
    c.add("TV(H_1, eta_1)", d1, 0.15, d1 <= 0.15, "empirical envelope")
    return c


def crit_figures(table: ZeroTable, scale: Scale = FULL) -> Criterion:
    from .cli import FIGURES, render_figure

    c = Criterion(8, "figure data reproducibility")
    if scale is not FULL:
        c.skipped, c.reason = True, "figure recipes need the full 10^5-zero ranges"
        return c
    if not _need(table, FULL_T, c):
        return c
    from . import kernels

    for name in FIGURES:
        kernels.set_threads(1)
        first = hashlib.sha256(render_figure(name, table)).hexdigest()
        kernels.set_threads(None if kernels.BACKEND != "numba" else _max_threads())
        second = hashlib.sha256(render_figure(name, table)).hexdigest()
        c.add(f"{name} identical across runs/threads", float(first == second), 1.0, first == second,
              first[:16])
    return c


def _max_threads() -> int:
    import numba

    return numba.config.NUMBA_NUM_THREADS


def run_suite(table: ZeroTable, *, quick: bool = False, compute_seconds: float | None = None) -> list[Criterion]:
    scale = QUICK if quick else FULL
    if len(table) == 0:
        titles = ["zero engine correctness", "Landau's formula residuals", "Cesaro mean of eta",
                  "eta / H relation", "exact nu integral bracket", "H stationarity (2-way split)",
                  "F/f angular convolution", "figure data reproducibility"]
        return [Criterion(i + 1, t, skipped=True, reason="empty table") for i, t in enumerate(titles)]
    out = [crit_zeros(table, compute_seconds)]
    for fn in (crit_landau, crit_cesaro, crit_relation, crit_nu, crit_stationarity, crit_convolution, crit_figures):
        try:
            out.append(fn(table, scale))
        except CoverageError as exc:
            out.append(Criterion(len(out) + 1, fn.__name__, skipped=True, reason=str(exc)))
    return out


def report(criteria: list[Criterion], table: ZeroTable, quick: bool) -> dict:
    return {
        "zeros": len(table),
        "source": table.source.value if isinstance(table.source, ZeroSource) else str(table.source),
        "quick": quick,
        "landau_relax_factor": (QUICK if quick else FULL).landau_relax,
        "passed": bool(criteria) and all(c.passed for c in criteria),
        "criteria": [dict(asdict(c), passed=c.passed) for c in criteria],
    }


def timed_compute(count: int):
    from .zeros import compute_zeros

    start = time.perf_counter()
    table = compute_zeros(count)
    return table, time.perf_counter() - start
