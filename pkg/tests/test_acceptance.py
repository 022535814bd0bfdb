"""Acceptance suite: one test per criterion, run at the stated tolerances on the first 10^5 zeros.

Each test prints (and records for the terminal summary) a single PASS/FAIL
line.  Envelope thresholds come from ``landau_lab/data/envelopes.json``.
"""

import hashlib
import json
import math
import os
import subprocess
import sys
import time
from importlib import resources
from pathlib import Path

import numpy as np
import pytest

import oracles
from landau_lab import cycle_stats as cs
from landau_lab import distributions as dist
from landau_lab import kernels
from landau_lab.arithmetic import integer_frequency, numeric_frequency, predicted_eta_mean
from landau_lab.cli import FIGURES, render_figure
from landau_lab.landau_sums import landau_convergence, residual_envelope, scan_point
from landau_lab.zeros import certify_table, compute_zeros, count_zeros

GOLDEN = Path(__file__).parent / "golden"
LOG2 = math.log(2)
RESULTS: list[str] = []


def envelopes():
    return json.loads(resources.files("landau_lab.data").joinpath("envelopes.json").read_text())


def verdict(number, title, checks):
    """checks: list of (label, value, threshold, ok).  Prints the criterion line and returns failures."""
    failed = [c for c in checks if not c[3]]
    line = f"[{'PASS' if not failed else 'FAIL'}] criterion {number}: {title}"
    if failed:
        line += " -- " + "; ".join(f"{c[0]} = {c[1]:.6g} (limit {c[2]:.6g})" for c in failed)
    RESULTS.append(line)
    print(line)
    return failed


@pytest.fixture(scope="module")
def timed_table():
    start = time.perf_counter()
    table = compute_zeros(100_000)
    return table, time.perf_counter() - start


def test_criterion_1_zero_engine(timed_table, reference100):
    table, seconds = timed_table
    checks = []
    err = float(np.max(np.abs(table.ordinates[:100] - reference100)))
    checks.append(("max error, first 100 vs mpmath zetazero", err, 1e-6, err <= 1e-6))
    # the bisection-on-Z oracle with Euler-Maclaurin zeta, on a spread of the first 100
    worst = 0.0
    for k in (0, 1, 9, 33, 64, 99):
        t = table.ordinates[k]
        ref = float(oracles.bisect_zero(t - 1e-4, t + 1e-4, 1e-12))
        worst = max(worst, abs(t - ref))
    checks.append(("max error vs Z bisection oracle", worst, 1e-6, worst <= 1e-6))
    n100 = count_zeros(table, 100.0)
    checks.append(("N(100)", n100, 29, n100 == 29))
    cert = table.certificate
    bad = int(np.sum(cert.expected != cert.found))
    checks.append(("Gram points with N(g_k) != k + 1", bad, 0, bad == 0 and cert.ok))
    recert = certify_table(table)
    checks.append(("independent re-certification", float(recert.ok), 1, recert.ok))
    # the last good Gram point lies above zero #100000 and counts all of them
    top = int(np.argmax(cert.gram_index))
    reach = int(cert.found[top])
    checks.append(("zeros counted at the last good Gram point", reach, 100_000,
                   reach >= 100_000 and cert.height[top] >= table.max_ordinate))
    checks.append(("compute time for 10^5 zeros [s]", seconds, 120, seconds < 120))
    failed = verdict(1, "zero engine correctness", checks)
    assert not failed


def test_criterion_2_landau(table):
    checks = []
    freqs = [integer_frequency(x) for x in (2, 3, 4, 5)] + [numeric_frequency(1.0), numeric_frequency(math.sqrt(2))]
    for f in freqs:
        r = abs(scan_point(table, f, 74920.0).residual)
        checks.append((f"|residual| at T=74920, a={f.describe()}", r, 0.005, r <= 0.005))
    for f in freqs:
        conv = landau_convergence(table, f, (9365.0, 18730.0, 37460.0, 74920.0))
        r = np.abs(conv.residual)
        ratio = float(np.max(r[1:] / r[:-1]))
        checks.append((f"max |r(2T)|/|r(T)|, a={f.describe()}", ratio, 3.0, ratio <= 3.0))
    bound = envelopes()["landau_residual_constant"]["bound"]
    for f in freqs[:4]:
        k = residual_envelope(table, f, 1e3, 74920.0)
        checks.append((f"sup |r| T/log T on [1e3, 74920], a={f.describe()}", k, bound, k <= bound))
    failed = verdict(2, "Landau's formula residuals and their decay", checks)
    assert not failed


def test_criterion_3_cesaro(table):
    checks = []
    f2 = integer_frequency(2)
    for h in (0.0, 1.0):
        # 1 <= n < 8264 needs the cycle n = 8263 only, covered for both shifts
        target = -(2**-0.5) * complex(math.cos(h * LOG2), -math.sin(h * LOG2))
        assert predicted_eta_mean(f2, h) == pytest.approx(target)
        d = abs(cs.cesaro_mean(table, LOG2, h, 8264) - target)
        checks.append((f"|mean - predicted|, a=log 2, h={h:g}", d, 0.02, d <= 0.02))
    for h in (0.0, 1.0):
        m = abs(cs.cesaro_mean(table, 1.0, h, 8264))
        checks.append((f"|mean|, a=1, h={h:g}", m, 0.02, m <= 0.02))
    failed = verdict(3, "Cesaro means of eta", checks)
    assert not failed


def test_criterion_4_relation(table):
    checks = []
    env = envelopes()["eta_H_gap_n_times"]
    for a, key in ((1.0, "1"), (LOG2, "log2")):
        n = np.arange(100, 8001)
        g = cs.eta_H_gaps(table, a, 0.0, 100, 8000)
        low = float(np.median(g[n <= 500]))
        high = float(np.median(g[n >= 4000]))
        checks.append((f"median gap [4000,8000] vs [100,500], a={key}", high, low, high < low))
        worst = float(np.max(n * g))
        checks.append((f"max n*gap on [100,8000], a={key}", worst, env[key], worst < env[key]))
    failed = verdict(4, "eta versus H at tau = (2n+1) pi + a h", checks)
    assert not failed


def test_criterion_5_nu_bracket(table):
    checks = []
    for a, key in ((0.5, "1/2"), (1.0, "1"), (LOG2, "log2")):
        T = a * 74000.0
        val = cs.nu_integral(table, a, T)
        lo, hi = cs.nu_bracket(table, a, T)
        checks.append((f"integral - lower, a={key}", val - lo, 0.0, val >= lo))
        checks.append((f"upper - integral, a={key}", hi - val, 0.0, val <= hi))
    failed = verdict(5, "exact nu integral bracket", checks)
    assert not failed


FIG_TRACES = {"fig2": (1.0, 74920.0), "fig3": (0.5, 37460.0), "fig4": (LOG2, 74920.0 * LOG2)}


def test_criterion_6_stationarity(table):
    checks = []
    for name, (a, top) in FIG_TRACES.items():
        vals = cs.H_trace(table, a, math.pi, top - math.pi, 50000).values
        d = dist.stationarity_split_test(vals, 2, (50, 50))[0]
        checks.append((f"TV(first half, second half), {name} a={a:.6g}", d, 0.15, d <= 0.15))
    failed = verdict(6, "H stationarity, 2-way split (empirical envelope)", checks)
    assert not failed


def test_criterion_7_convolution(table):
    checks = []
    f2 = integer_frequency(2)
    H = cs.H_trace(table, LOG2, math.pi, 74920 * LOG2 - math.pi, 50000).values
    eta = cs.eta_values(table, LOG2, 0.0, 4, 8264).values - predicted_eta_mean(f2, 0.0)
    window = dist.default_window(H)
    gH = dist.build_histogram(H, *window, 40, 40)
    gc = dist.angular_convolve(dist.build_histogram(eta, *window, 40, 40), 2**-0.5)
    d = dist.histogram_distance(gH, gc)
    checks.append(("TV(H_log2, convolved recentered eta_log2)", d, 0.2, d <= 0.2))
    H1 = cs.H_trace(table, 1.0, math.pi, 74920 - math.pi, 50000).values
    w1 = dist.default_window(H1)
    g1 = dist.build_histogram(H1, *w1, 40, 40)
    for h in (0.0, 1.0):
        e1 = cs.eta_values(table, 1.0, h, 4, cs.max_cycle_for(table, 1.0, h)).values
        d1 = dist.histogram_distance(g1, dist.build_histogram(e1, *w1, 40, 40))
        checks.append((f"TV(H_1, eta_1), h={h:g}", d1, 0.15, d1 <= 0.15))
    failed = verdict(7, "F/f angular convolution relation", checks)
    assert not failed


def _figure_hashes_subprocess(threads: int) -> dict:
    code = (
        "import hashlib, json\n"
        "from landau_lab import kernels\n"
        "from landau_lab.cli import FIGURES, render_figure\n"
        "from landau_lab.zeros import cached_zeros\n"
        f"kernels.set_threads({threads})\n"
        "t = cached_zeros(100000)\n"
        "print(json.dumps({k: hashlib.sha256(render_figure(k, t)).hexdigest() for k in FIGURES}))\n"
    )
    env = dict(os.environ, NUMBA_NUM_THREADS=str(max(threads, 1)))
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, timeout=1200)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout.strip().splitlines()[-1])


def test_criterion_8_figures(table, cache_dir):
    checks = []
    golden_path = GOLDEN / f"figures.{kernels.BACKEND}.json"
    golden = json.loads(golden_path.read_text())
    first = {k: hashlib.sha256(render_figure(k, table)).hexdigest() for k in FIGURES}
    second = {k: hashlib.sha256(render_figure(k, table)).hexdigest() for k in FIGURES}
    for name in FIGURES:
        checks.append((f"{name}: run 1 == run 2", float(first[name] == second[name]), 1, first[name] == second[name]))
        checks.append((f"{name}: matches golden", float(first[name] == golden[name]), 1, first[name] == golden[name]))
    for threads in (1, 4):
        other = _figure_hashes_subprocess(threads)
        for name in FIGURES:
            same = other[name] == first[name]
            checks.append((f"{name}: {threads} thread(s) == in-process", float(same), 1, same))
    # row counts of the recipes
    fig5 = render_figure("fig5", table).decode().splitlines()
    checks.append(("fig5 rows (n = 4..8264)", len(fig5) - 1, 8261, len(fig5) - 1 == 8261))
    for name in ("fig2", "fig3", "fig4"):
        n = render_figure(name, table).count(b"\n") - 1
        checks.append((f"{name} rows", n, 50000, n == 50000))
    failed = verdict(8, "figure CSVs byte-identical across runs and thread counts", checks)
    assert not failed
