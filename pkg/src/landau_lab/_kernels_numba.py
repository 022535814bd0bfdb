"""numba-compiled kernels.  Same signatures and semantics as ``_kernels_numpy``."""

import math

import numpy as np
from numba import njit, prange

PI = math.pi
TWO_PI = 2.0 * math.pi
EM_SWITCH = 1000.0


@njit(cache=True)
def _theta(t):
    return (
        0.5 * t * (math.log(t / TWO_PI) - 1.0)
        - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t**3)
        + 31.0 / (80640.0 * t**5)
    )


@njit(cache=True)
def _horner(row, x):
    acc = 0.0
    for i in range(row.shape[0] - 1, -1, -1):
        acc = acc * x + row[i]
    return acc


@njit(cache=True)
def _z_rs(t, coeffs, rsqrt):
    tau = math.sqrt(t / TWO_PI)
    n_terms = int(tau)
    frac = tau - n_terms
    tail = -PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t**3) + 31.0 / (80640.0 * t**5)
    half = 0.5 * t
    main = 0.0
    for n in range(1, n_terms + 1):
        # theta(t) - t log n without subtracting two large numbers
        phase = half * (math.log(t / (TWO_PI * n * n)) - 1.0) + tail
        main += rsqrt[n] * math.cos(phase)
    x = frac - 0.5
    rem = 0.0
    inv = 1.0
    for k in range(coeffs.shape[0]):
        rem += _horner(coeffs[k], x) * inv
        inv /= tau
    sign = 1.0 if (n_terms - 1) % 2 == 0 else -1.0
    return 2.0 * main + sign * rem / math.sqrt(tau)


@njit(cache=True)
def _z_em(t, bern, logn, rsqrt):
    s = complex(0.5, t)
    n_top = int(0.5 * t) + 20
    re = 0.0
    im = 0.0
    for n in range(1, n_top):
        w = t * logn[n]
        re += rsqrt[n] * math.cos(w)
        im -= rsqrt[n] * math.sin(w)
    acc = complex(re, im)
    n_pow = rsqrt[n_top] * complex(math.cos(t * logn[n_top]), -math.sin(t * logn[n_top]))
    acc += n_top * n_pow / (s - 1.0) + 0.5 * n_pow
    term = s * n_pow / n_top
    nn = float(n_top) * n_top
    for k in range(bern.shape[0]):
        acc += bern[k] * term
        term *= (s + 2 * k + 1) * (s + 2 * k + 2) / nn
    th = _theta(t)
    return math.cos(th) * acc.real - math.sin(th) * acc.imag


@njit(cache=True)
def _z(t, coeffs, bern, logn, rsqrt):
    if t < EM_SWITCH:
        return _z_em(t, bern, logn, rsqrt)
    return _z_rs(t, coeffs, rsqrt)


@njit(cache=True)
def theta(t):
    out = np.empty(t.shape[0])
    for i in range(t.shape[0]):
        out[i] = _theta(t[i])
    return out


@njit(parallel=True, cache=True)
def z_values(t, coeffs, bern, logn, rsqrt):
    out = np.empty(t.shape[0])
    for i in prange(t.shape[0]):
        out[i] = _z(t[i], coeffs, bern, logn, rsqrt)
    return out


@njit(parallel=True, cache=True)
def bisect_roots(lo, hi, tol, coeffs, bern, logn, rsqrt):
    out = np.empty(lo.shape[0])
    for i in prange(lo.shape[0]):
        a = lo[i]
        b = hi[i]
        fa = _z(a, coeffs, bern, logn, rsqrt)
        while b - a > tol:
            m = 0.5 * (a + b)
            fm = _z(m, coeffs, bern, logn, rsqrt)
            if fm == 0.0:
                a = m
                b = m
                break
            if (fa < 0.0) == (fm < 0.0):
                a = m
                fa = fm
            else:
                b = m
        out[i] = 0.5 * (a + b)
    return out


@njit(parallel=True, cache=True)
def chunk_cos_sums(t, a, chunk):
    n_chunks = (t.shape[0] + chunk - 1) // chunk
    out = np.zeros(n_chunks)
    for c in prange(n_chunks):
        start = c * chunk
        stop = min(start + chunk, t.shape[0])
        s = 0.0
        comp = 0.0
        for i in range(start, stop):
            y = math.cos(a * t[i]) - comp
            nxt = s + y
            comp = (nxt - s) - y
            s = nxt
        out[c] = s
    return out


@njit(cache=True)
def cycle_accumulate(shifted, a, n_min, n_max):
    size = n_max - n_min + 1
    re = np.zeros(size)
    im = np.zeros(size)
    hits = np.zeros(size, dtype=np.int64)
    for i in range(shifted.shape[0]):
        phase = a * shifted[i]
        k = int(math.floor(phase / TWO_PI))
        if k < n_min or k > n_max:
            continue
        j = k - n_min
        re[j] += math.cos(phase) - 1.0
        im[j] += math.sin(phase)
        hits[j] += 1
    return re, im, hits


@njit(parallel=True, cache=True)
def window_sums(ordinates, a, taus, boundary_eps):
    m = taus.shape[0]
    n = ordinates.shape[0]
    re = np.zeros(m)
    im = np.zeros(m)
    nu = np.zeros(m, dtype=np.int64)
    edge = np.zeros(m, dtype=np.bool_)
    for i in prange(m):
        tau = taus[i]
        sr = 0.0
        si = 0.0
        cnt = 0
        hit = False
        for side in range(2):
            sgn = 1.0 if side == 0 else -1.0
            # ordinate s enters as sgn * s; u = tau - a * sgn * s
            if side == 0:
                left = (tau - PI) / a
                right = (tau + PI) / a
            else:
                left = (-tau - PI) / a
                right = (-tau + PI) / a
            lo = np.searchsorted(ordinates, left) - 1
            hi = np.searchsorted(ordinates, right, side="right") + 1
            if lo < 0:
                lo = 0
            if hi > n:
                hi = n
            for j in range(lo, hi):
                u = tau - a * sgn * ordinates[j]
                if abs(u) <= PI:
                    sr += 1.0 + math.cos(u)
                    si -= math.sin(u)
                    cnt += 1
                    if PI - abs(u) <= boundary_eps:
                        hit = True
        re[i] = sr
        im[i] = si
        nu[i] = cnt
        edge[i] = hit
    return re, im, nu, edge
