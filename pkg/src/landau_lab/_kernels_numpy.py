"""Pure-numpy kernels, used when numba is unavailable or disabled."""

import math

import numpy as np

PI = math.pi
TWO_PI = 2.0 * math.pi
EM_SWITCH = 1000.0
_BATCH = 2048


def _theta_tail(t):
    return -PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t**3) + 31.0 / (80640.0 * t**5)


def theta(t):
    t = np.asarray(t, dtype=float)
    return 0.5 * t * (np.log(t / TWO_PI) - 1.0) + _theta_tail(t)


def _z_rs(t, coeffs, rsqrt):
    tau = np.sqrt(t / TWO_PI)
    n_terms = tau.astype(np.int64)
    frac = tau - n_terms
    n = np.arange(1, n_terms.max() + 1, dtype=float)
    phase = 0.5 * t[:, None] * (np.log(t[:, None] / (TWO_PI * n * n)) - 1.0) + _theta_tail(t)[:, None]
    terms = rsqrt[1 : n.size + 1] * np.cos(phase)
    terms[n[None, :] > n_terms[:, None]] = 0.0
    main = terms.sum(axis=1)
    x = frac - 0.5
    rem = np.zeros_like(t)
    inv = np.ones_like(t)
    for row in coeffs:
        rem += np.polynomial.polynomial.polyval(x, row) * inv
        inv = inv / tau
    sign = np.where((n_terms - 1) % 2 == 0, 1.0, -1.0)
    return 2.0 * main + sign * rem / np.sqrt(tau)


def _z_em(t, bern, logn, rsqrt):
    s = 0.5 + 1j * t
    n_top = (0.5 * t).astype(np.int64) + 20
    idx = np.arange(1, n_top.max())
    w = t[:, None] * logn[idx]
    mask = idx[None, :] < n_top[:, None]
    re = np.where(mask, rsqrt[idx] * np.cos(w), 0.0).sum(axis=1)
    im = -np.where(mask, rsqrt[idx] * np.sin(w), 0.0).sum(axis=1)
    acc = re + 1j * im
    wt = t * logn[n_top]
    n_pow = rsqrt[n_top] * (np.cos(wt) - 1j * np.sin(wt))
    acc = acc + n_top * n_pow / (s - 1.0) + 0.5 * n_pow
    term = s * n_pow / n_top
    nn = n_top.astype(float) ** 2
    for k, b in enumerate(bern):
        acc = acc + b * term
        term = term * (s + 2 * k + 1) * (s + 2 * k + 2) / nn
    th = theta(t)
    return np.cos(th) * acc.real - np.sin(th) * acc.imag


def z_values(t, coeffs, bern, logn, rsqrt):
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    low = t < EM_SWITCH
    for mask, fn, args in ((low, _z_em, (bern, logn, rsqrt)), (~low, _z_rs, (coeffs, rsqrt))):
        idx = np.flatnonzero(mask)
        for start in range(0, idx.size, _BATCH):
            part = idx[start : start + _BATCH]
            out[part] = fn(t[part], *args)
    return out


def bisect_roots(lo, hi, tol, coeffs, bern, logn, rsqrt):
    a = np.array(lo, dtype=float)
    b = np.array(hi, dtype=float)
    fa = z_values(a, coeffs, bern, logn, rsqrt)
    active = b - a > tol
    while active.any():
        idx = np.flatnonzero(active)
        m = 0.5 * (a[idx] + b[idx])
        fm = z_values(m, coeffs, bern, logn, rsqrt)
        exact = fm == 0.0
        same = ((fa[idx] < 0.0) == (fm < 0.0)) & ~exact
        a[idx[same]] = m[same]
        fa[idx[same]] = fm[same]
        b[idx[~same & ~exact]] = m[~same & ~exact]
        a[idx[exact]] = m[exact]
        b[idx[exact]] = m[exact]
        active[idx] = (b[idx] - a[idx]) > tol
    return 0.5 * (a + b)


def chunk_cos_sums(t, a, chunk):
    t = np.asarray(t, dtype=float)
    n_chunks = (t.size + chunk - 1) // chunk
    padded = np.zeros(n_chunks * chunk)
    padded[: t.size] = np.cos(a * t)
    cols = padded.reshape(n_chunks, chunk)
    s = np.zeros(n_chunks)
    comp = np.zeros(n_chunks)
    # trailing zero padding leaves each Kahan state unchanged
    for j in range(chunk):
        y = cols[:, j] - comp
        nxt = s + y
        comp = (nxt - s) - y
        s = nxt
    return s


def cycle_accumulate(shifted, a, n_min, n_max):
    size = n_max - n_min + 1
    phase = a * np.asarray(shifted, dtype=float)
    k = np.floor(phase / TWO_PI).astype(np.int64)
    keep = (k >= n_min) & (k <= n_max)
    j = k[keep] - n_min
    ph = phase[keep]
    re = np.bincount(j, weights=np.cos(ph) - 1.0, minlength=size)
    im = np.bincount(j, weights=np.sin(ph), minlength=size)
    hits = np.bincount(j, minlength=size).astype(np.int64)
    return re, im, hits


def window_sums(ordinates, a, taus, boundary_eps):
    taus = np.asarray(taus, dtype=float)
    n = ordinates.size
    re = np.zeros(taus.size)
    im = np.zeros(taus.size)
    nu = np.zeros(taus.size, dtype=np.int64)
    edge = np.zeros(taus.size, dtype=bool)
    for sgn in (1.0, -1.0):
        left = (sgn * taus - PI) / a
        right = (sgn * taus + PI) / a
        lo = np.clip(np.searchsorted(ordinates, left) - 1, 0, n)
        hi = np.clip(np.searchsorted(ordinates, right, side="right") + 1, 0, n)
        width = int((hi - lo).max()) if taus.size else 0
        if width <= 0:
            continue
        j = lo[:, None] + np.arange(width)
        valid = j < hi[:, None]
        u = taus[:, None] - a * sgn * ordinates[np.minimum(j, n - 1)]
        inside = valid & (np.abs(u) <= PI)
        re += np.where(inside, 1.0 + np.cos(u), 0.0).sum(axis=1)
        im -= np.where(inside, np.sin(u), 0.0).sum(axis=1)
        nu += inside.sum(axis=1)
        edge |= (inside & (PI - np.abs(u) <= boundary_eps)).any(axis=1)
    return re, im, nu, edge
