"""Independent reference computations in mpmath arbitrary precision.

None of these touch landau_lab code paths.
"""

import mpmath as mp

mp.mp.dps = 30


def theta(t):
    """arg Gamma(1/4 + it/2) - (t/2) log pi on the continuous log-Gamma branch."""
    t = mp.mpf(t)
    return mp.im(mp.loggamma(mp.mpf(1) / 4 + 0.5j * t)) - t / 2 * mp.log(mp.pi)


def theta_stirling(t, terms=12):
    """Stirling series for theta with many more terms than the library uses."""
    t = mp.mpf(t)
    # theta(t) = t/2 log(t/2pi) - t/2 - pi/8 + sum_k  (1 - 2^{1-2k}) |B_2k| / (4k(2k-1) t^{2k-1})
    acc = t / 2 * mp.log(t / (2 * mp.pi)) - t / 2 - mp.pi / 8
    for k in range(1, terms + 1):
        b = abs(mp.bernoulli(2 * k))
        acc += (1 - mp.mpf(2) ** (1 - 2 * k)) * b / (4 * k * (2 * k - 1) * t ** (2 * k - 1))
    return acc


def zeta_em(s, N=None, M=30):
    """Euler-Maclaurin zeta(s) in mpmath arithmetic."""
    s = mp.mpc(s)
    if N is None:
        N = int(abs(s.imag)) // 2 + 30
    acc = mp.fsum(mp.power(n, -s) for n in range(1, N))
    Ns = mp.power(N, -s)
    acc += N * Ns / (s - 1) + Ns / 2
    term = s * Ns / N
    for k in range(1, M + 1):
        acc += mp.bernoulli(2 * k) / mp.factorial(2 * k) * term
        term *= (s + 2 * k - 1) * (s + 2 * k) / (N * N)
    return acc


def Z(t):
    """Hardy Z from the Euler-Maclaurin zeta rotated by the log-Gamma theta."""
    t = mp.mpf(t)
    return mp.re(mp.expj(theta(t)) * zeta_em(mp.mpf(1) / 2 + 1j * t))


def bisect_zero(lo, hi, tol=1e-15):
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    flo = Z(lo)
    assert flo * Z(hi) < 0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = Z(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def sign_change_count(lo, hi, step):
    """Sign changes of Z on a uniform grid; fine enough below height 100."""
    count = 0
    t = mp.mpf(lo)
    prev = Z(t)
    while t < hi:
        t += step
        cur = Z(t)
        if prev * cur < 0:
            count += 1
        prev = cur
    return count
