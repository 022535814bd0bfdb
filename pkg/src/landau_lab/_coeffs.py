"""Series coefficients for the Riemann-Siegel remainder and Euler-Maclaurin tail.

The remainder functions C0..C4 are polynomials in ``x = p - 1/2`` obtained from
the Taylor expansion of

    Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)

and the usual derivative combinations.  Psi is entire, so a truncated power
series of moderate degree is accurate to machine precision on |x| <= 1/2.
Everything is generated once with mpmath and cached as float64 arrays.
"""

from __future__ import annotations

from functools import lru_cache

import mpmath as mp
import numpy as np

DEGREE = 60
N_BERNOULLI = 16


def _psi_series(deg: int) -> list:
    # Psi(1/2 + x) = -cos(2 pi x^2 - 5 pi / 8) / cos(2 pi x)
    two_pi = 2 * mp.pi
    c5, s5 = mp.cos(5 * mp.pi / 8), mp.sin(5 * mp.pi / 8)
    num = [mp.mpf(0)] * (deg + 1)
    den = [mp.mpf(0)] * (deg + 1)
    for m in range(deg // 2 + 1):
        w = two_pi**m / mp.factorial(m)
        if m % 2 == 0:
            num[2 * m] = w * c5 * (-1) ** (m // 2)
        else:
            num[2 * m] = w * s5 * (-1) ** ((m - 1) // 2)
        den[2 * m] = (-1) ** m * two_pi ** (2 * m) / mp.factorial(2 * m)
    out = [mp.mpf(0)] * (deg + 1)
    for n in range(deg + 1):
        acc = num[n] - mp.fsum(out[k] * den[n - k] for k in range(n))
        out[n] = acc / den[0]
    return [-c for c in out]


def _derivative(coeffs: list, k: int) -> list:
    out = list(coeffs)
    for _ in range(k):
        out = [out[i] * i for i in range(1, len(out))] + [mp.mpf(0)]
    return out


@lru_cache(maxsize=None)
def rs_remainder_coeffs() -> np.ndarray:
    """Return a (5, DEGREE + 1) array; row k holds C_k in ascending powers of p - 1/2."""
    with mp.workdps(60):
        psi = _psi_series(DEGREE)
        pi = mp.pi
        recipe = [
            [(mp.mpf(1), 0)],
            [(-1 / (96 * pi**2), 3)],
            [(1 / (64 * pi**2), 2), (1 / (18432 * pi**4), 6)],
            [(-1 / (64 * pi**2), 1), (-1 / (3840 * pi**4), 5), (-1 / (5308416 * pi**6), 9)],
            [
                (1 / (128 * pi**2), 0),
                (mp.mpf(19) / (24576 * pi**4), 4),
                (mp.mpf(11) / (5898240 * pi**6), 8),
                (1 / (2038431744 * pi**8), 12),
            ],
        ]
        table = np.zeros((len(recipe), DEGREE + 1))
        for row, terms in enumerate(recipe):
            acc = [mp.mpf(0)] * (DEGREE + 1)
            for weight, order in terms:
                d = _derivative(psi, order)
                for i in range(DEGREE + 1):
                    acc[i] += weight * d[i]
            table[row] = [float(c) for c in acc]
    # trailing coefficients are far below double resolution on |x| <= 1/2
    return table


@lru_cache(maxsize=None)
def bernoulli_ratios() -> np.ndarray:
    """B_{2k} / (2k)! for k = 1..N_BERNOULLI."""
    with mp.workdps(40):
        return np.array(
            [float(mp.bernoulli(2 * k) / mp.factorial(2 * k)) for k in range(1, N_BERNOULLI + 1)]
        )
