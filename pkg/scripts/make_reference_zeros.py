"""Regenerate the reference ordinates under tests/data.

    python3 scripts/make_reference_zeros.py [--count 10000]

The first 100 come from mpmath.zetazero.  The longer file polishes each
computed ordinate with a secant root of mpmath.siegelz at 20 digits, then
truncates to 12 decimals.  Slow: roughly an hour for 10^4 zeros.
"""

import argparse
from pathlib import Path

import mpmath as mp

from landau_lab.zeros import compute_zeros

DATA = Path(__file__).resolve().parents[1] / "tests" / "data"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=10_000)
    args = ap.parse_args()
    mp.mp.dps = 20

    with open(DATA / "zetazero_first100.txt", "w") as fh:
        fh.write("# ordinates of zeta zeros 1..100 from mpmath.zetazero (dps 20)\n")
        for k in range(1, 101):
            fh.write(mp.nstr(mp.zetazero(k).imag, 18) + "\n")

    seeds = compute_zeros(args.count).ordinates
    eps = mp.mpf("1e-7")
    with open(DATA / "reference_zeros_1e4.txt", "w") as fh:
        fh.write(f"# ordinates of zeta zeros 1..{args.count}: roots of mpmath.siegelz (dps 20), 12 decimals\n")
        for t0 in seeds:
            r = mp.findroot(mp.siegelz, (mp.mpf(t0) - eps, mp.mpf(t0) + eps), solver="secant")
            if abs(r - t0) > 1e-6:
                raise SystemExit(f"secant wandered from {t0} to {r}")
            fh.write(mp.nstr(r, 20, min_fixed=0, max_fixed=30)[: len(str(int(r))) + 13] + "\n")


if __name__ == "__main__":
    main()
