"""Measure the empirical envelopes used by the verification suite.

Run once on the first 10^5 zeros; writes src/landau_lab/data/envelopes.json.
Each stored bound is the measured value times MARGIN, rounded up to two
significant digits.  The Landau constant keeps its fixed bound of 50.
"""

import json
import math
import sys
from pathlib import Path

import numpy as np

from landau_lab import cycle_stats as cs
from landau_lab.arithmetic import integer_frequency
from landau_lab.landau_sums import residual_envelope
from landau_lab.zeros import cached_zeros

MARGIN = 1.1
OUT = Path(__file__).resolve().parents[1] / "src/landau_lab/data/envelopes.json"


def round_up(x: float) -> float:
    e = math.floor(math.log10(x)) - 1
    return round(math.ceil(x / 10**e) * 10**e, -e)


def main() -> int:
    table = cached_zeros(100_000)
    landau = {str(x): residual_envelope(table, integer_frequency(x), 1e3, 74920.0) for x in (2, 3, 4, 5)}
    n = np.arange(100, 8001)
    gaps = {}
    for a, key in ((1.0, "1"), (math.log(2), "log2")):
        gaps[key] = float(np.max(n * cs.eta_H_gaps(table, a, 0.0, 100, 8000)))
    f2 = integer_frequency(2)
    cesaro = {str(h): cs.cesaro_envelope(table, f2, h, np.arange(100, 8265)) for h in (0.0, 1.0)}
    data = {
        "landau_residual_constant": {"bound": 50.0, "measured": landau},
        "eta_H_gap_n_times": {k: round_up(v * MARGIN) for k, v in gaps.items()},
        "eta_H_gap_n_times_measured": gaps,
        "cesaro_constant": round_up(max(cesaro.values()) * MARGIN),
        "cesaro_constant_measured": cesaro,
        "margin": MARGIN,
        "zeros": len(table),
    }
    OUT.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    json.dump(data, sys.stdout, indent=1, sort_keys=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
