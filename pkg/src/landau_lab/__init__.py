"""Numerical experiments with Landau's formula and cycle sums over zeta zeros."""

import warnings

# numba complains about an old system TBB even when another threading layer is used
warnings.filterwarnings("ignore", message="The TBB threading layer", module="numba")

__version__ = "0.1.0"
