"""Backend selection for the hot loops.

Set ``LANDAU_LAB_BACKEND=numpy`` to force the pure-numpy path; the default is
numba when it imports cleanly.  Both backends expose identical functions, and
results agree to rounding (see ``tests/test_kernels.py``).
"""

from __future__ import annotations

import logging
import os
from functools import lru_cache
from types import ModuleType

import numpy as np

from . import _kernels_numpy
from ._coeffs import bernoulli_ratios, rs_remainder_coeffs

log = logging.getLogger(__name__)

TABLE_SIZE = 4096


def _select() -> tuple[str, ModuleType]:
    wanted = os.environ.get("LANDAU_LAB_BACKEND", "numba").strip().lower()
    if wanted == "numpy":
        return "numpy", _kernels_numpy
    if wanted != "numba":
        raise ValueError(f"LANDAU_LAB_BACKEND must be 'numba' or 'numpy', got {wanted!r}")
    try:
        from . import _kernels_numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        log.warning("numba unavailable, falling back to numpy kernels")
        return "numpy", _kernels_numpy
    return "numba", _kernels_numba


BACKEND, impl = _select()


def get_impl(name: str) -> ModuleType:
    if name == "numpy":
        return _kernels_numpy
    if name == "numba":
        from . import _kernels_numba

        return _kernels_numba
    raise ValueError(name)


@lru_cache(maxsize=None)
def tables() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(rs coeffs, bernoulli ratios, log n, n^-1/2) with index 0 unused."""
    n = np.arange(TABLE_SIZE, dtype=float)
    n[0] = 1.0
    logn = np.log(n)
    rsqrt = 1.0 / np.sqrt(n)
    return rs_remainder_coeffs(), bernoulli_ratios(), logn, rsqrt


def set_threads(count: int | None) -> None:
    """Limit numba's thread pool; results never depend on the pool size."""
    if count is None or BACKEND != "numba":
        return
    import numba

    numba.set_num_threads(max(1, min(int(count), numba.config.NUMBA_NUM_THREADS)))


def z_values(t, backend: ModuleType | None = None) -> np.ndarray:
    k = backend or impl
    return k.z_values(np.ascontiguousarray(t, dtype=float), *tables())


def bisect_roots(lo, hi, tol: float, backend: ModuleType | None = None) -> np.ndarray:
    k = backend or impl
    return k.bisect_roots(
        np.ascontiguousarray(lo, dtype=float), np.ascontiguousarray(hi, dtype=float), tol, *tables()
    )


def theta(t, backend: ModuleType | None = None) -> np.ndarray:
    return (backend or impl).theta(np.ascontiguousarray(t, dtype=float))


def chunk_cos_sums(t, a: float, chunk: int, backend: ModuleType | None = None) -> np.ndarray:
    return (backend or impl).chunk_cos_sums(np.ascontiguousarray(t, dtype=float), float(a), int(chunk))


def cycle_accumulate(shifted, a: float, n_min: int, n_max: int, backend: ModuleType | None = None):
    return (backend or impl).cycle_accumulate(
        np.ascontiguousarray(shifted, dtype=float), float(a), int(n_min), int(n_max)
    )


def window_sums(ordinates, a: float, taus, boundary_eps: float = 1e-12, backend: ModuleType | None = None):
    return (backend or impl).window_sums(
        np.ascontiguousarray(ordinates, dtype=float),
        float(a),
        np.ascontiguousarray(taus, dtype=float),
        float(boundary_eps),
    )


def pairwise_sum(values) -> float:
    """Fixed-shape pairwise reduction; order depends only on len(values)."""
    vals = [float(v) for v in values]
    if not vals:
        return 0.0
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]
