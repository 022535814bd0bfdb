"""Empirical planar densities of eta and H samples, and the tests run on them."""

from __future__ import annotations

import io
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, GeometryError

DEFAULT_STEPS = 256
MIN_SPLIT = 1000


@dataclass(frozen=True)
class HistogramGrid:
    re_range: tuple[float, float]
    im_range: tuple[float, float]
    nx: int
    ny: int
    counts: np.ndarray  # shape (nx, ny); fractional after angular_convolve
    total: float
    out_of_range: float
    leaked: float = field(default=0.0)

    @property
    def in_window(self) -> float:
        return self.total - self.out_of_range

    @property
    def cell_area(self) -> float:
        return (
            (self.re_range[1] - self.re_range[0]) / self.nx * (self.im_range[1] - self.im_range[0]) / self.ny
        )

    def density(self) -> np.ndarray:
        """Counts per unit area divided by total; integrates to in_window / total."""
        if self.total == 0:
            return np.zeros_like(self.counts, dtype=float)
        return self.counts / (self.total * self.cell_area)

    def probabilities(self) -> np.ndarray:
        """In-window counts normalized to sum 1."""
        s = float(self.counts.sum())
        return self.counts / s if s > 0 else np.zeros_like(self.counts, dtype=float)

    def same_geometry(self, other: "HistogramGrid") -> bool:
        return (
            self.nx == other.nx
            and self.ny == other.ny
            and np.allclose(self.re_range, other.re_range, rtol=0, atol=0)
            and np.allclose(self.im_range, other.im_range, rtol=0, atol=0)
        )

    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.linspace(*self.re_range, self.nx + 1), np.linspace(*self.im_range, self.ny + 1))

    def centers(self) -> tuple[np.ndarray, np.ndarray]:
        ex, ey = self.edges()
        return 0.5 * (ex[:-1] + ex[1:]), 0.5 * (ey[:-1] + ey[1:])


def _check_range(r) -> tuple[float, float]:
    lo, hi = float(r[0]), float(r[1])
    if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
        raise DomainError(f"degenerate range {r!r}")
    return lo, hi


def default_window(samples, sigmas: float = 4.0) -> tuple[tuple[float, float], tuple[float, float]]:
    """mean +- 4 standard deviations on each axis."""
    z = np.asarray(samples, dtype=complex)
    if z.size == 0:
        raise DomainError("cannot size a window from no samples")
    out = []
    for part in (z.real, z.imag):
        mu, sd = float(part.mean()), float(part.std())
        sd = sd if sd > 0 else 1.0
        out.append((mu - sigmas * sd, mu + sigmas * sd))
    return out[0], out[1]


def build_histogram(samples, re_range, im_range, nx: int, ny: int) -> HistogramGrid:
    """Half-open bins [lo, hi) on both axes; anything else lands in out_of_range."""
    if nx < 1 or ny < 1:
        raise DomainError("bin counts must be positive")
    re_range, im_range = _check_range(re_range), _check_range(im_range)
    z = np.asarray(samples, dtype=complex).ravel()
    ex = np.linspace(*re_range, nx + 1)
    ey = np.linspace(*im_range, ny + 1)
    ix = np.searchsorted(ex, z.real, side="right") - 1
    iy = np.searchsorted(ey, z.imag, side="right") - 1
    inside = (ix >= 0) & (ix < nx) & (iy >= 0) & (iy < ny)
    flat = np.bincount(ix[inside] * ny + iy[inside], minlength=nx * ny)
    counts = flat.reshape(nx, ny).astype(np.int64)
    return HistogramGrid(re_range, im_range, nx, ny, counts, int(z.size), int(z.size - inside.sum()))


def _bilinear(values: np.ndarray, fx: np.ndarray, fy: np.ndarray) -> np.ndarray:
    """Sample a cell-centred grid at fractional indices; outside the grid reads as zero."""
    nx, ny = values.shape
    x0 = np.floor(fx).astype(np.int64)
    y0 = np.floor(fy).astype(np.int64)
    wx = fx - x0
    wy = fy - y0
    out = np.zeros(np.broadcast(fx, fy).shape)
    for dx, wxs in ((0, 1 - wx), (1, wx)):
        for dy, wys in ((0, 1 - wy), (1, wy)):
            xi = x0 + dx
            yi = y0 + dy
            ok = (xi >= 0) & (xi < nx) & (yi >= 0) & (yi < ny)
            v = np.where(ok, values[np.clip(xi, 0, nx - 1), np.clip(yi, 0, ny - 1)], 0.0)
            out += wxs * wys * v
    return out


def angular_convolve(grid: HistogramGrid, radius: float, steps: int = DEFAULT_STEPS) -> HistogramGrid:
    """Average of the grid shifted by radius * e^{i theta} over ``steps`` equal angles.

    Output cell z receives the mean of the input at z - radius e^{i theta},
    read with bilinear interpolation between cell centres.  Mass pushed off
    the window is added to out_of_range and reported in ``leaked``.
    """
    if steps < 8:
        raise DomainError("need at least 8 angular steps")
    if radius < 0:
        raise DomainError("radius must be nonnegative")
    counts = grid.counts.astype(float)
    if radius == 0:
        return HistogramGrid(grid.re_range, grid.im_range, grid.nx, grid.ny, counts, grid.total,
                             grid.out_of_range, grid.leaked)
    dx = (grid.re_range[1] - grid.re_range[0]) / grid.nx
    dy = (grid.im_range[1] - grid.im_range[0]) / grid.ny
    ix = np.arange(grid.nx, dtype=float)[:, None]
    iy = np.arange(grid.ny, dtype=float)[None, :]
    acc = np.zeros_like(counts)
    for k in range(steps):
        th = 2.0 * math.pi * k / steps
        acc += _bilinear(counts, ix - radius * math.cos(th) / dx, iy - radius * math.sin(th) / dy)
    acc /= steps
    leaked = float(counts.sum() - acc.sum())
    return HistogramGrid(grid.re_range, grid.im_range, grid.nx, grid.ny, acc, grid.total,
                         grid.out_of_range + leaked, grid.leaked + leaked)


def histogram_distance(g1: HistogramGrid, g2: HistogramGrid) -> float:
    """Total-variation distance between the normalized in-window masses."""
    if not g1.same_geometry(g2):
        raise GeometryError("histograms have different windows or bin counts")
    p, q = g1.probabilities(), g2.probabilities()
    if p.sum() == 0 or q.sum() == 0:
        raise DomainError("histogram with no in-window mass")
    return float(min(1.0, 0.5 * np.abs(p - q).sum()))


def stationarity_split_test(samples, k: int, bins=(50, 50), window=None) -> list[float]:
    """Split the ordered stream into k contiguous blocks; all pairwise TV distances.

    Pairs come in itertools.combinations order: (0,1), (0,2), ..., (k-2,k-1).
    """
    z = np.asarray(samples, dtype=complex)
    if k < 2:
        raise DomainError("need at least two blocks")
    if z.size < k * MIN_SPLIT:
        raise DomainError(f"need >= {MIN_SPLIT} samples per block, got {z.size} for k={k}")
    re_range, im_range = window or default_window(z)
    nx, ny = bins
    grids = [build_histogram(part, re_range, im_range, nx, ny) for part in np.array_split(z, k)]
    return [histogram_distance(grids[i], grids[j]) for i, j in itertools.combinations(range(k), 2)]


def cross_distance(first, second, bins=(50, 50), window=None) -> float:
    """TV distance between two sample streams on a window sized from the first."""
    re_range, im_range = window or default_window(first)
    g1 = build_histogram(first, re_range, im_range, *bins)
    g2 = build_histogram(second, re_range, im_range, *bins)
    return histogram_distance(g1, g2)


def format_grid(grid: HistogramGrid) -> str:
    buf = io.StringIO()
    buf.write(f"# re_range={grid.re_range[0]!r},{grid.re_range[1]!r}\n")
    buf.write(f"# im_range={grid.im_range[0]!r},{grid.im_range[1]!r}\n")
    buf.write(f"# bins={grid.nx},{grid.ny}\n")
    buf.write(f"# total={grid.total!r} out_of_range={grid.out_of_range!r}\n")
    buf.write("ix,iy,count\n")
    integral = np.issubdtype(grid.counts.dtype, np.integer)
    for i in range(grid.nx):
        for j in range(grid.ny):
            c = grid.counts[i, j]
            buf.write(f"{i},{j},{int(c) if integral else format(float(c), '.12g')}\n")
    return buf.getvalue()


def parse_grid(text: str) -> HistogramGrid:
    meta = {}
    rows = []
    for line in text.splitlines():
        if line.startswith("#"):
            for part in line[1:].split():
                key, _, val = part.partition("=")
                meta[key] = val
        elif line and line != "ix,iy,count":
            rows.append(line.split(","))
    re_range = tuple(float(v) for v in meta["re_range"].split(","))
    im_range = tuple(float(v) for v in meta["im_range"].split(","))
    nx, ny = (int(v) for v in meta["bins"].split(","))
    integral = all("." not in r[2] and "e" not in r[2] for r in rows)
    counts = np.zeros((nx, ny), dtype=np.int64 if integral else float)
    for i, j, c in rows:
        counts[int(i), int(j)] = int(c) if integral else float(c)
    total = float(meta["total"])
    oor = float(meta["out_of_range"])
    if integral:
        total, oor = int(total), int(oor)
    return HistogramGrid(re_range, im_range, nx, ny, counts, total, oor)
