"""Zero ordinates of zeta on the critical line: computation, ingestion, counting.

Only the positive ordinates are stored; the negative half of the zero set is
implied by symmetry and handled by the consumers that need it.
"""

from __future__ import annotations

import enum
import io
import logging
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

import numpy as np
from scipy.special import lambertw, loggamma

from . import kernels
from .errors import CoverageError, DomainError, IncompleteError, ValidationError, ZeroFileParseError

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
MAX_COUNT = 1_000_000
COMPUTED_PRECISION = 1e-9
DEFAULT_INGEST_PRECISION = 1e-8
# Z is evaluated from here up; no zero lies below 14.
SCAN_START = 10.0


class ZeroSource(str, enum.Enum):
    COMPUTED = "computed"
    INGESTED = "ingested"
    SYNTHETIC = "synthetic"


@dataclass(frozen=True)
class GramCertificate:
    """Per good-Gram-point check that the zeros found below it number k + 1."""

    gram_index: np.ndarray
    height: np.ndarray
    expected: np.ndarray
    found: np.ndarray
    refined_blocks: int

    @property
    def ok(self) -> bool:
        return bool(np.array_equal(self.expected, self.found))


@dataclass(frozen=True)
class ZeroTable:
    ordinates: np.ndarray
    source: ZeroSource = ZeroSource.COMPUTED
    precision: float = COMPUTED_PRECISION
    label: str = ""
    base_offset: float = 0.0
    certificate: GramCertificate | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        arr = np.array(self.ordinates, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "ordinates", arr)
        object.__setattr__(self, "source", ZeroSource(self.source))
        if arr.ndim != 1:
            raise ValidationError("ordinates must be one-dimensional")
        if not self.precision > 0:
            raise ValidationError("precision must be positive")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("ordinates must be finite")
        if arr.size > 1 and not np.all(np.diff(arr) > 0):
            bad = int(np.flatnonzero(np.diff(arr) <= 0)[0])
            raise ValidationError(f"ordinates not strictly increasing at index {bad + 1}")
        if self.source is ZeroSource.SYNTHETIC:
            return
        if arr.size and arr[0] <= 14.0:
            raise ValidationError(f"first ordinate {arr[0]!r} is not above 14")
        if self.base_offset == 0.0 and arr.size and arr[-1] >= 100.0:
            worst = counting_deviation(self)
            if worst > 1.0:
                raise ValidationError(
                    f"|N(T) - main_term(T)| exceeds 3 log T (ratio {worst:.3g}); table is incomplete"
                )

    def __len__(self) -> int:
        return self.ordinates.size

    def __eq__(self, other):
        if not isinstance(other, ZeroTable):
            return NotImplemented
        return (
            self.source == other.source
            and self.precision == other.precision
            and self.label == other.label
            and self.base_offset == other.base_offset
            and np.array_equal(self.ordinates, other.ordinates)
        )

    __hash__ = None

    @property
    def max_ordinate(self) -> float:
        return float(self.ordinates[-1]) if self.ordinates.size else 0.0

    def require_coverage(self, height: float) -> None:
        # a synthetic table is the whole zero set, so every height is covered
        if self.source is ZeroSource.SYNTHETIC:
            return
        if height > self.max_ordinate:
            raise CoverageError(
                f"table reaches {self.max_ordinate:.6f} but height {height:.6f} is needed"
            )

    def head(self, count: int) -> "ZeroTable":
        return ZeroTable(
            self.ordinates[:count], self.source, self.precision, self.label, self.base_offset
        )

    @classmethod
    def synthetic(cls, ordinates: Iterable[float], label: str = "synthetic") -> "ZeroTable":
        """Hand-made table taken as the complete zero set; skips the height invariants."""
        return cls(np.asarray(list(ordinates), dtype=float), ZeroSource.SYNTHETIC, 1e-15, label)


def counting_deviation(table: ZeroTable, points: int = 1000) -> float:
    """max |N(T) - main_term(T)| / (3 log T) on a grid over [100, max ordinate]."""
    top = table.max_ordinate
    if top < 100.0:
        return 0.0
    grid = np.linspace(100.0, top, points)
    counts = np.searchsorted(table.ordinates, grid, side="right")
    return float(np.max(np.abs(counts - main_term(grid)) / (3.0 * np.log(grid))))


def main_term(T):
    """(T/2pi) log(T/2pi) - T/2pi."""
    T_arr = np.asarray(T, dtype=float)
    if np.any(T_arr <= 0):
        raise DomainError("main_term needs T > 0")
    x = T_arr / TWO_PI
    out = x * np.log(x) - x
    return float(out) if np.ndim(out) == 0 else out


def riemann_siegel_theta(t):
    """Riemann-Siegel theta on its continuous branch.

    Uses the asymptotic series for t >= 10 and log-Gamma below.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t_arr <= 0):
        raise DomainError("theta needs t > 0")
    out = np.empty_like(t_arr)
    big = t_arr >= SCAN_START
    out[big] = kernels.theta(t_arr[big])
    small = t_arr[~big]
    out[~big] = loggamma(0.25 + 0.5j * small).imag - 0.5 * small * math.log(math.pi)
    return float(out[0]) if np.ndim(t) == 0 else out


def riemann_siegel_Z(t):
    """Hardy's Z function, real on the real axis with the same zeros as zeta(1/2 + it).

    Below height 1000 the value comes from an Euler-Maclaurin evaluation of zeta
    rotated by theta; above it from the Riemann-Siegel sum with remainder terms
    C0..C4.  Absolute error is below 1e-10 on [10, 1e5].
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t_arr <= 0):
        raise DomainError("Z needs t > 0")
    if np.any(t_arr < SCAN_START):
        raise DomainError(f"Z is implemented for t >= {SCAN_START}")
    out = kernels.z_values(t_arr)
    return float(out[0]) if np.ndim(t) == 0 else out


def gram_points(indices) -> np.ndarray:
    """Solve theta(g_k) = k pi for each k >= 0."""
    k = np.asarray(indices, dtype=float)
    if np.any(k < 0):
        raise DomainError("gram points are computed for k >= 0")
    # exact inverse of the two leading theta terms, then Newton on the full series
    w = (k + 0.125) / math.e
    g = TWO_PI * (k + 0.125) / lambertw(w).real
    for _ in range(4):
        g = g - (kernels.theta(g) - k * math.pi) / (0.5 * np.log(g / TWO_PI))
    return g


def _sign_changes(values: np.ndarray) -> np.ndarray:
    return (values[:-1] * values[1:]) < 0


def _refine_blocks(blocks: list, max_depth: int) -> list:
    """Halve every subinterval of each deficient block until its sign changes add up."""
    pending = list(blocks)
    done = []
    for _depth in range(max_depth):
        if not pending:
            break
        mids = [0.5 * (b["pts"][:-1] + b["pts"][1:]) for b in pending]
        zs = kernels.z_values(np.concatenate(mids))
        offset = 0
        still = []
        for b, m in zip(pending, mids):
            zm = zs[offset : offset + m.size]
            offset += m.size
            pts = np.empty(b["pts"].size + m.size)
            vals = np.empty_like(pts)
            pts[0::2], pts[1::2] = b["pts"], m
            vals[0::2], vals[1::2] = b["vals"], zm
            b = dict(b, pts=pts, vals=vals)
            found = int(_sign_changes(vals).sum())
            if found > b["expected"]:
                raise IncompleteError(
                    f"Gram block [g_{b['k0']}, g_{b['k1']}] shows {found} sign changes, "
                    f"expected {b['expected']}",
                    (b["k0"], b["k1"]),
                )
            (done if found == b["expected"] else still).append(b)
        pending = still
    if pending:
        b = pending[0]
        raise IncompleteError(
            f"Gram block [g_{b['k0']}, g_{b['k1']}] still misses sign changes after "
            f"subdivision depth {max_depth}",
            (b["k0"], b["k1"]),
        )
    return done


def _scan(k_max: int, max_depth: int, tol: float):
    ks = np.arange(0, k_max + 1)
    pts = np.concatenate([[SCAN_START], gram_points(ks)])
    kidx = np.concatenate([[-1], ks])
    vals = kernels.z_values(pts)
    good = np.flatnonzero(((-1.0) ** kidx) * vals > 0)
    if good.size == 0 or good[0] != 0:
        raise IncompleteError("Z(10) has an unexpected sign", (-1, 0))
    changes = _sign_changes(vals)
    # sign changes per block between consecutive good points
    csum = np.concatenate([[0], np.cumsum(changes)])
    expected = np.diff(good)
    found = csum[good[1:]] - csum[good[:-1]]
    deficient = np.flatnonzero(found != expected)
    lows = [pts[:-1][changes]]
    highs = [pts[1:][changes]]
    blocks = []
    for i in deficient:
        b0, b1 = good[i], good[i + 1]
        if found[i] > expected[i]:
            raise IncompleteError(
                f"Gram block [g_{kidx[b0]}, g_{kidx[b1]}] has too many sign changes",
                (int(kidx[b0]), int(kidx[b1])),
            )
        blocks.append(
            dict(k0=int(kidx[b0]), k1=int(kidx[b1]), expected=int(expected[i]),
                 pts=pts[b0 : b1 + 1].copy(), vals=vals[b0 : b1 + 1].copy())
        )
    if blocks:
        # drop the coarse brackets of refined blocks, replace with the fine ones
        drop = np.zeros(changes.size, dtype=bool)
        for i in deficient:
            drop[good[i] : good[i + 1]] = True
        lows = [pts[:-1][changes & ~drop]]
        highs = [pts[1:][changes & ~drop]]
        for b in _refine_blocks(blocks, max_depth):
            sc = _sign_changes(b["vals"])
            lows.append(b["pts"][:-1][sc])
            highs.append(b["pts"][1:][sc])
    lo = np.concatenate(lows)
    hi = np.concatenate(highs)
    order = np.argsort(lo, kind="stable")
    lo, hi = lo[order], hi[order]
    # only blocks closed by a good Gram point are trusted
    last = pts[good[-1]]
    keep = hi <= last
    roots = kernels.bisect_roots(lo[keep], hi[keep], tol)
    heights = pts[good]
    cert = GramCertificate(
        gram_index=kidx[good],
        height=heights,
        expected=kidx[good] + 1,
        found=np.searchsorted(roots, heights, side="right"),
        refined_blocks=len(blocks),
    )
    return roots, cert


def compute_zeros(count: int, *, max_depth: int = 12, tol: float = COMPUTED_PRECISION) -> ZeroTable:
    """First ``count`` ordinates by Gram-block scanning and bisection on Z."""
    if count < 0 or count > MAX_COUNT:
        raise DomainError(f"count must lie in [0, {MAX_COUNT}]")
    if count == 0:
        return ZeroTable(np.empty(0), ZeroSource.COMPUTED, COMPUTED_PRECISION, "computed:0")
    k_max = count + 32
    while True:
        roots, cert = _scan(k_max, max_depth, tol)
        if not cert.ok:
            bad = int(np.flatnonzero(cert.expected != cert.found)[0])
            k = int(cert.gram_index[bad])
            raise IncompleteError(f"count mismatch at Gram point g_{k}", (k, k))
        if roots.size >= count:
            break
        k_max = int(k_max * 1.05) + 64
    # certificate restricted to the part of the scan that backs the returned zeros
    top = roots[count - 1]
    upto = int(np.searchsorted(cert.height, top)) + 1
    cert = GramCertificate(
        cert.gram_index[:upto], cert.height[:upto], cert.expected[:upto], cert.found[:upto],
        cert.refined_blocks,
    )
    log.info("computed %d zeros, %d refined Gram blocks", count, cert.refined_blocks)
    return ZeroTable(roots[:count], ZeroSource.COMPUTED, COMPUTED_PRECISION, f"computed:{count}",
                     certificate=cert)


def count_zeros(table: ZeroTable, T: float) -> int:
    """N(T): ordinates in (0, T]."""
    if len(table) == 0:
        return 0
    table.require_coverage(T)
    return int(np.searchsorted(table.ordinates, T, side="right"))


def count_zeros_many(table: ZeroTable, T) -> np.ndarray:
    T = np.asarray(T, dtype=float)
    if len(table) == 0:
        return np.zeros(T.shape, dtype=np.int64)
    table.require_coverage(float(np.max(T)))
    return np.searchsorted(table.ordinates, T, side="right")


def parse_zero_file(
    stream: IO,
    base_offset: float | None = None,
    *,
    precision: float = DEFAULT_INGEST_PRECISION,
    label: str = "",
) -> ZeroTable:
    """Read one ordinate per line; '#' lines are comments.

    An optional ``BASE <decimal>`` line before the first value shifts every
    value, like ``base_offset``.  Giving both with different values is an error.
    """
    raw = stream.read()
    text = raw.decode("utf-8") if isinstance(raw, (bytes, bytearray)) else raw
    values = []
    file_base = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if s.upper().startswith("BASE"):
            if values or file_base is not None:
                raise ZeroFileParseError("BASE must precede all values", lineno)
            try:
                file_base = float(s.split(None, 1)[1])
            except (IndexError, ValueError):
                raise ZeroFileParseError(f"malformed BASE line {s!r}", lineno) from None
            continue
        try:
            values.append(float(s))
        except ValueError:
            raise ZeroFileParseError(f"not a decimal number: {s!r}", lineno) from None
    if file_base is not None and base_offset is not None and file_base != base_offset:
        raise ZeroFileParseError(f"BASE {file_base} conflicts with offset {base_offset}")
    base = file_base if file_base is not None else (base_offset or 0.0)
    arr = np.asarray(values, dtype=float) + base
    return ZeroTable(arr, ZeroSource.INGESTED, precision, label, float(base))


def load_zero_file(path, base_offset: float | None = None, precision: float = DEFAULT_INGEST_PRECISION) -> ZeroTable:
    with open(path, "rb") as fh:
        return parse_zero_file(fh, base_offset, precision=precision, label=str(path))


def format_zero_table(table: ZeroTable) -> str:
    """Serialize in the ingest format with 12 decimals (below any declared precision)."""
    buf = io.StringIO()
    buf.write(f"# source={table.source.value} precision={table.precision:.3g} count={len(table)}\n")
    if table.label:
        buf.write(f"# label={table.label}\n")
    if table.base_offset:
        buf.write(f"BASE {table.base_offset!r}\n")
    for v in table.ordinates - table.base_offset:
        buf.write(f"{v:.12f}\n")
    return buf.getvalue()


def write_zero_file(table: ZeroTable, path) -> None:
    Path(path).write_text(format_zero_table(table), encoding="utf-8")


def cached_zeros(count: int, cache_dir: str | os.PathLike | None = None) -> ZeroTable:
    """compute_zeros with an on-disk cache (``LANDAU_LAB_CACHE`` or ``cache_dir``).

    Files are keyed by backend: the two backends agree to ~1e-12, not bit for bit.
    """
    folder = cache_dir or os.environ.get("LANDAU_LAB_CACHE")
    if not folder:
        return compute_zeros(count)
    folder = Path(folder)
    folder.mkdir(parents=True, exist_ok=True)
    prefix = f"zeros_{kernels.BACKEND}_"
    for path in sorted(folder.glob(prefix + "*.npy"), key=lambda p: int(p.stem.rsplit("_", 1)[1])):
        if int(path.stem.rsplit("_", 1)[1]) >= count:
            arr = np.load(path)[:count]
            return ZeroTable(arr, ZeroSource.COMPUTED, COMPUTED_PRECISION, f"computed:{count}")
    table = compute_zeros(count)
    tmp = folder / f".{prefix}{count}.{os.getpid()}.npy"
    np.save(tmp, table.ordinates)
    os.replace(tmp, folder / f"{prefix}{count}.npy")
    return table


def certify_table(table: ZeroTable) -> GramCertificate:
    """Check N(g_k) = k + 1 at every good Gram point g_k below the table top.

    Works on any table, so an ingested file can be audited the same way as a
    computed one.  A good Gram point satisfies (-1)^k Z(g_k) > 0.
    """
    if len(table) == 0:
        empty = np.empty(0, dtype=np.int64)
        return GramCertificate(empty, np.empty(0), empty, empty, 0)
    top = table.max_ordinate
    k_hi = int(math.floor(riemann_siegel_theta(top) / math.pi)) + 1
    ks = np.arange(0, max(k_hi, 0) + 1)
    g = gram_points(ks)
    keep = g <= top
    ks, g = ks[keep], g[keep]
    vals = kernels.z_values(g)
    good = ((-1.0) ** ks) * vals > 0
    ks, g = ks[good], g[good]
    return GramCertificate(ks, g, ks + 1, np.searchsorted(table.ordinates, g, side="right"), 0)
