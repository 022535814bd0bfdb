"""Command-line front end.

    landau-lab zeros  --compute 100000 --out zeros.txt
    landau-lab landau --zeros zeros.txt --x 2 --x 3 --T 74920
    landau-lab eta    --compute 100000 --a 'log(2)' --h 0 --n 4:8264
    landau-lab trace  --compute 100000 --a 1 --tau 50000:50600 --samples 600
    landau-lab hist   --compute 100000 --of trace --a 1 --tau pi:74920-pi --samples 50000
    landau-lab verify --compute 100000

Exit status: 0 on success, 1 when a computation fails, 2 for bad arguments.
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import logging
import math
import operator
import sys
from pathlib import Path

import numpy as np

from . import cycle_stats as cs
from . import distributions as dist
from . import kernels
from .arithmetic import Frequency, integer_frequency, parse_frequency, predicted_eta_mean
from .errors import ConfigError, LandauLabError
from .landau_sums import CSV_HEADER, scan_point
from .zeros import (
    DEFAULT_INGEST_PRECISION,
    ZeroTable,
    cached_zeros,
    format_zero_table,
    load_zero_file,
)

log = logging.getLogger("landau_lab")

FORMATS = ("csv", "json", "svg-scatter")

FIGURES = {
    "fig1": ["trace", "--a", "1", "--tau", "50000:50600", "--samples", "600"],
    "fig2": ["trace", "--a", "1", "--tau", "pi:74920-pi", "--samples", "50000"],
    "fig3": ["trace", "--a", "0.5", "--tau", "pi:37460-pi", "--samples", "50000"],
    "fig4": ["trace", "--a", "log(2)", "--tau", "pi:74920*log(2)-pi", "--samples", "50000"],
    "fig5": ["eta", "--a", "log(2)", "--h", "0", "--n", "4:8264"],
}

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}
_FUNCS = {"log": math.log, "sqrt": math.sqrt, "exp": math.exp}
_NAMES = {"pi": math.pi, "e": math.e}


def evaluate(expr: str) -> float:
    """Arithmetic on numbers, pi, e and log/sqrt/exp; nothing else."""

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](walk(node.left), walk(node.right))
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            if len(node.args) != 1 or node.keywords:
                raise ConfigError(f"bad call in {expr!r}")
            return _FUNCS[node.func.id](walk(node.args[0]))
        raise ConfigError(f"unsupported expression {expr!r}")

    try:
        return walk(ast.parse(expr.strip(), mode="eval"))
    except (SyntaxError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot evaluate {expr!r}: {exc}") from None


def parse_range(text: str, integer: bool = False) -> tuple:
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigError(f"range must look like lo:hi, got {text!r}")
    lo, hi = evaluate(parts[0]), evaluate(parts[1])
    if integer:
        if lo != int(lo) or hi != int(hi):
            raise ConfigError(f"integer range expected, got {text!r}")
        lo, hi = int(lo), int(hi)
    if hi < lo:
        raise ConfigError(f"empty range {text!r}")
    return lo, hi


def parse_bins(text: str) -> tuple[int, int]:
    try:
        nx, ny = (int(v) for v in text.split(","))
    except ValueError:
        raise ConfigError(f"--bins expects nx,ny, got {text!r}") from None
    if nx < 1 or ny < 1:
        raise ConfigError("bin counts must be positive")
    return nx, ny


def fmt(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return format(float(v), ".12g")


def csv_bytes(header, rows) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    return buf.getvalue().encode()


def json_bytes(obj) -> bytes:
    return (json.dumps(obj, indent=1, sort_keys=True) + "\n").encode()


def svg_scatter(points, width: int = 800, height: int = 800, margin: int = 10) -> bytes:
    """Static scatter of complex points: viewport from data bounds, 1px markers."""
    z = np.asarray(points, dtype=complex)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        '<g fill="black">',
    ]
    if z.size:
        x0, x1 = float(z.real.min()), float(z.real.max())
        y0, y1 = float(z.imag.min()), float(z.imag.max())
        sx = (width - 2 * margin) / ((x1 - x0) or 1.0)
        sy = (height - 2 * margin) / ((y1 - y0) or 1.0)
        s = min(sx, sy)
        for p in z:
            px = margin + (p.real - x0) * s
            py = height - margin - (p.imag - y0) * s
            lines.append(f'<rect x="{px:.2f}" y="{py:.2f}" width="1" height="1"/>')
    lines += ["</g>", "</svg>"]
    return ("\n".join(lines) + "\n").encode()


# -- argument parsing -------------------------------------------------------


def _source_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("zero source (exactly one)")
    g.add_argument("--zeros", metavar="PATH", help="zero file, or compute:<count>")
    g.add_argument("--compute", type=int, metavar="COUNT", help="compute the first COUNT zeros")
    g.add_argument("--precision", type=float, default=DEFAULT_INGEST_PRECISION,
                   help="absolute precision of ingested ordinates (default 1e-8)")
    g.add_argument("--base-offset", type=float, default=None, help="added to every ingested value")


def _freq_args(p: argparse.ArgumentParser, multiple: bool = False) -> None:
    action = "append" if multiple else "store"
    p.add_argument("--a", action=action, help="frequency: <float> or log(<int>)")
    p.add_argument("--x", action=action, type=int, help="integer x, frequency log x")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="landau-lab", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeros", help="compute or ingest zeros and write them out")
    _source_args(p)
    _common(p)

    p = sub.add_parser("landau", help="lambda_a(T) and its residual")
    _source_args(p)
    _freq_args(p, multiple=True)
    p.add_argument("--T", help="comma-separated heights (default: table top)")
    _common(p)

    p = sub.add_parser("eta", help="cycle sums eta_{a,h}(n)")
    _source_args(p)
    _freq_args(p)
    p.add_argument("--h", type=float, default=0.0)
    p.add_argument("--n", required=True, help="lo:hi, inclusive")
    _common(p)

    p = sub.add_parser("trace", help="H_a(tau) on an equally spaced grid")
    _source_args(p)
    _freq_args(p)
    p.add_argument("--tau", required=True, help="lo:hi, inclusive; pi and log() allowed")
    p.add_argument("--samples", type=int, required=True)
    _common(p)

    p = sub.add_parser("hist", help="2-D histogram of eta or H samples")
    _source_args(p)
    _freq_args(p)
    p.add_argument("--of", choices=("eta", "trace"), required=True)
    p.add_argument("--h", type=float, default=0.0)
    p.add_argument("--n", help="lo:hi for --of eta")
    p.add_argument("--tau", help="lo:hi for --of trace")
    p.add_argument("--samples", type=int)
    p.add_argument("--bins", default="50,50")
    p.add_argument("--window", help="re_lo:re_hi,im_lo:im_hi (default mean +- 4 sd)")
    p.add_argument("--recenter", action="store_true", help="subtract the predicted eta mean")
    p.add_argument("--convolve", action="store_true", help="average over the circle of radius (Lambda/a) e^{-a/2}")
    _common(p)

    p = sub.add_parser("verify", help="run the verification suite, JSON report")
    _source_args(p)
    p.add_argument("--quick", action="store_true", help="10^4 zeros, heights scaled by 1/8")
    _common(p)
    return parser


def _frequency(args) -> Frequency:
    a, x = getattr(args, "a", None), getattr(args, "x", None)
    if (a is None) == (x is None):
        raise ConfigError("give exactly one of --a or --x")
    return integer_frequency(x) if x is not None else parse_frequency(a)


def _frequencies(args) -> list[Frequency]:
    out = [parse_frequency(a) for a in (args.a or [])] + [integer_frequency(x) for x in (args.x or [])]
    if not out:
        raise ConfigError("give at least one --a or --x")
    return sorted(out, key=lambda f: f.a)


def _source(args, default_count: int | None = None):
    path, count = args.zeros, args.compute
    if path and path.startswith("compute:"):
        if count is not None:
            raise ConfigError("give exactly one zero source")
        try:
            count = int(path.split(":", 1)[1])
        except ValueError:
            raise ConfigError(f"bad zero source {path!r}") from None
        path = None
    if path and count is not None:
        raise ConfigError("give exactly one of --zeros / --compute")
    if not path and count is None:
        if default_count is None:
            raise ConfigError("a zero source is required (--zeros PATH or --compute COUNT)")
        count = default_count
    if count is not None and count < 0:
        raise ConfigError("--compute needs a nonnegative count")
    if path and not Path(path).is_file():
        raise ConfigError(f"no such zero file: {path}")
    return path, count


def _load(source, args) -> ZeroTable:
    path, count = source
    if path:
        return load_zero_file(path, args.base_offset, args.precision)
    return cached_zeros(count)


def _validate(args) -> dict:
    """All argument checks happen here, before any computation or file output."""
    plan = {}
    if args.format == "svg-scatter" and args.command not in ("eta", "trace"):
        raise ConfigError("svg-scatter output is available for eta and trace")
    if args.threads is not None and args.threads < 1:
        raise ConfigError("--threads must be positive")
    if args.command == "landau":
        plan["freqs"] = _frequencies(args)
        plan["T"] = [evaluate(v) for v in args.T.split(",")] if args.T else None
    elif args.command == "eta":
        plan["freq"] = _frequency(args)
        plan["n"] = parse_range(args.n, integer=True)
        if plan["n"][0] < 1:
            raise ConfigError("eta needs n >= 1")
    elif args.command == "trace":
        plan["freq"] = _frequency(args)
        plan["tau"] = parse_range(args.tau)
        if args.samples < 2:
            raise ConfigError("--samples must be at least 2")
    elif args.command == "hist":
        plan["freq"] = _frequency(args)
        plan["bins"] = parse_bins(args.bins)
        if args.of == "eta":
            if not args.n or args.tau:
                raise ConfigError("--of eta takes --n and no --tau")
            plan["n"] = parse_range(args.n, integer=True)
        else:
            if not args.tau or not args.samples or args.n:
                raise ConfigError("--of trace takes --tau and --samples and no --n")
            plan["tau"] = parse_range(args.tau)
        if args.recenter and args.of != "eta":
            raise ConfigError("--recenter applies to eta samples")
        if args.window:
            try:
                re_part, im_part = args.window.split(",")
                plan["window"] = (parse_range(re_part), parse_range(im_part))
            except ValueError:
                raise ConfigError("--window expects re_lo:re_hi,im_lo:im_hi") from None
    return plan


# -- producers ---------------------------------------------------------------


def _emit_points(header, rows, points, fmt_name, extra=None) -> bytes:
    if fmt_name == "svg-scatter":
        return svg_scatter(points)
    if fmt_name == "json":
        return json_bytes({**(extra or {}), "columns": header, "rows": [[float(v) for v in r] for r in rows]})
    return csv_bytes(header, rows)


def produce(args, plan, table: ZeroTable) -> bytes:
    cmd = args.command
    if cmd == "zeros":
        if args.format == "json":
            return json_bytes({"source": table.source.value, "precision": table.precision,
                               "label": table.label, "base_offset": table.base_offset,
                               "ordinates": table.ordinates.tolist()})
        return format_zero_table(table).encode()
    if cmd == "landau":
        Ts = plan["T"] or [math.floor(table.max_ordinate)]
        rows = [scan_point(table, f, T).row() for f in plan["freqs"] for T in Ts]
        return _emit_points(CSV_HEADER, rows, [], args.format)
    if cmd == "eta":
        f = plan["freq"]
        e = cs.eta_values(table, f.a, args.h, *plan["n"])
        rows = [(n, args.h, f.a, v.real, v.imag) for n, v in zip(e.n, e.values)]
        return _emit_points(["n", "h", "a", "re", "im"], rows, e.values, args.format)
    if cmd == "trace":
        f = plan["freq"]
        tr = cs.H_trace(table, f.a, plan["tau"][0], plan["tau"][1], args.samples)
        rows = [(t, v.real, v.imag, n, c) for t, v, n, c in zip(tr.tau, tr.values, tr.nu, tr.center)]
        return _emit_points(["tau", "re", "im", "nu", "center"], rows, tr.values, args.format)
    if cmd == "hist":
        f = plan["freq"]
        if args.of == "eta":
            vals = cs.eta_values(table, f.a, args.h, *plan["n"]).values
            if args.recenter:
                vals = vals - predicted_eta_mean(f, args.h)
        else:
            vals = cs.H_trace(table, f.a, plan["tau"][0], plan["tau"][1], args.samples).values
        window = plan.get("window") or dist.default_window(vals)
        grid = dist.build_histogram(vals, *window, *plan["bins"])
        if args.convolve:
            grid = dist.angular_convolve(grid, f.orbit_radius)
        if args.format == "json":
            return json_bytes({"re_range": grid.re_range, "im_range": grid.im_range, "bins": [grid.nx, grid.ny],
                               "total": grid.total, "out_of_range": grid.out_of_range,
                               "counts": grid.counts.tolist()})
        return dist.format_grid(grid).encode()
    raise ConfigError(f"unknown command {cmd}")


def render_figure(name: str, table: ZeroTable) -> bytes:
    """CSV bytes for one of the FIGURES recipes, computed from ``table``."""
    args = build_parser().parse_args(FIGURES[name] + ["--compute", "0"])
    return produce(args, _validate(args), table)


def _write(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def run_verify(args) -> int:
    from . import verify

    source = _source(args, default_count=10_000 if args.quick else 100_000)
    seconds = None
    if source[0]:
        table = _load(source, args)
    elif source[1] == 0:
        table = ZeroTable(np.empty(0))
    else:
        table, seconds = verify.timed_compute(source[1])
    criteria = verify.run_suite(table, quick=args.quick, compute_seconds=seconds)
    for c in criteria:
        print(c.line() + (f" ({c.reason})" if c.skipped else ""), file=sys.stderr)
        for chk in c.checks:
            mark = "info" if chk.informational else ("ok  " if chk.passed else "BAD ")
            print(f"    {mark} {chk.name}: {chk.value:.6g} (threshold {chk.threshold:.6g})", file=sys.stderr)
    rep = verify.report(criteria, table, args.quick)
    _write(json_bytes(rep), args.out)
    return 0 if rep["passed"] else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        kernels.set_threads(args.threads)
        if args.command == "verify":
            if args.format != "csv" and args.format != "json":
                raise ConfigError("verify writes a JSON report")
            return run_verify(args)
        plan = _validate(args)
        source = _source(args)
        table = _load(source, args)
        data = produce(args, plan, table)
    except ConfigError as exc:
        print(f"landau-lab: error: {exc}", file=sys.stderr)
        return 2
    except LandauLabError as exc:
        print(f"landau-lab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _write(data, args.out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
