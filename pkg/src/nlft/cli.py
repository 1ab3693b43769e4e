"""Command-line interface: every computation as a CSV or JSON table.

Exit codes: 0 success, 1 usage error, 2 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import distributions as dist
from . import extraction as ex
from . import matrix as mc
from . import partitions as pt
from . import transforms as tf

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2
_JSON_SAFE_INT = 2**53
MULTINOMIAL_TOL = 1e-9
TRANSFORM_KINDS = ("constant", "step", "dyson", "volume", "F_N", "G_N")


class UsageError(Exception):
    pass


class ConsistencyError(Exception):
    pass


@dataclass
class Table:
    columns: list[str]
    rows: list[list[Any]] = field(default_factory=list)
    footer: dict[str, Any] = field(default_factory=dict)


def _fmt(x: Any) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    if x is None:
        return ""
    return str(x)


def _json_value(x: Any) -> Any:
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        x = int(x)
        return str(x) if abs(x) > _JSON_SAFE_INT else x
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    return x


def render(table: Table, fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(table.columns)]
        lines += [",".join(_fmt(v) for v in row) for row in table.rows]
        lines += [f"# {k}={_fmt(v)}" for k, v in table.footer.items()]
        return "\n".join(lines) + "\n"
    doc = {
        "columns": table.columns,
        "rows": [{c: _json_value(v) for c, v in zip(table.columns, row)} for row in table.rows],
        "footer": {k: _json_value(v) for k, v in table.footer.items()},
    }
    return json.dumps(doc, indent=2) + "\n"


def read_signal(path: str) -> tf.Signal:
    """One sample per line, ``real`` or ``real imag``; blank lines are skipped."""
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.split()
            if not parts:
                continue
            try:
                if len(parts) == 1:
                    values.append(complex(float(parts[0]), 0.0))
                elif len(parts) == 2:
                    values.append(complex(float(parts[0]), float(parts[1])))
                else:
                    raise ValueError
            except ValueError:
                raise UsageError(f"{path}:{lineno}: expected 'real' or 'real imag'") from None
    if not values:
        raise UsageError(f"{path}: no samples")
    return tf.Signal(values)


def _int_list(text: str) -> list[int]:
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _shape(text: str) -> tuple[int, int]:
    vals = _int_list(text)
    if len(vals) != 2 or min(vals) < 0:
        raise argparse.ArgumentTypeError("--shape expects two non-negative integers a,b")
    return vals[0], vals[1]


# commands -----------------------------------------------------------------

def cmd_aq_table(N: int, d: int) -> Table:
    if not 1 <= d <= N:
        raise UsageError("need 1 <= degree <= size")
    t = Table(["l", "aq_closed", "aq_brute", "extract_aq", "agree"])
    bad = []
    for l in range(N):
        row = [pt.aq_closed(N, l, d), pt.aq_brute(N, l, d), ex.extract_aq(N, l, d)]
        ok = len(set(row)) == 1
        if not ok:
            bad.append((N, l, d))
        t.rows.append([l, *row, ok])
    t.footer = {"sum": sum(r[1] for r in t.rows), "expected": math.comb(N, d)}
    if bad or t.footer["sum"] != t.footer["expected"]:
        t.footer["disagreement"] = ";".join(f"N={a} l={b} d={c}" for a, b, c in bad)
        raise ConsistencyError(t)
    return t


def cmd_ap_table(N: int, d: int) -> Table:
    if d < 1:
        raise UsageError("degree must be at least 1")
    t = Table(["l", "ap_brute", "ap_via_alt", "extract_ap", "agree"])
    bad = []
    for l in range(N):
        row = [pt.ap_brute(N, l, d), pt.ap_via_alt(N, l, d), ex.extract_ap(N, l, d)]
        ok = len(set(row)) == 1
        if not ok:
            bad.append((N, l, d))
        t.rows.append([l, *row, ok])
    t.footer = {"sum": sum(r[1] for r in t.rows), "expected": math.comb(N + d - 1, d)}
    if bad or t.footer["sum"] != t.footer["expected"]:
        t.footer["disagreement"] = ";".join(f"N={a} l={b} d={c}" for a, b, c in bad)
        raise ConsistencyError(t)
    return t


def cmd_nlft(
    kind: str,
    signal: tf.Signal,
    ns: Sequence[int],
    d_max: int = 12,
    m_quad: int = 2048,
) -> Table:
    if kind not in TRANSFORM_KINDS:
        raise UsageError(f"unknown kind {kind!r}")
    const = signal.samples[0] if np.all(signal.samples == signal.samples[0]) else None
    if kind in ("constant", "volume") and (const is None or const.imag != 0):
        raise UsageError(f"kind {kind!r} needs a constant real amplitude")
    cols = ["n"] + [f"{p}{ij}" for ij in ("11", "12", "21", "22") for p in ("re", "im")]
    t = Table(cols + ["det_re", "det_im", "su2", "diff_closed_form"])
    for n in ns:
        if kind == "constant":
            M = tf.nlft_constant(const.real, n)
        elif kind == "step":
            M = tf.nlft_step(signal, n)
        elif kind == "dyson":
            M = tf.nlft_dyson(signal, n, d_max, m_quad)
        elif kind == "volume":
            M = tf.nlft_volume_expansion(const.real, n, d_max, m_quad)
        elif kind == "F_N":
            M = tf.f_n(signal, n)
        else:
            M = tf.g_n(signal, n)
        entries = [v for z in M.ravel() for v in (z.real, z.imag)]
        det = mc.det(M)
        diff = None
        if const is not None and const.imag == 0:
            diff = mc.max_norm(M - tf.nlft_constant(const.real, n))
        t.rows.append([n, *entries, det.real, det.imag, mc.is_su2(M, 1e-10), diff])
    t.footer = {"kind": kind, "N": signal.N}
    return t


def cmd_beta(a: int, b: int, lam: float, sizes: Sequence[int]) -> Table:
    rows = dist.convergence_table(a, b, lam, sizes)
    t = Table(["N", "l_N", "P_N", "point_mass", "p_beta", "abs_err", "p_beta_limit", "c_N"])
    for r in rows:
        t.rows.append([r.N, r.l_N, r.P_N, r.P_N / r.N, r.p_beta, r.abs_err, r.p_beta_limit, r.c_N])
    t.footer = {"a": a, "b": b, "lambda": lam}
    return t


def cmd_aq_limit(d: int, lam: float, sizes: Sequence[int]) -> Table:
    rows = dist.aq_beta_limit_check(d, lam, sizes)
    t = Table(list(dist.LimitRow._fields))
    t.rows = [list(r) for r in rows]
    t.footer = {"d": d, "lambda": lam}
    return t


def cmd_volume_grid(d: int, points: int) -> Table:
    t = Table(["l", "vol_formula", "density"])
    for i in range(points + 1):
        l = i / points
        v = dist.vol_formula(d, l)
        t.rows.append([l, v, v * math.factorial(d)])
    t.footer = {"d": d}
    return t


def cmd_volume_mc(
    d: int, centers: Sequence[float], width: float, samples: int, seed: int
) -> Table:
    t = Table(["l", "vol_formula", "vol_mc", "stderr", "z", "count", "samples", "seed"])
    for k, c in enumerate(centers):
        est = dist.vol_mc(d, c, width, samples, seed + k)
        v = dist.vol_formula(d, c)
        z = (est.estimate - v) / est.stderr if est.stderr > 0 else math.inf
        t.rows.append([c, v, est.estimate, est.stderr, z, est.count, est.samples, est.seed])
    t.footer = {"d": d, "bin_width": width}
    return t


def cmd_multinomial(signal: tf.Signal, d: int, shift: int | None = None) -> Table:
    transform = ex.p_alt_table(signal, d)
    direct = ex.p_alt_direct_table(signal, d)
    ls = range(signal.N) if shift is None else [shift]
    t = Table(["l", "p_alt", "p_alt_direct", "abs_diff"])
    worst = 0.0
    for l in ls:
        diff = abs(transform[l] - direct[l])
        worst = max(worst, diff)
        t.rows.append([l, transform[l], direct[l], diff])
    t.footer = {"sum_p_alt": float(transform.sum()), "max_abs_diff": worst}
    if worst > MULTINOMIAL_TOL:
        raise ConsistencyError(t)
    return t


# argument parsing ------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nlft", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_ in (("aq-table", "distinct-part counts, three routes"),
                        ("ap-table", "non-distinct-part counts, three routes")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--size", type=int, required=True, metavar="N")
        p.add_argument("--degree", type=int, required=True, metavar="d")
        _common(p)

    p = sub.add_parser("nlft", help="transform matrices per spectral index")
    p.add_argument("--kind", choices=TRANSFORM_KINDS, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--amplitude", type=float, metavar="u", help="constant real signal")
    src.add_argument("--signal", metavar="FILE")
    p.add_argument("--size", type=int, default=1, metavar="N", help="samples of the constant signal")
    p.add_argument("--nmin", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--dmax", type=int, default=12)
    p.add_argument("--mquad", type=int, default=2048)
    _common(p)

    p = sub.add_parser("beta", help="discrete beta against the continuous density")
    p.add_argument("--shape", type=_shape, required=True, metavar="a,b")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--sizes", type=_int_list, required=True, metavar="N1,N2,...")
    _common(p)

    p = sub.add_parser("aq-limit", help="scaled AQ counts against the beta density")
    p.add_argument("--degree", type=int, required=True, metavar="d")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--sizes", type=_int_list, required=True, metavar="N1,N2,...")
    _common(p)

    p = sub.add_parser("volume", help="polytope volumes on a grid or by Monte Carlo")
    p.add_argument("--degree", type=int, required=True, metavar="d")
    p.add_argument("--grid", type=int, default=20, metavar="K", help="grid l = i/K")
    p.add_argument("--samples", type=int, help="Monte Carlo mode")
    p.add_argument("--seed", type=int)
    p.add_argument("--centers", type=_float_list, default=[0.25, 0.5, 0.75])
    p.add_argument("--bin-width", type=float, default=0.02)
    _common(p)

    p = sub.add_parser("multinomial", help="alternating multinomial probabilities, two routes")
    p.add_argument("--signal", required=True, metavar="FILE", help="probabilities u_0..u_{N-1}")
    p.add_argument("--degree", type=int, required=True, metavar="d")
    p.add_argument("--size", type=int, metavar="N", help="optional check of the sample count")
    p.add_argument("--shift", type=int, metavar="l")
    _common(p)
    return parser


def _dispatch(args: argparse.Namespace) -> Table:
    if args.command == "aq-table":
        return cmd_aq_table(args.size, args.degree)
    if args.command == "ap-table":
        return cmd_ap_table(args.size, args.degree)
    if args.command == "nlft":
        if args.signal:
            signal = read_signal(args.signal)
        else:
            if args.size < 1:
                raise UsageError("--size must be positive")
            signal = tf.Signal.constant(args.amplitude, args.size)
        lo = 0 if args.nmin is None else args.nmin
        hi = signal.N - 1 if args.nmax is None else args.nmax
        if hi < lo:
            raise UsageError("empty n-range")
        return cmd_nlft(args.kind, signal, range(lo, hi + 1), args.dmax, args.mquad)
    if args.command == "beta":
        a, b = args.shape
        return cmd_beta(a, b, args.lam, args.sizes)
    if args.command == "aq-limit":
        return cmd_aq_limit(args.degree, args.lam, args.sizes)
    if args.command == "volume":
        if args.samples is None:
            return cmd_volume_grid(args.degree, args.grid)
        if args.seed is None:
            raise UsageError("Monte Carlo mode requires --seed")
        return cmd_volume_mc(args.degree, args.centers, args.bin_width, args.samples, args.seed)
    if args.command == "multinomial":
        signal = read_signal(args.signal)
        if args.size is not None and args.size != signal.N:
            raise UsageError(f"--size {args.size} but the file has {signal.N} samples")
        return cmd_multinomial(signal, args.degree, args.shift)
    raise UsageError(f"unknown command {args.command}")


def _emit(table: Table, args: argparse.Namespace) -> None:
    text = render(table, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as stop:
        return int(stop.code or 0)
    try:
        table = _dispatch(args)
    except ConsistencyError as err:
        _emit(err.args[0], args)
        print("nlft: consistency check failed", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ArithmeticError as err:
        print(f"nlft: {err}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (UsageError, ValueError, IndexError, OSError) as err:
        print(f"nlft: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    _emit(table, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
