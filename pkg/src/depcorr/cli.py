"""``depcorr`` command-line interface.

Exit status: 0 on success, 1 for domain/data errors, 2 for usage errors.
The default ``--format`` comes from ``$DEPCORR_FORMAT`` (text if unset).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .bootstrap import STATISTICS, Method, bootstrap_rstar
from .classical import (
    chi_square,
    default_bins,
    entropy_dependence,
    fisher_z,
    hellinger_eta_from_B,
    independence_criteria,
    pearson,
)
from .errors import DepCorrError
from .gencorr import gmc_matrix, rstar
from .ingestion import EXAMPLES, load_csv, load_example, pairwise_complete
from .taraldsen import (
    DEFAULT_GRID_STEP,
    TABLE1_CUM_PROBS,
    TABLE1_SAMPLE_SIZES,
    Tails,
    exact_interval,
    pvalue_tail,
    quantile_table,
    tarald_density,
    tarald_pvalue,
)

FORMAT_ENV = "DEPCORR_FORMAT"
FORMATS = ("text", "json", "csv")


class UsageError(Exception):
    """Bad flag combination detected after argparse (exit status 2)."""


def sig6(value):
    """Round floats (recursively) to 6 significant digits for JSON output."""
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if not math.isfinite(v):
            return None
        return float(f"{v:.6g}")
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, dict):
        return {k: sig6(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [sig6(v) for v in value]
    return value


def _float_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _probability(text):
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"must lie strictly between 0 and 1, got {text}")
    return v


def _correlation(text):
    v = float(text)
    if not -1 <= v <= 1:
        raise argparse.ArgumentTypeError(f"must lie in [-1, 1], got {text}")
    return v


def _sample_size(text):
    v = int(text)
    if v < 3:
        raise argparse.ArgumentTypeError(f"sample size must be >= 3, got {text}")
    return v


# -- data selection ---------------------------------------------------------

def _add_data_args(p, cols=True):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", "-i", help="CSV file with a header row")
    src.add_argument("--example", choices=sorted(EXAMPLES), help="bundled dataset")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--na", default="NA,", help="comma-separated missing-value tokens (default: NA and empty)")
    if cols:
        p.add_argument("--x", required=True, help="regressor / first column")
        p.add_argument("--y", required=True, help="response / second column")


def _dataset(args):
    if args.example:
        return load_example(args.example)
    return load_csv(args.input, delimiter=args.delimiter, na_tokens=args.na.split(","))


def _pair(args):
    return pairwise_complete(_dataset(args), args.x, args.y)


# -- rendering --------------------------------------------------------------

def _emit(args, payload: dict, text: str, rows: list[list] | None = None):
    fmt = args.format
    if fmt == "json":
        out = json.dumps(sig6(payload), indent=2, sort_keys=False) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in rows if rows is not None else [[k, v] for k, v in payload.items()]:
            w.writerow(row)
        out = buf.getvalue()
    else:
        out = text if text.endswith("\n") else text + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _fmt(v, digits=4):
    return "NA" if v is None or (isinstance(v, float) and math.isnan(v)) else f"{v:.{digits}f}"


# -- subcommands ------------------------------------------------------------

def cmd_depmatrix(args):
    d = _dataset(args)
    cols = [c.strip() for c in args.cols.split(",")] if args.cols else d.names
    if len(cols) < 2:
        raise UsageError("depmatrix needs at least two columns")
    m = gmc_matrix(d.matrix(cols), cols)
    width = max(8, *(len(c) for c in cols)) + 1
    lines = ["R* matrix: entry [row, col] = r*(row | col); the column is the conditioning (cause) variable"]
    lines.append(" " * width + "".join(f"{c:>{width}}" for c in cols))
    for lab, row in zip(cols, m.values):
        lines.append(f"{lab:<{width}}" + "".join(f"{_fmt(v):>{width}}" for v in row))
    if m.undefined:
        lines.append("undefined (constant columns): " + ", ".join(m.undefined))
    rows = [["response\\cause", *cols]] + [[lab, *[_fmt(v, 6) for v in row]] for lab, row in zip(cols, m.values)]
    _emit(args, m.to_dict(), "\n".join(lines), rows)


def cmd_rstar(args):
    ps = _pair(args)
    pair = rstar(ps.x, ps.y)
    payload = {
        "x": ps.x_name,
        "y": ps.y_name,
        "n": ps.n,
        "dropped": ps.dropped,
        "r_star_y_given_x": pair.r_star_y_given_x,
        "r_star_x_given_y": pair.r_star_x_given_y,
        "cov_sign": pair.cov_sign,
        "zero_covariance": pair.zero_covariance,
    }
    text = (
        f"r*({ps.y_name}|{ps.x_name}) = {pair.r_star_y_given_x:.4f}\n"
        f"r*({ps.x_name}|{ps.y_name}) = {pair.r_star_x_given_y:.4f}\n"
        f"n = {ps.n} (dropped {ps.dropped})"
    )
    _emit(args, payload, text)


def cmd_depmeas(args):
    ps = _pair(args)
    pair = rstar(ps.x, ps.y)
    sign = pair.cov_sign or 1
    value = sign * max(abs(pair.r_star_y_given_x), abs(pair.r_star_x_given_y))
    payload = {"x": ps.x_name, "y": ps.y_name, "n": ps.n, "depmeas": value, "zero_covariance": pair.zero_covariance}
    _emit(args, payload, f"depMeas({ps.x_name}, {ps.y_name}) = {value:.4f}")


def cmd_pearson(args):
    ps = _pair(args)
    r = pearson(ps.x, ps.y)
    _emit(args, {"x": ps.x_name, "y": ps.y_name, "n": ps.n, "r": r}, f"r({ps.x_name}, {ps.y_name}) = {r:.4f}  (n={ps.n})")


def cmd_entropy(args):
    ps = _pair(args)
    bins = args.bins or default_bins(ps.n)
    d_yx = entropy_dependence(ps.x, ps.y, bins)
    d_xy = entropy_dependence(ps.y, ps.x, bins)
    payload = {"x": ps.x_name, "y": ps.y_name, "n": ps.n, "bins": bins, "D_x_to_y": d_yx, "D_y_to_x": d_xy}
    text = (
        f"D({ps.x_name};{ps.y_name}) = {d_yx:.4f}  (entropy reduction in {ps.y_name} from knowing {ps.x_name})\n"
        f"D({ps.y_name};{ps.x_name}) = {d_xy:.4f}\nbins = {bins}"
    )
    _emit(args, payload, text)


def cmd_pvalue(args):
    p = tarald_pvalue(args.n, args.obs, rho=args.rho, grid_step=args.grid_step)
    tail = pvalue_tail(args.obs)
    payload = {"n": args.n, "rho": args.rho, "obs_r": args.obs, "p_value": p, "tail": tail, "grid_step": args.grid_step}
    text = f"one-tail ({tail}) p-value = {p:.6g}\nn = {args.n}, rho = {args.rho}, obs r = {args.obs}, grid step = {args.grid_step}"
    _emit(args, payload, text)


def cmd_ci_exact(args):
    iv = exact_interval(args.n, rho=args.rho, level=args.level, tails=args.tails, grid_step=args.grid_step)
    payload = {"n": args.n, "rho": args.rho, "level": args.level, "tails": iv.tails.value, "lower": iv.lower, "upper": iv.upper}
    _emit(args, payload, f"{args.level:.0%} {iv.tails.value} exact interval: [{iv.lower:.3f}, {iv.upper:.3f}]  (n={args.n}, rho={args.rho})")


def cmd_ci_boot(args):
    ps = _pair(args)
    res = bootstrap_rstar(
        ps.x, ps.y, J=args.J, level=args.level, tails=args.tails, method=args.method,
        seed=args.seed, statistic=args.statistic, n_jobs=args.jobs,
    )
    payload = {
        "x": ps.x_name,
        "y": ps.y_name,
        "n": ps.n,
        "statistic": res.statistic_name,
        "estimate": res.estimate,
        "method": res.method.value,
        "J": res.J,
        "n_failed": res.n_failed,
        "seed": res.seed,
        "level": args.level,
        "tails": res.interval.tails.value,
        "lower": res.interval.lower,
        "upper": res.interval.upper,
        "p_value": res.p_value,
    }
    text = (
        f"{res.statistic_name} estimate = {res.estimate:.4f}  (x={ps.x_name}, y={ps.y_name}, n={ps.n})\n"
        f"{args.level:.0%} {res.interval.tails.value} {res.method.value} bootstrap interval: "
        f"[{res.interval.lower:.4f}, {res.interval.upper:.4f}]\n"
        f"bootstrap p-value = {res.p_value:.4f}  (J={res.J}, seed={res.seed})"
    )
    _emit(args, payload, text)


def cmd_table1(args):
    ns = args.n or list(TABLE1_SAMPLE_SIZES)
    cs = args.c or list(TABLE1_CUM_PROBS)
    for c in cs:
        if not 0 < c < 1:
            raise UsageError(f"cumulative probabilities must lie strictly between 0 and 1, got {c}")
    for n in ns:
        if n < 3:
            raise UsageError(f"sample sizes must be >= 3, got {n}")
    tab = quantile_table(ns, cs, rho=args.rho, grid_step=args.grid_step)
    shown = tab if args.full else np.round(tab, 2)
    digits = 3 if args.full else 2
    header = "n".rjust(6) + "".join(f"c={c:g}".rjust(9) for c in cs)
    lines = [f"Quantiles of the exact density of r (rho={args.rho:g})", header]
    for n, row in zip(ns, shown):
        lines.append(f"n={n}".rjust(6) + "".join(f"{v:9.{digits}f}" for v in row))
    payload = {"rho": args.rho, "grid_step": args.grid_step, "sample_sizes": ns, "cum_probs": cs, "values": shown.tolist()}
    rows = [["n", *[f"{c:g}" for c in cs]]] + [[n, *[f"{v:.{digits}f}" for v in row]] for n, row in zip(ns, shown)]
    _emit(args, payload, "\n".join(lines), rows)


def density_svg(curves, width=640, height=360, pad=40) -> str:
    """Static SVG with one polyline per (label, r, density) curve."""
    ymax = max(float(np.max(d)) for _, _, d in curves) or 1.0
    styles = ["", ' stroke-dasharray="6,4"', ' stroke-dasharray="2,3"', ' stroke-dasharray="10,3,2,3"']
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{width / 2}" y1="{pad}" x2="{width / 2}" y2="{height - pad}" stroke="#bbb"/>',
        f'<text x="{pad}" y="{height - pad / 3}" font-size="12">-1</text>',
        f'<text x="{width - pad}" y="{height - pad / 3}" font-size="12">1</text>',
    ]
    for k, (label, r, d) in enumerate(curves):
        xs = pad + (r + 1.0) / 2.0 * (width - 2 * pad)
        ys = height - pad - d / ymax * (height - 2 * pad)
        pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(xs, ys))
        parts.append(f'<polyline fill="none" stroke="black"{styles[k % len(styles)]} points="{pts}"><title>{label}</title></polyline>')
        parts.append(f'<text x="{width - pad - 120}" y="{pad + 16 * (k + 1)}" font-size="12">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_density_plot(args):
    ns = args.n
    dens = [tarald_density(n, args.rho, args.grid_step) for n in ns]
    grid = dens[0].grid
    labels = [f"n={n}, rho={args.rho:g}" for n in ns]
    if args.format == "svg":
        svg = density_svg([(lab, d.grid, d.density) for lab, d in zip(labels, dens)])
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(svg)
        else:
            sys.stdout.write(svg)
        return
    payload = {
        "rho": args.rho,
        "grid_step": args.grid_step,
        "r": grid.tolist(),
        "curves": [{"n": n, "density": d.density.tolist(), "mode": float(d.grid[np.argmax(d.mass)])} for n, d in zip(ns, dens)],
    }
    rows = [["r", *[f"density_n{n}" for n in ns]]]
    rows += [[f"{r:.6g}", *[f"{d.density[i]:.6g}" for d in dens]] for i, r in enumerate(grid)]
    if args.format == "text":
        args.format = "csv"
    _emit(args, payload, "", rows)


def _parse_counts(text):
    try:
        return [[float(v) for v in row.split(",")] for row in text.split(";") if row.strip()]
    except ValueError:
        raise UsageError(f"--counts expects rows like '10,0;0,10', got {text!r}") from None


def cmd_chisq(args):
    if args.counts:
        counts = _parse_counts(args.counts)
    elif args.input:
        d = load_csv(args.input, delimiter=args.delimiter, header=not args.no_header)
        counts = d.matrix().tolist()
    else:
        raise UsageError("give --counts or --input")
    if len({len(r) for r in counts}) != 1:
        raise UsageError("contingency table rows must have equal length")
    res = chi_square(counts)
    dev = independence_criteria(counts)
    payload = {
        "stat": res.stat,
        "df": res.df,
        "p_value": res.p_value,
        "max_abs_deviation": {
            "joint": float(np.max(np.abs(dev.joint))),
            "row_given_col": float(np.max(np.abs(dev.row_given_col))),
            "col_given_row": float(np.max(np.abs(dev.col_given_row))),
        },
    }
    text = (
        f"chi-square = {res.stat:.4f}, df = {res.df}, p = {res.p_value:.4g}\n"
        f"max |P(R,C) - P(R)P(C)| = {payload['max_abs_deviation']['joint']:.4f}\n"
        f"max |P(R|C) - P(R)|     = {payload['max_abs_deviation']['row_given_col']:.4f}\n"
        f"max |P(C|R) - P(C)|     = {payload['max_abs_deviation']['col_given_row']:.4f}"
    )
    _emit(args, payload, text)


def cmd_fisherz(args):
    res = fisher_z(args.r, args.n, variance=args.variance)
    payload = {"r": args.r, "n": args.n, "variance": args.variance, "z": res.z, "se": res.se, "p_two_tail": res.p_two_tail}
    _emit(args, payload, f"z = {res.z:.4f}, se = {res.se:.4f} (Var = 1/{args.variance}), two-tail p = {res.p_two_tail:.4g}")


def cmd_hellinger_eta(args):
    eta = hellinger_eta_from_B(args.B)
    _emit(args, {"B": args.B, "eta": eta}, f"eta = {eta:.6f}")


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    default_fmt = os.environ.get(FORMAT_ENV, "text")
    if default_fmt not in FORMATS:
        default_fmt = "text"

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", "-f", choices=FORMATS, default=default_fmt)
    common.add_argument("--output", "-o", help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(
        prog="depcorr",
        description="Asymmetric generalized correlations and exact correlation inference.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("depmatrix", parents=[common], help="R* matrix of generalized correlations")
    _add_data_args(p, cols=False)
    p.add_argument("--cols", help="comma-separated columns (default: all)")
    p.set_defaults(func=cmd_depmatrix)

    for name, func, helptext in (
        ("rstar", cmd_rstar, "both generalized correlations of a pair"),
        ("depmeas", cmd_depmeas, "covariance-signed larger generalized correlation"),
        ("pearson", cmd_pearson, "Pearson correlation"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        _add_data_args(p)
        p.set_defaults(func=func)

    p = sub.add_parser("entropy", parents=[common], help="binned entropy-reduction dependence, both directions")
    _add_data_args(p)
    p.add_argument("--bins", type=int, help="bins per axis (default ceil(sqrt(n)))")
    p.set_defaults(func=cmd_entropy)

    def exact_args(p):
        p.add_argument("--rho", type=float, default=0.0)
        p.add_argument("--grid-step", type=float, default=DEFAULT_GRID_STEP)

    p = sub.add_parser("pvalue", parents=[common], help="one-tail p-value from the exact density")
    p.add_argument("-n", type=_sample_size, required=True)
    p.add_argument("--obs", type=_correlation, required=True, help="observed correlation")
    exact_args(p)
    p.set_defaults(func=cmd_pvalue)

    p = sub.add_parser("ci-exact", parents=[common], help="exact acceptance interval under rho")
    p.add_argument("-n", type=_sample_size, required=True)
    p.add_argument("--level", type=_probability, default=0.95)
    p.add_argument("--tails", choices=[t.value for t in Tails], default="two")
    exact_args(p)
    p.set_defaults(func=cmd_ci_exact)

    p = sub.add_parser("ci-boot", parents=[common], help="bootstrap interval for a generalized correlation")
    _add_data_args(p)
    p.add_argument("--J", type=int, default=999, help="replicates (>= 99)")
    p.add_argument("--level", type=_probability, default=0.95)
    p.add_argument("--tails", choices=[t.value for t in Tails], default="two")
    p.add_argument("--method", choices=[m.value for m in Method], default="max_entropy")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--statistic", choices=STATISTICS, default="y|x")
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.set_defaults(func=cmd_ci_boot)

    p = sub.add_parser("table1", parents=[common], help="quantile table of the exact density")
    p.add_argument("--n", type=_int_list, help="comma-separated sample sizes")
    p.add_argument("--c", type=_float_list, help="comma-separated cumulative probabilities")
    p.add_argument("--full", action="store_true", help="print unrounded grid values")
    exact_args(p)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("density-plot", help="exact density as CSV/JSON plot data or SVG")
    p.add_argument("--format", "-f", choices=("text", "csv", "json", "svg"), default="csv")
    p.add_argument("--output", "-o")
    p.add_argument("-n", type=_sample_size, nargs="+", required=True, help="one or more sample sizes to overlay")
    exact_args(p)
    p.set_defaults(func=cmd_density_plot)

    p = sub.add_parser("chisq", parents=[common], help="chi-square test and independence deviations")
    p.add_argument("--counts", help="table rows separated by ';', cells by ','")
    p.add_argument("--input", "-i", help="CSV of counts")
    p.add_argument("--no-header", action="store_true")
    p.add_argument("--delimiter", default=",")
    p.set_defaults(func=cmd_chisq)

    p = sub.add_parser("fisherz", parents=[common], help="Fisher z-transform and normal p-value")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--variance", choices=("n", "n-3"), default="n")
    p.set_defaults(func=cmd_fisherz)

    p = sub.add_parser("hellinger-eta", parents=[common], help="Hellinger correlation from the affinity B")
    p.add_argument("--B", type=float, required=True)
    p.set_defaults(func=cmd_hellinger_eta)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"depcorr {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (DepCorrError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"depcorr {args.command}: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
