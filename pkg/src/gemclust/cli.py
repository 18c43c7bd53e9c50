"""Command-line interface.

Subcommands:
  cluster  run one clustering job; assignments go to stdout (one
           cluster id per line), diagnostics to stderr, and optionally
           a JSON run record to --output.
  eval     score a predicted labeling against ground truth.
  sweep    re-run `cluster` over a range of --neighbors or --dim and
           emit one CSV row per setting.

Exit codes: 0 success, 1 invalid input, 2 numeric failure, 3 IO failure.
"""

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, replace

import numpy as np

from . import __version__
from .assignment import kernel_name
from .dataio import RunRecord, load_labels, load_matrix, save_report
from .exceptions import InvalidInputError, NumericError
from .metrics import accuracy, nmi, purity
from .pipeline import METHODS, FitConfig, fit


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the interface contract wants 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(f"error: {message}")


def _beta_arg(text):
    if text == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("beta must be a number or 'auto'")


def _add_common(p):
    p.add_argument("--input", required=True, help="sample matrix file")
    p.add_argument("--format", default="csv", choices=["csv", "whitespace"])
    p.add_argument("--method", default="our-lpp", choices=list(METHODS))
    p.add_argument("--clusters", type=int, required=True, help="cluster count")
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--beta", type=_beta_arg, default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-outer", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--standardize", action="store_true")
    p.add_argument("--labels", default=None, help="ground-truth label file")
    p.add_argument("--output", default=None)


def build_parser():
    parser = _Parser(prog="gemclust", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_cluster = sub.add_parser("cluster", help="run one clustering job")
    _add_common(p_cluster)
    p_cluster.add_argument("--neighbors", type=int, default=5)
    p_cluster.add_argument("--dim", type=int, default=2, help="embedding dimension")

    p_eval = sub.add_parser("eval", help="score predictions against ground truth")
    p_eval.add_argument("--pred", required=True, help="label file or run record")
    p_eval.add_argument("--truth", required=True)

    p_sweep = sub.add_parser("sweep", help="sweep --neighbors or --dim over a range")
    _add_common(p_sweep)
    p_sweep.add_argument("--neighbors", default="5", help="int, or range A:B[:STEP]")
    p_sweep.add_argument("--dim", default="2", help="int, or range A:B[:STEP]")
    return parser


def _make_config(args, neighbors, dim):
    return FitConfig(
        method=args.method,
        n_clusters=args.clusters,
        n_neighbors=neighbors,
        target_dim=dim,
        eta=args.eta,
        beta=args.beta,
        max_outer=args.max_outer,
        tol=args.tol,
        seed=args.seed,
        standardize=args.standardize,
    )


def _metrics_for(labels_pred, truth):
    if truth is None:
        return None
    return {
        "acc": accuracy(labels_pred, truth),
        "nmi": nmi(labels_pred, truth),
        "purity": purity(labels_pred, truth),
    }


def cmd_cluster(args):
    X = load_matrix(args.input, args.format)
    truth = load_labels(args.labels) if args.labels else None
    if truth is not None and truth.size != X.shape[0]:
        raise InvalidInputError(
            f"{args.labels}: {truth.size} labels for {X.shape[0]} samples"
        )
    report = fit(X, _make_config(args, args.neighbors, args.dim))
    metrics = _metrics_for(report.labels, truth)

    record = RunRecord(
        config=asdict(report.config),
        assignments=[int(v) for v in report.labels],
        metrics=metrics,
        objective_trace=[float(v) for v in report.objective_trace],
        outer_iters=report.outer_iters,
        converged=report.converged,
        wall_time=report.wall_time,
    )
    if args.output:
        save_report(record, args.output)

    sys.stdout.write("".join(f"{int(v)}\n" for v in report.labels))
    print(
        f"method={args.method} n={X.shape[0]} d={X.shape[1]} "
        f"iters={report.outer_iters} converged={report.converged} "
        f"kernel={kernel_name()} time={report.wall_time:.3f}s",
        file=sys.stderr,
    )
    if metrics:
        print(
            "acc={acc:.4f} nmi={nmi:.4f} purity={purity:.4f}".format(**metrics),
            file=sys.stderr,
        )
    return 0


def _load_pred(path):
    with open(path, "r", encoding="utf-8") as fh:
        head = fh.read(1)
    if head == "{":  # run record
        with open(path, "r", encoding="utf-8") as fh:
            return np.asarray(json.load(fh)["assignments"], dtype=np.int64)
    return load_labels(path)


def cmd_eval(args):
    pred = _load_pred(args.pred)
    truth = load_labels(args.truth)
    scores = _metrics_for(pred, truth)
    for name in ("acc", "nmi", "purity"):
        print(f"{name} {scores[name]:.6f}")
    return 0


def _parse_range(text, name):
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) == 2:
                lo, hi, step = parts[0], parts[1], 1
            elif len(parts) == 3:
                lo, hi, step = parts
            else:
                raise ValueError
            if step < 1 or hi < lo:
                raise ValueError
            return list(range(lo, hi + 1, step)), True
        if "," in text:
            return [int(p) for p in text.split(",")], True
        return [int(text)], False
    except ValueError:
        raise InvalidInputError(f"--{name}: expected int, A:B[:STEP] or a,b,c list")


def cmd_sweep(args):
    neighbors, n_is_range = _parse_range(args.neighbors, "neighbors")
    dims, d_is_range = _parse_range(args.dim, "dim")
    if n_is_range == d_is_range:
        raise InvalidInputError("sweep exactly one of --neighbors or --dim")
    param = "neighbors" if n_is_range else "dim"
    values = neighbors if n_is_range else dims

    X = load_matrix(args.input, args.format)
    truth = load_labels(args.labels) if args.labels else None
    if truth is not None and truth.size != X.shape[0]:
        raise InvalidInputError(
            f"{args.labels}: {truth.size} labels for {X.shape[0]} samples"
        )

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow([param, "acc", "nmi", "purity", "iterations", "seconds"])
    for index, value in enumerate(values):
        k = value if n_is_range else neighbors[0]
        m = value if d_is_range else dims[0]
        cfg = replace(_make_config(args, k, m), seed=args.seed + index)
        begin = time.perf_counter()
        report = fit(X, cfg)
        seconds = time.perf_counter() - begin
        scores = _metrics_for(report.labels, truth)
        row = [value]
        if scores:
            row += [f"{scores['acc']:.6f}", f"{scores['nmi']:.6f}", f"{scores['purity']:.6f}"]
        else:
            row += ["", "", ""]
        row += [report.outer_iters, f"{seconds:.3f}"]
        writer.writerow(row)
        print(f"{param}={value} done ({seconds:.2f}s)", file=sys.stderr)

    text = buf.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {"cluster": cmd_cluster, "eval": cmd_eval, "sweep": cmd_sweep}[
            args.command
        ]
        return handler(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):  # usage error from _Parser.error
            print(exc.code, file=sys.stderr)
            return 1
        return exc.code or 0
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
