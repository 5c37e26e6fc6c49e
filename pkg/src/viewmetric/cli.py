"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data or format error, 3 numerical
failure.
"""

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import bench
from .clustering import kmeans_fit
from .data import DataError, gen_s_curve, gen_swiss_roll, load_csv, save_csv, standardize
from .evaluation import clustering_scores
from .metric import contour_grid
from .neighbors import KNeighborsClassifier, knn_evaluate
from .spectral import ConvergenceError, spectral_report

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3

DISTMAT_MAX_N = 2000

GENERATORS = {"s-curve": gen_s_curve, "swiss-roll": gen_swiss_roll}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def _json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _num(x):
    return repr(float(x))


def read_input(path, label_column=None, no_header=False):
    """Load a dataset file, picking up ``label`` and ``t`` header columns."""
    has_header = not no_header
    t_column = None
    if has_header and Path(path).is_file():
        with open(path, newline="", encoding="utf-8") as fh:
            header = next(csv.reader(fh), [])
        header = [h.strip() for h in header]
        if label_column is None and "label" in header:
            label_column = "label"
        if "t" in header:
            t_column = "t"
    return load_csv(path, label_column=label_column, has_header=has_header, t_column=t_column)


def _maybe_standardize(ds, flag):
    return standardize(ds) if flag else ds


def _label_rows(labels):
    return [[int(v)] for v in labels]


def cmd_gen(args):
    ds = GENERATORS[args.dataset](args.n, args.noise, args.seed)
    if args.format == "json":
        _emit(_json({
            "name": ds.name,
            "feature_names": list(ds.feature_names),
            "points": ds.points.tolist(),
            "t": ds.t.tolist(),
        }), args.out)
    else:
        save_csv(ds, sys.stdout if args.out is None else args.out)
    return EXIT_OK


def cmd_kmeans(args):
    ds = _maybe_standardize(read_input(args.input, args.label_column, args.no_header),
                            args.standardize)
    res = kmeans_fit(
        ds.points, args.k, metric=args.metric, init=args.init, n_init=args.restarts,
        max_iter=args.max_iter, tol=args.tol, seed=args.seed,
    )
    if args.format == "json":
        _emit(_json({
            "metric": res.metric,
            "k": args.k,
            "seed": args.seed,
            "restarts": args.restarts,
            "standardized": args.standardize,
            "inertia": res.inertia,
            "n_iter": res.n_iter,
            "converged": res.converged,
            "centroids": res.centroids.tolist(),
            "labels": res.labels.tolist(),
        }), args.out)
    else:
        _emit(_csv(["label"], _label_rows(res.labels)), args.out)
    return EXIT_OK


def cmd_knn(args):
    ds = _maybe_standardize(read_input(args.input, args.label_column, args.no_header),
                            args.standardize)
    if ds.labels is None:
        raise DataError(f"{args.input}: knn needs a label column")
    if args.query:
        q = read_input(args.query, None, args.no_header)
        clf = KNeighborsClassifier(args.k, metric=args.metric).fit(ds.points, ds.labels)
        pred = clf.predict(q.points)
        if args.format == "json":
            _emit(_json({"labels": pred.tolist()}), args.out)
        else:
            _emit(_csv(["label"], _label_rows(pred)), args.out)
        return EXIT_OK
    ev = knn_evaluate(ds.points, ds.labels, k=args.k, metric=args.metric,
                      protocol=args.protocol, folds=args.folds,
                      fraction=args.fraction, seed=args.seed)
    if args.format == "json":
        _emit(_json({
            "metric": args.metric,
            "k": args.k,
            "protocol": ev.protocol,
            "standardized": args.standardize,
            "accuracy": ev.accuracy,
            "n_correct": ev.n_correct,
            "n_total": ev.n_total,
            "fold_accuracies": list(ev.fold_accuracies),
        }), args.out)
    else:
        _emit(_csv(["accuracy", "n_correct", "n_total"],
                   [[_num(ev.accuracy), ev.n_correct, ev.n_total]]), args.out)
    return EXIT_OK


def _read_labels(path, column, no_header):
    ds = read_input(path, column, no_header)
    if ds.labels is not None:
        return ds.labels
    if ds.m == 1 and np.all(ds.points == np.round(ds.points)) and np.all(ds.points >= 0):
        return ds.points[:, 0].astype(np.int64)
    raise DataError(f"{path}: no label column found")


def cmd_eval(args):
    truth = _read_labels(args.truth, args.truth_column, args.no_header)
    pred = _read_labels(args.pred, args.pred_column, args.no_header)
    if truth.shape != pred.shape:
        raise DataError(f"{truth.size} true labels vs {pred.size} predicted labels")
    scores = clustering_scores(truth, pred)
    keys = ["ari", "homogeneity", "completeness", "v_measure", "ami", "fmi",
            "best_map_accuracy"]
    if args.format == "json":
        body = ",\n".join(f'  "{k}": {scores[k]:.6f}' for k in keys)
        _emit("{\n" + body + "\n}\n", args.out)
    else:
        _emit(_csv(keys, [[f"{scores[k]:.6f}" for k in keys]]), args.out)
    return EXIT_OK


def cmd_distmat(args):
    ds = read_input(args.input, args.label_column, args.no_header)
    if ds.n > DISTMAT_MAX_N and not args.force:
        raise UsageError(
            f"distmat: n={ds.n} exceeds {DISTMAT_MAX_N}; pass --force to run the dense "
            "eigendecomposition anyway"
        )
    report = spectral_report(ds.points, tol=args.tol)
    if args.format == "json":
        _emit(_json(report.to_dict()), args.out)
    else:
        rows = [[i, _num(v), _num(e)] for i, (v, e) in
                enumerate(zip(report.eigenvalues_view, report.eigenvalues_euclid))]
        _emit(_csv(["index", "eigenvalue_view", "eigenvalue_euclid"], rows), args.out)
    return EXIT_OK


def _parse_fixed(items):
    fixed = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"contour: --fixed expects INDEX=VALUE, got {item!r}")
        try:
            fixed[int(key)] = float(val)
        except ValueError:
            raise UsageError(f"contour: bad --fixed entry {item!r}") from None
    return fixed


def cmd_contour(args):
    fixed = _parse_fixed(args.fixed)
    try:
        grid, Z = contour_grid(args.dim, fixed, tuple(args.axes), tuple(args.range),
                               args.steps, args.metric)
    except ValueError as exc:
        raise UsageError(f"contour: {exc}") from None
    if args.format == "json":
        _emit(_json({
            "metric": args.metric,
            "dim": args.dim,
            "axes": list(args.axes),
            "fixed": {str(k): v for k, v in sorted(fixed.items())},
            "grid": grid.tolist(),
            "values": Z.tolist(),
        }), args.out)
    else:
        rows = [[_num(grid[i]), _num(grid[j]), _num(Z[i, j])]
                for i in range(grid.size) for j in range(grid.size)]
        _emit(_csv(["u", "v", "distance"], rows), args.out)
    return EXIT_OK


def cmd_bench(args):
    report = bench.run_suite(args.suite, args.data_dir, seed=args.seed,
                             restarts=args.restarts, validate=not args.no_validate)
    if args.format == "json":
        _emit(_json(report), args.out)
    else:
        header, rows = bench.report_rows(report)
        _emit(_csv(header, rows), args.out)
    if not args.quiet:
        sys.stderr.write(bench.format_deltas(report))
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="viewmetric", description="View-distance clustering toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, metric=True, fmt=("csv", "json"), default_fmt="csv"):
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=fmt, default=default_fmt)
        p.add_argument("--seed", type=int, default=0)
        if metric:
            p.add_argument("--metric", choices=("euclidean", "view"), default="view")

    def input_flags(p):
        p.add_argument("--input", required=True)
        p.add_argument("--label-column", default=None,
                       help="label column name or index (default: a column named 'label')")
        p.add_argument("--no-header", action="store_true")
        p.add_argument("--standardize", action="store_true")

    p = sub.add_parser("gen", help="generate a synthetic manifold dataset")
    p.add_argument("--dataset", choices=sorted(GENERATORS), required=True)
    p.add_argument("--n", type=int, default=1500)
    p.add_argument("--noise", type=float, default=0.0)
    common(p, metric=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("kmeans", help="cluster a dataset")
    input_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--init", choices=("k-means++", "random"), default="k-means++")
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--max-iter", type=int, default=300)
    p.add_argument("--tol", type=float, default=1e-6)
    common(p)
    p.set_defaults(func=cmd_kmeans)

    p = sub.add_parser("knn", help="evaluate or apply k-NN classification")
    input_flags(p)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--protocol", choices=("loo", "kfold", "holdout"), default="loo")
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--fraction", type=float, default=0.3)
    p.add_argument("--query", help="classify the points of this file instead of evaluating")
    common(p, default_fmt="json")
    p.set_defaults(func=cmd_knn)

    p = sub.add_parser("eval", help="clustering indices for a labeling pair")
    p.add_argument("--truth", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--truth-column", default=None)
    p.add_argument("--pred-column", default=None)
    p.add_argument("--no-header", action="store_true")
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("distmat", help="spectral diagnostics of the distance matrices")
    p.add_argument("--input", required=True)
    p.add_argument("--label-column", default=None)
    p.add_argument("--no-header", action="store_true")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--force", action="store_true",
                   help=f"allow more than {DISTMAT_MAX_N} points")
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.set_defaults(func=cmd_distmat)

    p = sub.add_parser("contour", help="distance-to-origin grid for contour plots")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--fixed", action="append", metavar="INDEX=VALUE")
    p.add_argument("--axes", type=int, nargs=2, default=[0, 1])
    p.add_argument("--range", type=float, nargs=2, default=[-1.0, 1.0])
    p.add_argument("--steps", type=int, default=51)
    common(p)
    p.set_defaults(func=cmd_contour)

    p = sub.add_parser("bench", help="reproduce the accuracy / clustering-index tables")
    p.add_argument("--suite", choices=("table2", "table3"), required=True)
    p.add_argument("--data-dir", required=True)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--no-validate", action="store_true",
                   help="skip checking files against the expected dataset shapes")
    p.add_argument("--quiet", action="store_true", help="do not print the delta summary")
    common(p, metric=False, default_fmt="json")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except ConvergenceError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except (DataError, ValueError, OSError) as exc:
        sys.stderr.write(f"data error: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
