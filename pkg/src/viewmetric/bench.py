"""Benchmark harness for the real-world classification and clustering tables.

Datasets are read from ``<data_dir>/<name>.csv``: a header row, numeric
feature columns and a ``label`` column. Missing files produce rows with
status ``"missing"``. Published reference numbers are kept in
``paper_reference`` and never mixed with measured values.
"""

from pathlib import Path

import numpy as np

from .clustering import kmeans_fit
from .data import load_csv, standardize
from .evaluation import (
    adjusted_mutual_info,
    adjusted_rand_index,
    best_map_accuracy,
    contingency,
    fowlkes_mallows,
    homogeneity_completeness,
    v_measure,
)
from .neighbors import knn_evaluate

__all__ = ["DATASETS", "KNN_KS", "REFERENCE_ACCURACY", "REFERENCE_INDICES", "run_suite"]

DATASETS = ("iris", "breast", "seeds", "glass", "wine", "titanic", "yeast", "wdbc")
METRICS = ("euclidean", "view")
KNN_KS = (1, 3, 5, 7)
INDEX_KEYS = ("ari", "homogeneity", "ami", "v_measure", "fmi")

# published classification accuracy per (algorithm, metric); None = not reported
REFERENCE_ACCURACY = {
    "iris": {("kmeans", "euclidean"): 0.9667, ("kmeans", "view"): 0.9667,
             ("knn", "euclidean"): 0.98, ("knn", "view"): 0.98},
    "breast": {("kmeans", "euclidean"): 0.5283, ("kmeans", "view"): 0.5283,
               ("knn", "euclidean"): 0.8113, ("knn", "view"): 0.8585},
    "seeds": {("kmeans", "euclidean"): 0.9095, ("kmeans", "view"): 0.9190,
              ("knn", "euclidean"): 0.8857, ("knn", "view"): 0.9381},
    "glass": {("kmeans", "euclidean"): 0.5421, ("kmeans", "view"): 0.5514,
              ("knn", "euclidean"): 0.7897, ("knn", "view"): 0.8318},
    "wine": {("kmeans", "euclidean"): 0.7022, ("kmeans", "view"): 0.7079,
             ("knn", "euclidean"): 0.9775, ("knn", "view"): 0.9775},
    "titanic": {("kmeans", "euclidean"): 0.7833, ("kmeans", "view"): 0.7833,
                ("knn", "euclidean"): 0.5720, ("knn", "view"): 0.7792},
    "yeast": {("kmeans", "euclidean"): None, ("kmeans", "view"): None,
              ("knn", "euclidean"): 0.6853, ("knn", "view"): 0.6873},
    "wdbc": {("kmeans", "euclidean"): 0.8875, ("kmeans", "view"): 0.9016,
             ("knn", "euclidean"): 0.942, ("knn", "view"): 0.9508},
}

# published K-Means clustering indices: euclidean = plain K-Means, view = view K-Means
REFERENCE_INDICES = {
    "iris": {"euclidean": (0.9039, 0.8983, 0.7315, 0.7337, 0.7715),
             "view": (0.9039, 0.8983, 0.8984, 0.8997, 0.9356)},
    "breast": {"euclidean": (0.3454, 0.5345, 0.5789, 0.6084, 0.5298),
               "view": (0.3894, 0.5596, 0.5936, 0.6259, 0.5436)},
    "seeds": {"euclidean": (0.6898, 0.5962, 0.6410, 0.6492, 0.7877),
              "view": (0.7109, 0.6188, 0.6664, 0.6740, 0.8024)},
    "glass": {"euclidean": (0.2993, 0.4043, 0.4642, 0.4860, 0.5733),
              "view": (0.3114, 0.4094, 0.4673, 0.4892, 0.5755)},
    "wine": {"euclidean": (0.3470, 0.3762, 0.3756, 0.3823, 0.5750),
             "view": (0.3563, 0.3961, 0.3995, 0.4060, 0.5852)},
    "titanic": {"euclidean": (0.2932, 0.1715, 0.0774, 0.0777, 0.5997),
                "view": (0.2932, 0.1715, 0.0774, 0.0777, 0.5997)},
    "yeast": {"euclidean": (0.1360, 0.2679, 0.2089, 0.2164, 0.3703),
              "view": (0.1738, 0.2865, 0.2475, 0.2566, 0.3746)},
    "wdbc": {"euclidean": (0.5951, 0.4875, 0.5126, 0.5132, 0.8238),
             "view": (0.6413, 0.5202, 0.5337, 0.5344, 0.8390)},
}


def _load(data_dir, name, validate):
    path = Path(data_dir) / f"{name}.csv"
    if not path.is_file():
        return None
    return load_csv(path, label_column="label", has_header=True, name=name,
                    manifest=name if validate else None)


def _variants(ds):
    yield False, ds
    yield True, standardize(ds)


def _kmeans_labels(ds, metric, seed, restarts):
    k = int(np.unique(ds.labels).size)
    res = kmeans_fit(ds.points, k, metric=metric, init="k-means++", n_init=restarts,
                     seed=seed)
    return k, res.labels


def _kmeans_protocol(k, restarts, seed, standardized):
    scale = "standardized" if standardized else "raw"
    return f"k={k}, k-means++, {restarts} restarts, seed {seed}, {scale}"


def _delta(measured, ref):
    if measured is None or ref is None:
        return None
    return measured - ref


def _table2(name, ds, seed, restarts):
    rows = []
    refs = REFERENCE_ACCURACY[name]
    for standardized, d in _variants(ds):
        for metric in METRICS:
            k, labels = _kmeans_labels(d, metric, seed, restarts)
            acc = best_map_accuracy(d.labels, labels)
            ref = refs[("kmeans", metric)]
            rows.append({
                "dataset": name, "algorithm": "kmeans", "metric": metric,
                "standardized": standardized, "k": k,
                "protocol": _kmeans_protocol(k, restarts, seed, standardized)
                + ", best-map accuracy",
                "measured": acc, "paper_reference": ref, "delta": _delta(acc, ref),
                "status": "ok",
            })
        for metric in METRICS:
            for k in KNN_KS:
                ev = knn_evaluate(d.points, d.labels, k=k, metric=metric, protocol="loo")
                ref = refs[("knn", metric)]
                scale = "standardized" if standardized else "raw"
                rows.append({
                    "dataset": name, "algorithm": "knn", "metric": metric,
                    "standardized": standardized, "k": k,
                    "protocol": f"leave-one-out, k={k}, majority vote, {scale}",
                    "measured": ev.accuracy, "paper_reference": ref,
                    "delta": _delta(ev.accuracy, ref), "status": "ok",
                })
    return rows


def _table3(name, ds, seed, restarts):
    rows = []
    for standardized, d in _variants(ds):
        for metric in METRICS:
            k, labels = _kmeans_labels(d, metric, seed, restarts)
            table = contingency(d.labels, labels)
            h, _ = homogeneity_completeness(table)
            measured = dict(zip(INDEX_KEYS, (
                adjusted_rand_index(table), h, adjusted_mutual_info(table),
                v_measure(table), fowlkes_mallows(table),
            )))
            ref = dict(zip(INDEX_KEYS, REFERENCE_INDICES[name][metric]))
            rows.append({
                "dataset": name, "algorithm": "kmeans", "metric": metric,
                "standardized": standardized, "k": k,
                "protocol": _kmeans_protocol(k, restarts, seed, standardized),
                "measured": measured, "paper_reference": ref,
                "delta": {key: measured[key] - ref[key] for key in INDEX_KEYS},
                "status": "ok",
            })
    return rows


def _missing(name, suite):
    if suite == "table2":
        refs = REFERENCE_ACCURACY[name]
        return [{"dataset": name, "algorithm": alg, "metric": metric, "standardized": None,
                 "k": None, "protocol": None, "measured": None,
                 "paper_reference": refs[(alg, metric)], "delta": None, "status": "missing"}
                for alg in ("kmeans", "knn") for metric in METRICS]
    return [{"dataset": name, "algorithm": "kmeans", "metric": metric, "standardized": None,
             "k": None, "protocol": None, "measured": None,
             "paper_reference": dict(zip(INDEX_KEYS, REFERENCE_INDICES[name][metric])),
             "delta": None, "status": "missing"} for metric in METRICS]


def run_suite(suite, data_dir, seed=0, restarts=10, validate=True, datasets=DATASETS):
    """Run one benchmark suite over every dataset file found in ``data_dir``.

    Returns a JSON-ready dict with one entry per (dataset, configuration).
    """
    if suite not in ("table2", "table3"):
        raise ValueError(f"unknown suite {suite!r}")
    runner = _table2 if suite == "table2" else _table3
    rows = []
    for name in datasets:
        ds = _load(data_dir, name, validate)
        if ds is None:
            rows.extend(_missing(name, suite))
            continue
        rows.extend(runner(name, ds, seed, restarts))
    return {"suite": suite, "seed": seed, "restarts": restarts, "rows": rows}


def report_rows(report):
    """Flatten a report into a header and CSV rows."""
    if report["suite"] == "table2":
        header = ["dataset", "algorithm", "metric", "standardized", "k", "protocol",
                  "measured", "paper_reference", "delta", "status"]
        rows = [[r[h] if r[h] is not None else "" for h in header] for r in report["rows"]]
        return header, rows
    header = ["dataset", "algorithm", "metric", "standardized", "k", "protocol", "status"]
    for key in INDEX_KEYS:
        header += [key, f"{key}_paper_reference"]
    rows = []
    for r in report["rows"]:
        row = [r[h] if r[h] is not None else "" for h in header[:7]]
        for key in INDEX_KEYS:
            row.append("" if r["measured"] is None else r["measured"][key])
            row.append(r["paper_reference"][key])
        rows.append(row)
    return header, rows


def format_deltas(report):
    """Human-readable measured-vs-published summary."""
    lines = [f"{report['suite']}: measured vs published"]
    for r in report["rows"]:
        tag = f"{r['dataset']:8s} {r['algorithm']:6s} {r['metric']:9s}"
        if r["status"] != "ok":
            lines.append(f"{tag} missing data file")
            continue
        scale = "std" if r["standardized"] else "raw"
        tag += f" {scale} k={r['k']}"
        if report["suite"] == "table2":
            ref = r["paper_reference"]
            ref_s = "n/a" if ref is None else f"{ref:.4f} (delta {r['delta']:+.4f})"
            lines.append(f"{tag} measured {r['measured']:.4f} published {ref_s}")
        else:
            parts = [f"{key} {r['measured'][key]:.4f}/{r['paper_reference'][key]:.4f}"
                     for key in INDEX_KEYS]
            lines.append(f"{tag} " + ", ".join(parts))
    return "\n".join(lines) + "\n"
