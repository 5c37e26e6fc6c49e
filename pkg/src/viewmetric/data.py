"""Datasets: manifold generators, CSV input/output and standardization."""

import csv
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from sklearn.base import BaseEstimator, OneToOneFeatureMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

__all__ = [
    "MANIFESTS",
    "Dataset",
    "DataError",
    "Standardizer",
    "gen_s_curve",
    "gen_swiss_roll",
    "load_csv",
    "save_csv",
    "standardize",
    "validate_manifest",
]


class DataError(ValueError):
    """Malformed or inconsistent input data."""


@dataclass(frozen=True)
class Manifest:
    n: int
    m: int
    distribution: tuple = ()


# expected shape and class sizes of the benchmark datasets
MANIFESTS = {
    "s-curve": Manifest(1500, 3),
    "swiss-roll": Manifest(1500, 3),
    "iris": Manifest(150, 4, (50, 50, 50)),
    "breast": Manifest(106, 9, (22, 21, 14, 15, 16, 18)),
    "seeds": Manifest(210, 7, (70, 70, 70)),
    "glass": Manifest(214, 9, (70, 76, 17, 13, 9, 29)),
    "wine": Manifest(178, 13, (59, 71, 48)),
    "titanic": Manifest(2201, 3, (1490, 711)),
    "yeast": Manifest(1484, 8, (5, 20, 30, 35, 44, 51, 163, 244, 429, 463)),
    "wdbc": Manifest(569, 30, (212, 357)),
}


@dataclass(frozen=True, eq=False)
class Dataset:
    """Points with optional class labels and manifold parameter.

    ``classes`` records the original text of each integer label when the
    labels came from a CSV file.
    """

    points: np.ndarray
    labels: np.ndarray = None
    t: np.ndarray = None
    feature_names: tuple = None
    name: str = ""
    classes: tuple = field(default=None)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim == 1 and pts.size == 0:
            pts = pts.reshape(0, 0)
        if pts.ndim != 2:
            raise DataError(f"points must be 2-D, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise DataError("points contain NaN or infinite values")
        n = pts.shape[0]
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            labels = np.asarray(self.labels, dtype=np.int64)
            if labels.shape != (n,):
                raise DataError(f"labels have shape {labels.shape}, expected ({n},)")
            object.__setattr__(self, "labels", labels)
        if self.t is not None:
            t = np.asarray(self.t, dtype=np.float64)
            if t.shape != (n,):
                raise DataError(f"t has shape {t.shape}, expected ({n},)")
            object.__setattr__(self, "t", t)
        if self.feature_names is not None:
            names = tuple(str(s) for s in self.feature_names)
            if len(names) != pts.shape[1]:
                raise DataError(f"{len(names)} feature names for {pts.shape[1]} features")
            object.__setattr__(self, "feature_names", names)

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def m(self):
        return self.points.shape[1]

    def class_counts(self):
        if self.labels is None:
            return ()
        return tuple(int(c) for c in np.bincount(self.labels)) if self.n else ()


def _uniform_pair(n, seed):
    # u then v, each a full block of n draws, then the noise block
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    u = rng.random(n)
    v = rng.random(n)
    return rng, u, v


def gen_s_curve(n=1500, noise=0.0, seed=0):
    """S-shaped sheet in R^3 parametrized by ``t = 3*pi*(u - 0.5)``."""
    n = int(n)
    if n < 0 or noise < 0:
        raise ValueError("n and noise must be nonnegative")
    rng, u, v = _uniform_pair(n, seed)
    t = 3.0 * np.pi * (u - 0.5)
    X = np.column_stack([np.sin(t), 2.0 * v, np.sign(t) * (np.cos(t) - 1.0)])
    X = X.reshape(n, 3)
    if noise > 0:
        X = X + noise * rng.standard_normal((n, 3))
    return Dataset(X, t=t, feature_names=("x", "y", "z"), name="s-curve")


def gen_swiss_roll(n=1500, noise=0.0, seed=0):
    """Rolled sheet in R^3 with roll parameter ``t`` in [1.5*pi, 4.5*pi)."""
    n = int(n)
    if n < 0 or noise < 0:
        raise ValueError("n and noise must be nonnegative")
    rng, u, v = _uniform_pair(n, seed)
    t = 1.5 * np.pi * (1.0 + 2.0 * u)
    X = np.column_stack([t * np.cos(t), 21.0 * v, t * np.sin(t)]).reshape(n, 3)
    if noise > 0:
        X = X + noise * rng.standard_normal((n, 3))
    return Dataset(X, t=t, feature_names=("x", "y", "z"), name="swiss-roll")


def _resolve_column(spec, header, width, what):
    if spec is None:
        return None
    if isinstance(spec, str) and not spec.lstrip("-").isdigit():
        if header is None or spec not in header:
            raise DataError(f"{what} column {spec!r} not found in header")
        return header.index(spec)
    idx = int(spec)
    if idx < 0:
        idx += width
    if not 0 <= idx < width:
        raise DataError(f"{what} column index {spec} out of range for {width} columns")
    return idx


def _encode_labels(raw):
    try:
        ints = [int(s) for s in raw]
    except ValueError:
        ints = None
    if ints is not None and all(i >= 0 for i in ints):
        # integer labels are kept as-is so saved files round-trip
        return np.asarray(ints, dtype=np.int64), None
    mapping = {}
    for s in raw:
        mapping.setdefault(s, len(mapping))
    return np.asarray([mapping[s] for s in raw], dtype=np.int64), tuple(mapping)


def load_csv(path, label_column=None, has_header=False, t_column=None,
             manifest=None, name=None):
    """Read a numeric CSV file into a :class:`Dataset`.

    Parameters
    ----------
    path : str or Path
    label_column : int or str, optional
        Index (negative allowed) or header name of the class column. Text
        labels are mapped to 0..c-1 in order of first appearance;
        nonnegative integer labels are kept unchanged.
    has_header : bool
    t_column : int or str, optional
        Column holding a manifold parameter.
    manifest : str, optional
        Key of :data:`MANIFESTS` to validate the shape against.
    name : str, optional
        Dataset name; defaults to the file stem.
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"no such file: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    header = None
    if has_header:
        if not rows:
            raise DataError(f"{path}: header expected but file is empty")
        header = [c.strip() for c in rows[0]]
        rows = rows[1:]
    width = len(header) if header is not None else (len(rows[0]) if rows else 0)
    first_row = 2 if has_header else 1
    for i, r in enumerate(rows):
        if len(r) != width:
            raise DataError(
                f"{path}: row {i + first_row} has {len(r)} fields, expected {width}"
            )

    lab = _resolve_column(label_column, header, width, "label")
    tcol = _resolve_column(t_column, header, width, "t")
    feats = [c for c in range(width) if c not in (lab, tcol)]

    points = np.empty((len(rows), len(feats)))
    for i, r in enumerate(rows):
        for jj, c in enumerate(feats):
            try:
                val = float(r[c])
            except ValueError:
                raise DataError(
                    f"{path}: non-numeric value {r[c]!r} at row {i + first_row}, "
                    f"column {c + 1}"
                ) from None
            if not math.isfinite(val):
                raise DataError(f"{path}: non-finite value at row {i + first_row}, column {c + 1}")
            points[i, jj] = val

    labels = classes = t = None
    if lab is not None:
        labels, classes = _encode_labels([r[lab].strip() for r in rows])
    if tcol is not None:
        try:
            t = np.asarray([float(r[tcol]) for r in rows])
        except ValueError as exc:
            raise DataError(f"{path}: non-numeric t value ({exc})") from None

    ds = Dataset(
        points,
        labels=labels,
        t=t,
        feature_names=tuple(header[c] for c in feats) if header else None,
        name=name or path.stem,
        classes=classes,
    )
    if manifest is not None:
        validate_manifest(ds, manifest)
    return ds


def validate_manifest(dataset, key):
    """Raise :class:`DataError` unless the dataset matches its manifest entry."""
    if key not in MANIFESTS:
        raise DataError(f"no manifest for dataset {key!r}")
    man = MANIFESTS[key]
    if (dataset.n, dataset.m) != (man.n, man.m):
        raise DataError(
            f"{key}: expected {man.n} points x {man.m} features, "
            f"got {dataset.n} x {dataset.m}"
        )
    if man.distribution:
        got = sorted(dataset.class_counts())
        if got != sorted(man.distribution):
            raise DataError(
                f"{key}: class sizes {got} differ from expected {sorted(man.distribution)}"
            )


def save_csv(dataset, path):
    """Write features, then ``label``, then ``t``, with a header row.

    ``path`` may also be an open text stream. Floats are written with
    ``repr`` (shortest round-tripping form).
    """
    if hasattr(path, "write"):
        _write_csv(dataset, path)
        return
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        _write_csv(dataset, fh)


def _write_csv(dataset, fh):
    names = dataset.feature_names or tuple(f"x{i}" for i in range(dataset.m))
    header = list(names)
    if dataset.labels is not None:
        header.append("label")
    if dataset.t is not None:
        header.append("t")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for i in range(dataset.n):
        row = [repr(float(v)) for v in dataset.points[i]]
        if dataset.labels is not None:
            row.append(str(int(dataset.labels[i])))
        if dataset.t is not None:
            row.append(repr(float(dataset.t[i])))
        w.writerow(row)


def _zscore_params(X):
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    const = ~(std > 0)
    mean = np.where(const, 0.0, mean)
    std = np.where(const, 1.0, std)
    return mean, std


def standardize(dataset):
    """Shift each feature to mean 0 and scale to population std 1.

    Constant features are left untouched. Labels and ``t`` are kept.
    """
    X = dataset.points
    if X.shape[0] < 2:
        return dataset
    mean, std = _zscore_params(X)
    return replace(dataset, points=(X - mean) / std)


class Standardizer(OneToOneFeatureMixin, TransformerMixin, BaseEstimator):
    """Per-feature z-scoring that leaves constant features unchanged.

    Unlike :class:`sklearn.preprocessing.StandardScaler`, a zero-variance
    column is neither centred nor scaled.
    """

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        self.mean_, self.scale_ = _zscore_params(X)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "mean_")
        X = check_array(X, dtype=np.float64)
        return (X - self.mean_) / self.scale_

    def inverse_transform(self, X):
        check_is_fitted(self, "mean_")
        X = check_array(X, dtype=np.float64)
        return X * self.scale_ + self.mean_
