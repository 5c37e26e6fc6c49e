"""Input checking shared by the functional API and the estimators."""

import numpy as np
from sklearn.utils.validation import check_array

METRICS = ("euclidean", "view")


def check_metric(metric):
    metric = str(metric).lower()
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
    return metric


def min_features(metric):
    return 2 if metric == "view" else 1


def check_vector(x, name="x"):
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {x.shape}")
    if x.size == 0:
        raise ValueError(f"{name} must have at least one coordinate")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains NaN or infinite coordinates")
    return x


def check_points(X, metric="euclidean", name="X", allow_empty=False):
    """Return ``X`` as a finite float64 array of shape (n, m).

    The view metric needs at least two coordinates per point.
    """
    metric = check_metric(metric)
    X = check_array(
        X,
        dtype=np.float64,
        ensure_min_samples=0 if allow_empty else 1,
        ensure_min_features=min_features(metric),
        input_name=name,
    )
    return X


def check_same_dim(X, Y):
    if X.shape[1] != Y.shape[1]:
        raise ValueError(
            f"dimension mismatch: {X.shape[1]} coordinates vs {Y.shape[1]} coordinates"
        )


def check_labels(labels, name="labels"):
    labels = np.asarray(labels)
    if labels.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if labels.size and not np.issubdtype(labels.dtype, np.integer):
        as_int = labels.astype(np.int64)
        if not np.array_equal(as_int, labels):
            raise ValueError(f"{name} must be integers")
        labels = as_int
    return labels.astype(np.int64, copy=False)
