"""k-nearest-neighbour classification under the view or Euclidean metric.

Neighbours are ranked by distance with ties going to the lower training
index; the vote is a plain majority with ties going to the lowest label.
"""

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.model_selection import KFold, ShuffleSplit
from sklearn.utils.validation import check_is_fitted

from ._validation import check_labels, check_metric, check_points, check_same_dim
from .metric import cdist

__all__ = [
    "KNeighborsClassifier",
    "KnnEvaluation",
    "knn_classify",
    "knn_evaluate",
    "vote",
]


def vote(D, train_labels, k):
    """Majority label among the ``k`` nearest columns of each row of ``D``."""
    order = np.argsort(D, axis=1, kind="stable")[:, :k]
    classes, codes = np.unique(train_labels, return_inverse=True)
    votes = codes[order]
    counts = np.zeros((D.shape[0], classes.size), dtype=np.int64)
    rows = np.repeat(np.arange(D.shape[0]), k)
    np.add.at(counts, (rows, votes.ravel()), 1)
    # classes are sorted, so argmax's first-hit rule favours the lowest label
    return classes[np.argmax(counts, axis=1)]


def knn_classify(train_points, train_labels, query, k=5, metric="view"):
    """Predict the label of one query point."""
    metric = check_metric(metric)
    X = check_points(train_points, metric, "train_points")
    y = check_labels(train_labels, "train_labels")
    if y.shape[0] != X.shape[0]:
        raise ValueError(f"{y.shape[0]} labels for {X.shape[0]} training points")
    q = np.asarray(query, dtype=np.float64).reshape(1, -1)
    check_same_dim(X, q)
    q = check_points(q, metric, "query")
    if not 1 <= k <= X.shape[0]:
        raise ValueError(f"k={k} must lie in 1..{X.shape[0]}")
    return int(vote(cdist(q, X, metric), y, k)[0])


class KNeighborsClassifier(ClassifierMixin, BaseEstimator):
    """Plain majority-vote k-NN.

    Parameters
    ----------
    n_neighbors : int, default=5
    metric : {"view", "euclidean"}, default="view"
    """

    def __init__(self, n_neighbors=5, *, metric="view"):
        self.n_neighbors = n_neighbors
        self.metric = metric

    def fit(self, X, y):
        X = check_points(X, self.metric)
        y = check_labels(y, "y")
        if y.shape[0] != X.shape[0]:
            raise ValueError(f"{y.shape[0]} labels for {X.shape[0]} samples")
        if not 1 <= self.n_neighbors <= X.shape[0]:
            raise ValueError(f"n_neighbors={self.n_neighbors} must lie in 1..{X.shape[0]}")
        self._fit_X = X
        self._y = y
        self.classes_ = np.unique(y)
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "classes_")
        X = check_points(X, self.metric, allow_empty=True)
        check_same_dim(X, self._fit_X)
        if X.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        return vote(cdist(X, self._fit_X, self.metric), self._y, self.n_neighbors)


@dataclass(frozen=True)
class KnnEvaluation:
    accuracy: float
    fold_accuracies: tuple
    protocol: str
    n_correct: int
    n_total: int


def _loo_predictions(X, y, k, metric):
    if not 1 <= k <= X.shape[0] - 1:
        raise ValueError(f"k={k} must lie in 1..{X.shape[0] - 1} for leave-one-out")
    D = cdist(X, X, metric)
    np.fill_diagonal(D, np.inf)
    return vote(D, y, k)


def _describe(protocol, folds, fraction, seed):
    if protocol == "loo":
        return "leave-one-out"
    if protocol == "kfold":
        return f"{folds}-fold (seed {seed})"
    return f"hold-out {fraction:g} (seed {seed})"


def knn_evaluate(X, y, *, k=5, metric="view", protocol="loo", folds=5,
                 fraction=0.3, seed=0):
    """Classification accuracy of k-NN under a resampling protocol.

    Parameters
    ----------
    X : array-like of shape (n, m)
    y : array-like of shape (n,)
    k : int
    metric : {"view", "euclidean"}
    protocol : {"loo", "kfold", "holdout"}
        Leave-one-out, shuffled K-fold with ``folds`` folds, or a single
        shuffled split testing on ``fraction`` of the points.
    seed : int
        Shuffling seed for "kfold" and "holdout".

    Returns
    -------
    KnnEvaluation
        ``accuracy`` pools all test predictions. ``fold_accuracies`` has one
        entry per fold; leave-one-out reports the pooled value only.
    """
    metric = check_metric(metric)
    if y is None:
        raise ValueError("knn evaluation needs labelled data")
    X = check_points(X, metric)
    y = check_labels(y, "y")
    if y.shape[0] != X.shape[0]:
        raise ValueError(f"{y.shape[0]} labels for {X.shape[0]} samples")
    n = X.shape[0]
    desc = _describe(protocol, folds, fraction, seed)

    if protocol == "loo":
        pred = _loo_predictions(X, y, k, metric)
        correct = int(np.sum(pred == y))
        return KnnEvaluation(correct / n, (correct / n,), desc, correct, n)

    if protocol == "kfold":
        if folds < 2:
            raise ValueError("folds must be >= 2")
        splitter = KFold(n_splits=folds, shuffle=True, random_state=seed)
    elif protocol == "holdout":
        if not 0 < fraction < 1:
            raise ValueError("fraction must lie strictly between 0 and 1")
        splitter = ShuffleSplit(n_splits=1, test_size=fraction, random_state=seed)
    else:
        raise ValueError(f"unknown protocol {protocol!r}")

    per_fold = []
    correct = total = 0
    for train, test in splitter.split(X):
        clf = KNeighborsClassifier(k, metric=metric).fit(X[train], y[train])
        hits = int(np.sum(clf.predict(X[test]) == y[test]))
        per_fold.append(hits / test.size)
        correct += hits
        total += test.size
    return KnnEvaluation(correct / total, tuple(per_fold), desc, correct, total)
