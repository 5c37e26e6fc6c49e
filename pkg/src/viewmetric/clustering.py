"""Lloyd K-Means with a pluggable metric.

Only the distance is swapped when the view metric is selected: points are
assigned to the nearest centroid under that metric, while centroids are
still recomputed as arithmetic means. Lloyd's monotone-descent guarantee
therefore only holds for the Euclidean metric; runs stop once every
centroid moves by at most ``tol`` (measured in the chosen metric) or after
``max_iter`` iterations.

Randomness comes from numpy's PCG64 bit generator. Restart ``r`` of a fit
seeded with ``seed`` uses ``PCG64(seed + r)``, so results are reproducible
across platforms and independent of how restarts are scheduled.
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_metric, check_points, check_same_dim
from .metric import cdist

__all__ = ["KMeans", "KMeansResult", "kmeans_fit", "kmeans_plusplus", "kmeans_predict"]

logger = logging.getLogger(__name__)

INITS = ("k-means++", "random")


@dataclass(frozen=True, eq=False)
class KMeansResult:
    centroids: np.ndarray
    labels: np.ndarray
    inertia: float
    n_iter: int
    converged: bool
    metric: str
    seed: int
    inertia_history: tuple = ()


def _rng(seed):
    return np.random.Generator(np.random.PCG64(int(seed)))


def _assign(X, centroids, metric):
    D = cdist(X, centroids, metric, squared=True)
    # argmin returns the first minimum, i.e. ties go to the lowest centroid index
    labels = np.argmin(D, axis=1)
    return labels, D[np.arange(X.shape[0]), labels]


def kmeans_plusplus(X, n_clusters, metric="view", seed=0):
    """Pick initial centroids by D^2 sampling.

    The first centroid is a uniformly drawn point; each further centroid is
    drawn with probability proportional to the squared chosen-metric
    distance to the nearest centroid picked so far.

    Returns
    -------
    centers : ndarray of shape (n_clusters, m)
    indices : ndarray of shape (n_clusters,)
        Row indices of the chosen points in ``X``.
    """
    metric = check_metric(metric)
    X = check_points(X, metric)
    n = X.shape[0]
    k = int(n_clusters)
    if k < 1:
        raise ValueError("n_clusters must be >= 1")
    if k > n:
        raise ValueError(f"cannot pick {k} centroids from {n} points")
    rng = _rng(seed)

    indices = [int(rng.integers(n))]
    closest = cdist(X, X[indices[-1]][None, :], metric, squared=True)[:, 0]
    for _ in range(1, k):
        total = closest.sum()
        if total > 0.0:
            cum = np.cumsum(closest)
            idx = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
            idx = min(idx, n - 1)
            while closest[idx] == 0.0:  # guard against landing on a zero-weight slot
                idx -= 1
        else:
            # every remaining point coincides with a chosen one
            free = np.setdiff1d(np.arange(n), indices)
            idx = int(free[rng.integers(free.size)])
        indices.append(idx)
        d_new = cdist(X, X[idx][None, :], metric, squared=True)[:, 0]
        np.minimum(closest, d_new, out=closest)
    indices = np.asarray(indices)
    return X[indices].copy(), indices


def _repair_empty(X, labels, dist, k):
    # farthest-point seizure, one point per empty cluster
    labels = labels.copy()
    dist = dist.copy()
    repaired = False
    for j in range(k):
        counts = np.bincount(labels, minlength=k)
        if counts[j] > 0:
            continue
        donors = counts[labels] > 1
        if not donors.any():
            break
        cand = np.where(donors, dist, -np.inf)
        i = int(np.argmax(cand))
        labels[i] = j
        dist[i] = 0.0
        repaired = True
    return labels, repaired


def _means(X, labels, k, fallback):
    centers = fallback.copy()
    for j in range(k):
        members = X[labels == j]
        if members.shape[0]:
            centers[j] = members.mean(axis=0)
    return centers


def _single_run(X, centers, metric, max_iter, tol, seed):
    k = centers.shape[0]
    history = []
    converged = False
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        labels, dist = _assign(X, centers, metric)
        history.append(float(dist.sum()))
        if len(history) > 1 and history[-1] > history[-2] * (1 + 1e-12):
            logger.debug("inertia rose from %g to %g (metric=%s, iteration %d)",
                         history[-2], history[-1], metric, n_iter)
        labels, repaired = _repair_empty(X, labels, dist, k)
        new = _means(X, labels, k, centers)
        shift = np.diag(cdist(centers, new, metric)) if k else np.zeros(0)
        centers = new
        if not repaired and shift.max() <= tol:
            converged = True
            break

    labels, dist = _assign(X, centers, metric)
    # a centroid may still own no point after the last mean update
    for _ in range(k):
        counts = np.bincount(labels, minlength=k)
        empty = np.flatnonzero(counts == 0)
        if empty.size == 0:
            break
        donors = counts[labels] > 1
        i = int(np.argmax(np.where(donors, dist, -np.inf)))
        centers[empty[0]] = X[i]
        labels, dist = _assign(X, centers, metric)
    return KMeansResult(
        centroids=centers,
        labels=labels,
        inertia=float(dist.sum()),
        n_iter=n_iter,
        converged=converged,
        metric=metric,
        seed=int(seed),
        inertia_history=tuple(history),
    )


def _n_jobs(n_jobs):
    if n_jobs is None:
        env = os.environ.get("VIEWMETRIC_THREADS")
        return max(1, int(env)) if env else (os.cpu_count() or 1)
    if n_jobs < 0:
        return os.cpu_count() or 1
    return max(1, int(n_jobs))


def kmeans_fit(X, n_clusters, *, metric="view", init="k-means++", n_init=10,
               max_iter=300, tol=1e-6, seed=0, n_jobs=None):
    """Run K-Means ``n_init`` times and keep the run with the lowest inertia.

    Parameters
    ----------
    X : array-like of shape (n, m)
    n_clusters : int
    metric : {"view", "euclidean"}
    init : {"k-means++", "random"} or array-like of shape (n_clusters, m)
        An explicit array is used as-is and implies a single run.
    n_init : int
        Number of restarts; restart ``r`` is seeded with ``seed + r``.
    max_iter : int
    tol : float
        Stop once no centroid moves by more than ``tol`` in the chosen metric.
    seed : int
    n_jobs : int, optional
        Threads used for restarts. Defaults to ``$VIEWMETRIC_THREADS``, else
        the number of available cores.
        The result does not depend on this value.

    Returns
    -------
    KMeansResult
        Inertia is the sum of squared chosen-metric distances from each point
        to its centroid.
    """
    metric = check_metric(metric)
    X = check_points(X, metric)
    n = X.shape[0]
    k = int(n_clusters)
    if k < 1:
        raise ValueError("n_clusters must be >= 1")
    if n < k:
        raise ValueError(f"n_samples={n} should be >= n_clusters={k}")
    distinct = np.unique(X, axis=0).shape[0]
    if distinct < k:
        # coincident centroids tie, so some cluster would stay empty
        raise ValueError(f"only {distinct} distinct points for n_clusters={k}")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    if n_init < 1:
        raise ValueError("n_init must be >= 1")
    seed = int(seed)

    if isinstance(init, str):
        if init not in INITS:
            raise ValueError(f"unknown init {init!r}; expected one of {INITS} or an array")
        seeds = [seed + r for r in range(int(n_init))]
    else:
        given = check_points(init, metric, "init")
        check_same_dim(X, given)
        if given.shape[0] != k:
            raise ValueError(f"init has {given.shape[0]} centroids, expected {k}")
        seeds = [seed]

    def run(s):
        if isinstance(init, str) and init == "k-means++":
            centers, _ = kmeans_plusplus(X, k, metric, s)
        elif isinstance(init, str):
            centers = X[_rng(s).choice(n, size=k, replace=False)].copy()
        else:
            centers = given.copy()
        return _single_run(X, centers, metric, int(max_iter), float(tol), s)

    jobs = _n_jobs(n_jobs)
    if jobs > 1 and len(seeds) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, seeds))
    else:
        results = [run(s) for s in seeds]

    best = results[0]
    for res in results[1:]:
        # a later restart must win by more than rounding noise
        if res.inertia < best.inertia - 1e-9 * max(1.0, best.inertia):
            best = res
    return best


def kmeans_predict(centroids, X, metric="view"):
    """Nearest-centroid labels, ties to the lowest centroid index."""
    metric = check_metric(metric)
    centroids = check_points(centroids, metric, "centroids")
    X = check_points(X, metric, allow_empty=True)
    check_same_dim(X, centroids)
    if X.shape[0] == 0:
        return np.zeros(0, dtype=np.intp)
    return _assign(X, centroids, metric)[0]


class KMeans(ClusterMixin, BaseEstimator):
    """K-Means clustering under the view or Euclidean metric.

    Parameters
    ----------
    n_clusters : int, default=8
    metric : {"view", "euclidean"}, default="view"
    init : {"k-means++", "random"} or array-like, default="k-means++"
    n_init : int, default=10
    max_iter : int, default=300
    tol : float, default=1e-6
    random_state : int, default=0
        Base seed; restart ``r`` uses ``random_state + r``.
    n_jobs : int, optional

    Attributes
    ----------
    cluster_centers_ : ndarray of shape (n_clusters, n_features)
    labels_ : ndarray of shape (n_samples,)
    inertia_ : float
    n_iter_ : int
    converged_ : bool
    """

    def __init__(self, n_clusters=8, *, metric="view", init="k-means++", n_init=10,
                 max_iter=300, tol=1e-6, random_state=0, n_jobs=None):
        self.n_clusters = n_clusters
        self.metric = metric
        self.init = init
        self.n_init = n_init
        self.max_iter = max_iter
        self.tol = tol
        self.random_state = random_state
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        X = check_points(X, self.metric)
        res = kmeans_fit(
            X,
            self.n_clusters,
            metric=self.metric,
            init=self.init,
            n_init=self.n_init,
            max_iter=self.max_iter,
            tol=self.tol,
            seed=0 if self.random_state is None else self.random_state,
            n_jobs=self.n_jobs,
        )
        self.result_ = res
        self.cluster_centers_ = res.centroids
        self.labels_ = res.labels
        self.inertia_ = res.inertia
        self.n_iter_ = res.n_iter
        self.converged_ = res.converged
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "cluster_centers_")
        return kmeans_predict(self.cluster_centers_, X, self.metric)

    def transform(self, X):
        """Chosen-metric distance from each point to every centroid."""
        check_is_fitted(self, "cluster_centers_")
        return cdist(X, self.cluster_centers_, self.metric)

    def score(self, X, y=None):
        """Negative inertia of ``X`` against the fitted centroids."""
        check_is_fitted(self, "cluster_centers_")
        D = cdist(X, self.cluster_centers_, self.metric, squared=True)
        return -float(D.min(axis=1).sum())
