"""External clustering indices computed from a class-by-cluster contingency table.

Entropies use natural logarithms and are summed with :func:`math.fsum`, so
every quantity is independent of the order of classes or clusters. Thanks to
that, indices are exactly invariant under relabelling, and a perfect
clustering scores exactly 1.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.special import gammaln

from ._validation import check_labels

__all__ = [
    "ContingencyTable",
    "adjusted_mutual_info",
    "adjusted_rand_index",
    "best_map_accuracy",
    "clustering_scores",
    "contingency",
    "expected_mutual_info",
    "fowlkes_mallows",
    "homogeneity_completeness",
    "manifold_alignment",
    "mutual_info",
    "v_measure",
]

# above this many labels best_map_accuracy switches to the Hungarian method
EXHAUSTIVE_MAX_LABELS = 8
MAX_LABELS = 64


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """Counts of points per (true class, predicted cluster).

    Rows follow the sorted distinct values of the truth labelling, columns
    those of the prediction.
    """

    counts: np.ndarray
    classes: np.ndarray
    clusters: np.ndarray

    @property
    def row_sums(self):
        return self.counts.sum(axis=1)

    @property
    def col_sums(self):
        return self.counts.sum(axis=0)

    @property
    def n(self):
        return int(self.counts.sum())

    def transpose(self):
        return ContingencyTable(self.counts.T.copy(), self.clusters, self.classes)


def contingency(truth, pred):
    truth = check_labels(truth, "truth")
    pred = check_labels(pred, "pred")
    if truth.shape != pred.shape:
        raise ValueError(f"length mismatch: {truth.size} true labels vs {pred.size} predicted")
    if truth.size == 0:
        raise ValueError("labelings must be nonempty")
    classes, ti = np.unique(truth, return_inverse=True)
    clusters, pi = np.unique(pred, return_inverse=True)
    counts = np.zeros((classes.size, clusters.size), dtype=np.int64)
    np.add.at(counts, (ti, pi), 1)
    return ContingencyTable(counts, classes, clusters)


def _is_relabelling(counts):
    # each class maps to exactly one cluster and vice versa
    nz = counts > 0
    return bool(np.all(nz.sum(axis=0) == 1) and np.all(nz.sum(axis=1) == 1))


def _table(table_or_truth, pred=None):
    if pred is None:
        return table_or_truth
    return contingency(table_or_truth, pred)


def _comb2(x):
    x = np.asarray(x, dtype=np.int64)
    return x * (x - 1) // 2


def adjusted_rand_index(table, pred=None):
    """Pair-counting agreement corrected for chance; 1 for identical partitions.

    Accepts a :class:`ContingencyTable`, or ``(truth, pred)`` labelings.
    """
    table = _table(table, pred)
    if table.n < 2:
        raise ValueError("adjusted rand index needs n >= 2")
    index = int(_comb2(table.counts).sum())
    a = int(_comb2(table.row_sums).sum())
    b = int(_comb2(table.col_sums).sum())
    total = table.n * (table.n - 1) // 2
    expected = a * b / total
    max_index = (a + b) / 2
    if max_index == expected:
        return 1.0
    return (index - expected) / (max_index - expected)


def _entropy(sizes, n):
    return math.fsum(-(s / n) * math.log(s / n) for s in sizes if s > 0)


def _conditional_entropy(counts, n):
    # H(rows | columns)
    col = counts.sum(axis=0)
    terms = []
    for i, j in zip(*np.nonzero(counts)):
        c = counts[i, j]
        terms.append(-(c / n) * math.log(c / col[j]))
    return math.fsum(terms)


def homogeneity_completeness(table, pred=None):
    """Return ``(homogeneity, completeness)``.

    Homogeneity is ``1 - H(C|K)/H(C)`` (classes C, clusters K) and is 1 when
    ``H(C) = 0``; completeness swaps the roles.
    """
    table = _table(table, pred)
    n = table.n
    h_c = _entropy(table.row_sums, n)
    h_k = _entropy(table.col_sums, n)
    h_c_given_k = _conditional_entropy(table.counts, n)
    h_k_given_c = _conditional_entropy(table.counts.T, n)
    homogeneity = 1.0 if h_c == 0 else 1.0 - h_c_given_k / h_c
    completeness = 1.0 if h_k == 0 else 1.0 - h_k_given_c / h_k
    return homogeneity, completeness


def v_measure(table, pred=None):
    h, c = homogeneity_completeness(_table(table, pred))
    if h == 0 or c == 0:
        return 0.0
    return 2 * h * c / (h + c)


def mutual_info(table, pred=None):
    """Mutual information in nats, ``H(C) - H(C|K)``."""
    table = _table(table, pred)
    n = table.n
    return max(0.0, _entropy(table.row_sums, n) - _conditional_entropy(table.counts, n))


def expected_mutual_info(table, pred=None):
    """Expected mutual information of two random labelings with the table's marginals.

    Uses the exact hypergeometric model of cell counts.
    """
    table = _table(table, pred)
    n = table.n
    a = table.row_sums
    b = table.col_sums
    lg_n = gammaln(n + 1)
    lg_a, lg_na = gammaln(a + 1), gammaln(n - a + 1)
    lg_b, lg_nb = gammaln(b + 1), gammaln(n - b + 1)
    terms = []
    for i in range(a.size):
        for j in range(b.size):
            lo = max(1, a[i] + b[j] - n)
            hi = min(a[i], b[j])
            if lo > hi:
                continue
            nij = np.arange(lo, hi + 1, dtype=np.float64)
            log_p = (
                lg_a[i] + lg_b[j] + lg_na[i] + lg_nb[j] - lg_n
                - gammaln(nij + 1) - gammaln(a[i] - nij + 1)
                - gammaln(b[j] - nij + 1) - gammaln(n - a[i] - b[j] + nij + 1)
            )
            term = nij / n * np.log(n * nij / (a[i] * b[j])) * np.exp(log_p)
            terms.extend(term.tolist())
    return math.fsum(terms)


def adjusted_mutual_info(table, pred=None):
    """Mutual information adjusted for chance, arithmetic-mean normalized.

    ``(MI - E[MI]) / (mean(H(C), H(K)) - E[MI])``. Identical non-constant
    labelings score 1 even when the denominator vanishes (all singletons);
    otherwise a zero denominator, e.g. a constant labeling, gives 0.
    """
    table = _table(table, pred)
    if table.n < 2:
        raise ValueError("adjusted mutual information needs n >= 2")
    n = table.n
    h_c = _entropy(table.row_sums, n)
    h_k = _entropy(table.col_sums, n)
    if h_c == 0 or h_k == 0:
        return 0.0
    if _is_relabelling(table.counts):
        return 1.0
    mi = mutual_info(table)
    emi = expected_mutual_info(table)
    denom = (h_c + h_k) / 2 - emi
    if denom == 0:
        return 0.0
    return (mi - emi) / denom


def fowlkes_mallows(table, pred=None):
    """``TP / sqrt((TP + FP)(TP + FN))`` over pairs of points; 0 if TP = 0."""
    table = _table(table, pred)
    if table.n < 2:
        raise ValueError("Fowlkes-Mallows needs n >= 2")
    tp = int(_comb2(table.counts).sum())
    if tp == 0:
        return 0.0
    same_cluster = int(_comb2(table.col_sums).sum())
    same_class = int(_comb2(table.row_sums).sum())
    return tp / math.sqrt(same_cluster * same_class)


def _best_assignment_sum(counts):
    r, c = counts.shape
    size = max(r, c)
    square = np.zeros((size, size), dtype=np.int64)
    square[:r, :c] = counts
    if size <= EXHAUSTIVE_MAX_LABELS:
        perms = np.array(list(itertools.permutations(range(size))), dtype=np.intp)
        # perms[p, j] is the class given to cluster j
        totals = square[perms, np.arange(size)].sum(axis=1)
        return int(totals.max())
    rows, cols = linear_sum_assignment(square, maximize=True)
    return int(square[rows, cols].sum())


def best_map_accuracy(truth, pred):
    """Accuracy after the best one-to-one matching of clusters to classes.

    Up to 8 labels the matching is found by exhaustive search, above that
    with the Hungarian method.
    """
    table = contingency(truth, pred)
    r, c = table.counts.shape
    if max(r, c) > MAX_LABELS:
        raise ValueError(f"at most {MAX_LABELS} classes and clusters are supported")
    return _best_assignment_sum(table.counts) / table.n


def manifold_alignment(t, labels, n_clusters=None):
    """Unweighted mean over clusters of the population variance of ``t``.

    Lower values mean clusters are narrower along the manifold parameter.
    When ``n_clusters`` is given, every cluster 0..n_clusters-1 must occur.
    """
    t = np.asarray(t, dtype=np.float64)
    labels = check_labels(labels)
    if t.shape != labels.shape:
        raise ValueError(f"length mismatch: {t.size} parameters vs {labels.size} labels")
    if labels.size == 0:
        raise ValueError("labels must be nonempty")
    present = np.unique(labels)
    if n_clusters is not None:
        missing = sorted(set(range(int(n_clusters))) - set(present.tolist()))
        if missing:
            raise ValueError(f"clusters {missing} are empty")
    return float(np.mean([t[labels == j].var() for j in present]))


def clustering_scores(truth, pred):
    """All indices for one labeling pair, keyed as in the CLI output."""
    table = contingency(truth, pred)
    h, c = homogeneity_completeness(table)
    return {
        "ari": adjusted_rand_index(table),
        "homogeneity": h,
        "completeness": c,
        "v_measure": v_measure(table),
        "ami": adjusted_mutual_info(table),
        "fmi": fowlkes_mallows(table),
        "best_map_accuracy": best_map_accuracy(truth, pred),
    }
