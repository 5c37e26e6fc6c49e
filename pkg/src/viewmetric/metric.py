"""View-distance, Euclidean distance, the v-norm and similarity gains.

The view-distance between two points of R^m (m >= 2) is the sum, over all
coordinate planes (i, j) with i < j, of the Euclidean distance between the
projections of the two points onto that plane::

    d_v(x, y) = sum_{i<j} sqrt((x_i - y_i)**2 + (x_j - y_j)**2)

The constant (m - 2)! factor that can be put in front of the sum is never
applied here: it rescales every distance in a given space by the same amount.

Every distance in this module goes through one kernel, :func:`cdist`, whose
per-entry arithmetic does not depend on how many rows are processed at once.
Single-pair results are therefore bitwise identical to matrix entries.
"""

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_metric, check_points, check_same_dim, check_vector

__all__ = [
    "DistanceMatrix",
    "cdist",
    "certain_dim_similarity_gain",
    "contour_grid",
    "dim_similarity_gain",
    "euclidean_distance",
    "pairwise_distances",
    "v_norm",
    "view_distance",
]

NORMS = ("l2", "v")

# upper bound on the size of the (rows, ny) scratch block per coordinate
_BLOCK_ELEMENTS = 1 << 21


def _squared_terms(X, Y):
    # list of (nx, ny) arrays of per-coordinate squared differences
    return [(X[:, c, None] - Y[None, :, c]) ** 2 for c in range(X.shape[1])]


def _block(X, Y, metric, squared):
    sq = _squared_terms(X, Y)
    m = len(sq)
    acc = np.zeros((X.shape[0], Y.shape[0]))
    if metric == "euclidean":
        for c in range(m):
            acc += sq[c]
        if not squared:
            np.sqrt(acc, out=acc)
        return acc
    for i in range(m):
        for j in range(i + 1, m):
            acc += np.sqrt(sq[i] + sq[j])
    if squared:
        acc *= acc
    return acc


def cdist(X, Y, metric="view", squared=False):
    """Distances between every row of ``X`` and every row of ``Y``.

    Parameters
    ----------
    X : array-like of shape (n_x, m)
    Y : array-like of shape (n_y, m)
    metric : {"view", "euclidean"}
    squared : bool, default=False
        Return squared distances.

    Returns
    -------
    D : ndarray of shape (n_x, n_y)
    """
    metric = check_metric(metric)
    X = check_points(X, metric, "X", allow_empty=True)
    Y = check_points(Y, metric, "Y", allow_empty=True)
    check_same_dim(X, Y)
    nx, ny = X.shape[0], Y.shape[0]
    out = np.empty((nx, ny))
    if nx == 0 or ny == 0:
        return out
    rows = max(1, _BLOCK_ELEMENTS // max(1, ny * X.shape[1]))
    for start in range(0, nx, rows):
        stop = min(nx, start + rows)
        out[start:stop] = _block(X[start:stop], Y, metric, squared)
    return out


def _pair(x, y, metric):
    x = check_vector(x, "x")
    y = check_vector(y, "y")
    if x.shape != y.shape:
        raise ValueError(
            f"dimension mismatch: x has {x.size} coordinates, y has {y.size}"
        )
    if metric == "view" and x.size < 2:
        raise ValueError(f"view-distance needs m >= 2 coordinates, got m={x.size}")
    return float(_block(x[None, :], y[None, :], metric, False)[0, 0])


def euclidean_distance(x, y):
    """Straight-line distance between two vectors of equal length."""
    return _pair(x, y, "euclidean")


def view_distance(x, y):
    """Sum of the Euclidean distances of the projections onto all coordinate planes.

    >>> view_distance([1.0, 0.0, 0.0], [0.0, 0.0, 0.0])
    2.0
    """
    return _pair(x, y, "view")


def v_norm(x):
    """View-distance from ``x`` to the origin: ``sum_{i<j} sqrt(x_i**2 + x_j**2)``."""
    x = check_vector(x, "x")
    return view_distance(x, np.zeros_like(x))


def _check_norm(norm):
    norm = str(norm).lower()
    if norm not in NORMS:
        raise ValueError(f"unknown norm {norm!r}; expected one of {NORMS}")
    return norm


def _norm(x, norm):
    if norm == "v":
        return v_norm(x)
    return euclidean_distance(x, np.zeros_like(x))


def _gain(base, extended, norm):
    denom = _norm(base, norm)
    if denom == 0.0:
        raise ZeroDivisionError("similarity gain is undefined for a zero-norm vector")
    return _norm(extended, norm) / denom - 1.0


def dim_similarity_gain(x, appended, norm="v"):
    """Relative growth of the norm of ``x`` when one coordinate is appended.

    Parameters
    ----------
    x : array-like of shape (m,), m >= 2
    appended : float
        Value of the new coordinate m + 1.
    norm : {"v", "l2"}

    Returns
    -------
    float
        ``||x'|| / ||x|| - 1``. Under the v-norm this reduces to
        ``sum_i sqrt(x_i**2 + t**2) / ||x||_v``.
    """
    norm = _check_norm(norm)
    x = check_vector(x, "x")
    if x.size < 2:
        raise ValueError(f"gain needs m >= 2 coordinates, got m={x.size}")
    extended = np.append(x, float(appended))
    return _gain(x, extended, norm)


def certain_dim_similarity_gain(x, last, norm="v"):
    """Relative norm growth when the zero last coordinate of ``x`` becomes ``last``."""
    norm = _check_norm(norm)
    x = check_vector(x, "x")
    if x.size < 2:
        raise ValueError(f"gain needs m >= 2 coordinates, got m={x.size}")
    if x[-1] != 0.0:
        raise ValueError("the baseline vector must have a zero last coordinate")
    changed = x.copy()
    changed[-1] = float(last)
    return _gain(x, changed, norm)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Square matrix of pairwise distances tagged with the metric that made it.

    Construction checks symmetry (1e-12 absolute), an exactly zero diagonal
    and nonnegativity.
    """

    values: np.ndarray
    metric: str
    n: int = field(init=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValueError(f"distance matrix must be square, got shape {values.shape}")
        if values.shape[0] == 0:
            raise ValueError("distance matrix must have n >= 1")
        if np.any(np.diag(values) != 0.0):
            raise ValueError("distance matrix diagonal must be exactly zero")
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise ValueError("distance matrix entries must be finite and nonnegative")
        if np.max(np.abs(values - values.T)) > 1e-12:
            raise ValueError("distance matrix is not symmetric within 1e-12")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "metric", check_metric(self.metric))
        object.__setattr__(self, "n", values.shape[0])

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.values.copy()
        return self.values.astype(dtype)

    @property
    def shape(self):
        return self.values.shape


def pairwise_distances(X, metric="view"):
    """All pairwise distances between the rows of ``X`` as a :class:`DistanceMatrix`."""
    metric = check_metric(metric)
    X = check_points(X, metric)
    D = cdist(X, X, metric)
    # entries are computed independently; force the structural zeros and symmetry
    np.fill_diagonal(D, 0.0)
    D = np.minimum(D, D.T)
    return DistanceMatrix(D, metric)


def contour_grid(dim, fixed, axes=(0, 1), value_range=(-1.0, 1.0), steps=51, metric="view"):
    """Distance to the origin sampled on a square grid over two coordinates.

    Parameters
    ----------
    dim : int
        Dimension of the ambient space, >= 2.
    fixed : dict of int -> float
        Values of every coordinate not on a grid axis.
    axes : (int, int)
        Coordinates swept by the grid.
    value_range : (float, float)
        Both axes sample ``linspace(lo, hi, steps)``, endpoints included.
    steps : int
        Samples per axis, >= 2.
    metric : {"view", "euclidean"}

    Returns
    -------
    grid : ndarray of shape (steps,)
    Z : ndarray of shape (steps, steps)
        ``Z[i, j]`` is the distance at ``axes[0] = grid[i]``, ``axes[1] = grid[j]``.
    """
    metric = check_metric(metric)
    dim = int(dim)
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    a, b = (int(i) for i in axes)
    if a == b:
        raise ValueError("the two grid axes must be distinct")
    fixed = {int(k): float(v) for k, v in dict(fixed).items()}
    for idx in (a, b, *fixed):
        if not 0 <= idx < dim:
            raise ValueError(f"coordinate index {idx} outside 0..{dim - 1}")
    if a in fixed or b in fixed:
        raise ValueError("a grid axis also appears among the fixed coordinates")
    missing = set(range(dim)) - set(fixed) - {a, b}
    if missing:
        raise ValueError(f"coordinates {sorted(missing)} are neither fixed nor grid axes")
    if int(steps) < 2:
        raise ValueError("steps must be >= 2")
    lo, hi = (float(v) for v in value_range)
    grid = np.linspace(lo, hi, int(steps))

    A, B = np.meshgrid(grid, grid, indexing="ij")
    P = np.zeros((A.size, dim))
    for idx, val in fixed.items():
        P[:, idx] = val
    P[:, a] = A.ravel()
    P[:, b] = B.ravel()
    Z = cdist(P, np.zeros((1, dim)), metric)[:, 0].reshape(A.shape)
    return grid, Z
