"""Eigenstructure diagnostics for distance matrices.

A matrix of distances between n distinct points, Euclidean or view, has a
single positive eigenvalue, zero trace, and a spectral radius equal to that
positive eigenvalue. Its "first-point-centred" form
``B = (I - e s^T) M (I - s e^T)`` (``e`` all ones, ``s`` the first basis
vector) is one-signed. For genuine distance matrices that sign is
*negative* semidefinite; :func:`check_distance_matrix` reports the sign it
observes rather than assuming one.
"""

from dataclasses import asdict, dataclass

import numpy as np

from .metric import DistanceMatrix, pairwise_distances

__all__ = [
    "ConvergenceError",
    "DistanceMatrixCheck",
    "SpectralReport",
    "check_distance_matrix",
    "jacobi_eigenvalues",
    "spectral_radius",
    "spectral_report",
    "symmetric_eigenvalues",
]

# matrices up to this size go through the Jacobi solver under method="auto"
JACOBI_MAX_N = 64


class ConvergenceError(RuntimeError):
    """The eigenvalue iteration did not converge."""


def _as_square(M):
    if isinstance(M, DistanceMatrix):
        return M.values.astype(np.float64, copy=True)
    A = np.array(M, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix contains NaN or infinite entries")
    return A


def jacobi_eigenvalues(M, rtol=1e-12, max_sweeps=100):
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop once the Frobenius norm of the off-diagonal part drops below
    ``rtol * ||M||_F``. Raises :class:`ConvergenceError` after ``max_sweeps``.
    """
    A = _as_square(M)
    A = 0.5 * (A + A.T)
    n = A.shape[0]
    scale = np.linalg.norm(A)
    if n == 1 or scale == 0.0:
        return np.sort(np.diag(A))[::-1].copy()
    target = rtol * scale
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off < target:
            return np.sort(np.diag(A))[::-1].copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q]
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :]
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
    raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def symmetric_eigenvalues(M, tol=1e-10, method="auto"):
    """All eigenvalues of a symmetric matrix, sorted in descending order.

    Parameters
    ----------
    M : array-like of shape (n, n) or DistanceMatrix
    tol : float
        Largest tolerated ``|M - M^T|`` entry.
    method : {"auto", "jacobi", "lapack"}
        ``"auto"`` uses Jacobi rotations up to n = 64 and LAPACK's
        tridiagonal solver above.
    """
    A = _as_square(M)
    asym = np.max(np.abs(A - A.T))
    if asym > tol:
        raise ValueError(f"matrix is not symmetric: max |M - M^T| = {asym:.3g} > {tol:.3g}")
    if method == "auto":
        method = "jacobi" if A.shape[0] <= JACOBI_MAX_N else "lapack"
    if method == "jacobi":
        return jacobi_eigenvalues(A)
    if method == "lapack":
        try:
            w = np.linalg.eigvalsh(0.5 * (A + A.T))
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(str(exc)) from exc
        return w[::-1].copy()
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class DistanceMatrixCheck:
    """Outcome of the three distance-matrix conditions.

    ``centred_sign`` is one of "nonpositive", "nonnegative", "zero" or
    "indefinite" and describes the eigenvalues of the centred matrix B.
    """

    nonnegative_symmetric: bool
    zero_diagonal: bool
    conditional_semidefinite: bool
    centred_sign: str
    centred_eigenvalues: tuple

    @property
    def passed(self):
        return self.nonnegative_symmetric and self.zero_diagonal and self.conditional_semidefinite


def _centred(A):
    n = A.shape[0]
    P = np.eye(n)
    P[:, 0] -= 1.0  # I - e s^T
    return P @ A @ P.T


def _sign_of(eigs, thr):
    nonpos = bool(np.all(eigs <= thr))
    nonneg = bool(np.all(eigs >= -thr))
    if nonpos and nonneg:
        return "zero"
    if nonpos:
        return "nonpositive"
    if nonneg:
        return "nonnegative"
    return "indefinite"


def check_distance_matrix(M, tol=1e-9):
    """Test nonnegativity/symmetry, zero diagonal and one-signedness of B."""
    A = _as_square(M)
    scale = max(np.linalg.norm(A), np.finfo(float).tiny)
    nonneg_sym = bool(np.all(A >= 0) and np.max(np.abs(A - A.T)) <= tol * scale)
    zero_diag = bool(np.all(np.diag(A) == 0.0))
    B = _centred(0.5 * (A + A.T))
    eigs = symmetric_eigenvalues(B, tol=np.inf)
    sign = _sign_of(eigs, tol * scale)
    return DistanceMatrixCheck(
        nonnegative_symmetric=nonneg_sym,
        zero_diagonal=zero_diag,
        conditional_semidefinite=sign != "indefinite",
        centred_sign=sign,
        centred_eigenvalues=tuple(float(v) for v in eigs),
    )


def spectral_radius(M):
    """Largest absolute eigenvalue."""
    eigs = symmetric_eigenvalues(M, tol=np.inf)
    return float(np.max(np.abs(eigs)))


@dataclass(frozen=True)
class SpectralReport:
    n: int
    m: int
    eigenvalues_view: tuple
    eigenvalues_euclid: tuple
    positive_count_view: int
    positive_count_euclid: int
    rho_view: float
    rho_euclid: float
    trace_view: float
    trace_euclid: float
    conditional_nsd_pass_view: bool
    conditional_nsd_pass_euclid: bool
    centred_sign_view: str
    centred_sign_euclid: str

    def to_dict(self):
        return asdict(self)


def _summarize(D, tol):
    A = D.values
    scale = np.linalg.norm(A)
    eigs = symmetric_eigenvalues(A, tol=np.inf)
    check = check_distance_matrix(A, tol)
    return {
        "eigenvalues": tuple(float(v) for v in eigs),
        "positive_count": int(np.sum(eigs > tol * scale)),
        "rho": float(np.max(np.abs(eigs))),
        "trace": float(np.trace(A)),
        "pass": check.passed,
        "sign": check.centred_sign,
    }


def spectral_report(points, tol=1e-9):
    """Compare the view and Euclidean distance matrices of a point set.

    Positive eigenvalues are counted above ``tol * ||M||_F``.
    """
    X = np.asarray(points, dtype=np.float64)
    V = pairwise_distances(X, "view")
    E = pairwise_distances(X, "euclidean")
    v = _summarize(V, tol)
    e = _summarize(E, tol)
    return SpectralReport(
        n=X.shape[0],
        m=X.shape[1],
        eigenvalues_view=v["eigenvalues"],
        eigenvalues_euclid=e["eigenvalues"],
        positive_count_view=v["positive_count"],
        positive_count_euclid=e["positive_count"],
        rho_view=v["rho"],
        rho_euclid=e["rho"],
        trace_view=v["trace"],
        trace_euclid=e["trace"],
        conditional_nsd_pass_view=v["pass"],
        conditional_nsd_pass_euclid=e["pass"],
        centred_sign_view=v["sign"],
        centred_sign_euclid=e["sign"],
    )
