import math

import numpy as np
import pytest

from viewmetric.metric import pairwise_distances
from viewmetric.spectral import (
    ConvergenceError,
    check_distance_matrix,
    jacobi_eigenvalues,
    spectral_radius,
    spectral_report,
    symmetric_eigenvalues,
)

LINE3 = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]


def distinct_points(rng, n, m):
    return rng.normal(size=(n, m)) * rng.uniform(0.1, 10)


class TestEigenvalues:
    def test_two_by_two(self):
        np.testing.assert_allclose(symmetric_eigenvalues([[0, 1], [1, 0]]), [1, -1], atol=1e-15)

    def test_line_matrix(self):
        # characteristic polynomial l^3 - 6 l - 4 = (l + 2)(l^2 - 2 l - 2)
        expected = [1 + math.sqrt(3), 1 - math.sqrt(3), -2]
        for method in ("jacobi", "lapack", "auto"):
            np.testing.assert_allclose(symmetric_eigenvalues(LINE3, method=method), expected,
                                       rtol=0, atol=1e-12)

    def test_diagonal(self):
        assert list(symmetric_eigenvalues(np.diag([2.0, 3.0]))) == [3.0, 2.0]

    def test_one_by_one(self):
        assert list(symmetric_eigenvalues([[4.0]])) == [4.0]

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError, match="not symmetric"):
            symmetric_eigenvalues([[0, 1], [2, 0]])

    @pytest.mark.parametrize("n", [2, 5, 17, 40])
    def test_jacobi_matches_lapack(self, n):
        rng = np.random.default_rng(n)
        A = rng.normal(size=(n, n))
        A = A + A.T
        jac = jacobi_eigenvalues(A)
        ref = np.sort(np.linalg.eigvalsh(A))[::-1]
        assert np.max(np.abs(jac - ref)) <= 1e-10 * np.linalg.norm(A)

    def test_eigenvalue_sum_is_trace(self):
        A = np.random.default_rng(9).normal(size=(25, 25))
        A = A + A.T
        assert abs(symmetric_eigenvalues(A).sum() - np.trace(A)) <= 1e-9 * np.linalg.norm(A)

    def test_non_convergence_raises(self):
        A = np.random.default_rng(0).normal(size=(10, 10))
        with pytest.raises(ConvergenceError):
            jacobi_eigenvalues(A + A.T, max_sweeps=1)


class TestCheckDistanceMatrix:
    def test_line_points_pass(self):
        chk = check_distance_matrix(LINE3)
        assert chk.nonnegative_symmetric and chk.zero_diagonal and chk.conditional_semidefinite
        assert chk.passed
        assert chk.centred_sign == "nonpositive"

    def test_two_by_two_centred_eigenvalues(self):
        chk = check_distance_matrix([[0, 1], [1, 0]])
        assert chk.passed
        np.testing.assert_allclose(sorted(chk.centred_eigenvalues), [-2, 0], atol=1e-15)

    def test_nonzero_diagonal_fails_condition_two(self):
        chk = check_distance_matrix([[1, 1], [1, 0]])
        assert not chk.zero_diagonal
        assert not chk.passed

    def test_negative_entry_fails_condition_one(self):
        assert not check_distance_matrix([[0, -1], [-1, 0]]).nonnegative_symmetric

    def test_indefinite_centred_form_fails(self):
        # violates the triangle inequality badly: d(0,2) > d(0,1) + d(1,2)
        M = [[0, 1, 10], [1, 0, 1], [10, 1, 0]]
        chk = check_distance_matrix(M)
        assert chk.centred_sign == "indefinite"
        assert not chk.passed

    @pytest.mark.parametrize("metric", ["view", "euclidean"])
    def test_every_pairwise_matrix_passes(self, metric):
        rng = np.random.default_rng(11)
        for _ in range(20):
            n, m = rng.integers(3, 25), rng.integers(2, 8)
            D = pairwise_distances(distinct_points(rng, n, m), metric)
            chk = check_distance_matrix(D)
            assert chk.passed and chk.centred_sign == "nonpositive"


class TestSpectralRadius:
    def test_two_by_two(self):
        assert spectral_radius([[0, 2.5], [2.5, 0]]) == pytest.approx(2.5, rel=1e-15)

    def test_line_matrix(self):
        assert spectral_radius(LINE3) == pytest.approx(1 + math.sqrt(3), rel=1e-12)

    def test_zero_matrix(self):
        assert spectral_radius(np.zeros((3, 3))) == 0.0


class TestSpectralReport:
    def test_two_points(self):
        rep = spectral_report([[1, 2, 3], [0, 0, 0]])
        assert rep.positive_count_view == rep.positive_count_euclid == 1
        assert rep.rho_view == pytest.approx(9.003896913132158, rel=1e-12)
        assert rep.rho_euclid == pytest.approx(3.7416573867739413, rel=1e-12)
        assert rep.rho_view >= rep.rho_euclid

    def test_random_five_dimensional(self):
        X = np.random.default_rng(5).normal(size=(10, 5))
        rep = spectral_report(X)
        assert rep.positive_count_view == rep.positive_count_euclid == 1
        assert abs(rep.trace_view) <= 1e-9 and abs(rep.trace_euclid) <= 1e-9
        assert len(rep.eigenvalues_view) == len(rep.eigenvalues_euclid) == 10

    def test_properties_on_random_sets(self):
        rng = np.random.default_rng(21)
        for _ in range(30):
            n, m = int(rng.integers(3, 31)), int(rng.integers(2, 9))
            X = distinct_points(rng, n, m)
            rep = spectral_report(X)
            for eigs, rho in ((rep.eigenvalues_view, rep.rho_view),
                              (rep.eigenvalues_euclid, rep.rho_euclid)):
                assert rho == pytest.approx(eigs[0], rel=1e-9)
                assert list(eigs) == sorted(eigs, reverse=True)
            assert rep.rho_view >= rep.rho_euclid - 1e-9
            if m > 2:
                assert rep.rho_view > rep.rho_euclid

    def test_duplicates_accepted(self):
        rep = spectral_report([[0, 0], [0, 0], [1, 1]])
        assert rep.n == 3

    def test_to_dict_round_trip(self):
        rep = spectral_report([[0, 0, 1], [1, 0, 0], [0, 2, 0]])
        d = rep.to_dict()
        assert d["n"] == 3 and d["positive_count_view"] == 1
