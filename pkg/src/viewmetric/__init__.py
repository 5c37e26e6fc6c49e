"""View-distance metric, K-Means and k-NN built on it, and clustering evaluation."""

from .clustering import KMeans, kmeans_fit, kmeans_plusplus, kmeans_predict
from .data import Dataset, Standardizer, gen_s_curve, gen_swiss_roll, load_csv, save_csv, standardize
from .metric import (
    DistanceMatrix,
    cdist,
    certain_dim_similarity_gain,
    contour_grid,
    dim_similarity_gain,
    euclidean_distance,
    pairwise_distances,
    v_norm,
    view_distance,
)
from .neighbors import KNeighborsClassifier, knn_classify, knn_evaluate
from .spectral import check_distance_matrix, spectral_radius, spectral_report, symmetric_eigenvalues

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "DistanceMatrix",
    "KMeans",
    "KNeighborsClassifier",
    "Standardizer",
    "cdist",
    "certain_dim_similarity_gain",
    "check_distance_matrix",
    "contour_grid",
    "dim_similarity_gain",
    "euclidean_distance",
    "gen_s_curve",
    "gen_swiss_roll",
    "kmeans_fit",
    "kmeans_plusplus",
    "kmeans_predict",
    "knn_classify",
    "knn_evaluate",
    "load_csv",
    "pairwise_distances",
    "save_csv",
    "spectral_radius",
    "spectral_report",
    "standardize",
    "symmetric_eigenvalues",
    "v_norm",
    "view_distance",
]
