"""Joint linear-embedding + discrete clustering with label-consistent
similarity graphs, a centroid-free K-means core, and an l2,1 class-
balance term.

Public entry points: :func:`fit` with a :class:`FitConfig` for the full
pipeline, :func:`kmeans_lloyd` for the baseline, plus the subproblem
solvers and clustering metrics re-exported below.
"""

__version__ = "0.1.0"

from .assignment import (
    AssignmentSolveConfig,
    assignment_objective,
    balance_subgradient,
    kernel_name,
    l21_column_norm,
    solve_assignment,
    update_row,
)
from .embedding import embed, solve_projection_lpp, solve_projection_mfa
from .exceptions import (
    DataFormatError,
    DegenerateProblemError,
    InvalidInputError,
    NumericError,
)
from .graph import (
    SimilarityGraph,
    knn_adjacency,
    label_consistent_similarity,
    laplacian,
    mfa_similarities,
)
from .indicator import (
    indicator_to_labels,
    labels_to_indicator,
    membership_similarity,
    normalized_indicator,
    validate_indicator,
)
from .linalg import pairwise_sq_dist, sym_eig_smallest
from .metrics import accuracy, confusion_matrix, nmi, purity
from .pipeline import (
    FitConfig,
    FitReport,
    centroid_free_objective,
    fit,
    initialize_assignment,
    kmeans_lloyd,
    kmeans_objective,
    standardize_features,
)

__all__ = [
    "AssignmentSolveConfig",
    "DataFormatError",
    "DegenerateProblemError",
    "FitConfig",
    "FitReport",
    "InvalidInputError",
    "NumericError",
    "SimilarityGraph",
    "accuracy",
    "assignment_objective",
    "balance_subgradient",
    "centroid_free_objective",
    "confusion_matrix",
    "embed",
    "fit",
    "indicator_to_labels",
    "initialize_assignment",
    "kernel_name",
    "kmeans_lloyd",
    "kmeans_objective",
    "knn_adjacency",
    "l21_column_norm",
    "label_consistent_similarity",
    "labels_to_indicator",
    "laplacian",
    "membership_similarity",
    "mfa_similarities",
    "nmi",
    "normalized_indicator",
    "pairwise_sq_dist",
    "purity",
    "solve_assignment",
    "solve_projection_lpp",
    "solve_projection_mfa",
    "standardize_features",
    "sym_eig_smallest",
    "update_row",
    "validate_indicator",
]
