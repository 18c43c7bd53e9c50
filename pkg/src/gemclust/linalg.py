"""Dense linear-algebra primitives: pairwise squared distances and the
symmetric eigensolver every other module builds on.

All functions are pure and deterministic for a fixed input. Matrices are
plain float64 ndarrays; samples are rows.
"""

import numpy as np

from .exceptions import InvalidInputError, NumericError

# Default tolerances; every caller may override them per call.
SYM_TOL = 1e-10
RESIDUAL_TOL = 1e-8
SIGN_EPS = 1e-12


def check_finite(arr, name="array"):
    """Return ``arr`` as a float64 ndarray, rejecting NaN/inf entries."""
    out = np.asarray(arr, dtype=np.float64)
    if not np.all(np.isfinite(out)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return out


def validate_data_matrix(X):
    """Validate an N x d sample matrix (N >= 2, d >= 1, finite)."""
    X = check_finite(X, "data matrix")
    if X.ndim != 2:
        raise InvalidInputError("data matrix must be 2-dimensional")
    n, d = X.shape
    if n < 2 or d < 1:
        raise InvalidInputError(f"data matrix needs >= 2 rows and >= 1 column, got {n}x{d}")
    return X


def pairwise_sq_dist(Y):
    """Squared Euclidean distances between all row pairs of ``Y``.

    Returns an N x N symmetric matrix with exact zero diagonal and
    nonnegative entries. Uses the Gram-matrix expansion, so the cost is
    one BLAS product plus O(N^2) cleanup.
    """
    Y = check_finite(Y, "embedded matrix")
    if Y.ndim != 2:
        raise InvalidInputError("embedded matrix must be 2-dimensional")
    gram = Y @ Y.T
    sq = np.diag(gram).copy()
    D = sq[:, None] + sq[None, :] - 2.0 * gram
    # enforce the symmetry/zero-diagonal/nonnegativity contract exactly
    D = 0.5 * (D + D.T)
    np.maximum(D, 0.0, out=D)
    np.fill_diagonal(D, 0.0)
    return D


def validate_distance_matrix(D):
    """Validate a squared-distance matrix: symmetric, zero diagonal, >= 0."""
    D = check_finite(D, "distance matrix")
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise InvalidInputError("distance matrix must be square")
    if np.abs(D - D.T).max(initial=0.0) > SYM_TOL * max(1.0, np.abs(D).max(initial=0.0)):
        raise InvalidInputError("distance matrix must be symmetric")
    if np.abs(np.diag(D)).max(initial=0.0) != 0.0:
        raise InvalidInputError("distance matrix must have zero diagonal")
    if D.min(initial=0.0) < 0.0:
        raise InvalidInputError("distance matrix must be nonnegative")
    return D


def _normalize_signs(V, eps=SIGN_EPS):
    """Flip eigenvector signs so the first component above ``eps`` is positive."""
    V = V.copy()
    for j in range(V.shape[1]):
        col = V[:, j]
        nz = np.nonzero(np.abs(col) > eps)[0]
        if nz.size and col[nz[0]] < 0.0:
            V[:, j] = -col
    return V


def sym_eig_smallest(M, m, sym_tol=SYM_TOL, residual_tol=RESIDUAL_TOL):
    """Eigenpairs of a symmetric matrix for the ``m`` smallest eigenvalues.

    Returns ``(w, V)`` with ``w`` ascending (length m) and ``V`` a d x m
    matrix of orthonormal eigenvectors. Signs are normalized (first
    nonzero component positive) so results are reproducible; for repeated
    eigenvalues any orthonormal basis of the eigenspace may be returned.

    Raises
    ------
    InvalidInputError
        if ``M`` is asymmetric beyond ``sym_tol`` (relative) or ``m`` is
        out of range.
    NumericError
        if the eigensolver fails or the residual check
        ``||M V - V diag(w)||_F <= residual_tol * ||M||_F`` does not hold.
    """
    M = check_finite(M, "matrix")
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidInputError("matrix must be square")
    d = M.shape[0]
    if not 1 <= m <= d:
        raise InvalidInputError(f"eigenpair count m={m} out of range [1, {d}]")
    scale = max(1.0, np.abs(M).max(initial=0.0))
    if np.abs(M - M.T).max(initial=0.0) > sym_tol * scale:
        raise InvalidInputError("matrix is not symmetric within tolerance")

    Msym = 0.5 * (M + M.T)
    try:
        w, V = np.linalg.eigh(Msym)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed: {exc}") from exc

    w = w[:m]
    V = _normalize_signs(V[:, :m])

    norm_m = np.linalg.norm(Msym, "fro")
    residual = np.linalg.norm(Msym @ V - V * w[None, :], "fro")
    if residual > residual_tol * max(norm_m, 1e-300):
        raise NumericError(
            f"eigen residual {residual:.3e} exceeds {residual_tol:.1e} * ||M||_F"
        )
    return w, V
