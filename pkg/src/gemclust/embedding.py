"""Projection subproblem solvers.

Both solvers return a d x m matrix W with orthonormal columns. The
locality-preserving variant minimizes ``tr(W^T X^T (L - eta*D) X W)``
under ``W^T W = I``, which is solved exactly by the eigenvectors of the
smallest eigenvalues. The MFA variant minimizes the trace ratio
``tr(W^T X^T L_w X W) / tr(W^T X^T L_b X W)`` by the standard
alternation between an eigenproblem and a scalar ratio update.
"""

import numpy as np

from .exceptions import DegenerateProblemError, InvalidInputError
from .graph import SimilarityGraph, laplacian
from .linalg import check_finite, sym_eig_smallest


def _quadratic_core(X, S):
    """Dense d x d matrices X^T L X and X^T D X for a similarity graph."""
    D, L = laplacian(S)
    XtLX = X.T @ (L @ X)
    XtDX = X.T @ (D @ X)
    return 0.5 * (XtLX + XtLX.T), 0.5 * (XtDX + XtDX.T)


def solve_projection_lpp(X, S, eta, m):
    """Locality-preserving projection for a fixed similarity graph.

    Columns of the result are the eigenvectors of the ``m`` smallest
    eigenvalues of ``X^T (L_S - eta*D_S) X``; ``eta`` trades the
    Laplacian term against the degree normalization it relaxes.
    """
    X = check_finite(X, "data matrix")
    d = X.shape[1]
    if not 1 <= m <= d:
        raise InvalidInputError(f"target dimension m={m} out of range [1, {d}]")
    if eta < 0.0:
        raise InvalidInputError("eta must be nonnegative")
    if isinstance(S, SimilarityGraph) and S.n_nodes != X.shape[0]:
        raise InvalidInputError("similarity graph and data matrix disagree on N")
    XtLX, XtDX = _quadratic_core(X, S)
    _, W = sym_eig_smallest(XtLX - eta * XtDX, m)
    return W


def solve_projection_mfa(X, S_w, S_b, m, tol=1e-8, max_iter=50, ratio_trace=None):
    """Trace-ratio projection separating within from between structure.

    Starting from the smallest-eigenvector basis of the within form,
    alternate ``W <- smallest-m eigenvectors of A_w - lam*A_b`` with the
    ratio update ``lam <- tr(W^T A_w W)/tr(W^T A_b W)`` until the ratio
    stalls. The ratio sequence is non-increasing, so the result is never
    worse than the plain initialization; among ratio ties the earliest
    candidate wins. If ``ratio_trace`` is a list, the ratio of each
    usable candidate is appended to it in iteration order.

    Raises
    ------
    DegenerateProblemError
        if the denominator trace is below 1e-12 at every candidate.
    """
    X = check_finite(X, "data matrix")
    d = X.shape[1]
    if not 1 <= m <= d:
        raise InvalidInputError(f"target dimension m={m} out of range [1, {d}]")
    for S, name in ((S_w, "within"), (S_b, "between")):
        if isinstance(S, SimilarityGraph) and S.n_nodes != X.shape[0]:
            raise InvalidInputError(f"{name}-graph and data matrix disagree on N")
    A_w, _ = _quadratic_core(X, S_w)
    A_b, _ = _quadratic_core(X, S_b)

    def ratio_parts(W):
        num = float(np.trace(W.T @ A_w @ W))
        den = float(np.trace(W.T @ A_b @ W))
        return num, den

    _, W = sym_eig_smallest(A_w, m)
    best_W, best_ratio = None, np.inf
    lam = None
    for _ in range(max_iter):
        num, den = ratio_parts(W)
        if den > 1e-12:
            ratio = num / den
            if ratio_trace is not None:
                ratio_trace.append(ratio)
            # replace only on genuine improvement: numerically tied
            # candidates keep the earliest (the plain eigenbasis)
            if best_W is None or ratio < best_ratio - 1e-10 * max(1.0, abs(best_ratio)):
                best_W, best_ratio = W, ratio
            if lam is not None and abs(ratio - lam) < tol:
                lam = ratio
                break
            lam = ratio
        elif lam is None:
            # eigenbasis of A_w kills the denominator; fall back to the
            # basis-invariant full-trace ratio to seed the alternation
            tr_b = float(np.trace(A_b))
            if tr_b <= 1e-12:
                raise DegenerateProblemError(
                    "between-structure quadratic form vanishes; trace ratio undefined"
                )
            lam = float(np.trace(A_w)) / tr_b
        _, W = sym_eig_smallest(A_w - lam * A_b, m)
    if best_W is None:
        raise DegenerateProblemError(
            "denominator trace below 1e-12 at every candidate projection"
        )
    return best_W


def embed(X, W):
    """Project samples into the embedding space: ``X @ W``."""
    X = check_finite(X, "data matrix")
    W = check_finite(W, "projection")
    if X.ndim != 2 or W.ndim != 2 or X.shape[1] != W.shape[0]:
        raise InvalidInputError(
            f"cannot embed {X.shape} data with a {W.shape} projection"
        )
    return X @ W
