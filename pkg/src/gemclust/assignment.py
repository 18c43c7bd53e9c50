"""Discrete assignment solver with an l2,1 class-balance term.

For a fixed embedding its squared-distance matrix D drives the
objective ``tr(G^T D G) - beta * ||G^T||_{2,1}`` over one-hot indicator
matrices G. The concave balance term (sum of column norms, maximal at
equal cluster sizes) is handled by majorization-minimization: linearize
it at the current G, then sweep the rows in order, each row moving to
the cluster with the best linearized score. Every sweep is a descent
step of the true objective.

The row sweep is the hot loop; a compiled kernel is used when the
extension built, with a semantically identical pure-Python fallback
(force it with GEMCLUST_PURE_PYTHON=1).
"""

import os
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidInputError
from .indicator import indicator_to_labels, labels_to_indicator, validate_indicator
from .linalg import validate_distance_matrix

from . import _sweep_py

if os.environ.get("GEMCLUST_PURE_PYTHON"):
    _kernel = _sweep_py
    COMPILED_KERNEL = False
else:
    try:
        from . import _sweep as _sweep_ext

        _kernel = _sweep_ext
        COMPILED_KERNEL = True
    except ImportError:
        _kernel = _sweep_py
        COMPILED_KERNEL = False


def kernel_name():
    """Which sweep kernel is active: 'compiled' or 'python'."""
    return "compiled" if COMPILED_KERNEL else "python"


@dataclass(frozen=True)
class AssignmentSolveConfig:
    """Knobs for :func:`solve_assignment`.

    ``beta`` weighs the balance term; ``max_sweeps`` caps the row
    sweeps; ``tol`` optionally stops early once the objective improves
    by less than this between sweeps (0 keeps sweeping to an exact
    fixed point).
    """

    beta: float
    max_sweeps: int = 100
    tol: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.beta) or self.beta < 0.0:
            raise InvalidInputError("beta must be finite and nonnegative")
        if self.max_sweeps < 1:
            raise InvalidInputError("max_sweeps must be at least 1")
        if not np.isfinite(self.tol) or self.tol < 0.0:
            raise InvalidInputError("tol must be finite and nonnegative")


def l21_column_norm(G):
    """Sum of Euclidean column norms, ``sum_j ||g_j||_2``.

    For a one-hot indicator this is ``sum_j sqrt(n_j)``; by
    Cauchy-Schwarz it is at most ``sqrt(N * c)``, with equality exactly
    at equal cluster sizes.
    """
    G = np.asarray(G, dtype=np.float64)
    if np.any(G < 0.0):
        raise InvalidInputError("matrix must be nonnegative")
    return float(np.linalg.norm(G, axis=0).sum())


def balance_subgradient(G):
    """Columnwise-normalized indicator H with ``h_ij = g_ij / ||g_j||``.

    This is the gradient of the column-norm sum at G; columns of empty
    clusters are zero by convention. The linearization is tight:
    ``<H, G> = sum_j ||g_j||`` exactly.
    """
    G = validate_indicator(G)
    norms = np.linalg.norm(G, axis=0)
    inv = np.zeros_like(norms)
    nz = norms > 0.0
    inv[nz] = 1.0 / norms[nz]
    return G * inv[None, :]


def assignment_objective(D, G, beta):
    """Balance-regularized objective ``tr(G^T D G) - beta * sum_j ||g_j||``."""
    D = validate_distance_matrix(D)
    G = validate_indicator(G)
    if G.shape[0] != D.shape[0]:
        raise InvalidInputError("assignment and distance matrix disagree on N")
    return float(np.einsum("ij,ik,kj->", G, D, G)) - beta * l21_column_norm(G)


def update_row(G, D, H, beta, i):
    """Re-assign row ``i`` to its best cluster, all other rows fixed.

    The score of cluster j is ``(2 G^T d_i - beta h^i)_j`` with G the
    state before this update and ``d_i`` the i-th distance column; ties
    go to the lowest cluster index. Returns a new indicator matrix.
    """
    G = validate_indicator(G)
    D = validate_distance_matrix(D)
    H = np.asarray(H, dtype=np.float64)
    n = G.shape[0]
    if D.shape[0] != n or H.shape != G.shape:
        raise InvalidInputError("G, D and H shapes disagree")
    if not 0 <= i < n:
        raise InvalidInputError(f"row index {i} out of range")
    scores = 2.0 * (G.T @ D[:, i]) - beta * H[i]
    out = G.copy()
    out[i] = 0.0
    out[i, int(np.argmin(scores))] = 1.0
    return out


def _repair_empty_clusters(labels, sizes, D):
    """Refill empty clusters from the largest one.

    Moves the member of the (current) largest cluster with the largest
    same-cluster distance sum into each empty cluster. Both objective
    terms improve: the quadratic term drops by that distance sum and
    the balance term grows, so repairs never undo the sweep's descent.
    Returns the number of moves.
    """
    moves = 0
    while True:
        empty = np.nonzero(sizes == 0)[0]
        if empty.size == 0:
            return moves
        target = int(empty[0])
        donor = int(np.argmax(sizes))
        members = np.nonzero(labels == donor)[0]
        within = D[np.ix_(members, members)].sum(axis=1)
        mover = int(members[np.argmax(within)])
        labels[mover] = target
        sizes[donor] -= 1
        sizes[target] += 1
        moves += 1


def solve_assignment(D, G_init, cfg, trace=None):
    """Minimize the balance-regularized objective by MM row sweeps.

    Each sweep linearizes the balance term at the current G and updates
    the rows in index order; sweeps repeat until no label moves (a
    fixed point) or ``cfg.max_sweeps``. If a sweep empties a cluster it
    is repaired immediately (see :func:`_repair_empty_clusters`), which
    also never increases the objective, so the result is never worse
    than ``G_init``. If ``trace`` is a list, the objective after every
    sweep is appended.
    """
    D = validate_distance_matrix(D)
    G = validate_indicator(G_init)
    n, c = G.shape
    if D.shape[0] != n:
        raise InvalidInputError("assignment and distance matrix disagree on N")
    if not isinstance(cfg, AssignmentSolveConfig):
        raise InvalidInputError("cfg must be an AssignmentSolveConfig")

    labels = indicator_to_labels(G)
    sizes = np.bincount(labels, minlength=c).astype(np.int64)
    D = np.ascontiguousarray(D)
    cluster_dist = np.ascontiguousarray(G.T @ D)  # c x n, kept in sync per move
    prev_obj = None

    for _ in range(cfg.max_sweeps):
        H = np.ascontiguousarray(
            balance_subgradient(labels_to_indicator(labels, c))
        )
        changed = _kernel.sweep_rows(D, cluster_dist, H, labels, sizes, cfg.beta)
        repaired = _repair_empty_clusters(labels, sizes, D)
        if repaired:
            G_now = labels_to_indicator(labels, c)
            cluster_dist = np.ascontiguousarray(G_now.T @ D)
        if trace is not None or cfg.tol > 0.0:
            obj = assignment_objective(D, labels_to_indicator(labels, c), cfg.beta)
            if trace is not None:
                trace.append(obj)
        if changed == 0 and repaired == 0:
            break
        if cfg.tol > 0.0 and prev_obj is not None and prev_obj - obj < cfg.tol:
            break
        if cfg.tol > 0.0:
            prev_obj = obj
    return labels_to_indicator(labels, c)
