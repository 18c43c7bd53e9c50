"""Joint optimization loop and the Lloyd K-means baseline.

``fit`` alternates two exact subproblem solvers until the labels stop
moving: rebuild the label-consistent similarity from the current
assignment, solve the projection, then re-solve the assignment on
embedded distances. Per alternation the cost is one d x d
eigendecomposition plus the N^2 distance/sweep work, i.e.
O(T_outer * (d^3 + N^2 (d + m + c))) overall; the loop typically
stabilizes within a handful of iterations.

The module also houses the two independent objective routes used to
cross-check the centroid-free reformulation: the classic
centroid-based K-means objective and the pairwise similarity-weighted
form, which agree up to an exact factor of 2 for every assignment.
"""

import time
from dataclasses import dataclass

import numpy as np

from .assignment import AssignmentSolveConfig, solve_assignment
from .embedding import embed, solve_projection_lpp, solve_projection_mfa
from .exceptions import InvalidInputError
from .graph import knn_adjacency, label_consistent_similarity, mfa_similarities
from .indicator import (
    indicator_to_labels,
    labels_to_indicator,
    membership_similarity,
    validate_indicator,
)
from .linalg import pairwise_sq_dist, validate_data_matrix

METHODS = ("our-lpp", "our-mfa", "kmeans")
INIT_METHODS = ("balanced-random", "kmeans")


@dataclass(frozen=True)
class FitConfig:
    """Configuration for :func:`fit`; every field has a working default
    except the cluster count."""

    method: str = "our-lpp"
    n_clusters: int = 2
    n_neighbors: int = 5
    target_dim: int = 2
    eta: float = 1.0
    beta: float | str = "auto"  # "auto" -> mean(D) * N / c, from the solver's D
    max_outer: int = 50
    tol: float = 1e-6
    seed: int = 0
    standardize: bool = False
    recompute_knn_embedded: bool = False
    init: str = "balanced-random"
    max_sweeps: int = 100

    def __post_init__(self):
        if self.method not in METHODS:
            raise InvalidInputError(f"method must be one of {METHODS}")
        if self.init not in INIT_METHODS:
            raise InvalidInputError(f"init must be one of {INIT_METHODS}")
        if self.n_clusters < 1:
            raise InvalidInputError("n_clusters must be at least 1")
        if self.n_neighbors < 1:
            raise InvalidInputError("n_neighbors must be at least 1")
        if self.target_dim < 1:
            raise InvalidInputError("target_dim must be at least 1")
        if not np.isfinite(self.eta) or self.eta < 0.0:
            raise InvalidInputError("eta must be finite and nonnegative")
        if isinstance(self.beta, str):
            if self.beta != "auto":
                raise InvalidInputError("beta must be a nonnegative number or 'auto'")
        elif not np.isfinite(self.beta) or self.beta < 0.0:
            raise InvalidInputError("beta must be a nonnegative number or 'auto'")
        if self.max_outer < 1:
            raise InvalidInputError("max_outer must be at least 1")
        if not self.tol > 0.0:
            raise InvalidInputError("tol must be positive")
        if self.max_sweeps < 1:
            raise InvalidInputError("max_sweeps must be at least 1")


@dataclass
class FitReport:
    """Everything a run produced: labels, projection, per-iteration
    objective trace, and the configuration that generated them."""

    labels: np.ndarray
    n_clusters: int
    projection: np.ndarray | None
    objective_trace: list[float]
    outer_iters: int
    converged: bool
    wall_time: float
    config: FitConfig
    beta_used: float | None = None

    def indicator(self):
        return labels_to_indicator(self.labels, self.n_clusters)


def initialize_assignment(n_samples, n_clusters, seed):
    """Balanced random assignment: sizes differ by at most one, every
    cluster nonempty, deterministic for a fixed seed."""
    if n_clusters < 1:
        raise InvalidInputError("n_clusters must be at least 1")
    if n_clusters > n_samples:
        raise InvalidInputError(
            f"cannot split {n_samples} samples into {n_clusters} nonempty clusters"
        )
    rng = np.random.default_rng(seed)
    labels = rng.permutation(np.arange(n_samples, dtype=np.int64) % n_clusters)
    return labels_to_indicator(labels, n_clusters)


def standardize_features(X):
    """Per-feature zero mean, unit variance (constant features left at 0)."""
    X = validate_data_matrix(X)
    mu = X.mean(axis=0)
    sd = X.std(axis=0)
    sd[sd == 0.0] = 1.0
    return (X - mu) / sd


def _resolve_beta(beta, D, n_clusters):
    if beta == "auto":
        return float(D.mean()) * D.shape[0] / n_clusters
    return float(beta)


def _locality_objective(Y, graph):
    """Sum over ordered pairs of ``||y_i - y_j||^2 * s_ij`` (sparse S)."""
    D = pairwise_sq_dist(Y)
    return float(graph.weights.multiply(D).sum())


def fit(X, cfg):
    """Run the full alternation (or the Lloyd baseline) and report.

    For the ``our-*`` methods: starting from a balanced random
    assignment, each outer iteration rebuilds the similarity graph(s)
    from the current labels, solves the projection, embeds, and
    re-solves the assignment on embedded squared distances (masked to
    kNN edges for ``our-mfa``). The recorded objective is the locality
    form ``sum_ij ||x_i W - x_j W||^2 s_ij`` at the end of the
    iteration. Stops when labels are unchanged across an outer
    iteration, the relative objective change drops below ``cfg.tol``,
    or ``cfg.max_outer`` is reached (reported, not an error).
    """
    X = validate_data_matrix(X)
    if not isinstance(cfg, FitConfig):
        raise InvalidInputError("cfg must be a FitConfig")
    n, d = X.shape
    if cfg.n_clusters > n:
        raise InvalidInputError("n_clusters exceeds the number of samples")
    if cfg.standardize:
        X = standardize_features(X)

    start = time.perf_counter()
    if cfg.method == "kmeans":
        trace = []
        G, _ = kmeans_lloyd(X, cfg.n_clusters, cfg.seed, cfg.max_outer, trace=trace)
        return FitReport(
            labels=indicator_to_labels(G),
            n_clusters=cfg.n_clusters,
            projection=None,
            objective_trace=trace,
            outer_iters=len(trace),
            converged=len(trace) < cfg.max_outer,
            wall_time=time.perf_counter() - start,
            config=cfg,
        )

    if cfg.target_dim > d:
        raise InvalidInputError("target_dim exceeds the feature dimension")
    if cfg.n_neighbors > n - 1:
        raise InvalidInputError("n_neighbors must be at most N - 1")

    if cfg.init == "kmeans":
        G, _ = kmeans_lloyd(X, cfg.n_clusters, cfg.seed, max_iter=100)
        labels = indicator_to_labels(G)
    else:
        labels = indicator_to_labels(
            initialize_assignment(n, cfg.n_clusters, cfg.seed)
        )

    adjacency = knn_adjacency(X, cfg.n_neighbors)
    trace = []
    W = None
    beta_used = None
    converged = False
    outer = 0
    for outer in range(1, cfg.max_outer + 1):
        G = labels_to_indicator(labels, cfg.n_clusters)
        if cfg.method == "our-lpp":
            S = label_consistent_similarity(G, adjacency)
            W = solve_projection_lpp(X, S, cfg.eta, cfg.target_dim)
        else:
            S_w, S_b = mfa_similarities(G, adjacency)
            W = solve_projection_mfa(X, S_w, S_b, cfg.target_dim)
        Y = embed(X, W)
        if cfg.recompute_knn_embedded:
            adjacency = knn_adjacency(Y, cfg.n_neighbors)
        # both methods re-label with centroid-free K-means on the full
        # embedded distances; masking D to kNN edges turns the label
        # step into graph anti-coloring once clusters have no cross
        # edges, so the mask is deliberately not applied here
        D = pairwise_sq_dist(Y)
        beta_used = _resolve_beta(cfg.beta, D, cfg.n_clusters)
        G_new = solve_assignment(
            D,
            labels_to_indicator(labels, cfg.n_clusters),
            AssignmentSolveConfig(beta=beta_used, max_sweeps=cfg.max_sweeps),
        )
        new_labels = indicator_to_labels(G_new)
        S_now = label_consistent_similarity(
            labels_to_indicator(new_labels, cfg.n_clusters), adjacency
        )
        trace.append(_locality_objective(Y, S_now))

        if np.array_equal(new_labels, labels):
            labels = new_labels
            converged = True
            break
        labels = new_labels
        if len(trace) >= 2:
            prev, cur = trace[-2], trace[-1]
            if abs(cur - prev) < cfg.tol * max(abs(prev), 1.0):
                converged = True
                break

    return FitReport(
        labels=labels,
        n_clusters=cfg.n_clusters,
        projection=W,
        objective_trace=trace,
        outer_iters=outer,
        converged=converged,
        wall_time=time.perf_counter() - start,
        config=cfg,
        beta_used=beta_used,
    )


def kmeans_lloyd(X, n_clusters, seed, max_iter=100, trace=None):
    """Plain Lloyd alternation: means step and nearest-centroid step.

    Initial centroids are ``n_clusters`` distinct samples drawn with the
    seeded generator. Empty clusters are re-seeded at the point farthest
    from its assigned centroid, which keeps the per-iteration objective
    (optimal-centroid value, appended to ``trace`` when given)
    non-increasing. Returns the final indicator and centroid matrix.
    """
    X = validate_data_matrix(X)
    n, d = X.shape
    if not 1 <= n_clusters <= n:
        raise InvalidInputError(f"cluster count {n_clusters} out of range [1, {n}]")
    rng = np.random.default_rng(seed)
    centroids = X[rng.choice(n, size=n_clusters, replace=False)].copy()
    labels = None
    for _ in range(max_iter):
        d2 = pairwise_point_centroid(X, centroids)
        new_labels = np.argmin(d2, axis=1).astype(np.int64)
        sizes = np.bincount(new_labels, minlength=n_clusters)
        for j in np.nonzero(sizes == 0)[0]:
            # farthest point from its own centroid becomes the new seed
            far = int(np.argmax(d2[np.arange(n), new_labels]))
            centroids[j] = X[far]
            d2[:, j] = np.einsum("ij,ij->i", X - centroids[j], X - centroids[j])
            new_labels = np.argmin(d2, axis=1).astype(np.int64)
            sizes = np.bincount(new_labels, minlength=n_clusters)
        if trace is not None:
            trace.append(
                kmeans_objective(X, labels_to_indicator(new_labels, n_clusters))
            )
        if labels is not None and np.array_equal(new_labels, labels):
            labels = new_labels
            break
        labels = new_labels
        for j in range(n_clusters):
            members = labels == j
            if members.any():
                centroids[j] = X[members].mean(axis=0)
    G = labels_to_indicator(labels, n_clusters)
    return G, centroids


def pairwise_point_centroid(X, C):
    """Squared distances between every sample and every centroid."""
    sq_x = np.einsum("ij,ij->i", X, X)
    sq_c = np.einsum("ij,ij->i", C, C)
    d2 = sq_x[:, None] + sq_c[None, :] - 2.0 * (X @ C.T)
    np.maximum(d2, 0.0, out=d2)
    return d2


def kmeans_objective(X, G):
    """Classic K-means objective: squared distance of each sample to its
    cluster mean, summed (empty clusters contribute nothing)."""
    X = validate_data_matrix(X)
    G = validate_indicator(G)
    if G.shape[0] != X.shape[0]:
        raise InvalidInputError("assignment and data matrix disagree on N")
    total = 0.0
    for j in range(G.shape[1]):
        members = G[:, j] == 1.0
        if members.any():
            diff = X[members] - X[members].mean(axis=0)
            total += float(np.einsum("ij,ij->", diff, diff))
    return total


def centroid_free_objective(X, G):
    """Pairwise form of the K-means objective: ``sum_ij ||x_i - x_j||^2
    s_ij`` with the dense membership similarity ``s_ij = 1/n_k`` for
    same-cluster pairs. Equals exactly twice :func:`kmeans_objective`
    for every assignment, so both rank assignments identically.
    """
    X = validate_data_matrix(X)
    G = validate_indicator(G)
    if G.shape[0] != X.shape[0]:
        raise InvalidInputError("assignment and data matrix disagree on N")
    S = membership_similarity(G)
    D = pairwise_sq_dist(X)
    return float((D * S).sum())
