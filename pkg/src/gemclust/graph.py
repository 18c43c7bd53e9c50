"""kNN neighborhoods and label-consistent similarity graphs.

Two samples are considered similar only when they are k-nearest
neighbors (union rule) *and* the current assignment puts them in the
same cluster; the weight is then the inner product of their normalized
indicator rows, i.e. 1/cluster size. The between-cluster companion graph
(used by the MFA-style embedding) carries ``1 - <z_i, z_j>`` on neighbor
pairs instead. Similarities live only on kNN edges, so they are stored
sparse.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .exceptions import InvalidInputError
from .indicator import normalized_indicator, validate_indicator
from .linalg import check_finite


@dataclass(frozen=True)
class SimilarityGraph:
    """Sparse symmetric nonnegative similarity with zero diagonal.

    ``kind`` tags how the weights were produced: ``"lpp"`` for the
    label-consistent locality graph, ``"mfa-within"``/``"mfa-between"``
    for the within/between pair.
    """

    weights: sparse.csr_matrix
    kind: str = "lpp"
    _degree: np.ndarray = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        W = sparse.csr_matrix(self.weights, dtype=np.float64)
        n = W.shape[0]
        if W.shape[0] != W.shape[1]:
            raise InvalidInputError("similarity matrix must be square")
        if W.nnz:
            if W.data.min() < 0.0:
                raise InvalidInputError("similarity weights must be nonnegative")
            if np.abs(W.diagonal()).max() > 0.0:
                raise InvalidInputError("similarity matrix must have zero diagonal")
            asym = abs(W - W.T)
            if asym.nnz and asym.max() > 1e-10 * max(1.0, W.max()):
                raise InvalidInputError("similarity matrix must be symmetric")
        object.__setattr__(self, "weights", W)
        object.__setattr__(self, "_degree", np.asarray(W.sum(axis=1)).ravel())

    @property
    def n_nodes(self):
        return self.weights.shape[0]

    def degree(self):
        """Row sums of the weights."""
        return self._degree.copy()

    def toarray(self):
        return self.weights.toarray()


def knn_adjacency(X, k):
    """Symmetric boolean kNN adjacency (union rule, no self-loops).

    Neighbors are found by squared Euclidean distance in the given
    space; equidistant candidates are broken by lowest sample index so
    the graph is deterministic. Each node ends up with at least ``k``
    incident edges.
    """
    X = check_finite(X, "data matrix")
    n = X.shape[0]
    if not 1 <= k <= n - 1:
        raise InvalidInputError(f"neighbor count k={k} out of range [1, {n - 1}]")
    from .linalg import pairwise_sq_dist

    D = pairwise_sq_dist(X)
    np.fill_diagonal(D, np.inf)  # exclude self
    # stable sort keeps lowest index first among equal distances
    order = np.argsort(D, axis=1, kind="stable")[:, :k]
    adj = np.zeros((n, n), dtype=bool)
    rows = np.repeat(np.arange(n), k)
    adj[rows, order.ravel()] = True
    adj |= adj.T
    return adj


def _check_pair(G, adjacency):
    G = validate_indicator(G)
    adjacency = np.asarray(adjacency, dtype=bool)
    if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1]:
        raise InvalidInputError("adjacency must be a square boolean matrix")
    if adjacency.shape[0] != G.shape[0]:
        raise InvalidInputError(
            f"adjacency is over {adjacency.shape[0]} nodes but assignment has {G.shape[0]} rows"
        )
    return G, adjacency


def _edge_weights(G, adjacency):
    """Upper-triangular neighbor pairs and their <z_i, z_j> weights."""
    Z, _ = normalized_indicator(G)
    iu, ju = np.nonzero(np.triu(adjacency, k=1))
    w = np.einsum("ij,ij->i", Z[iu], Z[ju])
    return iu, ju, w


def _sym_csr(n, iu, ju, w, keep):
    iu, ju, w = iu[keep], ju[keep], w[keep]
    rows = np.concatenate([iu, ju])
    cols = np.concatenate([ju, iu])
    data = np.concatenate([w, w])
    return sparse.csr_matrix((data, (rows, cols)), shape=(n, n))


def label_consistent_similarity(G, adjacency):
    """Locality similarity masked by shared cluster membership.

    ``s_ij = 1/n_k`` when i and j are kNN neighbors in the same cluster
    k of size ``n_k``; 0 otherwise (cross-cluster neighbors, non-
    neighbors, and pairs touching an empty cluster).
    """
    G, adjacency = _check_pair(G, adjacency)
    n = G.shape[0]
    iu, ju, w = _edge_weights(G, adjacency)
    return SimilarityGraph(_sym_csr(n, iu, ju, w, w > 0.0), kind="lpp")


def mfa_similarities(G, adjacency):
    """Within/between similarity pair for the MFA-style embedding.

    On neighbor pairs ``s_w = <z_i, z_j>`` and ``s_b = 1 - <z_i, z_j>``,
    so ``s_w + s_b`` equals the adjacency mask; both are 0 elsewhere.
    """
    G, adjacency = _check_pair(G, adjacency)
    n = G.shape[0]
    iu, ju, w = _edge_weights(G, adjacency)
    within = SimilarityGraph(_sym_csr(n, iu, ju, w, w > 0.0), kind="mfa-within")
    wb = 1.0 - w
    between = SimilarityGraph(_sym_csr(n, iu, ju, wb, wb > 0.0), kind="mfa-between")
    return within, between


def laplacian(S):
    """Degree matrix and combinatorial Laplacian ``L = D - S``.

    Accepts a :class:`SimilarityGraph` or any symmetric nonnegative
    matrix (dense or sparse); returns a sparse ``(D, L)`` pair. ``L`` is
    positive semidefinite with ``L 1 = 0``.
    """
    if isinstance(S, SimilarityGraph):
        W = S.weights
    else:
        W = sparse.csr_matrix(np.asarray(S, dtype=np.float64) if not sparse.issparse(S) else S)
        asym = abs(W - W.T)
        if asym.nnz and asym.max() > 1e-10 * max(1.0, W.max() if W.nnz else 1.0):
            raise InvalidInputError("similarity matrix must be symmetric")
        if W.nnz and W.data.min() < 0.0:
            raise InvalidInputError("similarity weights must be nonnegative")
    deg = np.asarray(W.sum(axis=1)).ravel()
    D = sparse.diags(deg, format="csr")
    return D, (D - W).tocsr()
