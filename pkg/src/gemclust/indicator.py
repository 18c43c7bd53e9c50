"""Hard cluster assignments as one-hot indicator matrices.

An assignment over N samples and c clusters is an N x c binary matrix G
with exactly one 1 per row. Internally most code carries the equivalent
label vector; these helpers convert and validate. The size-normalized
form Z (columns scaled by 1/sqrt(cluster size), zero for empty clusters)
is what similarity graphs are built from: row inner products <z_i, z_j>
equal 1/n_k when both samples sit in the same cluster k of size n_k and
0 otherwise.
"""

import numpy as np

from .exceptions import InvalidInputError


def validate_indicator(G):
    """Validate and return a one-hot indicator matrix as float64."""
    G = np.asarray(G, dtype=np.float64)
    if G.ndim != 2:
        raise InvalidInputError("indicator matrix must be 2-dimensional")
    if not np.all((G == 0.0) | (G == 1.0)):
        raise InvalidInputError("indicator entries must be 0 or 1")
    if not np.all(G.sum(axis=1) == 1.0):
        raise InvalidInputError("each indicator row must contain exactly one 1")
    return G


def labels_to_indicator(labels, n_clusters):
    """One-hot encode an integer label vector into an N x c matrix."""
    labels = np.asarray(labels, dtype=np.int64)
    if labels.ndim != 1:
        raise InvalidInputError("labels must be a 1-d integer vector")
    if labels.size and (labels.min() < 0 or labels.max() >= n_clusters):
        raise InvalidInputError(f"labels must lie in [0, {n_clusters - 1}]")
    G = np.zeros((labels.size, n_clusters), dtype=np.float64)
    G[np.arange(labels.size), labels] = 1.0
    return G


def indicator_to_labels(G):
    """Inverse of :func:`labels_to_indicator`."""
    return np.argmax(validate_indicator(G), axis=1).astype(np.int64)


def cluster_sizes(G):
    """Column sums of the indicator: samples per cluster."""
    return validate_indicator(G).sum(axis=0)


def normalized_indicator(G):
    """Size-normalized indicator Z and the cluster-size vector.

    Columns of empty clusters are zero (the 1/sqrt(0) limit convention),
    so Z^T Z is the identity restricted to nonempty clusters.
    """
    G = validate_indicator(G)
    sizes = G.sum(axis=0)
    inv_sqrt = np.zeros_like(sizes)
    nonempty = sizes > 0
    inv_sqrt[nonempty] = 1.0 / np.sqrt(sizes[nonempty])
    return G * inv_sqrt[None, :], sizes


def membership_similarity(G):
    """Dense N x N matrix of row inner products of Z, i.e. Z Z^T.

    Entry (i, j) is 1/n_k when samples i and j share cluster k and 0
    otherwise.
    """
    Z, _ = normalized_indicator(G)
    return Z @ Z.T
