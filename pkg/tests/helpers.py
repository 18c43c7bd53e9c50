"""Shared fixtures-in-spirit: data generators and brute-force oracles.

Everything here is deliberately naive (enumeration, double loops) so it
can serve as an independent check of the fast library paths.
"""

import itertools

import numpy as np

from gemclust.graph import SimilarityGraph
from gemclust.indicator import labels_to_indicator


def make_blobs(n_per=100, informative=10, ambient=50, sep=10.0, sigma=0.1, seed=7):
    """Three separated Gaussian blobs in an informative subspace padded
    with unit-variance noise dimensions; returns (X, labels)."""
    rng = np.random.default_rng(seed)
    centers = rng.normal(size=(3, informative))
    centers = sep * centers / np.linalg.norm(centers, axis=1, keepdims=True)
    parts, labels = [], []
    for j in range(3):
        blob = centers[j] + sigma * rng.normal(size=(n_per, informative))
        noise = rng.normal(size=(n_per, ambient - informative))
        parts.append(np.hstack([blob, noise]))
        labels += [j] * n_per
    X = np.vstack(parts)
    y = np.array(labels, dtype=np.int64)
    perm = rng.permutation(len(y))
    return X[perm], y[perm]


def random_similarity(rng, n, density=0.4):
    """Random symmetric nonnegative zero-diagonal similarity graph."""
    mask = np.triu(rng.random((n, n)) < density, k=1)
    W = np.zeros((n, n))
    W[mask] = rng.random(mask.sum())
    W = W + W.T
    return SimilarityGraph(W)


def random_orthonormal(rng, d, m):
    Q, _ = np.linalg.qr(rng.normal(size=(d, m)))
    return Q


def all_labelings(n, c):
    """Every label vector over n samples and c clusters (c**n of them)."""
    return np.array(list(itertools.product(range(c), repeat=n)), dtype=np.int64)


def brute_force_assignment_min(D, c, beta):
    """Exhaustive global minimum of tr(G^T D G) - beta * sum_j ||g_j||."""
    n = D.shape[0]
    labelings = all_labelings(n, c)
    onehot = np.eye(c)[labelings]  # (K, n, c)
    quad = np.einsum("kic,ij,kjc->k", onehot, D, onehot)
    sizes = onehot.sum(axis=1)  # (K, c)
    balance = np.sqrt(sizes).sum(axis=1)
    objs = quad - beta * balance
    best = objs.min()
    return best, labelings[objs <= best + 1e-12]


def brute_force_accuracy(pred, truth):
    """Max matched fraction over every injective cluster->class map."""
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    clusters = np.unique(pred)
    classes = np.unique(truth)
    side = max(len(clusters), len(classes))
    counts = np.zeros((side, side), dtype=np.int64)
    for j, a in enumerate(clusters):
        for k, b in enumerate(classes):
            counts[j, k] = int(((pred == a) & (truth == b)).sum())
    best = 0
    for perm in itertools.permutations(range(side)):
        best = max(best, sum(counts[j, perm[j]] for j in range(side)))
    return best / len(pred)


def indicator_from(labels, c=None):
    labels = np.asarray(labels, dtype=np.int64)
    if c is None:
        c = int(labels.max()) + 1
    return labels_to_indicator(labels, c)
