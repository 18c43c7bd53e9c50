# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled row-sweep kernel for the discrete assignment solver.

Semantically identical to gemclust._sweep_py; the pure-Python module is
the fallback when this extension is not built.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def sweep_rows(cnp.float64_t[:, ::1] dist,
               cnp.float64_t[:, ::1] cluster_dist,
               cnp.float64_t[:, ::1] balance,
               cnp.int64_t[::1] labels,
               cnp.int64_t[::1] sizes,
               double beta):
    """One in-order pass of best-cluster row moves.

    ``cluster_dist`` must hold G^T @ dist on entry and is maintained in
    place as rows move; ``balance`` is the stay-bonus matrix computed at
    sweep start. Row i moves to argmin_j of
    ``2*cluster_dist[j, i] - beta*balance[i, j]`` (ties to the lowest
    cluster index). Returns the number of rows that changed cluster.
    """
    cdef Py_ssize_t n = dist.shape[0]
    cdef Py_ssize_t c = cluster_dist.shape[0]
    cdef Py_ssize_t i, j, l
    cdef Py_ssize_t best, cur
    cdef double score, best_score
    cdef Py_ssize_t changes = 0

    for i in range(n):
        cur = <Py_ssize_t> labels[i]
        best = 0
        best_score = 2.0 * cluster_dist[0, i] - beta * balance[i, 0]
        for j in range(1, c):
            score = 2.0 * cluster_dist[j, i] - beta * balance[i, j]
            if score < best_score:
                best_score = score
                best = j
        if best != cur:
            for l in range(n):
                cluster_dist[cur, l] -= dist[i, l]
                cluster_dist[best, l] += dist[i, l]
            sizes[cur] -= 1
            sizes[best] += 1
            labels[i] = <cnp.int64_t> best
            changes += 1
    return changes
