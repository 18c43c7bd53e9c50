"""Pure-Python twin of the compiled sweep kernel.

Used when the Cython extension is unavailable (or disabled via the
GEMCLUST_PURE_PYTHON environment variable). Performs the exact same
floating-point operations in the same order, so results are identical
bit for bit.
"""

import numpy as np


def sweep_rows(dist, cluster_dist, balance, labels, sizes, beta):
    """See gemclust._sweep.sweep_rows."""
    n = dist.shape[0]
    changes = 0
    for i in range(n):
        scores = 2.0 * cluster_dist[:, i] - beta * balance[i]
        best = int(np.argmin(scores))  # first occurrence = lowest index
        cur = int(labels[i])
        if best != cur:
            cluster_dist[cur] -= dist[i]
            cluster_dist[best] += dist[i]
            sizes[cur] -= 1
            sizes[best] += 1
            labels[i] = best
            changes += 1
    return changes
