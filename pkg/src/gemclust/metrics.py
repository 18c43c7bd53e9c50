"""External clustering quality metrics: accuracy, NMI, purity.

All three compare a predicted partition against ground-truth classes
and are invariant under relabeling of the predicted cluster ids.
Accuracy uses an exact optimal cluster-to-class matching (assignment
problem on the confusion matrix, zero-padded to square when the
numbers of clusters and classes differ); NMI normalizes mutual
information by the geometric mean of the two entropies.
"""

import numpy as np
from scipy.optimize import linear_sum_assignment

from .exceptions import InvalidInputError


def _as_labels(values, name):
    arr = np.asarray(values)
    if arr.ndim == 2:  # one-hot indicator matrices are accepted as-is
        from .indicator import indicator_to_labels

        arr = indicator_to_labels(arr)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidInputError(f"{name} must be a nonempty 1-d label vector")
    _, remapped = np.unique(arr, return_inverse=True)
    return remapped.astype(np.int64)


def _check_pair(pred, truth):
    p = _as_labels(pred, "predicted labels")
    t = _as_labels(truth, "true labels")
    if p.size != t.size:
        raise InvalidInputError(
            f"label vectors disagree in length: {p.size} vs {t.size}"
        )
    return p, t


def confusion_matrix(pred, truth):
    """Counts[j, k] = number of samples in predicted cluster j with true
    class k. Ids are remapped to contiguous ranges first."""
    p, t = _check_pair(pred, truth)
    c_p = int(p.max()) + 1
    c_t = int(t.max()) + 1
    counts = np.zeros((c_p, c_t), dtype=np.int64)
    np.add.at(counts, (p, t), 1)
    return counts


def accuracy(pred, truth):
    """Fraction of samples captured by the best injective cluster-to-
    class matching."""
    counts = confusion_matrix(pred, truth)
    side = max(counts.shape)
    padded = np.zeros((side, side), dtype=np.int64)
    padded[: counts.shape[0], : counts.shape[1]] = counts
    rows, cols = linear_sum_assignment(padded, maximize=True)
    return float(padded[rows, cols].sum()) / counts.sum()


def _entropy(p):
    p = p[p > 0.0]
    return float(-(p * np.log(p)).sum())


def nmi(pred, truth):
    """Mutual information over the geometric mean of the entropies.

    Two single-cluster partitions are identical, hence 1.0; if exactly
    one side has zero entropy the partitions differ and the score is 0.
    """
    counts = confusion_matrix(pred, truth).astype(np.float64)
    n = counts.sum()
    joint = counts / n
    p_row = joint.sum(axis=1)
    p_col = joint.sum(axis=0)
    h_row = _entropy(p_row)
    h_col = _entropy(p_col)
    if h_row == 0.0 and h_col == 0.0:
        return 1.0
    if h_row == 0.0 or h_col == 0.0:
        return 0.0
    mask = joint > 0.0
    mi = float(
        (joint[mask] * np.log(joint[mask] / np.outer(p_row, p_col)[mask])).sum()
    )
    return float(np.clip(mi / np.sqrt(h_row * h_col), 0.0, 1.0))


def purity(pred, truth):
    """Fraction of samples in the majority class of their cluster.

    Singleton clusters trivially score 1.0, so purity inflates with the
    cluster count; report it alongside accuracy/NMI, not alone.
    """
    counts = confusion_matrix(pred, truth)
    return float(counts.max(axis=1).sum()) / counts.sum()
