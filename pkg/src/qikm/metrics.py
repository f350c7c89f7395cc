"""Rand index, adjusted Rand index and silhouette score.

Pair counts are kept as Python integers and the ratios are formed with
:class:`fractions.Fraction`, so RI and ARI are exact up to the final float
conversion.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """Counts of samples per (true class, predicted cluster)."""

    counts: np.ndarray
    row_sums: np.ndarray
    col_sums: np.ndarray
    n: int

    def pair_counts(self):
        """``(a, b, total)``: same-same pairs, different-different pairs, C(n, 2)."""
        same_both = sum(comb(int(v), 2) for v in self.counts.ravel())
        same_true = sum(comb(int(v), 2) for v in self.row_sums)
        same_pred = sum(comb(int(v), 2) for v in self.col_sums)
        total = comb(self.n, 2)
        diff_both = total - same_true - same_pred + same_both
        return same_both, diff_both, total


def contingency(true_labels, pred_labels) -> ContingencyTable:
    t = np.asarray(true_labels).ravel()
    p = np.asarray(pred_labels).ravel()
    if t.shape != p.shape:
        raise ValueError(f"label length mismatch: {t.size} vs {p.size}")
    if t.size < 2:
        raise ValueError("need at least two samples")
    _, ti = np.unique(t, return_inverse=True)
    _, pi = np.unique(p, return_inverse=True)
    counts = np.zeros((ti.max() + 1, pi.max() + 1), dtype=np.int64)
    np.add.at(counts, (ti, pi), 1)
    return ContingencyTable(counts, counts.sum(axis=1), counts.sum(axis=0), int(t.size))


def _table(t_or_true, pred=None):
    if isinstance(t_or_true, ContingencyTable):
        return t_or_true
    return contingency(t_or_true, pred)


def rand_index(t, pred=None) -> float:
    """(a + b) / C(n, 2). Accepts a table or ``(true_labels, pred_labels)``."""
    a, b, total = _table(t, pred).pair_counts()
    return float(Fraction(a + b, total))


def adjusted_rand_index(t, pred=None) -> float:
    """Chance-corrected Rand index in [-1, 1].

    Uses the hypergeometric expectation of the same-same pair count. When
    the maximum equals the expectation (both partitions trivial) the score
    is 1 by convention.
    """
    tab = _table(t, pred)
    index = sum(comb(int(v), 2) for v in tab.counts.ravel())
    sum_rows = sum(comb(int(v), 2) for v in tab.row_sums)
    sum_cols = sum(comb(int(v), 2) for v in tab.col_sums)
    total = comb(tab.n, 2)
    expected = Fraction(sum_rows * sum_cols, total)
    maximum = Fraction(sum_rows + sum_cols, 2)
    if maximum == expected:
        return 1.0
    return float((index - expected) / (maximum - expected))


def silhouette_samples(X, labels) -> np.ndarray:
    """Per-sample (B - A) / max(A, B) with Euclidean distances.

    A is the mean distance to the other members of the sample's cluster and
    B the smallest mean distance to the members of another cluster. Samples
    in singleton clusters score 0.
    """
    X = np.asarray(getattr(X, "rows", X), dtype=float)
    labels = np.asarray(labels).ravel()
    if X.shape[0] != labels.size:
        raise ValueError(f"{labels.size} labels for {X.shape[0]} samples")
    uniq, inv = np.unique(labels, return_inverse=True)
    if uniq.size < 2:
        raise ValueError("silhouette needs at least 2 non-empty clusters")
    D = np.sqrt(((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2))
    onehot = np.zeros((labels.size, uniq.size))
    onehot[np.arange(labels.size), inv] = 1.0
    sizes = onehot.sum(axis=0)
    sums = D @ onehot
    own = sizes[inv]
    a = np.where(own > 1, sums[np.arange(labels.size), inv] / np.maximum(own - 1, 1), 0.0)
    mean_other = sums / sizes
    mean_other[np.arange(labels.size), inv] = np.inf
    b = mean_other.min(axis=1)
    denom = np.maximum(a, b)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(denom > 0, (b - a) / denom, 0.0)
    return np.where(own > 1, s, 0.0)


def silhouette_score(X, labels) -> float:
    """Mean silhouette coefficient over all samples."""
    return float(np.mean(silhouette_samples(X, labels)))
