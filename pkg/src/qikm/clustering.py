"""Lloyd-style k-means with a pluggable assignment distance.

Centroids are always classical means of their members; only the assignment
metric and the seeding change between classical and quantum-inspired runs.
Termination uses a patience counter: the centroid shift must stay below
``tol`` for ``patience`` consecutive iterations, and any larger shift resets
the count.
"""

import enum
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .distance import DistanceForm, DistanceMode, distance_matrix
from .encoding import EncodingConfig, EncodingKind, ScaledDataset, feature_stats, select_hybrid_pair


class Init(enum.Enum):
    RANDOM = "random"
    QUANTUM_INSPIRED = "quantum"


_MODE_TO_KIND = {
    DistanceMode.QUANTUM_ANGLE: EncodingKind.ANGLE,
    DistanceMode.QUANTUM_AMPLITUDE: EncodingKind.AMPLITUDE,
    DistanceMode.QUANTUM_HYBRID: EncodingKind.HYBRID,
}


@dataclass(frozen=True)
class KMeansConfig:
    k: int
    max_iter: int = 300
    patience: int = 3
    tol: float = 1e-4
    mode: DistanceMode = DistanceMode.CLASSICAL_EUCLIDEAN
    encoding: EncodingConfig = field(default_factory=EncodingConfig)
    distance_form: DistanceForm = DistanceForm.WEIGHTED
    seed: int = 0
    init: Init = Init.QUANTUM_INSPIRED
    # overrides the statistics-based choice when set
    hybrid_pair: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be positive, got {self.k}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be positive, got {self.max_iter}")
        if self.patience < 1:
            raise ValueError(f"patience must be >= 1, got {self.patience}")
        if not self.tol > 0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        kind = _MODE_TO_KIND.get(self.mode)
        if kind is not None and self.encoding.kind is not kind:
            # keep the two descriptions of the encoding consistent
            object.__setattr__(self, "encoding", EncodingConfig(
                kind, self.encoding.ordering_stat, self.encoding.ordering_direction))


@dataclass
class ClusteringResult:
    assignments: np.ndarray
    centroids: np.ndarray
    n_iterations: int
    sse_trace: List[float]
    converged: bool
    hybrid_pair: Optional[Tuple[int, int]] = None

    @property
    def sse(self) -> float:
        return self.sse_trace[-1] if self.sse_trace else float("nan")


def _rows(data):
    return data.rows if isinstance(data, ScaledDataset) else np.asarray(data, dtype=float)


def resolve_pair(data, cfg: KMeansConfig) -> Optional[Tuple[int, int]]:
    """Feature pair for hybrid mode: the config override or the stats ranking."""
    if cfg.mode is not DistanceMode.QUANTUM_HYBRID:
        return None
    if cfg.hybrid_pair is not None:
        return tuple(cfg.hybrid_pair)
    if not isinstance(data, ScaledDataset):
        X = _rows(data)
        data = ScaledDataset(rows=X, labels=np.zeros(len(X), int),
                             feature_names=tuple(f"f{i}" for i in range(X.shape[1])),
                             per_feature_min=X.min(axis=0), per_feature_max=X.max(axis=0))
    return select_hybrid_pair(feature_stats(data), cfg.encoding)


def assign_clusters(data, centroids, cfg: KMeansConfig, pair=None) -> np.ndarray:
    """Index of the nearest centroid for every row; ties go to the lower index."""
    X = _rows(data)
    C = np.atleast_2d(np.asarray(centroids, dtype=float))
    if C.shape[0] == 0 or C.shape[1] != X.shape[1]:
        raise ValueError(f"centroids of shape {C.shape} do not match data with {X.shape[1]} features")
    if pair is None:
        pair = resolve_pair(data, cfg)
    D = distance_matrix(X, C, cfg.mode, cfg.distance_form, pair)
    return np.argmin(D, axis=1)


def update_centroids(data, assignments, k: int, previous) -> np.ndarray:
    """Member means; an empty cluster keeps its previous centroid."""
    X = _rows(data)
    labels = np.asarray(assignments)
    out = np.array(previous, dtype=float, copy=True)
    counts = np.bincount(labels, minlength=k)
    sums = np.zeros((k, X.shape[1]))
    np.add.at(sums, labels, X)
    nonempty = counts > 0
    out[nonempty] = sums[nonempty] / counts[nonempty, None]
    return out


def sse(data, assignments, centroids) -> float:
    """Within-cluster sum of squared Euclidean distances."""
    X = _rows(data)
    C = np.asarray(centroids, dtype=float)
    return float(((X - C[np.asarray(assignments)]) ** 2).sum())


def random_init(data, k: int, rng) -> np.ndarray:
    X = _rows(data)
    if k > X.shape[0]:
        raise ValueError(f"k={k} exceeds the {X.shape[0]} available rows")
    return X[rng.choice(X.shape[0], size=k, replace=False)].copy()


def quantum_inspired_init(data, cfg: KMeansConfig, rng, pair=None) -> np.ndarray:
    """Seed centroids by distance-weighted sampling of data rows.

    The first centroid is a uniformly random row. Each further centroid is
    drawn with probability proportional to the squared configured distance
    from a row to its nearest chosen centroid. Rows equal to an already
    chosen row get weight zero; if every remaining weight is zero the draw
    falls back to uniform over the remaining rows.
    """
    X = _rows(data)
    n = X.shape[0]
    k = cfg.k
    if k > n:
        raise ValueError(f"k={k} exceeds the {n} available rows")
    if pair is None:
        pair = resolve_pair(data, cfg)
    chosen = [int(rng.integers(n))]
    taken = np.all(X == X[chosen[0]], axis=1)
    nearest = distance_matrix(X, X[chosen], cfg.mode, cfg.distance_form, pair)[:, 0]
    while len(chosen) < k:
        w = np.where(taken, 0.0, nearest**2)
        total = w.sum()
        if not np.isfinite(total) or total <= 0:
            pool = np.flatnonzero(~taken)
            if pool.size == 0:
                pool = np.setdiff1d(np.arange(n), chosen)
            idx = int(rng.choice(pool))
        else:
            idx = int(rng.choice(n, p=w / total))
        chosen.append(idx)
        taken |= np.all(X == X[idx], axis=1)
        d_new = distance_matrix(X, X[idx:idx + 1], cfg.mode, cfg.distance_form, pair)[:, 0]
        nearest = np.minimum(nearest, d_new)
    return X[chosen].copy()


def initial_centroids(data, cfg: KMeansConfig, rng=None, pair=None) -> np.ndarray:
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    if cfg.init is Init.RANDOM:
        return random_init(data, cfg.k, rng)
    return quantum_inspired_init(data, cfg, rng, pair)


def kmeans_run(data, cfg: KMeansConfig, init_centroids=None) -> ClusteringResult:
    """Alternate assignment and update until the patience rule or ``max_iter``.

    ``n_iterations`` counts completed assign/update rounds. The returned
    assignments come from the last assignment phase and the centroids from
    the update that followed it.
    """
    X = _rows(data)
    if cfg.k > X.shape[0]:
        raise ValueError(f"k={cfg.k} exceeds the {X.shape[0]} available rows")
    pair = resolve_pair(data, cfg)
    if init_centroids is None:
        centroids = initial_centroids(data, cfg, np.random.default_rng(cfg.seed), pair)
    else:
        centroids = np.array(init_centroids, dtype=float)
        if centroids.shape != (cfg.k, X.shape[1]):
            raise ValueError(f"initial centroids must have shape {(cfg.k, X.shape[1])}")

    trace = []
    streak = 0
    converged = False
    labels = None
    it = 0
    for it in range(1, cfg.max_iter + 1):
        labels = assign_clusters(X, centroids, cfg, pair)
        updated = update_centroids(X, labels, cfg.k, centroids)
        shift = float(np.max(np.linalg.norm(updated - centroids, axis=1)))
        centroids = updated
        trace.append(sse(X, labels, centroids))
        streak = streak + 1 if shift < cfg.tol else 0
        if streak >= cfg.patience:
            converged = True
            break
    return ClusteringResult(
        assignments=labels,
        centroids=centroids,
        n_iterations=it,
        sse_trace=trace,
        converged=converged,
        hybrid_pair=pair,
    )
