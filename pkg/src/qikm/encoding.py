"""Min-max scaling, the three state encodings, and hybrid feature ordering."""

import enum
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .qstate import MAX_QUBITS, QuantumState, product_state, tensor

DIFF_ATOL = 1e-9


@dataclass(frozen=True, eq=False)
class RawDataset:
    """Feature matrix (n samples x M features) with integer class labels."""

    rows: np.ndarray
    labels: np.ndarray
    feature_names: Tuple[str, ...]
    name: str = ""

    def __post_init__(self):
        rows = np.array(self.rows, dtype=float)
        if rows.ndim != 2:
            raise ValueError(f"rows must be 2-D, got shape {rows.shape}")
        labels = np.array(self.labels, dtype=int).ravel()
        if labels.shape[0] != rows.shape[0]:
            raise ValueError(f"{labels.shape[0]} labels for {rows.shape[0]} rows")
        if np.isnan(rows).any():
            raise ValueError(f"{self.name or 'dataset'}: NaN in feature matrix")
        names = tuple(self.feature_names)
        if len(names) != rows.shape[1]:
            raise ValueError(f"{len(names)} feature names for {rows.shape[1]} columns")
        rows.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "feature_names", names)

    @property
    def n_samples(self) -> int:
        return self.rows.shape[0]

    @property
    def n_features(self) -> int:
        return self.rows.shape[1]

    @property
    def n_classes(self) -> int:
        return len(np.unique(self.labels))


@dataclass(frozen=True, eq=False)
class ScaledDataset(RawDataset):
    """A dataset whose columns were min-max scaled into [0, 1].

    ``per_feature_min`` / ``per_feature_max`` hold the pre-scaling column
    extremes, so ``per_feature_max - per_feature_min`` is the raw spread.
    """

    per_feature_min: np.ndarray = field(default=None)
    per_feature_max: np.ndarray = field(default=None)

    def __post_init__(self):
        super().__post_init__()
        m = self.rows.shape[1]
        lo = np.zeros(m) if self.per_feature_min is None else np.array(self.per_feature_min, float)
        hi = np.ones(m) if self.per_feature_max is None else np.array(self.per_feature_max, float)
        if lo.shape != (m,) or hi.shape != (m,):
            raise ValueError("per-feature min/max must have one entry per feature")
        if np.any(hi < lo):
            raise ValueError("per_feature_max must be >= per_feature_min")
        if self.rows.size and (self.rows.min() < -1e-12 or self.rows.max() > 1 + 1e-12):
            raise ValueError("scaled rows must lie in [0, 1]")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "per_feature_min", lo)
        object.__setattr__(self, "per_feature_max", hi)

    @property
    def spread(self) -> np.ndarray:
        return self.per_feature_max - self.per_feature_min


def minmax_scale(X):
    """Scale each column of ``X`` into [0, 1].

    Returns ``(scaled, col_min, col_max)``. Constant columns map to 0.
    """
    X = np.asarray(X, dtype=float)
    lo = X.min(axis=0)
    hi = X.max(axis=0)
    span = hi - lo
    safe = np.where(span > 0, span, 1.0)
    scaled = np.where(span > 0, (X - lo) / safe, 0.0)
    return np.clip(scaled, 0.0, 1.0), lo, hi


def minmax_fit_transform(raw: RawDataset) -> ScaledDataset:
    if raw.n_samples < 1 or raw.n_features < 1:
        raise ValueError("need at least one sample and one feature")
    scaled, lo, hi = minmax_scale(raw.rows)
    return ScaledDataset(
        rows=scaled,
        labels=raw.labels,
        feature_names=raw.feature_names,
        name=raw.name,
        per_feature_min=lo,
        per_feature_max=hi,
    )


# --- angle encoding -------------------------------------------------------

def theta_from_diff(d: float) -> float:
    """Map a scaled difference d in [-1, 1] to the rotation (d + 1) * pi / 2."""
    d = float(d)
    if not abs(d) <= 1 + DIFF_ATOL:
        raise ValueError(f"unscaled difference: {d!r} is outside [-1, 1]")
    d = min(1.0, max(-1.0, d))
    return (d + 1.0) * math.pi / 2


def thetas_from_diff(diff) -> np.ndarray:
    """Vectorized :func:`theta_from_diff`."""
    diff = np.asarray(diff, dtype=float)
    if diff.size and not np.all(np.abs(diff) <= 1 + DIFF_ATOL):
        bad = diff[~(np.abs(diff) <= 1 + DIFF_ATOL)].ravel()[0]
        raise ValueError(f"unscaled difference: {bad!r} is outside [-1, 1]")
    return (np.clip(diff, -1.0, 1.0) + 1.0) * (np.pi / 2)


def encode_angle(diff) -> QuantumState:
    """Product state with one R_y-rotated qubit per component of ``diff``."""
    diff = np.atleast_1d(np.asarray(diff, dtype=float))
    if diff.size > MAX_QUBITS:
        raise ValueError(f"{diff.size} features exceed the {MAX_QUBITS}-qubit cap")
    return product_state(thetas_from_diff(diff))


# --- amplitude encoding ---------------------------------------------------

def n_qubits_for(m: int) -> int:
    """Qubits needed to hold ``m`` amplitudes (at least one)."""
    return max(1, math.ceil(math.log2(m))) if m > 1 else 1


def encode_amplitude(v) -> QuantumState:
    """Zero-pad ``v`` to the next power of two and L2-normalize it."""
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if v.size < 1:
        raise ValueError("cannot amplitude-encode an empty vector")
    peak = np.max(np.abs(v))
    if peak == 0:
        raise ValueError("unencodable zero vector")
    # rescale first so tiny entries do not underflow in the norm
    v = v / peak
    norm = np.linalg.norm(v)
    n = n_qubits_for(v.size)
    if n > MAX_QUBITS:
        raise ValueError(f"{v.size} amplitudes exceed the {MAX_QUBITS}-qubit cap")
    padded = np.zeros(2**n)
    padded[: v.size] = v / norm
    return QuantumState(padded)


# --- hybrid encoding ------------------------------------------------------

class EncodingKind(enum.Enum):
    ANGLE = "angle"
    AMPLITUDE = "amplitude"
    HYBRID = "hybrid"


class OrderingStat(enum.Enum):
    SPREAD = "spread"
    SKEWNESS = "skewness"
    KURTOSIS = "kurtosis"


class OrderingDirection(enum.Enum):
    ASCENDING = "ascending"
    DESCENDING = "descending"


@dataclass(frozen=True)
class EncodingConfig:
    kind: EncodingKind = EncodingKind.ANGLE
    # only consulted for hybrid encoding
    ordering_stat: OrderingStat = OrderingStat.KURTOSIS
    ordering_direction: OrderingDirection = OrderingDirection.ASCENDING


@dataclass(frozen=True)
class FeatureStats:
    spread: float
    variance: float
    skewness: float
    kurtosis: float


def _moments(col):
    col = np.asarray(col, dtype=float)
    centred = col - col.mean()
    m2 = np.mean(centred**2)
    m3 = np.mean(centred**3)
    m4 = np.mean(centred**4)
    return m2, m3, m4


def feature_stats(scaled: ScaledDataset) -> List[FeatureStats]:
    """Per-feature spread (raw units) and population moments of scaled values.

    Skewness is m3 / m2**1.5 and kurtosis is the excess m4 / m2**2 - 3, both
    without small-sample correction. A constant column gets 0 for both.
    """
    if scaled.n_samples < 4:
        raise ValueError(f"feature statistics need at least 4 samples, got {scaled.n_samples}")
    out = []
    for j in range(scaled.n_features):
        m2, m3, m4 = _moments(scaled.rows[:, j])
        # constant column, or variance so small that m2**2 underflows
        if m2**2 == 0:
            skew = kurt = 0.0
        else:
            skew = m3 / m2**1.5
            kurt = m4 / m2**2 - 3.0
        out.append(FeatureStats(
            spread=float(scaled.spread[j]),
            variance=float(m2),
            skewness=float(skew),
            kurtosis=float(kurt),
        ))
    return out


def select_hybrid_pair(stats: Sequence[FeatureStats], config: EncodingConfig) -> Tuple[int, int]:
    """Indices of the two features ranked first by the configured statistic.

    Ties go to the lower feature index.
    """
    if len(stats) < 3:
        raise ValueError(f"hybrid requires >=3 features, got {len(stats)}")
    key = config.ordering_stat.value
    values = [getattr(s, key) for s in stats]
    sign = 1 if config.ordering_direction is OrderingDirection.ASCENDING else -1
    order = sorted(range(len(values)), key=lambda i: (sign * values[i], i))
    return order[0], order[1]


def split_pair(x, pair):
    """Return ``(x[pair], x without the pair components)``."""
    x = np.asarray(x, dtype=float)
    p0, p1 = pair
    if p0 == p1:
        raise ValueError("hybrid pair indices must be distinct")
    mask = np.ones(x.shape[-1], dtype=bool)
    mask[[p0, p1]] = False
    return x[..., [p0, p1]], x[..., mask]


def encode_hybrid(x, pair, diff) -> QuantumState:
    """One amplitude-encoded qubit for ``x[pair]`` followed by angle qubits for ``diff``.

    ``diff`` is the difference vector of the M - 2 features outside the pair.
    With M = 2 (empty ``diff``) the result is the single pair qubit.
    """
    x = np.asarray(x, dtype=float)
    p0, p1 = pair
    if p0 == p1 or not (0 <= p0 < x.size and 0 <= p1 < x.size):
        raise ValueError(f"invalid hybrid pair {pair!r} for {x.size} features")
    diff = np.asarray(diff, dtype=float).ravel()
    if diff.size != x.size - 2:
        raise ValueError(f"expected {x.size - 2} difference components, got {diff.size}")
    head = encode_amplitude([x[p0], x[p1]])
    if diff.size == 0:
        return head
    return tensor(head, encode_angle(diff))
