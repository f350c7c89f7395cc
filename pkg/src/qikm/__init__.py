"""Quantum-inspired k-means: state encodings, fidelity distances, and a benchmark runner."""

from .clustering import ClusteringResult, Init, KMeansConfig, kmeans_run
from .datasets import DatasetError, DatasetId, DatasetSpec, dataset_spec, load
from .distance import DistanceForm, DistanceMode, quantum_distance
from .encoding import EncodingConfig, EncodingKind, OrderingDirection, OrderingStat, minmax_fit_transform
from .metrics import adjusted_rand_index, rand_index, silhouette_score

__all__ = [
    "ClusteringResult", "Init", "KMeansConfig", "kmeans_run",
    "DatasetError", "DatasetId", "DatasetSpec", "dataset_spec", "load",
    "DistanceForm", "DistanceMode", "quantum_distance",
    "EncodingConfig", "EncodingKind", "OrderingDirection", "OrderingStat", "minmax_fit_transform",
    "adjusted_rand_index", "rand_index", "silhouette_score",
]
