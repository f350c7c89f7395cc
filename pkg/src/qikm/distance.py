"""State fidelities, fidelity-derived distances, and the assignment metric.

Every closed-form fidelity here has an explicit-statevector counterpart
(:func:`fidelity_oracle` on the encoded states) that the tests compare
against. The matrix variants evaluate all (point, centroid) pairs at once and
are what the clustering loop uses.
"""

import enum
from typing import Optional, Tuple

import numpy as np

from .encoding import split_pair, thetas_from_diff
from .qstate import QuantumState, inner_product


class DistanceMode(enum.Enum):
    CLASSICAL_EUCLIDEAN = "classical"
    QUANTUM_ANGLE = "angle"
    QUANTUM_AMPLITUDE = "amplitude"
    QUANTUM_HYBRID = "hybrid"

    @property
    def is_quantum(self) -> bool:
        return self is not DistanceMode.CLASSICAL_EUCLIDEAN


class DistanceForm(enum.Enum):
    """How a fidelity F and Euclidean distance d combine into a distance.

    WEIGHTED        2 * F * d (the default)
    WEIGHTED_DISSIM 2 * (1 - F) * d
    BURES           sqrt(2 - 2 sqrt(F))
    TRACE           sqrt(1 - F)
    """

    WEIGHTED = "weighted"
    WEIGHTED_DISSIM = "weighted_dissim"
    BURES = "bures"
    TRACE = "trace"


def clamp_fidelity(f):
    """Clip round-off excursions into [0, 1]."""
    out = np.clip(f, 0.0, 1.0)
    return float(out) if np.ndim(out) == 0 else out


def _pair_vectors(x, c):
    x = np.asarray(x, dtype=float).ravel()
    c = np.asarray(c, dtype=float).ravel()
    if x.shape != c.shape:
        raise ValueError(f"length mismatch: {x.size} vs {c.size}")
    return x, c


# --- closed-form fidelities ------------------------------------------------

def fidelity_angle(x, c) -> float:
    """|<0...0| encode_angle(x - c)>|^2 = prod_k cos^2(theta_k / 2)."""
    x, c = _pair_vectors(x, c)
    thetas = thetas_from_diff(x - c)
    return clamp_fidelity(np.prod(np.cos(thetas / 2) ** 2))


def _rescale(v):
    # divide rows by their largest magnitude so squared norms cannot underflow
    v = np.asarray(v, dtype=float)
    peak = np.max(np.abs(v), axis=-1, keepdims=True) if v.size else np.ones(v.shape[:-1] + (1,))
    return v / np.where(peak > 0, peak, 1.0)


def _cos2_similarity(dot, nx2, nc2):
    # Zero-vector rule: two zero vectors are identical, one zero vector is
    # orthogonal to everything else.
    zx = nx2 == 0
    zc = nc2 == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        f = dot**2 / (nx2 * nc2)
    f = np.where(zx | zc, np.where(zx & zc, 1.0, 0.0), f)
    return clamp_fidelity(f)


def fidelity_amplitude(x, c) -> float:
    """Squared cosine similarity (x.c)^2 / (|x|^2 |c|^2)."""
    x, c = _pair_vectors(x, c)
    x, c = _rescale(x), _rescale(c)
    return clamp_fidelity(_cos2_similarity(x @ c, x @ x, c @ c))


def fidelity_hybrid(x, c, pair) -> float:
    """Pair-qubit amplitude fidelity times angle fidelity of the other features."""
    x, c = _pair_vectors(x, c)
    xp, xr = split_pair(x, pair)
    cp, cr = split_pair(c, pair)
    head = fidelity_amplitude(xp, cp)
    if xr.size == 0:
        return head
    return clamp_fidelity(head * fidelity_angle(xr, cr))


def fidelity_oracle(a: QuantumState, b: QuantumState) -> float:
    """|<a|b>|^2 from explicit state vectors."""
    return clamp_fidelity(abs(inner_product(a, b)) ** 2)


# --- fidelity -> distance maps ------------------------------------------

def swap_test_p0(f: float) -> float:
    """Probability that a swap-test ancilla reads 0: (1 + F) / 2."""
    return (1.0 + clamp_fidelity(f)) / 2.0


def bures_distance(f):
    """sqrt(2 - 2 sqrt(F)), in [0, sqrt(2)]."""
    f = clamp_fidelity(f)
    return np.sqrt(np.maximum(2.0 - 2.0 * np.sqrt(f), 0.0))


def trace_distance_pure(f):
    """Trace distance between pure states, sqrt(1 - F), in [0, 1]."""
    f = clamp_fidelity(f)
    return np.sqrt(np.maximum(1.0 - f, 0.0))


def euclidean_distance(x, c) -> float:
    x, c = _pair_vectors(x, c)
    return float(np.linalg.norm(x - c))


def combine(f, d, form: DistanceForm):
    """Turn fidelity ``f`` and Euclidean distance ``d`` into a distance."""
    if form is DistanceForm.WEIGHTED:
        return 2.0 * f * d
    if form is DistanceForm.WEIGHTED_DISSIM:
        return 2.0 * (1.0 - f) * d
    if form is DistanceForm.BURES:
        return bures_distance(f)
    if form is DistanceForm.TRACE:
        return trace_distance_pure(f)
    raise ValueError(f"unknown distance form {form!r}")


def fidelity(x, c, mode: DistanceMode, pair: Optional[Tuple[int, int]] = None) -> float:
    if mode is DistanceMode.QUANTUM_ANGLE:
        return fidelity_angle(x, c)
    if mode is DistanceMode.QUANTUM_AMPLITUDE:
        return fidelity_amplitude(x, c)
    if mode is DistanceMode.QUANTUM_HYBRID:
        if pair is None:
            raise ValueError("hybrid mode needs a feature pair")
        return fidelity_hybrid(x, c, pair)
    raise ValueError(f"{mode} has no fidelity")


def quantum_distance(x, c, mode: DistanceMode, pair=None,
                     form: DistanceForm = DistanceForm.WEIGHTED) -> float:
    """Distance between scaled vectors under a quantum ``mode``.

    With the default form this is 2 * F(x, c) * |x - c|. It is not symmetric
    for angle-based modes because F depends on the sign of x - c.
    """
    if not mode.is_quantum:
        raise ValueError("quantum_distance needs a quantum mode")
    f = fidelity(x, c, mode, pair)
    return float(combine(f, euclidean_distance(x, c), form))


# --- all-pairs versions used by the clustering loop ----------------------

def euclidean_matrix(X, C) -> np.ndarray:
    """(n, k) Euclidean distances between rows of X and rows of C."""
    X = np.asarray(X, dtype=float)
    C = np.asarray(C, dtype=float)
    return np.sqrt(((X[:, None, :] - C[None, :, :]) ** 2).sum(axis=2))


def _angle_matrix(X, C):
    D = X[:, None, :] - C[None, :, :]
    half = thetas_from_diff(D) / 2
    return np.prod(np.cos(half) ** 2, axis=2)


def _amplitude_matrix(X, C):
    X, C = _rescale(X), _rescale(C)
    return _cos2_similarity(X @ C.T, (X * X).sum(1)[:, None], (C * C).sum(1)[None, :])


def fidelity_matrix(X, C, mode: DistanceMode, pair=None) -> np.ndarray:
    """(n, k) fidelities between data rows and centroids."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    C = np.atleast_2d(np.asarray(C, dtype=float))
    if X.shape[1] != C.shape[1]:
        raise ValueError(f"feature mismatch: {X.shape[1]} vs {C.shape[1]}")
    if mode is DistanceMode.QUANTUM_ANGLE:
        F = _angle_matrix(X, C)
    elif mode is DistanceMode.QUANTUM_AMPLITUDE:
        F = _amplitude_matrix(X, C)
    elif mode is DistanceMode.QUANTUM_HYBRID:
        if pair is None:
            raise ValueError("hybrid mode needs a feature pair")
        Xp, Xr = split_pair(X, pair)
        Cp, Cr = split_pair(C, pair)
        F = _amplitude_matrix(Xp, Cp)
        if Xr.shape[1]:
            F = F * _angle_matrix(Xr, Cr)
    else:
        raise ValueError(f"{mode} has no fidelity")
    return np.clip(F, 0.0, 1.0)


def distance_matrix(X, C, mode: DistanceMode, form: DistanceForm = DistanceForm.WEIGHTED,
                    pair=None) -> np.ndarray:
    """(n, k) assignment distances from each row of X to each centroid."""
    E = euclidean_matrix(X, C)
    if not mode.is_quantum:
        return E
    return combine(fidelity_matrix(X, C, mode, pair), E, form)
