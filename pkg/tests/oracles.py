"""Slow, definition-level reference implementations used only by the tests.

Nothing here imports the library's numerical code, so a bug in the library
cannot hide behind the same bug in its oracle.
"""

import itertools
import math
from fractions import Fraction

import numpy as np


def ry(theta):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]])


def full_gate(gate, qubit, n):
    """2**n x 2**n operator acting with ``gate`` on ``qubit`` (qubit 0 = leftmost factor)."""
    op = np.array([[1.0]])
    for q in range(n):
        op = np.kron(op, gate if q == qubit else np.eye(2))
    return op


def zero_vector(n):
    v = np.zeros(2**n)
    v[0] = 1.0
    return v


def angle_state(diff):
    """Gate-by-gate R_y((d + 1) pi / 2) on every qubit of |0...0>."""
    n = len(diff)
    v = zero_vector(n)
    for q, d in enumerate(diff):
        v = full_gate(ry((d + 1) * math.pi / 2), q, n) @ v
    return v


def amplitude_state(x):
    x = np.asarray(x, dtype=float)
    x = x / np.max(np.abs(x))
    n = max(1, math.ceil(math.log2(len(x)))) if len(x) > 1 else 1
    v = np.zeros(2**n)
    v[: len(x)] = x
    return v / math.sqrt(sum(t * t for t in x))


def overlap2(a, b):
    return abs(sum(complex(p).conjugate() * complex(q) for p, q in zip(a, b))) ** 2


def pair_counts(true, pred):
    """(a, b, total) by looping over every unordered pair."""
    a = b = 0
    n = len(true)
    for i, j in itertools.combinations(range(n), 2):
        same_t = true[i] == true[j]
        same_p = pred[i] == pred[j]
        if same_t and same_p:
            a += 1
        elif not same_t and not same_p:
            b += 1
    return a, b, n * (n - 1) // 2


def rand_index(true, pred):
    a, b, total = pair_counts(true, pred)
    return Fraction(a + b, total)


def ari(true, pred):
    """Hubert-Arabie ARI from explicit pair enumeration, as an exact Fraction."""
    n = len(true)
    pairs = list(itertools.combinations(range(n), 2))
    both = sum(1 for i, j in pairs if true[i] == true[j] and pred[i] == pred[j])
    st = sum(1 for i, j in pairs if true[i] == true[j])
    sp = sum(1 for i, j in pairs if pred[i] == pred[j])
    total = len(pairs)
    expected = Fraction(st * sp, total)
    maximum = Fraction(st + sp, 2)
    if maximum == expected:
        return Fraction(1)
    return (both - expected) / (maximum - expected)


def silhouette(X, labels):
    """Triple loop over samples, clusters and members."""
    X = [list(map(float, r)) for r in X]
    labels = list(labels)
    n = len(X)
    clusters = sorted(set(labels))

    def dist(i, j):
        return math.sqrt(sum((p - q) ** 2 for p, q in zip(X[i], X[j])))

    scores = []
    for i in range(n):
        own = [j for j in range(n) if labels[j] == labels[i] and j != i]
        if not own:
            scores.append(0.0)
            continue
        a = sum(dist(i, j) for j in own) / len(own)
        b = math.inf
        for c in clusters:
            if c == labels[i]:
                continue
            members = [j for j in range(n) if labels[j] == c]
            b = min(b, sum(dist(i, j) for j in members) / len(members))
        m = max(a, b)
        scores.append(0.0 if m == 0 else (b - a) / m)
    return sum(scores) / n


def trace_distance_eig(psi, phi):
    """Half the sum of |eigenvalues| of |psi><psi| - |phi><phi|."""
    psi = np.asarray(psi, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    delta = np.outer(psi, psi.conj()) - np.outer(phi, phi.conj())
    return 0.5 * np.abs(np.linalg.eigvalsh(delta)).sum()
