"""Minimal pure-state vector simulator.

Just enough machinery to build the encoded states explicitly: the all-zeros
register, single-qubit R_y rotations, tensor products and inner products.
Qubit 0 is the most significant bit of the basis-state index, so for two
qubits the amplitude order is |00>, |01>, |10>, |11> with qubit 0 on the left.
"""

from dataclasses import dataclass

import numpy as np

MAX_QUBITS = 20
NORM_ATOL = 1e-10


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Normalized complex amplitude vector of an n-qubit pure state.

    The amplitude array is copied on construction and made read-only.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).ravel()
        dim = amps.shape[0]
        if dim < 2 or dim & (dim - 1):
            raise ValueError(f"state dimension must be a power of two >= 2, got {dim}")
        if dim > 2**MAX_QUBITS:
            raise ValueError("qubit count unsupported")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state is not normalized (norm={norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_qubits(self) -> int:
        return self.amplitudes.shape[0].bit_length() - 1

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def __len__(self):
        return self.dim

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def __repr__(self):
        return f"QuantumState(n_qubits={self.n_qubits}, amplitudes={self.amplitudes!r})"


def _check_qubits(n_qubits):
    if not isinstance(n_qubits, (int, np.integer)) or not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(f"qubit count unsupported: {n_qubits!r} (allowed 1..{MAX_QUBITS})")


def zero_state(n_qubits: int) -> QuantumState:
    """Return |0...0> on ``n_qubits`` qubits."""
    _check_qubits(n_qubits)
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[0] = 1.0
    return QuantumState(amps)


def ry_matrix(theta: float) -> np.ndarray:
    """2x2 matrix of a rotation by ``theta`` about the Y axis."""
    if not np.isfinite(theta):
        raise ValueError(f"rotation angle must be finite, got {theta!r}")
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]])


def apply_single_qubit(state: QuantumState, qubit: int, gate: np.ndarray) -> QuantumState:
    """Apply a 2x2 ``gate`` to one qubit of ``state``."""
    n = state.n_qubits
    if not 0 <= qubit < n:
        raise IndexError(f"qubit {qubit} out of range for a {n}-qubit state")
    psi = state.amplitudes.reshape((2,) * n)
    psi = np.tensordot(gate, psi, axes=([1], [qubit]))
    psi = np.moveaxis(psi, 0, qubit)
    return QuantumState(psi.reshape(-1))


def apply_ry(state: QuantumState, qubit: int, angle: float) -> QuantumState:
    """Rotate ``qubit`` of ``state`` by ``angle`` radians about Y."""
    return apply_single_qubit(state, qubit, ry_matrix(angle))


def inner_product(a: QuantumState, b: QuantumState) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def tensor(*states: QuantumState) -> QuantumState:
    """Kronecker product of states; the first argument holds qubit 0."""
    if not states:
        raise ValueError("tensor() needs at least one state")
    amps = states[0].amplitudes
    for s in states[1:]:
        amps = np.kron(amps, s.amplitudes)
    return QuantumState(amps)


def product_state(thetas) -> QuantumState:
    """R_y(theta_0) x ... x R_y(theta_{n-1}) applied to |0...0>, in closed form.

    Each factor is the column (cos(theta/2), sin(theta/2)); this skips the
    gate-by-gate simulation but yields the same amplitudes.
    """
    thetas = np.asarray(thetas, dtype=float).ravel()
    _check_qubits(thetas.size)
    if not np.all(np.isfinite(thetas)):
        raise ValueError("rotation angles must be finite")
    amps = np.ones(1)
    for t in thetas:
        amps = np.kron(amps, [np.cos(t / 2), np.sin(t / 2)])
    return QuantumState(amps)
