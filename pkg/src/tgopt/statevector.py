"""Dense n-qubit statevector simulation.

Basis-index convention: qubit 0 is the most significant bit of the basis
index, so for an n-qubit register the qubit j amplitude stride is
2**(n-1-j). All operations return new states; inputs are never mutated.
"""

from __future__ import annotations

import numpy as np

from . import backend
from .errors import ConfigError

MAX_QUBITS = 20


class StateVector:
    """Complex amplitudes of an n-qubit pure state."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, num_qubits: int, amplitudes: np.ndarray):
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        if amplitudes.shape != (2**num_qubits,):
            raise ValueError(
                f"expected {2**num_qubits} amplitudes for {num_qubits} qubits, "
                f"got shape {amplitudes.shape}"
            )
        self.num_qubits = num_qubits
        self.amplitudes = amplitudes

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy())

    def __repr__(self):
        return f"StateVector(num_qubits={self.num_qubits})"


def init_zero(num_qubits: int) -> StateVector:
    """The all-zeros computational basis state |0...0>."""
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise ConfigError(
            f"num_qubits must be in [1, {MAX_QUBITS}], got {num_qubits}"
        )
    amps = np.zeros(2**num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def apply_1q(state: StateVector, op: np.ndarray, target: int) -> StateVector:
    """Apply a 2x2 operator to the target qubit.

    The operator need not be unitary (coefficient tomography inserts
    non-unitary sums); the output is then unnormalized.
    """
    n = state.num_qubits
    if not 0 <= target < n:
        raise IndexError(f"target qubit {target} out of range for {n} qubits")
    op = np.ascontiguousarray(op, dtype=np.complex128)
    if op.shape != (2, 2):
        raise ValueError(f"expected a 2x2 operator, got shape {op.shape}")
    amps = state.amplitudes.copy()
    backend.kernels.apply_1q_inplace(amps, op, n - 1 - target)
    return StateVector(n, amps)


def apply_cz(state: StateVector, control: int, target: int) -> StateVector:
    """Apply a controlled-Z between two qubits (symmetric in its arguments)."""
    n = state.num_qubits
    if control == target:
        raise IndexError("control and target must differ")
    for q in (control, target):
        if not 0 <= q < n:
            raise IndexError(f"qubit {q} out of range for {n} qubits")
    amps = state.amplitudes.copy()
    backend.kernels.apply_cz_inplace(amps, n - 1 - control, n - 1 - target)
    return StateVector(n, amps)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    if a.num_qubits != b.num_qubits:
        raise ValueError(
            f"qubit counts differ: {a.num_qubits} vs {b.num_qubits}"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))
