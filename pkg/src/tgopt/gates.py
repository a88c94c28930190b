"""Single-qubit gate parameterization.

A general rotation exp(-i(theta/2) n.sigma) is encoded as a unit
quaternion q acting through the extended Pauli basis
(I, -iX, -iY, -iZ): the gate matrix is the real linear combination
q0*I + q1*(-iX) + q2*(-iY) + q3*(-iZ). Axis-only gates (rotation angle
fixed to pi) are the q0 = 0 slice, parameterized by a unit 3-vector.
"""

from __future__ import annotations

import math

import numpy as np

_UNIT_TOL = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

# extended basis: identity followed by -i times each Pauli
BASIS = np.stack([
    np.eye(2, dtype=np.complex128),
    -1j * PAULI_X,
    -1j * PAULI_Y,
    -1j * PAULI_Z,
])


def check_unit(vec, dim: int, name: str) -> np.ndarray:
    """Validate and return a unit vector of the given dimension."""
    v = np.asarray(vec, dtype=np.float64)
    if v.shape != (dim,):
        raise ValueError(f"{name} must have {dim} components, got shape {v.shape}")
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > _UNIT_TOL:
        raise ValueError(f"{name} must be unit norm, got |v| = {norm}")
    return v / norm


def gate_from_quaternion(q) -> np.ndarray:
    """SU(2) matrix of a unit quaternion: the real combination q . basis."""
    q = check_unit(q, 4, "quaternion")
    return np.tensordot(q, BASIS, axes=(0, 0))


def gate_from_axis(axis) -> np.ndarray:
    """Pi rotation about a unit axis: -i (n . sigma), the (0, n) quaternion."""
    n = check_unit(axis, 3, "axis")
    return np.tensordot(n, BASIS[1:], axes=(0, 0))


def basis_op(idx: int) -> np.ndarray:
    """Element of the extended Pauli basis (0 -> I, j -> -i sigma_j)."""
    if idx not in (0, 1, 2, 3):
        raise ValueError(f"basis index must be 0..3, got {idx}")
    return BASIS[idx].copy()


def basis_sum_op(i: int, j: int) -> np.ndarray:
    """Normalized sum (basis_i + basis_j)/sqrt(2) used for mixed-term tomography.

    Distinct basis elements are orthogonal as quaternions, so the sum is
    itself a unit-quaternion gate.
    """
    if i == j:
        raise ValueError("basis_sum_op requires two distinct indices")
    return (basis_op(i) + basis_op(j)) / math.sqrt(2.0)


def canonical_sign(vec: np.ndarray) -> np.ndarray:
    """Flip the sign so the first nonzero component is positive.

    q and -q produce the same physical gate; the canonical representative
    keeps logs and regression fixtures stable.
    """
    for x in vec:
        if x != 0.0:
            return -vec if x < 0.0 else vec
    return vec


def random_unit_quaternion(rng: np.random.Generator) -> np.ndarray:
    """Uniform sample on the 3-sphere (normalized standard Gaussians)."""
    return _random_unit(rng, 4)


def random_unit_axis(rng: np.random.Generator) -> np.ndarray:
    """Uniform sample on the 2-sphere (normalized standard Gaussians)."""
    return _random_unit(rng, 3)


def _random_unit(rng: np.random.Generator, dim: int) -> np.ndarray:
    while True:
        v = rng.standard_normal(dim)
        norm = np.linalg.norm(v)
        if norm > 1e-12:
            return v / norm
