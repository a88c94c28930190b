"""Independent oracles shared by the test modules.

Everything here is built from first principles (np.kron chains, explicit
matrix algebra, Jacobi rotations) so it never shares code paths with the
package implementation it checks.
"""

import numpy as np

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"I": I2, "X": SX, "Y": SY, "Z": SZ}


def kron_embed(op, target, n):
    """op acting on one qubit, identity elsewhere; qubit 0 is the leftmost
    (most significant) tensor factor."""
    mat = np.array([[1.0 + 0j]])
    for j in range(n):
        mat = np.kron(mat, op if j == target else I2)
    return mat


def dense_cz(control, target, n):
    size = 2**n
    diag = np.ones(size, dtype=complex)
    for idx in range(size):
        bc = (idx >> (n - 1 - control)) & 1
        bt = (idx >> (n - 1 - target)) & 1
        if bc and bt:
            diag[idx] = -1.0
    return np.diag(diag)


def dense_pauli_word(word):
    mat = np.array([[1.0 + 0j]])
    for c in word:
        mat = np.kron(mat, PAULI[c])
    return mat


def dense_observable(obs):
    """Kron-built matrix of a PauliObservable (independent of to_dense)."""
    size = 2**obs.num_qubits
    mat = np.zeros((size, size), dtype=complex)
    for t in obs.terms:
        mat += t.coefficient * dense_pauli_word(t.ops)
    return mat


def dense_circuit_unitary(spec, params, replacements=None):
    """Full 2^n x 2^n unitary of the ansatz by explicit matrix products."""
    n = spec.num_qubits
    u = np.eye(2**n, dtype=complex)
    for layer in range(1, spec.num_layers + 1):
        for q in range(n):
            site = spec.site_index(layer, q)
            op = None
            if replacements:
                op = replacements.get(site)
            if op is None:
                op = params.gate_matrix(site)
            u = kron_embed(op, q, n) @ u
        for a, b in spec.cz_pairs():
            u = dense_cz(a, b, n) @ u
    return u


def jacobi_min_eig(matrix, sweeps=100):
    """Smallest eigenpair of a small real symmetric matrix via cyclic
    Jacobi rotations (oracle for the eigensolver-backed implementation)."""
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    for _ in range(sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off < 1e-15:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < 1e-18:
                    continue
                theta = 0.5 * np.arctan2(2 * a[p, q], a[q, q] - a[p, p])
                c, s = np.cos(theta), np.sin(theta)
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                v = v @ rot
    idx = int(np.argmin(np.diag(a)))
    return float(a[idx, idx]), v[:, idx]


def random_observable(n, rng, num_terms=5):
    from tgopt import PauliObservable

    num_terms = min(num_terms, 4**n)
    words = set()
    while len(words) < num_terms:
        words.add("".join(rng.choice(list("IXYZ")) for _ in range(n)))
    return PauliObservable(n, [(float(rng.standard_normal()), w) for w in sorted(words)])


def random_state(n, rng):
    from tgopt import StateVector

    amps = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return StateVector(n, amps / np.linalg.norm(amps))
