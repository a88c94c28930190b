"""Pure-NumPy statevector kernels.

Fallback used when the compiled extension is unavailable; same call
signatures as ``tgopt._kernels``. State arrays are 1-D complex128 of
length 2**n, mutated in place. Bit position 0 is the least significant
bit of the basis index.
"""

import numpy as np

NAME = "python"

# basis-index arrays, cached per state size
_INDEX_CACHE: dict[int, np.ndarray] = {}


def _indices(size: int) -> np.ndarray:
    idx = _INDEX_CACHE.get(size)
    if idx is None:
        idx = np.arange(size, dtype=np.uint64)
        _INDEX_CACHE[size] = idx
    return idx


def apply_1q_inplace(psi: np.ndarray, m: np.ndarray, bit: int) -> None:
    """Apply a 2x2 operator to the qubit living at the given bit position."""
    step = 1 << bit
    view = psi.reshape(-1, 2, step)
    lo = view[:, 0, :].copy()
    hi = view[:, 1, :]
    view[:, 0, :] = m[0, 0] * lo + m[0, 1] * hi
    view[:, 1, :] = m[1, 0] * lo + m[1, 1] * hi


def apply_cz_inplace(psi: np.ndarray, bit_a: int, bit_b: int) -> None:
    """Negate amplitudes of basis states with both qubits set."""
    hi, lo = max(bit_a, bit_b), min(bit_a, bit_b)
    view = psi.reshape(-1, 2, (1 << hi) // (2 << lo), 2, 1 << lo)
    view[:, 1, :, 1, :] *= -1


def pauli_expval(psi: np.ndarray, xflip: int, yzmask: int, num_y: int) -> complex:
    """<psi|P|psi> for the Pauli string encoded by bit masks.

    xflip has a bit set where the string has X or Y, yzmask where it has
    Y or Z, and num_y counts the Y factors. Works for unnormalized psi.
    """
    idx = _indices(psi.shape[0])
    flipped_idx = np.bitwise_xor(idx, np.uint64(xflip))
    signs = np.bitwise_count(np.bitwise_and(flipped_idx, np.uint64(yzmask))) & np.uint8(1)
    terms = psi.conj() * psi[flipped_idx.astype(np.intp)]
    acc = complex(np.sum(np.where(signs, -terms, terms)))
    return acc * (1j) ** (num_y & 3)


def quartic_value_grad(w: np.ndarray, u: np.ndarray, v: np.ndarray,
                       gu: np.ndarray, gv: np.ndarray) -> float:
    """Value and gradient of sum_{mnab} W[m,n,a,b] u_m u_n v_a v_b.

    w is the flattened dim**4 tensor, symmetric in (m,n) and in (a,b);
    gradients are written into gu and gv.
    """
    dim = u.shape[0]
    wt = w.reshape(dim, dim, dim, dim)
    vv = np.outer(v, v)
    c = np.tensordot(wt, vv, axes=([2, 3], [0, 1]))
    gu[:] = 2.0 * (c @ u)
    d = np.tensordot(wt, np.outer(u, u), axes=([0, 1], [0, 1]))
    gv[:] = 2.0 * (d @ v)
    return float(u @ c @ u)


def descend_product_spheres(w: np.ndarray, u: np.ndarray, v: np.ndarray,
                            max_iters: int, grad_tol: float) -> float:
    """Projected-gradient descent of the quartic on the product of unit
    spheres, with Armijo backtracking and retraction by normalization.

    u and v (unit vectors) are updated in place; returns the final value.
    Mirrors the compiled kernel in tgopt._kernels.
    """
    dim = u.shape[0]
    gu, gv = np.empty(dim), np.empty(dim)
    ngu, ngv = np.empty(dim), np.empty(dim)
    f = quartic_value_grad(w, u, v, gu, gv)
    step = 1.0
    for _ in range(max_iters):
        pu = gu - (gu @ u) * u
        pv = gv - (gv @ v) * v
        g2 = float(pu @ pu + pv @ pv)
        if g2 <= grad_tol * grad_tol:
            break
        accepted = False
        for _ in range(60):
            nu = u - step * pu
            nu /= np.linalg.norm(nu)
            nv = v - step * pv
            nv /= np.linalg.norm(nv)
            nf = quartic_value_grad(w, nu, nv, ngu, ngv)
            if nf <= f - 1e-4 * step * g2:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break
        u[:] = nu
        v[:] = nv
        gu, ngu = ngu, gu
        gv, ngv = ngv, gv
        f = nf
        step = min(step * 2.0, 4.0)
    return f
