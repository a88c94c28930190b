# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled statevector kernels.

Same call signatures as ``tgopt._kernels_py``; the backend module picks
whichever is available. All state arrays are 1-D C-contiguous complex128
of length 2**n, mutated in place. Bit position 0 is the least significant
bit of the basis index.
"""

cdef extern from *:
    """
    #include <stdint.h>
    static inline int tgopt_popcount64(uint64_t x) { return __builtin_popcountll(x); }
    """
    int tgopt_popcount64(unsigned long long x) nogil

NAME = "compiled"


def apply_1q_inplace(double complex[::1] psi, double complex[:, ::1] m,
                     Py_ssize_t bit):
    """Apply a 2x2 operator to the qubit living at the given bit position."""
    cdef Py_ssize_t step = 1 << bit
    cdef Py_ssize_t low_mask = step - 1
    cdef Py_ssize_t num_pairs = psi.shape[0] >> 1
    cdef Py_ssize_t p, lo, hi
    cdef double complex m00 = m[0, 0], m01 = m[0, 1], m10 = m[1, 0], m11 = m[1, 1]
    cdef double complex a, b
    with nogil:
        for p in range(num_pairs):
            lo = ((p & ~low_mask) << 1) | (p & low_mask)
            hi = lo | step
            a = psi[lo]
            b = psi[hi]
            psi[lo] = m00 * a + m01 * b
            psi[hi] = m10 * a + m11 * b


def apply_cz_inplace(double complex[::1] psi, Py_ssize_t bit_a, Py_ssize_t bit_b):
    """Negate amplitudes of basis states with both qubits set."""
    cdef unsigned long long mask = (1ULL << bit_a) | (1ULL << bit_b)
    cdef Py_ssize_t size = psi.shape[0]
    cdef Py_ssize_t j
    with nogil:
        for j in range(size):
            if (<unsigned long long> j & mask) == mask:
                psi[j] = -psi[j]


def pauli_expval(double complex[::1] psi, unsigned long long xflip,
                 unsigned long long yzmask, int num_y):
    """<psi|P|psi> for the Pauli string encoded by bit masks.

    xflip has a bit set where the string has X or Y, yzmask where it has
    Y or Z, and num_y counts the Y factors. Works for unnormalized psi.
    """
    cdef Py_ssize_t size = psi.shape[0]
    cdef Py_ssize_t j
    cdef unsigned long long jf
    cdef double complex acc = 0
    cdef double complex term
    with nogil:
        for j in range(size):
            jf = (<unsigned long long> j) ^ xflip
            term = psi[j].conjugate() * psi[<Py_ssize_t> jf]
            if tgopt_popcount64(jf & yzmask) & 1:
                acc -= term
            else:
                acc += term
    cdef int r = num_y & 3
    if r == 0:
        return complex(acc)
    if r == 1:
        return complex(acc * 1j)
    if r == 2:
        return complex(-acc)
    return complex(acc * -1j)


cdef double _qvg(const double* w, const double* u, const double* v,
                 double* gu, double* gv, Py_ssize_t dim) nogil:
    cdef Py_ssize_t m, n, a, b
    cdef double cmn, dab, value = 0.0
    for m in range(dim):
        gu[m] = 0.0
        gv[m] = 0.0
    for m in range(dim):
        for n in range(dim):
            cmn = 0.0
            for a in range(dim):
                for b in range(dim):
                    cmn += w[((m * dim + n) * dim + a) * dim + b] * v[a] * v[b]
            value += u[m] * u[n] * cmn
            gu[m] += 2.0 * u[n] * cmn
    for a in range(dim):
        for b in range(dim):
            dab = 0.0
            for m in range(dim):
                for n in range(dim):
                    dab += w[((m * dim + n) * dim + a) * dim + b] * u[m] * u[n]
            gv[a] += 2.0 * v[b] * dab
    return value


def quartic_value_grad(double[::1] w, double[::1] u, double[::1] v,
                       double[::1] gu, double[::1] gv):
    """Value and gradient of sum_{mnab} W[m,n,a,b] u_m u_n v_a v_b.

    w is the flattened dim**4 tensor, symmetric in (m,n) and in (a,b);
    gradients are written into gu and gv.
    """
    cdef Py_ssize_t dim = u.shape[0]
    cdef double value
    with nogil:
        value = _qvg(&w[0], &u[0], &v[0], &gu[0], &gv[0], dim)
    return value


def descend_product_spheres(double[::1] w, double[::1] u, double[::1] v,
                            Py_ssize_t max_iters, double grad_tol):
    """Projected-gradient descent of the quartic on the product of unit
    spheres, with Armijo backtracking and retraction by normalization.

    u and v (unit vectors, dim <= 4) are updated in place; returns the
    final value. Mirrors the fallback in tgopt._kernels_py.
    """
    cdef Py_ssize_t dim = u.shape[0]
    if dim > 4:
        raise ValueError("descent kernel supports dim <= 4")
    cdef double gu[4]
    cdef double gv[4]
    cdef double pu[4]
    cdef double pv[4]
    cdef double nu[4]
    cdef double nv[4]
    cdef double ngu[4]
    cdef double ngv[4]
    cdef double f, nf, du, dv, g2, nrm, step
    cdef Py_ssize_t it, bt, m
    cdef bint accepted
    with nogil:
        f = _qvg(&w[0], &u[0], &v[0], gu, gv, dim)
        step = 1.0
        for it in range(max_iters):
            du = 0.0
            dv = 0.0
            for m in range(dim):
                du += gu[m] * u[m]
                dv += gv[m] * v[m]
            g2 = 0.0
            for m in range(dim):
                pu[m] = gu[m] - du * u[m]
                pv[m] = gv[m] - dv * v[m]
                g2 += pu[m] * pu[m] + pv[m] * pv[m]
            if g2 <= grad_tol * grad_tol:
                break
            accepted = False
            for bt in range(60):
                nrm = 0.0
                for m in range(dim):
                    nu[m] = u[m] - step * pu[m]
                    nrm += nu[m] * nu[m]
                nrm = nrm ** -0.5
                for m in range(dim):
                    nu[m] *= nrm
                nrm = 0.0
                for m in range(dim):
                    nv[m] = v[m] - step * pv[m]
                    nrm += nv[m] * nv[m]
                nrm = nrm ** -0.5
                for m in range(dim):
                    nv[m] *= nrm
                nf = _qvg(&w[0], nu, nv, ngu, ngv, dim)
                if nf <= f - 1e-4 * step * g2:
                    accepted = True
                    break
                step *= 0.5
            if not accepted:
                break
            for m in range(dim):
                u[m] = nu[m]
                v[m] = nv[m]
                gu[m] = ngu[m]
                gv[m] = ngv[m]
            f = nf
            step = step * 2.0 if step * 2.0 < 4.0 else 4.0
    return f
