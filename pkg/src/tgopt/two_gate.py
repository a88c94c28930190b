"""Two-gate simultaneous optimizers (TGF and TGFQS).

Fixing all gates except two, the cost is an exact quartic polynomial in
the two parameter vectors. Its grouped coefficients are reconstructed
from circuit evaluations where both gates are replaced by extended-basis
insertions: single basis elements for the diagonal blocks and normalized
two-element sums for the mixed blocks. TGFQS uses all four quaternion
components per gate (10 insertions each, 100 evaluations per pair); TGF
restricts to the axis components (6 insertions each, 36 evaluations).

The constrained minimization over the product of unit spheres runs a
multi-start projected-gradient descent with analytic gradients, Armijo
backtracking and retraction by normalization; the incumbent parameters
are always among the starts, so an update can never report a value worse
than the current one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import backend
from .ansatz import CostEvaluator, ParameterSet
from .errors import ConfigError
from .gates import basis_op, basis_sum_op, canonical_sign
from .trace import RunTrace

TGF_EVALS_PER_PAIR = 36
TGFQS_EVALS_PER_PAIR = 100

_MODE_INDICES = {"tgf": (1, 2, 3), "tgfqs": (0, 1, 2, 3)}

PAIRING_STRATEGIES = ("linear", "random", "opposite", "half_shifted")


def make_pairs(strategy: str, num_gates: int,
               rng: np.random.Generator | None = None) -> list[tuple[int, int]]:
    """Partition gate indices 1..D into D/2 disjoint pairs.

    The random strategy consumes the given rng and is meant to be re-drawn
    at the beginning of each iteration; the other three are deterministic.
    """
    d = num_gates
    if d < 2 or d % 2:
        raise ConfigError(f"gate count must be even and >= 2, got {d}")
    if strategy == "linear":
        return [(i, i + 1) for i in range(1, d, 2)]
    if strategy == "opposite":
        return [(i, d + 1 - i) for i in range(1, d // 2 + 1)]
    if strategy == "half_shifted":
        return [(i, d // 2 + i) for i in range(1, d // 2 + 1)]
    if strategy == "random":
        if rng is None:
            raise ConfigError("random pairing requires an RNG stream")
        perm = rng.permutation(d) + 1
        return [(int(perm[i]), int(perm[i + 1])) for i in range(0, d, 2)]
    raise ConfigError(
        f"unknown pairing strategy {strategy!r}; expected one of {PAIRING_STRATEGIES}"
    )


@dataclass
class CoeffTensor:
    """Grouped coefficients of the two-gate quartic local cost.

    Storage uses ordered index pairs only; each stored cubic/quartic entry
    is already the symmetrized coefficient, so every monomial appears once
    in the evaluation. Axis 0 ("outer") belongs to the gate applied later
    in the circuit, axis 1 ("inner") to the earlier one.
    """

    mode: str
    site_outer: int
    site_inner: int
    indices: tuple[int, ...]
    diag: np.ndarray       # (dim, dim)
    cubic_outer: np.ndarray  # (npairs, dim): ordered pair on the outer gate
    cubic_inner: np.ndarray  # (dim, npairs): ordered pair on the inner gate
    quartic: np.ndarray    # (npairs, npairs)
    _dense: np.ndarray | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.indices)

    @property
    def pair_positions(self) -> list[tuple[int, int]]:
        return list(combinations(range(self.dim), 2))

    def dense(self) -> np.ndarray:
        """Flattened dim**4 symmetric tensor W with
        cost(u, v) = sum W[m,n,a,b] u_m u_n v_a v_b."""
        if self._dense is None:
            dim = self.dim
            w = np.zeros((dim, dim, dim, dim))
            pairs = self.pair_positions
            for m in range(dim):
                for a in range(dim):
                    w[m, m, a, a] = self.diag[m, a]
            for i, (m, n) in enumerate(pairs):
                for a in range(dim):
                    w[m, n, a, a] = w[n, m, a, a] = self.cubic_outer[i, a] / 2.0
            for m in range(dim):
                for j, (a, b) in enumerate(pairs):
                    w[m, m, a, b] = w[m, m, b, a] = self.cubic_inner[m, j] / 2.0
            for i, (m, n) in enumerate(pairs):
                for j, (a, b) in enumerate(pairs):
                    q = self.quartic[i, j] / 4.0
                    w[m, n, a, b] = w[m, n, b, a] = q
                    w[n, m, a, b] = w[n, m, b, a] = q
            self._dense = np.ascontiguousarray(w.reshape(-1))
        return self._dense


def _insertion_keys(indices: tuple[int, ...]):
    return [(mu,) for mu in indices] + list(combinations(indices, 2))


def _insertion_matrix(key: tuple[int, ...]) -> np.ndarray:
    if len(key) == 1:
        return basis_op(key[0])
    return basis_sum_op(key[0], key[1])


def build_coeff_tensor(evaluator: CostEvaluator, params: ParameterSet,
                       d: int, k: int, mode: str) -> CoeffTensor:
    """Reconstruct the quartic coefficients for one gate pair.

    Inserts every (outer, inner) combination of the mode's basis and
    basis-sum operators, evaluating each exactly once: 36 circuit
    evaluations for TGF, 100 for TGFQS.
    """
    if mode not in _MODE_INDICES:
        raise ConfigError(f"unknown two-gate mode {mode!r}")
    if d == k:
        raise ValueError(f"gate pair must be two distinct gates, got ({d}, {k})")
    evaluator.spec._check_site(d)
    evaluator.spec._check_site(k)
    site_outer, site_inner = max(d, k), min(d, k)
    indices = _MODE_INDICES[mode]
    keys = _insertion_keys(indices)
    mats = {key: _insertion_matrix(key) for key in keys}

    t = {}
    for kd in keys:
        for kk in keys:
            t[kd, kk] = evaluator.evaluate(
                params, {site_outer: mats[kd], site_inner: mats[kk]}
            )

    dim = len(indices)
    pairs = list(combinations(indices, 2))
    pos = {mu: p for p, mu in enumerate(indices)}

    diag = np.zeros((dim, dim))
    for mu in indices:
        for alpha in indices:
            diag[pos[mu], pos[alpha]] = t[(mu,), (alpha,)]

    cubic_inner = np.zeros((dim, len(pairs)))
    for mu in indices:
        for j, (alpha, beta) in enumerate(pairs):
            cubic_inner[pos[mu], j] = (
                2.0 * t[(mu,), (alpha, beta)]
                - t[(mu,), (alpha,)] - t[(mu,), (beta,)]
            )

    cubic_outer = np.zeros((len(pairs), dim))
    for i, (mu, nu) in enumerate(pairs):
        for alpha in indices:
            cubic_outer[i, pos[alpha]] = (
                2.0 * t[(mu, nu), (alpha,)]
                - t[(mu,), (alpha,)] - t[(nu,), (alpha,)]
            )

    quartic = np.zeros((len(pairs), len(pairs)))
    for i, (mu, nu) in enumerate(pairs):
        for j, (alpha, beta) in enumerate(pairs):
            quartic[i, j] = (
                4.0 * t[(mu, nu), (alpha, beta)]
                + t[(mu,), (alpha,)] + t[(mu,), (beta,)]
                + t[(nu,), (alpha,)] + t[(nu,), (beta,)]
                - 2.0 * t[(mu,), (alpha, beta)]
                - 2.0 * t[(nu,), (alpha, beta)]
                - 2.0 * t[(mu, nu), (alpha,)]
                - 2.0 * t[(mu, nu), (beta,)]
            )

    return CoeffTensor(
        mode=mode, site_outer=site_outer, site_inner=site_inner,
        indices=indices, diag=diag, cubic_outer=cubic_outer,
        cubic_inner=cubic_inner, quartic=quartic,
    )


def _check_kind(tensor: CoeffTensor, vec, name: str) -> np.ndarray:
    v = np.asarray(vec, dtype=np.float64)
    if v.shape != (tensor.dim,):
        raise ValueError(
            f"{name} must have {tensor.dim} components for mode "
            f"{tensor.mode!r}, got shape {v.shape}"
        )
    return v


def eval_quartic(tensor: CoeffTensor, q_outer, q_inner) -> float:
    """Evaluate the reconstructed polynomial at one parameter pair."""
    u = _check_kind(tensor, q_outer, "outer parameter")
    v = _check_kind(tensor, q_inner, "inner parameter")
    iu = np.array([p[0] for p in tensor.pair_positions])
    iv = np.array([p[1] for p in tensor.pair_positions])
    u2, v2 = u * u, v * v
    pu, pv = u[iu] * u[iv], v[iu] * v[iv]
    return float(
        u2 @ tensor.diag @ v2
        + pu @ tensor.cubic_outer @ v2
        + u2 @ tensor.cubic_inner @ pv
        + pu @ tensor.quartic @ pv
    )


def quartic_value_and_grad(tensor: CoeffTensor, q_outer, q_inner):
    """Polynomial value and Euclidean gradients at one parameter pair."""
    u = _check_kind(tensor, q_outer, "outer parameter")
    v = _check_kind(tensor, q_inner, "inner parameter")
    gu = np.empty(tensor.dim)
    gv = np.empty(tensor.dim)
    value = backend.kernels.quartic_value_grad(tensor.dense(), u, v, gu, gv)
    return float(value), gu, gv


def minimize_on_spheres(tensor: CoeffTensor, start_outer, start_inner,
                        rng: np.random.Generator | None = None,
                        num_starts: int = 8, max_iters: int = 500,
                        grad_tol: float = 1e-10):
    """Minimize the quartic under both unit-norm constraints.

    Runs the descent from the incumbent plus uniformly sampled extra
    starts and keeps the best result; the returned value never exceeds
    the polynomial value at the incumbent.

    Returns (q_outer, q_inner, value).
    """
    dim = tensor.dim
    u_inc = _check_kind(tensor, start_outer, "outer start")
    v_inc = _check_kind(tensor, start_inner, "inner start")
    if rng is None:
        rng = np.random.Generator(np.random.Philox(key=0))
    w = tensor.dense()
    descend = backend.kernels.descend_product_spheres

    best = None
    for s in range(num_starts):
        if s == 0:
            u, v = u_inc.copy(), v_inc.copy()
        else:
            u = rng.standard_normal(dim)
            u /= np.linalg.norm(u)
            v = rng.standard_normal(dim)
            v /= np.linalg.norm(v)
        f = descend(w, u, v, max_iters, grad_tol)
        if best is None or f < best[2]:
            best = (u, v, f)

    u, v, _ = best
    value = eval_quartic(tensor, u, v)
    incumbent_value = eval_quartic(tensor, u_inc, v_inc)
    if value > incumbent_value:
        return u_inc.copy(), v_inc.copy(), incumbent_value
    return u, v, value


def _axis_of(quat: np.ndarray) -> np.ndarray:
    """Axis part of a pi-rotation quaternion (q0 = 0 for TGF-managed gates)."""
    axis = quat[1:]
    norm = np.linalg.norm(axis)
    if norm < 1e-12:
        return np.array([1.0, 0.0, 0.0])
    return axis / norm


def _to_quaternion(mode: str, vec: np.ndarray) -> np.ndarray:
    if mode == "tgf":
        return canonical_sign(np.concatenate([[0.0], vec]))
    return canonical_sign(vec.copy())


def two_gate_sweep(mode: str, strategy: str, evaluator: CostEvaluator,
                   params: ParameterSet, trace: RunTrace,
                   pair_rng: np.random.Generator | None = None,
                   minimizer_rng: np.random.Generator | None = None) -> ParameterSet:
    """One iteration: pair all gates per the strategy and update each pair.

    Both parameters of a pair are replaced only if the tracked candidate
    cost is strictly lower than the previous value. Appends one record per
    pair to the trace and returns the (possibly) updated parameters.
    """
    if mode not in _MODE_INDICES:
        raise ConfigError(f"unknown two-gate mode {mode!r}")
    pairs = make_pairs(strategy, evaluator.spec.num_gates, pair_rng)
    for d, k in pairs:
        before = evaluator.num_evaluations
        tensor = build_coeff_tensor(evaluator, params, d, k, mode)
        tomography = evaluator.num_evaluations - before
        q_out = params.quaternion(tensor.site_outer)
        q_in = params.quaternion(tensor.site_inner)
        if mode == "tgf":
            start_outer, start_inner = _axis_of(q_out), _axis_of(q_in)
        else:
            start_outer, start_inner = q_out, q_in
        u, v, _ = minimize_on_spheres(tensor, start_outer, start_inner,
                                      rng=minimizer_rng)
        candidate = params.replaced(
            tensor.site_outer, _to_quaternion(mode, u)
        ).replaced(
            tensor.site_inner, _to_quaternion(mode, v)
        )
        candidate_cost = evaluator.evaluate(candidate)
        accepted = candidate_cost < trace.current_cost
        if accepted:
            params = candidate
        trace.record_update((d, k), candidate_cost, accepted, tomography)
    trace.close_iteration()
    return params
