"""Single-gate sequential optimizers.

Fraxis fixes the rotation angle to pi and optimizes the axis: the local
cost is a quadratic form n^T S n over the unit 2-sphere, with S a real
symmetric 3x3 matrix built from 6 circuit evaluations. FQS optimizes the
full gate through its unit quaternion: q^T S q with a 4x4 matrix from 10
evaluations. Both are minimized exactly by the lowest eigenpair; a
candidate is accepted only if its (possibly shot-noisy) tracked cost
improves on the previous value.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .ansatz import CostEvaluator, ParameterSet
from .gates import basis_op, basis_sum_op, canonical_sign
from .trace import RunTrace

FRAXIS_EVALS_PER_UPDATE = 6
FQS_EVALS_PER_UPDATE = 10


@dataclass(frozen=True)
class LocalQuadraticForm:
    """Real symmetric matrix of the quadratic local cost (dim 3 or 4)."""

    dim: int
    matrix: np.ndarray

    def value(self, vec) -> float:
        v = np.asarray(vec, dtype=np.float64)
        return float(v @ self.matrix @ v)


def _build_form(evaluator: CostEvaluator, params: ParameterSet, site: int,
                indices: tuple[int, ...]) -> LocalQuadraticForm:
    dim = len(indices)
    mat = np.zeros((dim, dim))
    diag = {}
    for pos, mu in enumerate(indices):
        diag[mu] = evaluator.evaluate(params, {site: basis_op(mu)})
        mat[pos, pos] = diag[mu]
    for (pa, mu), (pb, nu) in combinations(list(enumerate(indices)), 2):
        mixed = evaluator.evaluate(params, {site: basis_sum_op(mu, nu)})
        off = mixed - (diag[mu] + diag[nu]) / 2.0
        mat[pa, pb] = off
        mat[pb, pa] = off
    return LocalQuadraticForm(dim, mat)


def build_fraxis_matrix(evaluator: CostEvaluator, params: ParameterSet,
                        site: int) -> LocalQuadraticForm:
    """3x3 axis cost matrix; consumes exactly 6 circuit evaluations."""
    return _build_form(evaluator, params, site, (1, 2, 3))


def build_fqs_matrix(evaluator: CostEvaluator, params: ParameterSet,
                     site: int) -> LocalQuadraticForm:
    """4x4 quaternion cost matrix; consumes exactly 10 circuit evaluations."""
    return _build_form(evaluator, params, site, (0, 1, 2, 3))


def min_eigvec(form: LocalQuadraticForm) -> tuple[float, np.ndarray]:
    """Lowest eigenpair; the eigenvector is unit with canonical sign."""
    vals, vecs = np.linalg.eigh(form.matrix)
    vec = canonical_sign(vecs[:, 0].copy())
    return float(vals[0]), vec


def _candidate_quaternion(kind: str, vec: np.ndarray) -> np.ndarray:
    if kind == "fraxis":
        return np.concatenate([[0.0], vec])
    return vec


def single_gate_sweep(kind: str, evaluator: CostEvaluator,
                      params: ParameterSet, trace: RunTrace) -> ParameterSet:
    """One iteration: update every gate once, in index order 1..D.

    Appends one record per gate to the trace and returns the (possibly)
    updated parameters.
    """
    if kind not in ("fraxis", "fqs"):
        raise ValueError(f"unknown single-gate optimizer {kind!r}")
    build = build_fraxis_matrix if kind == "fraxis" else build_fqs_matrix
    for site in range(1, evaluator.spec.num_gates + 1):
        before = evaluator.num_evaluations
        form = build(evaluator, params, site)
        tomography = evaluator.num_evaluations - before
        _, vec = min_eigvec(form)
        candidate = params.replaced(site, _candidate_quaternion(kind, vec))
        candidate_cost = evaluator.evaluate(candidate)
        accepted = candidate_cost < trace.current_cost
        if accepted:
            params = candidate
        trace.record_update((site,), candidate_cost, accepted, tomography)
    trace.close_iteration()
    return params
